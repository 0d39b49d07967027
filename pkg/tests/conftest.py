"""Shared fixtures for the test suite."""
from pathlib import Path

import numpy as np
import pytest

from shared.config import settings
from shared.schemas.constraint import SubsetIndex
from shared.schemas.structure import CausalStructure
from services.model.services.dsl_service import parse_structure
from services.scenarios.services.builders_service import build_ic, build_triangle


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run full Fourier-Motzkin projections"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    """Seeded generator so sampled property checks are reproducible."""
    return np.random.default_rng(settings.SAMPLE_SEED)


@pytest.fixture
def triangle() -> CausalStructure:
    return build_triangle(quantum=True)[0]


@pytest.fixture
def classical_triangle() -> CausalStructure:
    return build_triangle(quantum=False)[0]


@pytest.fixture
def ic() -> CausalStructure:
    return build_ic(2)[0]


@pytest.fixture
def chain() -> CausalStructure:
    """Classical chain X -> Y -> Z observed on {X, Z}."""
    return parse_structure(
        "system X classical\n"
        "system Y classical\n"
        "system Z classical\n"
        "prepare {X}\n"
        "op f in {X} out {Y}\n"
        "op g in {Y} out {Z}\n"
        "marginal {X, Z}\n"
    )


@pytest.fixture
def pair_index() -> SubsetIndex:
    """Coordinates H(B), H(A), H(A,B)."""
    return SubsetIndex.from_masks(("A", "B"), [1, 2, 3])


@pytest.fixture
def write_file(tmp_path: Path):
    """Write text to a file under tmp_path and return its path as a string."""

    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write
