"""Boundary scans over the box section."""
from fractions import Fraction

import pytest

from shared.utils.exceptions import ValidationError
from services.cli.services.inequality_parser_service import parse_inequality
from services.dist.services.box_service import ic_entropy_vector, pr_box, white_box
from services.dist.services.scan_service import ScanService, format_scan_csv
from services.scenarios.services.inequalities_service import causal_influence_bound, get_inequality

RESOLUTION = 1e-4


def _scan(name):
    return ScanService(get_inequality(name).candidate, "1/8", resolution=RESOLUTION).run(max_workers=1)


def test_grid_covers_unit_interval():
    service = ScanService(get_inequality("IC_original").candidate, "1/8")
    grid = service.grid()
    assert grid[0] == 0 and grid[-1] == 1
    assert len(grid) == 9


@pytest.mark.parametrize("step", ["1/4", "0", "-1/8"])
def test_step_must_be_fine_enough(step):
    with pytest.raises(ValidationError):
        ScanService(get_inequality("IC_original").candidate, step)


def test_original_is_violated_near_pr_box():
    service = ScanService(get_inequality("IC_original").candidate, "1/8", resolution=RESOLUTION)
    gamma = service.gamma_star(Fraction(0))
    assert gamma is not None
    assert 0 < gamma <= 1
    assert service.violated(gamma, Fraction(0))


def test_tight_inequality_detects_more():
    """The tight inequality is violated wherever the original one is, and earlier."""
    tight = _scan("IC_tight")
    original = _scan("IC_original")
    for t, o in zip(tight.rows, original.rows):
        assert t.epsilon == o.epsilon
        if o.gamma_star is not None:
            assert t.gamma_star is not None
            assert t.gamma_star <= o.gamma_star


def test_trivial_inequality_is_never_violated():
    candidate = parse_inequality("0 <= H(M)")
    result = ScanService(candidate, "1/8").run(max_workers=1)
    assert all(row.gamma_star is None for row in result.rows)


def test_scan_csv():
    result = _scan("IC_original")
    lines = format_scan_csv(result).splitlines()
    assert lines[0] == "# candidate=IC_original"
    assert lines[2] == "epsilon,gamma_star"
    assert len(lines) == 3 + 9
    assert lines[-1].startswith("1,")


def test_causal_influence_bound():
    """PR correlations need direct influence; white noise needs none."""
    assert causal_influence_bound(ic_entropy_vector(pr_box())) > 0
    assert causal_influence_bound(ic_entropy_vector(white_box())) == 0


def test_causal_influence_bound_with_explicit_candidate():
    vector = ic_entropy_vector(pr_box())
    assert causal_influence_bound(vector, get_inequality("IC_original").candidate) == pytest.approx(1.0, abs=1e-9)
