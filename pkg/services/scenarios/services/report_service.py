"""Orbit-grouped reports on computed marginal cones."""
from typing import Optional, Sequence

from shared.schemas.inequality import NamedInequality, OrbitReport
from shared.utils.logger import get_logger
from services.cone.services.pipeline_service import PipelineService
from services.polyhedron.services.fm_service import FourierMotzkin
from services.scenarios.services.builders_service import build_ic
from services.scenarios.services.inequalities_service import (
    candidate_row,
    group_orbits,
    ic_safi,
    ic_symmetries,
    ic_tight,
    ic_tight_n,
    orbit_key,
)

logger = get_logger(__name__)

PUBLISHED_IC_COUNT = 54


def ic_marginal_report(
    n: int = 2,
    shared_resource: str = "classical",
    engine: Optional[FourierMotzkin] = None,
) -> OrbitReport:
    """
    Causal rows of the full IC marginal cone, counted raw and per orbit of
    the simultaneous relabeling of (X_i, Y_i).
    """
    structure, scenario = build_ic(n, shared_resource=shared_resource, scenario="full")
    cone = PipelineService(structure, scenario, engine=engine).run()
    index = cone.system.index
    symmetries = ic_symmetries(n)
    orbits = group_orbits(cone.nontrivial, index, symmetries)

    named: Sequence[NamedInequality] = [ic_tight(), ic_safi()] if n == 2 else [ic_tight_n(n)]
    orbit_keys = {orbit_key(row, index, symmetries) for row in cone.nontrivial}
    present = [
        inequality.name
        for inequality in named
        if orbit_key(candidate_row(inequality.candidate, index), index, symmetries) in orbit_keys
    ]

    expected = PUBLISHED_IC_COUNT if n == 2 else None
    report = OrbitReport(
        scenario=f"ic{n}" + ("_classical" if shared_resource == "classical" else ""),
        raw_count=len(cone.nontrivial),
        orbit_count=len(orbits),
        expected_count=expected,
        named_present=tuple(present),
        cone=cone,
    )
    if expected is not None and report.raw_count != expected:
        logger.warning(
            "Causal row count differs from the published count",
            raw=report.raw_count,
            orbits=report.orbit_count,
            expected=expected,
        )
    logger.info(
        "IC marginal report",
        n=n,
        raw=report.raw_count,
        orbits=report.orbit_count,
        named=list(present),
    )
    return report
