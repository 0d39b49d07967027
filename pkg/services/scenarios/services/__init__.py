"""Scenarios services module."""
from services.scenarios.services.builders_service import (
    IC_SCENARIOS,
    SCENARIO_NAMES,
    build_ic,
    build_monogamy_star,
    build_network,
    build_triangle,
    emit_scenario,
    get_scenario,
)
from services.scenarios.services.inequalities_service import (
    INEQUALITY_NAMES,
    candidate_from_row,
    candidate_key,
    candidate_row,
    causal_influence_bound,
    get_inequality,
    group_orbits,
    ic_dense_n,
    ic_original,
    ic_safi,
    ic_symmetries,
    ic_tight,
    ic_tight_n,
    is_named_inequality,
    monogamy,
    network_bound,
    network_symmetries,
    orbit_key,
    permute,
    relabelings,
    triangle_1,
    triangle_2,
    triangle_3,
    triangle_symmetries,
)
from services.scenarios.services.witness_service import (
    RAY_TYPES,
    triangle_index,
    triangle_rays,
    witness_distributions,
)
from services.scenarios.services.report_service import PUBLISHED_IC_COUNT, ic_marginal_report

__all__ = [
    "IC_SCENARIOS",
    "SCENARIO_NAMES",
    "build_ic",
    "build_monogamy_star",
    "build_network",
    "build_triangle",
    "emit_scenario",
    "get_scenario",
    "INEQUALITY_NAMES",
    "candidate_from_row",
    "candidate_key",
    "candidate_row",
    "causal_influence_bound",
    "get_inequality",
    "group_orbits",
    "ic_dense_n",
    "ic_original",
    "ic_safi",
    "ic_symmetries",
    "ic_tight",
    "ic_tight_n",
    "is_named_inequality",
    "monogamy",
    "network_bound",
    "network_symmetries",
    "orbit_key",
    "permute",
    "relabelings",
    "triangle_1",
    "triangle_2",
    "triangle_3",
    "triangle_symmetries",
    "RAY_TYPES",
    "triangle_index",
    "triangle_rays",
    "witness_distributions",
    "PUBLISHED_IC_COUNT",
    "ic_marginal_report",
]
