"""Exact Farkas solver."""
from fractions import Fraction

import pytest

from shared.utils.exceptions import DimensionMismatchError
from services.verify.services.simplex_service import FarkasSolver, PivotLimitError


def _check(columns, target, free, result):
    """Either y combines the columns into the target, or h separates them."""
    d = len(target)
    if result.feasible:
        total = [Fraction(0)] * d
        for y, col, is_free in zip(result.multipliers, columns, free):
            assert is_free or y >= 0
            for k, v in col.items():
                total[k] += y * v
        assert total == [Fraction(t) for t in target]
    else:
        h = result.ray
        for col, is_free in zip(columns, free):
            value = sum(Fraction(v) * h[k] for k, v in col.items())
            assert value == 0 if is_free else value >= 0
        assert sum(Fraction(t) * x for t, x in zip(target, h)) < 0


def test_feasible_combination():
    result = FarkasSolver().solve([{0: 1}, {1: 1}], [2, 3])
    assert result.feasible
    assert result.multipliers == [2, 3]


def test_infeasible_gives_ray():
    columns = [{0: 1}]
    result = FarkasSolver().solve(columns, [-1])
    assert not result.feasible
    _check(columns, [-1], [False], result)


def test_free_columns_take_either_sign():
    result = FarkasSolver().solve([{0: 1}], [-1], free=[True])
    assert result.feasible
    assert result.multipliers == [-1]


def test_rational_entries():
    columns = [{0: Fraction(1, 2), 1: Fraction(1, 3)}, {1: Fraction(2, 3)}]
    result = FarkasSolver().solve(columns, [1, 1])
    _check(columns, [1, 1], [False, False], result)
    assert result.feasible


def test_degenerate_duplicates_terminate():
    """Repeated columns and a zero target stay finite."""
    columns = [{0: 1, 1: -1}] * 6 + [{1: 1}] * 6
    result = FarkasSolver(float_hint=False).solve(columns, [0, 0])
    assert result.feasible


def test_duplicate_and_zero_columns_keep_alignment():
    """Multipliers stay aligned with the caller's columns after deduplication."""
    columns = [{}, {0: 2}, {0: 1}, {0: Fraction(1, 2), 1: 1}, {1: 3}]
    result = FarkasSolver(float_hint=False).solve(columns, [3, 3])
    assert result.feasible
    assert len(result.multipliers) == len(columns)
    assert result.multipliers[0] == 0
    _check(columns, [3, 3], [False] * len(columns), result)


def test_degenerate_cone_membership_exactly():
    """Elemental rows of three variables imply H(A,B,C) >= H(A)."""
    # coordinates: H(A), H(B), H(C), H(AB), H(AC), H(BC), H(ABC)
    columns = [
        {0: 1, 1: 1, 3: -1},
        {0: 1, 2: 1, 4: -1},
        {1: 1, 2: 1, 5: -1},
        {3: 1, 4: 1, 0: -1, 6: -1},
        {3: 1, 5: 1, 1: -1, 6: -1},
        {4: 1, 5: 1, 2: -1, 6: -1},
        {6: 1, 5: -1},
        {6: 1, 4: -1},
        {6: 1, 3: -1},
    ]
    target = [-1, 0, 0, 0, 0, 0, 1]
    for solver in (FarkasSolver(float_hint=False), FarkasSolver(float_hint=True)):
        result = solver.solve(columns, target)
        assert result.feasible
        _check(columns, target, [False] * len(columns), result)


def test_pivot_limit():
    with pytest.raises(PivotLimitError):
        FarkasSolver(max_pivots=0).solve([{0: 1}], [1])


def test_free_flags_must_match():
    with pytest.raises(DimensionMismatchError):
        FarkasSolver().solve([{0: 1}], [1], free=[False, False])


def test_column_outside_dimension():
    with pytest.raises(DimensionMismatchError):
        FarkasSolver().solve([{3: 1}], [1])


def test_random_systems_certify_either_way(rng):
    """Every answer comes with a certificate that checks exactly."""
    solver = FarkasSolver()
    for _ in range(40):
        d = int(rng.integers(2, 5))
        m = int(rng.integers(1, 7))
        columns = []
        for _ in range(m):
            values = rng.integers(-3, 4, size=d)
            columns.append({k: int(v) for k, v in enumerate(values) if v})
        free = [bool(f) for f in rng.integers(0, 2, size=m)]
        target = [int(v) for v in rng.integers(-3, 4, size=d)]
        _check(columns, target, free, solver.solve(columns, target, free))


def test_hint_and_exact_paths_agree(rng):
    """Both paths certify the same verdict on the same systems."""
    hinted, exact = FarkasSolver(float_hint=True), FarkasSolver(float_hint=False)
    for _ in range(30):
        d = int(rng.integers(2, 6))
        m = int(rng.integers(1, 9))
        columns = [
            {k: int(v) for k, v in enumerate(rng.integers(-2, 3, size=d)) if v}
            for _ in range(m)
        ]
        free = [bool(f) for f in rng.integers(0, 2, size=m)]
        target = [int(v) for v in rng.integers(-2, 3, size=d)]
        result = hinted.solve(columns, target, free)
        reference = exact.solve(columns, target, free)
        _check(columns, target, free, result)
        _check(columns, target, free, reference)
        assert result.feasible == reference.feasible
