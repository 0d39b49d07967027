"""
Exact Farkas feasibility by an integer-preserving simplex.

Given columns a_1..a_m, free flags and a target c, find y with
sum_i y_i a_i = c and y_i >= 0 for every non-free column, or a ray h with
a_i . h >= 0 (= 0 for free columns) and c . h < 0. Exactly one exists.

A floating-point HiGHS solve runs first and only proposes: its support is
re-solved exactly on the coordinates it touches, and its ray is rounded to
rationals and checked exactly. Whatever it cannot settle falls through to
the full exact simplex.

Each tableau row is stored as integers together with a positive scale
(true row = ints / scale). A pivot only touches rows with a nonzero entry
in the entering column, and every touched row is reduced by its gcd. The
ratio test is lexicographic over (rhs, B^-1), which rules out cycling
while Dantzig pricing keeps choosing the steepest reduced cost.
"""
import math
from fractions import Fraction
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import coo_matrix

from shared.utils.exceptions import DimensionMismatchError, EntropicException
from shared.utils.helpers import lcm_of_denominators
from shared.utils.logger import get_logger
from services.verify.config import verify_settings

logger = get_logger(__name__)

SparseColumn = Mapping[int, Fraction]

# Denominator limits tried when rounding a floating-point ray.
_RAY_DENOMINATORS = (12, 720, 10**6)


class FarkasResult(NamedTuple):
    """Either multipliers (feasible) or a separating ray (infeasible)."""

    feasible: bool
    multipliers: Optional[List[Fraction]] = None
    ray: Optional[List[Fraction]] = None
    pivots: int = 0


class PivotLimitError(EntropicException):
    """The simplex exceeded its pivot limit."""

    def __init__(self, limit: int):
        super().__init__(f"LP exceeded {limit} pivots", code="LP_PIVOT_LIMIT", details={"limit": limit})


class FarkasSolver:
    """Phase-1 simplex on A y = c, y >= 0 with artificial variables."""

    def __init__(
        self,
        max_pivots: Optional[int] = None,
        float_hint: Optional[bool] = None,
        tolerance: Optional[float] = None,
    ):
        self.max_pivots = verify_settings.LP_MAX_PIVOTS if max_pivots is None else max_pivots
        self.float_hint = verify_settings.LP_FLOAT_HINT if float_hint is None else float_hint
        self.tolerance = verify_settings.LP_FLOAT_TOLERANCE if tolerance is None else tolerance

    def solve(
        self,
        columns: Sequence[SparseColumn],
        target: Sequence[Fraction],
        free: Optional[Sequence[bool]] = None,
    ) -> FarkasResult:
        """
        Decide feasibility of sum_i y_i columns[i] = target.

        Args:
            columns: Sparse columns over range(len(target))
            target: Dense target vector
            free: Per-column flag for sign-unrestricted multipliers

        Returns:
            FarkasResult with multipliers aligned to `columns`, or a ray
        """
        d = len(target)
        free = list(free) if free is not None else [False] * len(columns)
        if len(free) != len(columns):
            raise DimensionMismatchError(len(columns), len(free), "free flags do not match columns")
        for col in columns:
            for k in col:
                if not 0 <= k < d:
                    raise DimensionMismatchError(d, k + 1, f"column entry {k} outside dimension {d}")

        columns = [{k: Fraction(v) for k, v in col.items() if v} for col in columns]
        target = [Fraction(t) for t in target]
        if self.float_hint and columns and d:
            result = self._hinted(columns, target, free)
            if result is not None:
                return result
        return self._exact(columns, target, free)

    # ------------------------------------------------------------------
    # Floating-point hint
    # ------------------------------------------------------------------

    def _hinted(
        self,
        columns: List[Dict[int, Fraction]],
        target: List[Fraction],
        free: List[bool],
    ) -> Optional[FarkasResult]:
        d = len(target)
        entries = [(k, j, float(v)) for j, col in enumerate(columns) for k, v in col.items()]
        rows, cols, values = zip(*entries) if entries else ((), (), ())
        matrix = coo_matrix((values, (rows, cols)), shape=(d, len(columns))).tocsr()
        rhs = np.array([float(t) for t in target])

        primal = linprog(
            np.array([0.0 if f else 1.0 for f in free]),
            A_eq=matrix,
            b_eq=rhs,
            bounds=[(None, None) if f else (0, None) for f in free],
            method="highs",
        )
        if primal.status == 0:
            support = [j for j, y in enumerate(primal.x) if abs(y) > self.tolerance]
            result = self._restricted(columns, target, free, support)
            if result is not None:
                return result
        elif primal.status == 2:
            result = self._rounded_ray(matrix, rhs, columns, target, free)
            if result is not None:
                return result
        logger.debug("Float hint not confirmed, solving exactly", status=int(primal.status))
        return None

    def _restricted(
        self,
        columns: List[Dict[int, Fraction]],
        target: List[Fraction],
        free: List[bool],
        support: List[int],
    ) -> Optional[FarkasResult]:
        """Exact solve on the support columns and the coordinates they touch."""
        touched = sorted({k for j in support for k in columns[j]} | {k for k, t in enumerate(target) if t})
        position = {k: r for r, k in enumerate(touched)}
        result = self._exact(
            [{position[k]: v for k, v in columns[j].items()} for j in support],
            [target[k] for k in touched],
            [free[j] for j in support],
        )
        if not result.feasible:
            return None
        multipliers = [Fraction(0)] * len(columns)
        for j, y in zip(support, result.multipliers):
            multipliers[j] = y
        logger.debug(
            "Farkas system feasible on float support",
            columns=len(columns),
            support=len(support),
            coordinates=len(touched),
            pivots=result.pivots,
        )
        return FarkasResult(True, multipliers=multipliers, pivots=result.pivots)

    def _rounded_ray(
        self,
        matrix,
        rhs: np.ndarray,
        columns: List[Dict[int, Fraction]],
        target: List[Fraction],
        free: List[bool],
    ) -> Optional[FarkasResult]:
        """Minimize c . h over the boxed cone and round the vertex to rationals."""
        d = len(target)
        free_mask = np.array(free, dtype=bool)
        transposed = matrix.T.tocsr()
        bound_rows = transposed[np.flatnonzero(~free_mask)]
        equal_rows = transposed[np.flatnonzero(free_mask)]
        dual = linprog(
            rhs,
            A_ub=-bound_rows if bound_rows.shape[0] else None,
            b_ub=np.zeros(bound_rows.shape[0]) if bound_rows.shape[0] else None,
            A_eq=equal_rows if equal_rows.shape[0] else None,
            b_eq=np.zeros(equal_rows.shape[0]) if equal_rows.shape[0] else None,
            bounds=(-1, 1),
            method="highs",
        )
        if dual.status != 0 or dual.fun > -self.tolerance:
            return None
        for limit in _RAY_DENOMINATORS:
            ray = [Fraction(float(x)).limit_denominator(limit) for x in dual.x]
            if self._separates(columns, target, free, ray):
                logger.debug("Farkas system infeasible, rounded ray", dimension=d, denominator=limit)
                return FarkasResult(False, ray=ray)
        return None

    @staticmethod
    def _separates(
        columns: List[Dict[int, Fraction]],
        target: List[Fraction],
        free: List[bool],
        ray: List[Fraction],
    ) -> bool:
        if sum((t * h for t, h in zip(target, ray)), Fraction(0)) >= 0:
            return False
        for col, is_free in zip(columns, free):
            value = sum((v * ray[k] for k, v in col.items()), Fraction(0))
            if value < 0 or (is_free and value != 0):
                return False
        return True

    # ------------------------------------------------------------------
    # Exact simplex
    # ------------------------------------------------------------------

    def _exact(
        self,
        columns: List[Dict[int, Fraction]],
        target: List[Fraction],
        free: List[bool],
    ) -> FarkasResult:
        d = len(target)

        # Primitive integer columns; free ones become a +/- pair and
        # repeated directions are kept once.
        owner: List[int] = []
        orient: List[int] = []
        weight: List[Fraction] = []
        dense_cols: List[List[int]] = []
        seen: Dict[Tuple[int, ...], int] = {}
        for i, col in enumerate(columns):
            lcm = lcm_of_denominators(col.values())
            ints = [0] * d
            for k, v in col.items():
                ints[k] = int(v * lcm)
            g = math.gcd(*ints) if ints else 0
            if g == 0:
                continue
            for sign in ((1, -1) if free[i] else (1,)):
                key = tuple(sign * x // g for x in ints)
                if key in seen:
                    continue
                seen[key] = len(dense_cols)
                owner.append(i)
                orient.append(sign)
                weight.append(Fraction(lcm, g))
                dense_cols.append(list(key))

        target_scale = lcm_of_denominators(target)
        rhs = [int(t * target_scale) for t in target]
        row_sign = [(-1 if r < 0 else 1) for r in rhs]

        n = len(dense_cols)
        width = n + d + 1  # y columns, artificial columns, rhs
        rhs_col = n + d
        lex_cols = [rhs_col] + list(range(n, n + d))

        tableau: List[List[int]] = []
        objective = [0] * width
        for r in range(d):
            s = row_sign[r]
            row = [s * dense_cols[j][r] for j in range(n)] + [0] * d + [s * rhs[r]]
            row[n + r] = 1
            tableau.append(row)
            for j in range(n):
                objective[j] -= row[j]
            objective[rhs_col] -= row[rhs_col]
        basis = [n + r for r in range(d)]
        scales = [1] * (d + 1)  # the last entry belongs to the objective

        pivots = 0
        while True:
            entering = self._entering(objective, n + d)
            if entering is None:
                break
            leaving = self._leaving(tableau, entering, lex_cols)
            if leaving is None:
                # Phase 1 is bounded below by zero.
                raise EntropicException("Unbounded phase-1 LP", code="LP_INTERNAL")
            objective = self._pivot(tableau, objective, scales, leaving, entering)
            basis[leaving] = entering
            pivots += 1
            if pivots > self.max_pivots:
                raise PivotLimitError(self.max_pivots)

        if objective[rhs_col] == 0:
            values = [Fraction(0)] * n
            for r, var in enumerate(basis):
                if var < n:
                    # the basic coefficient is not normalised to one
                    values[var] = Fraction(tableau[r][rhs_col], tableau[r][var])
            multipliers = [Fraction(0)] * len(columns)
            for j in range(n):
                if values[j]:
                    multipliers[owner[j]] += orient[j] * values[j] * weight[j] / target_scale
            logger.debug("Farkas system feasible", columns=len(columns), dimension=d, pivots=pivots)
            return FarkasResult(True, multipliers=multipliers, pivots=pivots)

        # Dual solution w_k = 1 - reduced cost of artificial k; ray h = -S w.
        ray = []
        for r in range(d):
            w = 1 - Fraction(objective[n + r], scales[d])
            ray.append(-row_sign[r] * w)
        logger.debug("Farkas system infeasible", columns=len(columns), dimension=d, pivots=pivots)
        return FarkasResult(False, ray=ray, pivots=pivots)

    @staticmethod
    def _entering(objective: List[int], count: int) -> Optional[int]:
        best_j, best_v = None, 0
        for j in range(count):
            if objective[j] < best_v:
                best_j, best_v = j, objective[j]
        return best_j

    @staticmethod
    def _leaving(tableau: List[List[int]], entering: int, lex_cols: List[int]) -> Optional[int]:
        """Row with the lexicographically least (rhs, B^-1) / pivot entry."""
        best = None
        for r, row in enumerate(tableau):
            a = row[entering]
            if a <= 0:
                continue
            if best is None:
                best = r
                continue
            # row scales cancel inside each ratio
            current = tableau[best]
            b = current[entering]
            for k in lex_cols:
                lhs = row[k] * b
                rhs = current[k] * a
                if lhs != rhs:
                    if lhs < rhs:
                        best = r
                    break
        return best

    @staticmethod
    def _pivot(
        tableau: List[List[int]],
        objective: List[int],
        scales: List[int],
        r: int,
        c: int,
    ) -> List[int]:
        """Clear column c outside row r; returns the (new) objective row."""
        pivot_row = tableau[r]
        p = pivot_row[c]

        def reduce(row: List[int], f: int, scale: int):
            new = [p * a - f * b for a, b in zip(row, pivot_row)]
            scale *= p
            g = math.gcd(scale, *new)
            if g > 1:
                new = [a // g for a in new]
                scale //= g
            return new, scale

        for i, row in enumerate(tableau):
            if i == r or row[c] == 0:
                continue
            tableau[i], scales[i] = reduce(row, row[c], scales[i])
        if objective[c]:
            objective, scales[-1] = reduce(objective, objective[c], scales[-1])
        return objective
