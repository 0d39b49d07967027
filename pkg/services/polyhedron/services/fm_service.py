"""Exact Fourier-Motzkin elimination and LP redundancy removal."""
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from shared.schemas.constraint import ConstraintRow, ConstraintSystem, Provenance, Relation
from shared.utils.exceptions import EntropicException
from shared.utils.helpers import primitive_dict
from shared.utils.logger import get_logger
from services.polyhedron.config import polyhedron_settings
from services.polyhedron.services.canonical_service import canonical_coefficients, dedupe_rows
from services.verify.services.simplex_service import FarkasSolver

logger = get_logger(__name__)

SparseRow = Dict[int, int]


class _Row(NamedTuple):
    coefficients: SparseRow
    equality: bool
    history: FrozenSet[int]
    provenance: Provenance


def _key(row: _Row) -> Tuple:
    return (row.equality, tuple(sorted(row.coefficients.items())))


def _canonical(coefficients: SparseRow, equality: bool) -> Optional[SparseRow]:
    coefficients = {k: v for k, v in coefficients.items() if v}
    if not coefficients:
        return None
    return canonical_coefficients(coefficients, equality)


class FourierMotzkin:
    """
    Project a cone {h : M h >= 0, E h = 0} onto a subset of its coordinates.

    Equalities are substituted first. The remaining coordinates are
    eliminated one at a time, choosing the coordinate with the fewest
    positive x negative pairs. New rows are checked for LP redundancy after
    every step when enabled.
    """

    def __init__(
        self,
        redundancy_every_step: Optional[bool] = None,
        use_chernikov_rule: Optional[bool] = None,
        max_rows: Optional[int] = None,
        solver: Optional[FarkasSolver] = None,
    ):
        s = polyhedron_settings
        self.redundancy_every_step = (
            s.FM_REDUNDANCY_EVERY_STEP if redundancy_every_step is None else redundancy_every_step
        )
        self.use_chernikov_rule = s.FM_USE_CHERNIKOV_RULE if use_chernikov_rule is None else use_chernikov_rule
        self.max_rows = s.FM_MAX_ROWS if max_rows is None else max_rows
        self.solver = solver or FarkasSolver()

    # ------------------------------------------------------------------
    # Status callbacks
    # ------------------------------------------------------------------

    def cb_start(self, rows: Sequence[_Row], drop: Set[int]) -> None:
        logger.info("Eliminating coordinates", rows=len(rows), drop=len(drop))

    def cb_step(self, rows: Sequence[_Row], col: int, z: int, p: int, n: int) -> None:
        logger.debug("Eliminated coordinate", col=col, rows=len(rows), z=z, p=p, n=n, pn=p * n)

    def cb_stop(self, rows: Sequence[_Row]) -> None:
        logger.info("Elimination finished", rows=len(rows))

    # ------------------------------------------------------------------
    # LP helpers
    # ------------------------------------------------------------------

    def implied_by(self, target: _Row, others: Sequence[_Row]) -> bool:
        """`target` follows from `others` (both directions for equalities)."""
        coords = sorted({k for r in others for k in r.coefficients} | set(target.coefficients))
        position = {k: i for i, k in enumerate(coords)}
        columns = [{position[k]: Fraction(v) for k, v in r.coefficients.items()} for r in others]
        free = [r.equality for r in others]
        vector = [Fraction(0)] * len(coords)
        for k, v in target.coefficients.items():
            vector[position[k]] = Fraction(v)
        if not self.solver.solve(columns, vector, free).feasible:
            return False
        if target.equality:
            return self.solver.solve(columns, [-v for v in vector], free).feasible
        return True

    def _prune(self, rows: List[_Row], candidates: Iterable[int]) -> Tuple[List[_Row], int]:
        """Sequentially drop the rows at `candidates` that the others imply."""
        alive = [True] * len(rows)
        removed = 0
        for i in candidates:
            others = [r for j, r in enumerate(rows) if alive[j] and j != i]
            if self.implied_by(rows[i], others):
                alive[i] = False
                removed += 1
        return [r for j, r in enumerate(rows) if alive[j]], removed

    # ------------------------------------------------------------------
    # Elimination
    # ------------------------------------------------------------------

    def _dedupe(self, rows: Iterable[_Row]) -> List[_Row]:
        best: Dict[Tuple, _Row] = {}
        for row in rows:
            key = _key(row)
            kept = best.get(key)
            if kept is None or len(row.history) < len(kept.history):
                best[key] = row
        return [best[k] for k in sorted(best, key=lambda k: (not k[0], k[1]))]

    def _substitute_equalities(self, rows: List[_Row], drop: Set[int]) -> List[_Row]:
        while True:
            pivot = None
            for row in rows:
                if row.equality:
                    hits = sorted(set(row.coefficients) & drop)
                    if hits:
                        pivot = (row, hits[0])
                        break
            if pivot is None:
                return rows
            eq, j = pivot
            a = eq.coefficients[j]
            sign = 1 if a > 0 else -1
            out = []
            for row in rows:
                if row is eq:
                    continue
                r_j = row.coefficients.get(j, 0)
                if not r_j:
                    out.append(row)
                    continue
                combined: SparseRow = {k: abs(a) * v for k, v in row.coefficients.items()}
                for k, v in eq.coefficients.items():
                    combined[k] = combined.get(k, 0) - sign * r_j * v
                canon = _canonical(combined, row.equality)
                if canon is not None:
                    out.append(_Row(canon, row.equality, row.history, Provenance.PROJECTION))
            rows = self._dedupe(out)
            logger.debug("Substituted equality", col=j, rows=len(rows))

    def _choose(self, rows: Sequence[_Row], remaining: Set[int]) -> int:
        def cost(col: int) -> Tuple[int, int]:
            p = sum(1 for r in rows if r.coefficients.get(col, 0) > 0)
            n = sum(1 for r in rows if r.coefficients.get(col, 0) < 0)
            return (p * n, col)

        return min(remaining, key=cost)

    def solve(self, rows: List[_Row], drop: Set[int]) -> List[_Row]:
        self.cb_start(rows, drop)
        rows = self._substitute_equalities(self._dedupe(rows), drop)
        remaining = {k for k in drop if any(k in r.coefficients for r in rows)}
        # Every inequality starts a fresh history after substitution.
        rows = [
            r if r.equality else r._replace(history=frozenset([i]))
            for i, r in enumerate(rows)
        ]
        chernikov = self.use_chernikov_rule
        eliminated = 0

        while remaining:
            col = self._choose(rows, remaining)
            remaining.discard(col)
            zero = [r for r in rows if r.coefficients.get(col, 0) == 0]
            pos = [r for r in rows if r.coefficients.get(col, 0) > 0]
            neg = [r for r in rows if r.coefficients.get(col, 0) < 0]
            eliminated += 1

            new_rows: List[_Row] = []
            for p in pos:
                a = p.coefficients[col]
                for n in neg:
                    b = -n.coefficients[col]
                    history = p.history | n.history
                    if chernikov and len(history) > eliminated + 1:
                        continue
                    combined: SparseRow = {k: b * v for k, v in p.coefficients.items()}
                    for k, v in n.coefficients.items():
                        combined[k] = combined.get(k, 0) + a * v
                    canon = _canonical(combined, False)
                    if canon is not None:
                        new_rows.append(_Row(primitive_dict(canon), False, history, Provenance.PROJECTION))

            rows = self._dedupe(zero + new_rows)
            if len(rows) > self.max_rows:
                raise EntropicException(
                    f"Fourier-Motzkin exceeded {self.max_rows} rows",
                    code="FM_ROW_LIMIT",
                    details={"rows": len(rows)},
                )
            if self.redundancy_every_step:
                new_keys = {_key(r) for r in new_rows}
                candidates = [i for i, r in enumerate(rows) if _key(r) in new_keys]
                rows, removed = self._prune(rows, candidates)
                if removed and chernikov:
                    chernikov = False
                    logger.debug("History filter disabled after LP pruning", col=col)
            self.cb_step(rows, col, len(zero), len(pos), len(neg))

        rows, _ = self._prune(rows, range(len(rows)))
        self.cb_stop(rows)
        return rows


def _to_internal(system: ConstraintSystem) -> List[_Row]:
    out = []
    for i, row in enumerate(system.rows):
        canon = canonical_coefficients(row.as_dict(), row.is_equality)
        out.append(_Row(canon, row.is_equality, frozenset([i]), Provenance(row.provenance)))
    return out


def _to_system(system: ConstraintSystem, rows: Sequence[_Row], keep: Sequence[int]) -> ConstraintSystem:
    position = {k: i for i, k in enumerate(keep)}
    out = []
    for r in rows:
        out.append(ConstraintRow(
            coefficients={position[k]: v for k, v in r.coefficients.items()},
            relation=Relation.EQ_ZERO if r.equality else Relation.GEQ_ZERO,
            provenance=r.provenance,
        ))
    return ConstraintSystem(index=system.index.restrict(keep), rows=tuple(dedupe_rows(out)))


def fm_eliminate(
    system: ConstraintSystem,
    drop: Iterable[int],
    engine: Optional[FourierMotzkin] = None,
) -> ConstraintSystem:
    """
    Project `system` by eliminating the coordinates in `drop`.

    The result lives on `system.index.restrict(kept positions)`.
    """
    drop = set(drop)
    keep = [k for k in range(system.dimension) if k not in drop]
    if not drop:
        return system.with_rows(dedupe_rows(system.rows))
    rows = (engine or FourierMotzkin()).solve(_to_internal(system), drop)
    return _to_system(system, rows, keep)


def remove_redundant(system: ConstraintSystem, engine: Optional[FourierMotzkin] = None) -> ConstraintSystem:
    """Minimal subsystem with the same cone (sequential LP deletion)."""
    engine = engine or FourierMotzkin()
    rows = engine._dedupe(_to_internal(system))
    rows, removed = engine._prune(rows, range(len(rows)))
    logger.debug("Redundancy removal", removed=removed, kept=len(rows))
    return _to_system(system, rows, list(range(system.dimension)))
