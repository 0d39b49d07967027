"""d-separation on the collapsed causal graph."""
from functools import cached_property
from typing import Dict, Iterable, Set

import networkx as nx

from shared.schemas.structure import CausalStructure
from shared.utils.exceptions import NotFoundError, ValidationError
from shared.utils.helpers import join_names

# networkx renamed d_separated to is_d_separator in 3.3.
_is_d_separator = getattr(nx, "is_d_separator", None) or nx.d_separated


class DSeparationService:
    """
    Service for d-separation queries.

    Every preparation is collapsed into one vertex and the outputs of every
    operation into another, so jointly prepared (or jointly produced) systems
    may stay correlated.
    """

    def __init__(self, structure: CausalStructure):
        self.structure = structure

    @cached_property
    def vertex_of(self) -> Dict[str, str]:
        out: Dict[str, str] = {}
        for k, prep in enumerate(self.structure.preparations):
            for name in prep.systems:
                out[name] = f"prep:{k}"
        for op in self.structure.operations:
            for name in op.outputs:
                out[name] = f"op:{op.name}"
        return out

    @cached_property
    def members(self) -> Dict[str, Set[str]]:
        out: Dict[str, Set[str]] = {}
        for name, vertex in self.vertex_of.items():
            out.setdefault(vertex, set()).add(name)
        return out

    @cached_property
    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(set(self.vertex_of.values()))
        for op in self.structure.operations:
            target = f"op:{op.name}"
            for name in op.inputs:
                source = self.vertex_of.get(name)
                if source is not None and source != target:
                    g.add_edge(source, target)
        return g

    def _vertices(self, names: Iterable[str]) -> Set[str]:
        out = set()
        for name in names:
            if name not in self.vertex_of:
                raise NotFoundError("System", name)
            out.add(self.vertex_of[name])
        return out

    def d_separated(self, x: Iterable[str], y: Iterable[str], z: Iterable[str] = ()) -> bool:
        """
        True iff every path between X and Y is blocked by Z.

        Systems sharing a collapsed vertex with a conditioned system are
        treated as unblocked, so such queries answer False.
        """
        x, y, z = set(x), set(y), set(z)
        overlap = (x & y) | (x & z) | (y & z)
        if overlap:
            raise ValidationError(
                f"d-separation sets overlap in {join_names(sorted(overlap))}", field="sets"
            )
        if not x or not y:
            return True
        vx, vy, vz = self._vertices(x), self._vertices(y), self._vertices(z)
        if vx & vy or vx & vz or vy & vz:
            return False
        return bool(_is_d_separator(self.graph, vx, vy, vz))


def d_separated(structure: CausalStructure, x: Iterable[str], y: Iterable[str], z: Iterable[str] = ()) -> bool:
    return DSeparationService(structure).d_separated(x, y, z)
