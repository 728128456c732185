"""Enumeration of rank-attaining spanning structures.

A balanced connected graph reaches full incidence rank exactly on its
spanning trees; an unbalanced one on its spanning subgraphs with ``n``
edges whose every component is unicyclic with a negative cycle (here
called TU-subgraphs).  Both enumerators backtrack over edges in index order
and emit each structure once, sorted by edge indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ratmat import det
from .sgraph import GraphError, SignedGraph, is_balanced, underlying_laplacian

DEFAULT_CAP = 24


class EnumerationCapError(GraphError):
    pass


class BalancedInputError(GraphError):
    """TU-subgraphs were requested for a balanced graph (there are none)."""


@dataclass(frozen=True)
class SpanningTree:
    edge_indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "edge_indices", tuple(sorted(self.edge_indices)))


@dataclass(frozen=True)
class Component:
    vertices: frozenset[int]
    edge_indices: tuple[int, ...]


@dataclass(frozen=True)
class TUSubgraph:
    edge_indices: tuple[int, ...]
    components: tuple[Component, ...]

    @property
    def c(self) -> int:
        return len(self.components)


def _check_cap(g: SignedGraph, cap: int | None) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if g.m > cap:
        raise EnumerationCapError(f"graph has {g.m} edges, enumeration cap is {cap}")


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _connectable(n: int, edges, chosen: list[int], rest: range) -> bool:
    parent = list(range(n + 1))
    comps = n
    for k in list(chosen) + list(rest):
        a, b = _find(parent, edges[k].u), _find(parent, edges[k].v)
        if a != b:
            parent[a] = b
            comps -= 1
            if comps == 1:
                return True
    return comps <= 1


def spanning_trees(g: SignedGraph, cap: int | None = None) -> list[SpanningTree]:
    """All spanning trees by include/exclude recursion on edges.

    An edge is included only if it joins two current forest components and
    excluded only if the forest plus the not-yet-decided edges can still
    span, so every leaf of the recursion is a spanning tree.
    """
    g.require_connected()
    _check_cap(g, cap)
    n, edges = g.n, g.edges
    if n <= 1:
        return [SpanningTree(())]
    out: list[SpanningTree] = []
    chosen: list[int] = []

    def rec(k: int, parent: list[int]):
        if len(chosen) == n - 1:
            out.append(SpanningTree(tuple(chosen)))
            return
        if k == len(edges):
            return
        e = edges[k]
        a, b = _find(parent, e.u), _find(parent, e.v)
        if a != b:
            p2 = parent.copy()
            p2[a] = b
            chosen.append(k)
            rec(k + 1, p2)
            chosen.pop()
        if _connectable(n, edges, chosen, range(k + 1, len(edges))):
            rec(k + 1, parent)

    rec(0, list(range(n + 1)))
    return out


def tu_subgraphs(g: SignedGraph, cap: int | None = None) -> list[TUSubgraph]:
    """All spanning subgraphs with ``n`` edges made of negative unicyclic parts."""
    g.require_connected()
    if is_balanced(g):
        raise BalancedInputError("balanced graph has no spanning TU-subgraphs")
    _check_cap(g, cap)
    n, edges, m = g.n, g.edges, g.m
    out: list[TUSubgraph] = []
    chosen: list[int] = []

    # comp[v]: component label; pot[v]: path sign from the label's root;
    # cyc[label]: whether that component already holds its (negative) cycle
    def rec(k: int, comp: list[int], pot: list[int], cyc: dict[int, bool]):
        need = n - len(chosen)
        if need == 0:
            out.append(_build_tu(chosen, comp, edges))
            return
        if m - k < need:
            return
        if sum(1 for v in cyc.values() if not v) > need:
            return
        e = edges[k]
        a, b = comp[e.u], comp[e.v]
        if a == b:
            if not cyc[a] and pot[e.u] * pot[e.v] * e.sigma == -1:
                c2 = dict(cyc)
                c2[a] = True
                chosen.append(k)
                rec(k + 1, comp, pot, c2)
                chosen.pop()
        elif not (cyc[a] and cyc[b]):
            # relabel b into a, fixing potentials so the new edge is consistent
            flip = pot[e.u] * pot[e.v] * e.sigma
            comp2, pot2 = comp.copy(), pot.copy()
            for v in range(1, n + 1):
                if comp[v] == b:
                    comp2[v] = a
                    pot2[v] = pot[v] * flip
            c2 = dict(cyc)
            c2[a] = cyc[a] or cyc[b]
            del c2[b]
            chosen.append(k)
            rec(k + 1, comp2, pot2, c2)
            chosen.pop()
        rec(k + 1, comp, pot, cyc)

    rec(0, list(range(n + 1)), [1] * (n + 1), {v: False for v in range(1, n + 1)})
    return out


def _build_tu(chosen: list[int], comp: list[int], edges) -> TUSubgraph:
    groups: dict[int, tuple[set, list]] = {}
    for v in range(1, len(comp)):
        groups.setdefault(comp[v], (set(), []))[0].add(v)
    for k in chosen:
        groups[comp[edges[k].u]][1].append(k)
    comps = sorted(
        (Component(frozenset(vs), tuple(sorted(es))) for vs, es in groups.values()),
        key=lambda c: min(c.vertices),
    )
    for c in comps:
        assert len(c.vertices) == len(c.edge_indices)
    return TUSubgraph(tuple(sorted(chosen)), tuple(comps))


def tree_count(g: SignedGraph, cap: int | None = None) -> int:
    return len(spanning_trees(g, cap))


def matrix_tree_count(g: SignedGraph) -> int:
    """Spanning-tree count of the underlying graph by Kirchhoff's theorem."""
    if g.n <= 1:
        return 1
    L = underlying_laplacian(g)
    idx = range(1, g.n)
    return int(det(L.submatrix(idx, idx)))


def vol_squared(g: SignedGraph, cap: int | None = None) -> Fraction:
    """Sum of squared maximal minors of the incidence matrix, combinatorially.

    ``n * tau`` for balanced graphs, ``sum(4**c(H))`` over TU-subgraphs
    otherwise.
    """
    g.require_connected()
    if is_balanced(g):
        return Fraction(g.n * tree_count(g, cap))
    return Fraction(sum(4 ** h.c for h in tu_subgraphs(g, cap)))


def cycles(g: SignedGraph) -> list[tuple[int, ...]]:
    """Every simple cycle as a sorted tuple of edge indices."""
    adj = g.adjacency_lists()
    found: set[tuple[int, ...]] = set()
    for s in range(1, g.n + 1):
        # cycles whose smallest vertex is s
        stack = [(s, [s], [])]
        while stack:
            x, vs, es = stack.pop()
            for y, k in adj[x]:
                if es and k == es[-1]:
                    continue
                if y == s and len(es) >= 2:
                    found.add(tuple(sorted(es + [k])))
                elif y > s and y not in vs:
                    stack.append((y, vs + [y], es + [k]))
    return sorted(found)


def negative_cycles(g: SignedGraph) -> list[tuple[int, ...]]:
    out = []
    for c in cycles(g):
        sign = 1
        for k in c:
            sign *= g.edges[k].sigma
        if sign == -1:
            out.append(c)
    return out


def count_unicyclic_c1(g: SignedGraph, cap: int | None = None) -> int:
    """Number of spanning negative-unicyclic subgraphs (TU-subgraphs with c = 1)."""
    if is_balanced(g):
        return 0
    return sum(1 for h in tu_subgraphs(g, cap) if h.c == 1)


__all__ = [
    "DEFAULT_CAP",
    "BalancedInputError",
    "Component",
    "EnumerationCapError",
    "SpanningTree",
    "TUSubgraph",
    "count_unicyclic_c1",
    "cycles",
    "negative_cycles",
    "matrix_tree_count",
    "spanning_trees",
    "tree_count",
    "tu_subgraphs",
    "vol_squared",
]
