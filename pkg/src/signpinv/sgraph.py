"""Signed graphs with bidirected edges.

Vertices are ``1..n``; edges keep their input order because edge ``k``
indexes row ``k`` of the incidence pseudoinverse.  Every edge carries an
``eta`` value at each endpoint: ``+1`` when the arrowhead at that end
points out of the vertex, ``-1`` when it points in, with
``eta_u * eta_v == -sigma``.  This is the oriented-incidence convention
(a positive edge ``u -> v`` has column ``e_u - e_v``), which is the
opposite of the sign used in much of the signed-graph literature.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .ratmat import RatMatrix


class GraphError(ValueError):
    """Invalid graph data or an unmet structural precondition."""


class DisconnectedError(GraphError):
    pass


class UnbalancedError(GraphError):
    pass


class ParseError(GraphError):
    def __init__(self, msg: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno is not None else msg)


@dataclass(frozen=True)
class SignedEdge:
    u: int
    v: int
    sigma: int
    eta_u: int
    eta_v: int

    def __post_init__(self):
        if self.u == self.v:
            raise GraphError(f"loop at vertex {self.u}")
        for name in ("sigma", "eta_u", "eta_v"):
            if getattr(self, name) not in (1, -1):
                raise GraphError(f"{name} must be +1 or -1")
        if self.eta_u * self.eta_v != -self.sigma:
            raise GraphError(
                f"edge {{{self.u},{self.v}}}: eta product must equal -sigma = {-self.sigma}"
            )

    @classmethod
    def canonical(cls, u: int, v: int, sigma: int) -> "SignedEdge":
        """Default bidirection: positive edges point from the smaller to the
        larger endpoint, negative edges get ``+1`` at both ends."""
        if sigma == 1:
            lo = min(u, v)
            return cls(u, v, 1, 1 if u == lo else -1, -1 if u == lo else 1)
        return cls(u, v, -1, 1, 1)

    @property
    def ends(self) -> tuple[int, int]:
        return self.u, self.v

    def eta(self, x: int) -> int:
        if x == self.u:
            return self.eta_u
        if x == self.v:
            return self.eta_v
        raise GraphError(f"vertex {x} not on edge {{{self.u},{self.v}}}")

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u

    def flipped(self) -> "SignedEdge":
        """Same edge with both eta values negated."""
        return SignedEdge(self.u, self.v, self.sigma, -self.eta_u, -self.eta_v)


@dataclass(frozen=True)
class SignedGraph:
    n: int
    edges: tuple[SignedEdge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.n < 0:
            raise GraphError("negative vertex count")
        seen = set()
        for e in self.edges:
            if not (1 <= e.u <= self.n and 1 <= e.v <= self.n):
                raise GraphError(f"edge {{{e.u},{e.v}}} outside vertex range 1..{self.n}")
            key = frozenset(e.ends)
            if key in seen:
                raise GraphError(f"duplicate edge {{{e.u},{e.v}}}")
            seen.add(key)

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency_lists(self) -> list[list[tuple[int, int]]]:
        """``adj[v]`` lists ``(neighbor, edge_index)``; index 0 unused."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n + 1)]
        for k, e in enumerate(self.edges):
            adj[e.u].append((e.v, k))
            adj[e.v].append((e.u, k))
        return adj

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return len(_reach(self.adjacency_lists(), 1)) == self.n

    def require_connected(self) -> None:
        if not self.is_connected():
            raise DisconnectedError("graph is not connected")

    def subgraph(self, edge_indices: Iterable[int]) -> "SignedGraph":
        """Spanning subgraph on the given edges (order preserved)."""
        return SignedGraph(self.n, tuple(self.edges[k] for k in sorted(edge_indices)))

    def with_edges(self, edges: Sequence[SignedEdge]) -> "SignedGraph":
        return SignedGraph(self.n, tuple(edges))

    def is_tree(self) -> bool:
        return self.m == self.n - 1 and self.is_connected()

    def is_unicyclic(self) -> bool:
        return self.m == self.n and self.is_connected()


def _reach(adj, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y, _ in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


_SIGNS = {"+": 1, "-": -1, "+1": 1, "-1": -1, "1": 1}


def from_edge_list(text: str) -> SignedGraph:
    """Parse ``u v s [eta_u eta_v]`` lines; ``#`` starts a comment.

    An optional ``n <count>`` header fixes the vertex count, otherwise it is
    the largest vertex id seen.
    """
    n_header = None
    edges: list[SignedEdge] = []
    seen: dict[frozenset, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "n":
            if len(tok) != 2 or not tok[1].isdigit():
                raise ParseError("header must be 'n <count>'", lineno)
            if n_header is not None or edges:
                raise ParseError("header must come first and only once", lineno)
            n_header = int(tok[1])
            continue
        if len(tok) not in (3, 5):
            raise ParseError(f"expected 'u v s [eta_u eta_v]', got {line!r}", lineno)
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise ParseError(f"bad vertex id in {line!r}", lineno) from None
        if u < 1 or v < 1:
            raise ParseError("vertex ids start at 1", lineno)
        if tok[2] not in _SIGNS:
            raise ParseError(f"bad sign {tok[2]!r}", lineno)
        sigma = _SIGNS[tok[2]]
        if u == v:
            raise ParseError(f"loop at vertex {u}", lineno)
        key = frozenset((u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {{{u},{v}}} (first on line {seen[key]})", lineno)
        seen[key] = lineno
        if len(tok) == 5:
            try:
                eu, ev = int(tok[3]), int(tok[4])
            except ValueError:
                raise ParseError(f"bad eta values in {line!r}", lineno) from None
            try:
                edges.append(SignedEdge(u, v, sigma, eu, ev))
            except GraphError as exc:
                raise ParseError(str(exc), lineno) from None
        else:
            edges.append(SignedEdge.canonical(u, v, sigma))
    if n_header is None and not edges:
        raise ParseError("no edges and no 'n' header")
    n = max((max(e.ends) for e in edges), default=0)
    if n_header is not None:
        if n_header < n:
            raise ParseError(f"header n={n_header} but vertex {n} used")
        n = n_header
    return SignedGraph(n, tuple(edges))


def to_edge_list(g: SignedGraph) -> str:
    """Normalized text form: explicit header and explicit eta on every edge."""
    lines = [f"n {g.n}"]
    for e in g.edges:
        lines.append(f"{e.u} {e.v} {'+' if e.sigma == 1 else '-'} {e.eta_u} {e.eta_v}")
    return "\n".join(lines) + "\n"


def digest(g: SignedGraph) -> str:
    return hashlib.sha256(to_edge_list(g).encode()).hexdigest()


def incidence(g: SignedGraph) -> RatMatrix:
    z = Fraction(0)
    rows = [[z] * g.m for _ in range(g.n)]
    for k, e in enumerate(g.edges):
        rows[e.u - 1][k] = Fraction(e.eta_u)
        rows[e.v - 1][k] = Fraction(e.eta_v)
    return RatMatrix(rows, g.m)


def incidence_to_graph(N: RatMatrix) -> SignedGraph:
    """Read a graph off an incidence matrix (column k becomes edge k)."""
    edges = []
    for k in range(N.ncols):
        nz = [(i + 1, x) for i, x in enumerate(N.col(k)) if x]
        if len(nz) != 2 or any(x not in (1, -1) for _, x in nz):
            raise GraphError(f"column {k + 1} must have exactly two +-1 entries")
        (u, a), (v, b) = nz
        edges.append(SignedEdge(u, v, -int(a * b), int(a), int(b)))
    return SignedGraph(N.nrows, tuple(edges))


def adjacency(g: SignedGraph) -> RatMatrix:
    z = Fraction(0)
    rows = [[z] * g.n for _ in range(g.n)]
    for e in g.edges:
        rows[e.u - 1][e.v - 1] = rows[e.v - 1][e.u - 1] = Fraction(e.sigma)
    return RatMatrix(rows, g.n)


def laplacian(g: SignedGraph) -> RatMatrix:
    """``D - A`` with the signed adjacency matrix."""
    deg = [0] * (g.n + 1)
    for e in g.edges:
        deg[e.u] += 1
        deg[e.v] += 1
    A = adjacency(g)
    return RatMatrix(
        [[(deg[i + 1] if i == j else 0) - A[i, j] for j in range(g.n)] for i in range(g.n)],
        g.n,
    )


def switching_potential(g: SignedGraph) -> tuple[list[int], list[int], list[int]]:
    """BFS from vertex 1 assigning ``s[v]`` = sign of the tree path 1 -> v.

    Returns ``(s, parent_vertex, parent_edge)`` indexed by vertex (slot 0
    unused).  Requires a connected graph.
    """
    g.require_connected()
    adj = g.adjacency_lists()
    s = [0] * (g.n + 1)
    pv = [0] * (g.n + 1)
    pe = [-1] * (g.n + 1)
    if g.n == 0:
        return s, pv, pe
    s[1] = 1
    q = deque([1])
    while q:
        x = q.popleft()
        for y, k in adj[x]:
            if not s[y]:
                s[y] = s[x] * g.edges[k].sigma
                pv[y], pe[y] = x, k
                q.append(y)
    return s, pv, pe


def _tree_path_edges(a: int, b: int, pv: list[int], pe: list[int]) -> list[int]:
    depth = {}
    x, d = a, 0
    chain_a = []
    while x:
        depth[x] = d
        chain_a.append(x)
        x, d = pv[x], d + 1
    path_b = []
    x = b
    while x not in depth:
        path_b.append(pe[x])
        x = pv[x]
    lca = x
    path_a = []
    x = a
    while x != lca:
        path_a.append(pe[x])
        x = pv[x]
    return path_a + path_b[::-1]


def unbalanced_cycle(g: SignedGraph) -> list[int] | None:
    """Edge indices of a negative cycle, or ``None`` when balanced.

    Labels vertices by BFS-tree path sign; a non-tree edge whose sign
    disagrees with the labels of its ends closes a negative cycle.
    """
    s, pv, pe = switching_potential(g)
    tree = set(pe)
    for k, e in enumerate(g.edges):
        if k in tree:
            continue
        if s[e.u] * s[e.v] * e.sigma == -1:
            return sorted(_tree_path_edges(e.u, e.v, pv, pe) + [k])
    return None


def is_balanced(g: SignedGraph) -> bool:
    return unbalanced_cycle(g) is None


def path_sign_matrix(g: SignedGraph) -> RatMatrix:
    s, _, _ = switching_potential(g)
    if unbalanced_cycle(g) is not None:
        raise UnbalancedError("path signs are only defined for balanced graphs")
    return RatMatrix(
        [[s[i] * s[j] for j in range(1, g.n + 1)] for i in range(1, g.n + 1)], g.n
    )


def switch(g: SignedGraph, vertices: Iterable[int]) -> SignedGraph:
    """Switch at a vertex set: negate eta at every end lying in the set.

    Edges with exactly one end in the set change sign; the incidence matrix
    becomes ``D N`` for the diagonal +-1 matrix ``D`` of the set.
    """
    X = set(vertices)
    out = []
    for e in g.edges:
        a = -1 if e.u in X else 1
        b = -1 if e.v in X else 1
        out.append(SignedEdge(e.u, e.v, e.sigma * a * b, e.eta_u * a, e.eta_v * b))
    return g.with_edges(out)


def underlying_laplacian(g: SignedGraph) -> RatMatrix:
    """Laplacian of the unsigned underlying graph."""
    return laplacian(g.with_edges([SignedEdge.canonical(e.u, e.v, 1) for e in g.edges]))
