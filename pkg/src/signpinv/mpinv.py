"""Combinatorial Moore-Penrose inverses of signed incidence and Laplacian matrices.

The building blocks are closed forms for a signed tree and for a unicyclic
graph with a negative cycle.  A general connected graph averages them: over
spanning trees (uniform weights) when balanced, over TU-subgraphs with
weight ``4**c(H)`` when unbalanced.  Every public routine checks its result
against the four Penrose conditions before returning it.

Sizes and signs are accumulated as Python integers with a common
denominator and only turned into fractions at the end.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import enumeration as en
from .ratmat import RatMatrix, penrose_verify, pinv_oracle
from .sgraph import (
    GraphError,
    SignedEdge,
    SignedGraph,
    UnbalancedError,
    incidence,
    is_balanced,
    laplacian,
    path_sign_matrix,
)

METHODS = (
    "tree-formula",
    "unicyclic-inverse",
    "balanced-unicyclic",
    "general-balanced",
    "general-unbalanced",
    "oracle",
)


class FormulaCheckError(AssertionError):
    """A combinatorial result failed exact verification.  Never expected."""


@dataclass(frozen=True)
class HeadTailSplit:
    edge: int
    head_vertices: frozenset[int]
    tail_vertices: frozenset[int]


@dataclass(frozen=True)
class PinvReport:
    matrix: RatMatrix
    method: str
    penrose_ok: tuple[bool, bool, bool, bool]

    @property
    def ok(self) -> bool:
        return all(self.penrose_ok)


def edge_weight_w(e: SignedEdge) -> int:
    """-1 for a negative edge whose arrowheads both point in, else +1."""
    return -1 if e.sigma == -1 and e.eta_u == -1 and e.eta_v == -1 else 1


def head_end(e: SignedEdge) -> int:
    """Endpoint that determines the head side of ``e``.

    Positive edges: the end the arrow points into (eta = -1).  Negative
    edges: the larger vertex id.
    """
    if e.sigma == 1:
        return e.u if e.eta_u == -1 else e.v
    return max(e.u, e.v)


def tail_end(e: SignedEdge) -> int:
    return e.other(head_end(e))


def _verified(a: RatMatrix, x: RatMatrix, method: str) -> PinvReport:
    flags = penrose_verify(a, x)
    if not all(flags):
        raise FormulaCheckError(f"{method} failed Penrose conditions: {flags}")
    return PinvReport(x, method, flags)


def _frac_matrix(num: list[list[int]], den: int, ncols: int) -> RatMatrix:
    return RatMatrix._raw(tuple(tuple(Fraction(x, den) for x in r) for r in num), ncols)


# --- rooted forest helper -------------------------------------------------

class _Rooted:
    """A tree (given as edge indices of ``g``) rooted at ``root``.

    ``pot[v]`` is the sign of the path root -> v; ``par_edge[v]`` the edge to
    the parent; ``tin/tout`` an Euler interval so ``x`` is in the subtree of
    ``c`` iff ``tin[c] <= tin[x] < tout[c]``.
    """

    __slots__ = ("order", "pot", "par", "par_edge", "tin", "tout", "size")

    def __init__(self, edges: tuple[SignedEdge, ...], tree_edges: Iterable[int],
                 root: int, nmax: int):
        adj: dict[int, list[tuple[int, int]]] = {}
        for k in tree_edges:
            e = edges[k]
            adj.setdefault(e.u, []).append((e.v, k))
            adj.setdefault(e.v, []).append((e.u, k))
        pot = [0] * (nmax + 1)
        par = [0] * (nmax + 1)
        par_edge = [-1] * (nmax + 1)
        tin = [0] * (nmax + 1)
        tout = [0] * (nmax + 1)
        size = [0] * (nmax + 1)
        order: list[int] = []
        pot[root] = 1
        # iterative DFS preorder
        stack = [(root, iter(adj.get(root, ())))]
        order.append(root)
        t = 1
        tin[root] = 0
        while stack:
            x, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                tout[x] = t
                stack.pop()
                continue
            y, k = nxt
            if y == par[x] and k == par_edge[x]:
                continue
            par[y], par_edge[y] = x, k
            pot[y] = pot[x] * edges[k].sigma
            tin[y] = t
            t += 1
            order.append(y)
            stack.append((y, iter(adj.get(y, ()))))
        for x in reversed(order):
            size[x] = tout[x] - tin[x]
        self.order, self.pot, self.par, self.par_edge = order, pot, par, par_edge
        self.tin, self.tout, self.size = tin, tout, size

    def inside(self, x: int, c: int) -> bool:
        return self.tin[c] <= self.tin[x] < self.tout[c]


def _child(rt: _Rooted, k: int, e: SignedEdge) -> int:
    return e.v if rt.par_edge[e.v] == k else e.u


# --- trees ----------------------------------------------------------------

def head_tail(tree: SignedGraph, e: int) -> HeadTailSplit:
    if not tree.is_tree():
        raise GraphError("head/tail split needs a tree")
    if not 0 <= e < tree.m:
        raise GraphError(f"edge index {e} not in tree")
    edge = tree.edges[e]
    rt = _Rooted(tree.edges, range(tree.m), 1, tree.n)
    c = _child(rt, e, edge)
    side_c = frozenset(x for x in range(1, tree.n + 1) if rt.inside(x, c))
    other = frozenset(range(1, tree.n + 1)) - side_c
    h = head_end(edge)
    return HeadTailSplit(e, side_c if h in side_c else other, other if h in side_c else side_c)


def _tree_rows(g: SignedGraph, tree_edges: tuple[int, ...], n: int) -> dict[int, list[int]]:
    """``n`` times the tree-formula rows of ``N_T^+`` keyed by edge index.

    Entry for vertex j:  w * s * |T_h|           if j on the tail side,
                         w * s * (-sigma) * |T_t| if j on the head side,
    where s is the sign of the path from the nearer end of the edge to j.
    """
    edges = g.edges
    rt = _Rooted(edges, tree_edges, 1, n)
    pot, tin, tout = rt.pot, rt.tin, rt.tout
    out = {}
    for k in tree_edges:
        e = edges[k]
        c = _child(rt, k, e)
        p = e.other(c)
        sub = rt.size[c]
        lo, hi = tin[c], tout[c]
        head_in_sub = head_end(e) == c
        size_h = sub if head_in_sub else n - sub
        size_t = n - size_h
        w = edge_weight_w(e)
        on_head = w * -e.sigma * size_t
        on_tail = w * size_h
        pc, pp = pot[c], pot[p]
        row = [0] * n
        for j in range(1, n + 1):
            if lo <= tin[j] < hi:
                s = pc * pot[j]
                row[j - 1] = s * (on_head if head_in_sub else on_tail)
            else:
                s = pp * pot[j]
                row[j - 1] = s * (on_tail if head_in_sub else on_head)
        out[k] = row
    return out


def tree_pinv(g: SignedGraph) -> PinvReport:
    if g.n < 2 or not g.is_tree():
        raise GraphError("tree formula needs a connected tree on at least 2 vertices")
    rows = _tree_rows(g, tuple(range(g.m)), g.n)
    X = _frac_matrix([rows[k] for k in range(g.m)], g.n, g.n)
    return _verified(incidence(g), X, "tree-formula")


# --- unicyclic with a negative cycle ---------------------------------------

def _cycle_edges(edges, comp_edges: tuple[int, ...]) -> list[int]:
    """The unique cycle of a unicyclic edge set, by pruning leaves."""
    deg: dict[int, int] = {}
    inc: dict[int, list[int]] = {}
    for k in comp_edges:
        for x in edges[k].ends:
            deg[x] = deg.get(x, 0) + 1
            inc.setdefault(x, []).append(k)
    alive = set(comp_edges)
    leaves = deque(x for x, d in deg.items() if d == 1)
    while leaves:
        x = leaves.popleft()
        for k in inc[x]:
            if k in alive:
                alive.discard(k)
                y = edges[k].other(x)
                deg[y] -= 1
                if deg[y] == 1:
                    leaves.append(y)
    return sorted(alive)


def _unicyclic_rows(g: SignedGraph, vertices: Iterable[int],
                    comp_edges: tuple[int, ...]) -> dict[int, dict[int, int]]:
    """Twice the rows of the inverse incidence matrix of one negative unicyclic part.

    Returns ``{edge: {vertex: 2 * entry}}`` with zero entries omitted.
    Cycle edge e:        w * sgn(path tail(e) -> j in U - e) / 2   for every j.
    Off-cycle edge e:    0 for j on the cycle side; for j on the far side
                         w * sgn(P_{e-j}), negated when e is positive and
                         its head lies on the far side.
    """
    edges = g.edges
    vertices = sorted(vertices)
    cyc = _cycle_edges(edges, comp_edges)
    cyc_set = set(cyc)
    nmax = g.n
    out: dict[int, dict[int, int]] = {}
    for k in cyc:
        e = edges[k]
        t = tail_end(e)
        rt = _Rooted(edges, [q for q in comp_edges if q != k], t, nmax)
        w = edge_weight_w(e)
        out[k] = {j: w * rt.pot[j] for j in vertices}
    off = [q for q in comp_edges if q not in cyc_set]
    if off:
        # root each hanging tree at its cycle vertex: any cycle vertex works
        # as root of U minus one cycle edge
        root = edges[cyc[0]].u
        rt = _Rooted(edges, [q for q in comp_edges if q != cyc[0]], root, nmax)
        for k in off:
            e = edges[k]
            c = _child(rt, k, e)  # far (non-cycle) side is the subtree of c
            w = edge_weight_w(e)
            sign = -1 if (e.sigma == 1 and head_end(e) == c) else 1
            pc = rt.pot[c]
            out[k] = {j: 2 * w * sign * pc * rt.pot[j]
                      for j in vertices if rt.inside(j, c)}
    return out


def unbalanced_unicyclic_inverse(g: SignedGraph) -> PinvReport:
    if not g.is_unicyclic():
        raise GraphError("graph is not connected unicyclic")
    if is_balanced(g):
        raise GraphError("unicyclic inverse needs a negative cycle")
    rows = _unicyclic_rows(g, range(1, g.n + 1), tuple(range(g.m)))
    num = [[rows[k].get(j, 0) for j in range(1, g.n + 1)] for k in range(g.m)]
    X = _frac_matrix(num, 2, g.n)
    N = incidence(g)
    if X @ N != RatMatrix.identity(g.n):
        raise FormulaCheckError("unicyclic inverse does not invert N")
    return _verified(N, X, "unicyclic-inverse")


# --- balanced unicyclic ----------------------------------------------------

def balanced_unicyclic_pinv(g: SignedGraph) -> PinvReport:
    """Closed form using the |C| spanning trees ``G - e_k`` for cycle edges e_k.

    Off-cycle rows are the single-tree formula (every spanning tree splits an
    off-cycle edge the same way).  A cycle-edge row sums the tree formula over
    the |C| - 1 trees that keep it; the path-sign factor is taken per tree
    because the nearer end of the edge can change from tree to tree.
    """
    if not g.is_unicyclic():
        raise GraphError("graph is not connected unicyclic")
    if not is_balanced(g):
        raise GraphError("balanced-unicyclic formula needs a balanced graph")
    n, m = g.n, g.m
    cyc = _cycle_edges(g.edges, tuple(range(m)))
    L = len(cyc)
    cyc_set = set(cyc)
    num = [[0] * n for _ in range(m)]
    base = _tree_rows(g, tuple(k for k in range(m) if k != cyc[0]), n)
    for k in range(m):
        if k not in cyc_set:
            num[k] = [L * x for x in base[k]]
    for drop in cyc:
        rows = _tree_rows(g, tuple(k for k in range(m) if k != drop), n)
        for k in cyc:
            if k != drop:
                num[k] = [a + b for a, b in zip(num[k], rows[k])]
    X = _frac_matrix(num, n * L, n)
    return _verified(incidence(g), X, "balanced-unicyclic")


# --- general graphs --------------------------------------------------------

def _degenerate(g: SignedGraph) -> RatMatrix | None:
    if g.n <= 1:
        return RatMatrix.zeros(g.m, g.n)
    return None


def _general_balanced_matrix(g: SignedGraph, cap=None) -> tuple[RatMatrix, int]:
    n, m = g.n, g.m
    trees = en.spanning_trees(g, cap)
    num = [[0] * n for _ in range(m)]
    for t in trees:
        for k, row in _tree_rows(g, t.edge_indices, n).items():
            acc = num[k]
            for j, x in enumerate(row):
                if x:
                    acc[j] += x
    return _frac_matrix(num, n * len(trees), n), len(trees)


def _tu_inverse_rows(g: SignedGraph, h: en.TUSubgraph) -> dict[int, dict[int, int]]:
    rows: dict[int, dict[int, int]] = {}
    for comp in h.components:
        rows.update(_unicyclic_rows(g, comp.vertices, comp.edge_indices))
    return rows


def _general_unbalanced_matrix(g: SignedGraph, cap=None) -> tuple[RatMatrix, int]:
    n, m = g.n, g.m
    hs = en.tu_subgraphs(g, cap)
    num = [[0] * n for _ in range(m)]
    total = 0
    for h in hs:
        wt = 4 ** h.c
        total += wt
        for k, row in _tu_inverse_rows(g, h).items():
            acc = num[k]
            for j, x in row.items():
                acc[j - 1] += wt * x
    return _frac_matrix(num, 2 * total, n), total


def general_pinv(g: SignedGraph, cap: int | None = None) -> PinvReport:
    g.require_connected()
    N = incidence(g)
    deg = _degenerate(g)
    if deg is not None:
        return _verified(N, deg, "general-balanced")
    if is_balanced(g):
        X, _ = _general_balanced_matrix(g, cap)
        return _verified(N, X, "general-balanced")
    X, _ = _general_unbalanced_matrix(g, cap)
    return _verified(N, X, "general-unbalanced")


def oracle_pinv(g: SignedGraph) -> PinvReport:
    N = incidence(g)
    X = pinv_oracle(N)
    return PinvReport(X, "oracle", penrose_verify(N, X))


def pinv(g: SignedGraph, method: str = "auto", cap: int | None = None) -> PinvReport:
    """Dispatch: ``auto`` picks the most specific formula for ``g``."""
    if method == "oracle":
        return oracle_pinv(g)
    if method == "tree":
        return tree_pinv(g)
    if method == "unicyclic":
        if not g.is_unicyclic():
            raise GraphError("graph is not connected unicyclic")
        return balanced_unicyclic_pinv(g) if is_balanced(g) else unbalanced_unicyclic_inverse(g)
    if method == "general":
        return general_pinv(g, cap)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    g.require_connected()
    if g.n >= 2 and g.is_tree():
        return tree_pinv(g)
    if g.n >= 2 and g.is_unicyclic():
        return pinv(g, "unicyclic")
    return general_pinv(g, cap)


def projector(g: SignedGraph, cap: int | None = None,
              npinv: RatMatrix | None = None) -> RatMatrix:
    """``N N^+``: the identity when unbalanced, ``I - S/n`` when balanced.

    The closed form is checked against ``N @ npinv`` (computed with
    :func:`general_pinv` when not supplied).
    """
    g.require_connected()
    n = g.n
    if is_balanced(g):
        S = path_sign_matrix(g)
        P = RatMatrix.identity(n) - S.scale(Fraction(1, n))
    else:
        P = RatMatrix.identity(n)
    if npinv is None:
        npinv = general_pinv(g, cap).matrix
    if incidence(g) @ npinv != P:
        raise FormulaCheckError("projector identity failed")
    return P


# --- Laplacian -------------------------------------------------------------

def psi(i_tail_r: bool, j_tail_s: bool, size_h_r: int, size_t_r: int,
        size_h_s: int, size_t_s: int, sigma: int) -> int:
    """Product of the tree-formula magnitudes for vertex i in tree T_r and j in T_s."""
    a = size_h_r if i_tail_r else -sigma * size_t_r
    b = size_h_s if j_tail_s else -sigma * size_t_s
    return a * b


# trees^2 * edges * n^2 budget for the literal double sum
PSI_BUDGET = 400_000


def _psi_double_sum(g: SignedGraph, trees: list[en.SpanningTree]) -> RatMatrix:
    """``L^+`` from the pairwise tree double sum, term by term."""
    n, edges = g.n, g.edges
    info = []  # per tree: {k: (child, head_in_sub, sub, rt)}
    for t in trees:
        rt = _Rooted(edges, t.edge_indices, 1, n)
        d = {}
        for k in t.edge_indices:
            e = edges[k]
            c = _child(rt, k, e)
            sub = rt.size[c]
            hin = head_end(e) == c
            sh = sub if hin else n - sub
            d[k] = (c, hin, sh, n - sh, rt)
        info.append(d)

    tot = [[0] * n for _ in range(n)]
    for k, e in enumerate(edges):
        w2 = edge_weight_w(e) ** 2
        having = [d[k] for d in info if k in d]
        for er in having:
            for es in having:
                cr, hinr, shr, str_, rtr = er
                cs, hins, shs, sts, rts = es
                pr, ps = e.other(cr), e.other(cs)
                for i in range(1, n + 1):
                    ir = rtr.inside(i, cr)
                    sgn_i = rtr.pot[cr if ir else pr] * rtr.pot[i]
                    i_tail = ir != hinr
                    for j in range(1, n + 1):
                        js = rts.inside(j, cs)
                        sgn_j = rts.pot[cs if js else ps] * rts.pot[j]
                        j_tail = js != hins
                        tot[i - 1][j - 1] += w2 * sgn_i * sgn_j * psi(
                            i_tail, j_tail, shr, str_, shs, sts, e.sigma)
    den = n * n * len(trees) ** 2
    return _frac_matrix(tot, den, n)


def laplacian_pinv(g: SignedGraph, cap: int | None = None,
                   psi_check: bool | None = None,
                   npinv: PinvReport | None = None) -> PinvReport:
    """``L^+ = (N^+)^T N^+`` from the combinatorial ``N^+``.

    For balanced graphs the result is also compared against the pairwise
    spanning-tree double sum when that sum is small enough to expand
    (``psi_check=None``), always (``True``) or never (``False``).
    """
    g.require_connected()
    L = laplacian(g)
    if g.n <= 1:
        return _verified(L, RatMatrix.zeros(g.n, g.n), "general-balanced")
    rep = npinv if npinv is not None else general_pinv(g, cap)
    X = rep.matrix.T @ rep.matrix
    if is_balanced(g):
        if psi_check is None:
            trees = en.spanning_trees(g, cap)
            psi_check = len(trees) ** 2 * g.m * g.n ** 2 <= PSI_BUDGET
        if psi_check:
            Y = _psi_double_sum(g, en.spanning_trees(g, cap))
            if Y != X:
                raise FormulaCheckError("tree double sum disagrees with (N^+)^T N^+")
    return _verified(L, X, rep.method)


def signed_resistance(g: SignedGraph, cap: int | None = None) -> RatMatrix:
    """``r_ij = l_ii + l_jj - 2 sgn(P_ij) l_ij`` from ``L^+`` (balanced graphs).

    The identity with graph distance on trees is a conjecture-backed claim,
    checked by the test-suite rather than assumed.
    """
    g.require_connected()
    if not is_balanced(g):
        raise UnbalancedError("signed resistance needs path signs, i.e. a balanced graph")
    S = path_sign_matrix(g)
    Lp = laplacian_pinv(g, cap).matrix
    n = g.n
    return RatMatrix(
        [[Lp[i, i] + Lp[j, j] - 2 * S[i, j] * Lp[i, j] for j in range(n)] for i in range(n)], n
    )
