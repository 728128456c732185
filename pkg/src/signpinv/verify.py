"""Invariant suite: combinatorial formulas against exact linear algebra."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import enumeration as en
from . import mpinv
from .ratmat import RatMatrix, det, penrose_verify, pinv_oracle
from .sgraph import SignedGraph, incidence, is_balanced, laplacian, to_edge_list


def distance_matrix(g: SignedGraph) -> RatMatrix:
    adj = g.adjacency_lists()
    rows = []
    for s in range(1, g.n + 1):
        d = {s: 0}
        q = deque([s])
        while q:
            x = q.popleft()
            for y, _ in adj[x]:
                if y not in d:
                    d[y] = d[x] + 1
                    q.append(y)
        rows.append([d[v] for v in range(1, g.n + 1)])
    return RatMatrix(rows, g.n)


def vol_squared_from_laplacian(g: SignedGraph) -> Fraction:
    """Sum of squared maximal minors of N via Cauchy-Binet on L = N N^T.

    For rank n this is det(L); for rank n-1 it is the sum of the principal
    (n-1)-minors of L.
    """
    L = laplacian(g)
    if not is_balanced(g):
        return det(L)
    idx = range(g.n)
    return sum((det(L.submatrix([i for i in idx if i != k], [i for i in idx if i != k]))
                for k in idx), Fraction(0))


@dataclass
class GraphCheck:
    graph: SignedGraph
    balanced: bool
    method: str
    checks: dict[str, bool] = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) and not self.errors

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v] + self.errors


def check_graph(g: SignedGraph, cap: int | None = None) -> GraphCheck:
    """Run every applicable invariant on one connected graph."""
    bal = is_balanced(g)
    res = GraphCheck(g, bal, "")
    c = res.checks
    N = incidence(g)
    try:
        rep = mpinv.general_pinv(g, cap)
    except mpinv.FormulaCheckError as exc:
        res.errors.append(f"general_pinv: {exc}")
        return res
    res.method = rep.method
    X = rep.matrix
    c["pinv_equals_oracle"] = X == pinv_oracle(N)
    c["penrose"] = all(penrose_verify(N, X))
    try:
        P = mpinv.projector(g, cap, npinv=X)
        c["projector"] = P @ P == P and P @ N == N
    except mpinv.FormulaCheckError:
        c["projector"] = False
    try:
        lrep = mpinv.laplacian_pinv(g, cap, npinv=rep)
        c["laplacian_penrose"] = lrep.ok
        L = laplacian(g)
        if bal:
            c["laplacian_range"] = lrep.matrix @ L == P
        else:
            c["laplacian_inverse"] = lrep.matrix @ L == RatMatrix.identity(g.n)
    except mpinv.FormulaCheckError as exc:
        res.errors.append(f"laplacian_pinv: {exc}")
        lrep = None

    # determinant / volume identities
    vol = en.vol_squared(g, cap)
    c["vol_cauchy_binet"] = vol == vol_squared_from_laplacian(g)
    dL = det(laplacian(g))
    if bal:
        tau = en.tree_count(g, cap)
        c["det_L_zero"] = dL == 0
        c["vol_n_tau"] = vol == g.n * tau
        c["tau_matrix_tree"] = tau == en.matrix_tree_count(g)
    else:
        hs = en.tu_subgraphs(g, cap)
        c["det_L_vol"] = dL == vol == sum(4 ** h.c for h in hs)
        c["det_L_ge_4_neg_cycles"] = dL >= 4 * len(en.negative_cycles(g))

    # specialised closed forms
    if g.n >= 2 and g.is_tree():
        c["tree_formula"] = mpinv.tree_pinv(g).matrix == X
    elif g.n >= 2 and g.is_unicyclic():
        f = mpinv.balanced_unicyclic_pinv if bal else mpinv.unbalanced_unicyclic_inverse
        c["unicyclic_formula"] = f(g).matrix == X

    if bal and lrep is not None:
        R = mpinv.signed_resistance(g, cap)
        c["resistance_shape"] = R.is_symmetric() and all(R[i, i] == 0 for i in range(g.n))
        if g.is_tree():
            c["resistance_tree_distance"] = R == distance_matrix(g)
    return res


@dataclass
class SweepSummary:
    graphs: int = 0
    balanced: int = 0
    failures: list[GraphCheck] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, r: GraphCheck) -> None:
        self.graphs += 1
        self.balanced += r.balanced
        for k in r.checks:
            self.counts[k] = self.counts.get(k, 0) + 1
        if not r.ok:
            self.failures.append(r)

    def as_dict(self) -> dict:
        return {
            "graphs": self.graphs,
            "balanced": self.balanced,
            "unbalanced": self.graphs - self.balanced,
            "checks_run": dict(sorted(self.counts.items())),
            "failures": [
                {"graph": to_edge_list(f.graph), "failed": f.failures()} for f in self.failures
            ],
            "ok": self.ok,
        }


def sweep(graphs: Iterable[SignedGraph], cap: int | None = None) -> SweepSummary:
    s = SweepSummary()
    for g in graphs:
        s.add(check_graph(g, cap))
    return s
