import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signpinv import enumeration as en
from signpinv.generate import exhaustive, random_connected_graph
from signpinv.ratmat import det, rank
from signpinv.sgraph import (
    DisconnectedError,
    SignedEdge,
    incidence,
    is_balanced,
    laplacian,
)
from signpinv.verify import vol_squared_from_laplacian

from conftest import cycle_graph, make_graph, signed_graphs


def brute_trees(g):
    """Edge subsets of size n-1 whose incidence columns have rank n-1 in the
    unsigned sense, i.e. that connect every vertex."""
    out = []
    for sub in itertools.combinations(range(g.m), g.n - 1):
        h = g.subgraph(sub)
        if h.is_connected():
            out.append(sub)
    return out


def brute_tu(g):
    """Size-n edge subsets on which the incidence submatrix is invertible."""
    N = incidence(g)
    return [sub for sub in itertools.combinations(range(g.m), g.n)
            if rank(N.submatrix(range(g.n), sub)) == g.n]


def brute_vol2(g):
    N = incidence(g)
    r = rank(N)
    total = 0
    for rows in itertools.combinations(range(g.n), r):
        for cols in itertools.combinations(range(g.m), r):
            total += det(N.submatrix(rows, cols)) ** 2
    return total


class TestSpanningTrees:
    def test_tree_has_itself(self, tree7):
        assert [t.edge_indices for t in en.spanning_trees(tree7)] == [tuple(range(6))]

    @pytest.mark.parametrize("length", [3, 4, 5, 6])
    def test_balanced_cycle_has_length_many(self, length):
        g = cycle_graph(length, [1] * length)
        assert en.tree_count(g) == length

    def test_matrix_tree_on_bicyclic(self, bicyclic10a):
        assert en.tree_count(bicyclic10a) == en.matrix_tree_count(bicyclic10a)

    def test_single_vertex(self):
        g = make_graph(1, [])
        assert en.tree_count(g) == 1 == en.matrix_tree_count(g)

    def test_disconnected(self):
        with pytest.raises(DisconnectedError):
            en.spanning_trees(make_graph(3, [(1, 2, 1)]))

    @settings(max_examples=60, deadline=None)
    @given(signed_graphs())
    def test_matches_subset_filter(self, g):
        ts = en.spanning_trees(g)
        got = [t.edge_indices for t in ts]
        assert got == sorted(set(got))
        assert sorted(got) == brute_trees(g)
        assert len(ts) == en.matrix_tree_count(g)


class TestTUSubgraphs:
    def test_unicyclic9_is_its_own(self, unicyclic9):
        hs = en.tu_subgraphs(unicyclic9)
        assert len(hs) == 1 and hs[0].c == 1 and hs[0].edge_indices == tuple(range(9))

    def test_bicyclic10a(self, bicyclic10a):
        hs = en.tu_subgraphs(bicyclic10a)
        assert len(hs) == 3 and all(h.c == 1 for h in hs)

    def test_bicyclic10b(self, bicyclic10b):
        hs = en.tu_subgraphs(bicyclic10b)
        assert len(hs) == 8
        assert sorted(h.c for h in hs) == [1] * 7 + [2]

    def test_balanced_input_rejected(self, tree7):
        with pytest.raises(en.BalancedInputError):
            en.tu_subgraphs(tree7)

    def test_cap(self):
        rng = random.Random(3)
        g = random_connected_graph(rng, 8, 12)
        with pytest.raises(en.EnumerationCapError):
            en.spanning_trees(g, cap=11)
        assert en.spanning_trees(g, cap=12)

    @settings(max_examples=60, deadline=None)
    @given(signed_graphs())
    def test_matches_subset_filter_and_invariants(self, g):
        if is_balanced(g):
            return
        hs = en.tu_subgraphs(g)
        assert [h.edge_indices for h in hs] == brute_tu(g)
        N = incidence(g)
        for h in hs:
            cover = set()
            for comp in h.components:
                assert len(comp.vertices) == len(comp.edge_indices)
                part = g.subgraph(comp.edge_indices)
                assert len(en.cycles(part)) == 1
                assert len(en.negative_cycles(part)) == 1
                cover |= comp.vertices
            assert cover == set(range(1, g.n + 1))
            assert abs(det(N.submatrix(range(g.n), h.edge_indices))) == 2 ** h.c


class TestVolume:
    def test_reference_values(self, tree7, bicyclic10a, bicyclic10b):
        assert en.vol_squared(tree7) == 7
        assert en.vol_squared(bicyclic10a) == 12
        assert en.vol_squared(bicyclic10b) == 44

    def test_unbalanced_determinant(self, bicyclic10a, bicyclic10b, unicyclic9):
        for g in (bicyclic10a, bicyclic10b, unicyclic9):
            assert det(laplacian(g)) == en.vol_squared(g)

    @settings(max_examples=40, deadline=None)
    @given(signed_graphs(nmax=5, extra_max=2))
    def test_matches_sum_of_squared_minors(self, g):
        assert en.vol_squared(g) == brute_vol2(g) == vol_squared_from_laplacian(g)

    @settings(max_examples=60, deadline=None)
    @given(signed_graphs(), st.integers(0, 2**16))
    def test_invariant_under_eta_redraw(self, g, seed):
        rng = random.Random(seed)
        redrawn = []
        for e in g.edges:
            a = rng.choice((1, -1))
            redrawn.append(SignedEdge(e.u, e.v, e.sigma, a, -e.sigma * a))
        assert en.vol_squared(g.with_edges(redrawn)) == en.vol_squared(g)

    @settings(max_examples=60, deadline=None)
    @given(signed_graphs())
    def test_balanced_determinant_and_tree_count(self, g):
        if not is_balanced(g):
            return
        assert det(laplacian(g)) == 0
        assert en.vol_squared(g) == g.n * en.matrix_tree_count(g)


class TestDeterminantBound:
    def test_weighted_sum_bounds_unicyclic_count(self):
        for g in exhaustive(4):
            if g.n < 2 or is_balanced(g):
                continue
            assert en.vol_squared(g) >= 4 * en.count_unicyclic_c1(g)

    def test_equality_with_negative_cycles_iff_unicyclic(self):
        seen = 0
        for g in exhaustive(5):
            if g.n < 2 or is_balanced(g):
                continue
            seen += 1
            eq = det(laplacian(g)) == 4 * len(en.negative_cycles(g))
            assert eq == g.is_unicyclic(), g
        assert seen > 2000

    def test_bicyclic10a_counterexample_to_c1_reading(self, bicyclic10a):
        # every TU-subgraph has one component, yet the graph has two cycles
        assert en.vol_squared(bicyclic10a) == 4 * en.count_unicyclic_c1(bicyclic10a)
        assert not bicyclic10a.is_unicyclic()
        assert en.vol_squared(bicyclic10a) > 4 * len(en.negative_cycles(bicyclic10a))

    def test_cycles_of_theta_graph(self):
        g = make_graph(4, [(1, 2, 1), (2, 3, 1), (3, 4, -1), (4, 1, 1), (1, 3, 1)])
        assert len(en.cycles(g)) == 3
        assert len(en.negative_cycles(g)) == 2
