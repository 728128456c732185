import itertools
import random

import pytest
from hypothesis import strategies as st

from signpinv import fixtures
from signpinv.generate import random_connected_graph
from signpinv.sgraph import SignedEdge, SignedGraph


@pytest.fixture(scope="session")
def tree7():
    return fixtures.load("tree7")


@pytest.fixture(scope="session")
def unicyclic9():
    return fixtures.load("unicyclic9")


@pytest.fixture(scope="session")
def bicyclic10a():
    return fixtures.load("bicyclic10a")


@pytest.fixture(scope="session")
def bicyclic10b():
    return fixtures.load("bicyclic10b")


@st.composite
def signed_graphs(draw, nmin=2, nmax=6, extra_max=3):
    """Connected signed graphs with random signs and random bidirections."""
    n = draw(st.integers(nmin, nmax))
    m = draw(st.integers(n - 1, min(n * (n - 1) // 2, n - 1 + extra_max)))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_connected_graph(random.Random(seed), n, m)


def make_graph(n, triples):
    """``triples`` of (u, v, sigma) with canonical bidirection."""
    return SignedGraph(n, tuple(SignedEdge.canonical(u, v, s) for u, v, s in triples))


def cycle_graph(n, signs):
    return make_graph(n, [(i, i % n + 1, s) for i, s in zip(range(1, n + 1), signs)])


def leibniz_det(rows):
    """Determinant by permutation expansion; independent of elimination."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i, p in enumerate(perm):
            prod *= rows[i][p]
            if not prod:
                break
        total += -prod if inv % 2 else prod
    return total
