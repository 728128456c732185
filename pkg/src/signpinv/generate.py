"""Graph families for verification sweeps."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterator

from .sgraph import GraphError, SignedEdge, SignedGraph


def _edge(u: int, v: int, sigma: int, rng: random.Random | None) -> SignedEdge:
    if rng is None:
        return SignedEdge.canonical(u, v, sigma)
    a = rng.choice((1, -1))
    return SignedEdge(u, v, sigma, a, -sigma * a)


def random_connected_graph(rng: random.Random, n: int, m: int, *,
                           random_eta: bool = True, p_negative: float = 0.5) -> SignedGraph:
    """Uniformly random signs on a random connected simple graph.

    A random recursive tree guarantees connectivity; the remaining
    ``m - n + 1`` edges are drawn without replacement from the other pairs.
    """
    if n < 1 or not n - 1 <= m <= n * (n - 1) // 2:
        raise GraphError(f"no connected simple graph with n={n}, m={m}")
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    pairs = set()
    for i in range(1, n):
        pairs.add(frozenset((perm[i], perm[rng.randrange(i)])))
    rest = [frozenset(p) for p in itertools.combinations(range(1, n + 1), 2)
            if frozenset(p) not in pairs]
    pairs.update(rng.sample(rest, m - (n - 1)))
    order = sorted(tuple(sorted(p)) for p in pairs)
    rng.shuffle(order)
    edges = []
    for u, v in order:
        if rng.random() < 0.5:
            u, v = v, u
        sigma = -1 if rng.random() < p_negative else 1
        edges.append(_edge(u, v, sigma, rng if random_eta else None))
    return SignedGraph(n, tuple(edges))


def random_tree(rng: random.Random, n: int, **kw) -> SignedGraph:
    return random_connected_graph(rng, n, n - 1, **kw)


def random_balanced_graph(rng: random.Random, n: int, m: int, *,
                          random_eta: bool = True) -> SignedGraph:
    """Random connected graph whose signs come from a random vertex 2-colouring."""
    g = random_connected_graph(rng, n, m, random_eta=False)
    side = {v: rng.choice((1, -1)) for v in range(1, n + 1)}
    return g.with_edges([_edge(e.u, e.v, side[e.u] * side[e.v], rng if random_eta else None)
                         for e in g.edges])


@lru_cache(maxsize=None)
def connected_shapes(nmax: int) -> tuple[tuple[int, tuple[tuple[int, int], ...]], ...]:
    """Connected simple graphs on 1..nmax vertices, one per isomorphism class."""
    import networkx as nx

    if nmax > 7:
        raise GraphError("the graph atlas only covers up to 7 vertices")
    out = []
    for G in nx.graph_atlas_g():
        k = G.number_of_nodes()
        if 1 <= k <= nmax and nx.is_connected(G):
            out.append((k, tuple(sorted((u + 1, v + 1) for u, v in G.edges()))))
    return tuple(out)


def all_sign_patterns(n: int, pairs, random_eta_rng: random.Random | None = None
                      ) -> Iterator[SignedGraph]:
    for signs in itertools.product((1, -1), repeat=len(pairs)):
        yield SignedGraph(n, tuple(_edge(u, v, s, random_eta_rng)
                                   for (u, v), s in zip(pairs, signs)))


def exhaustive(nmax: int, max_edges: int | None = None) -> Iterator[SignedGraph]:
    """Every connected signed graph on at most ``nmax`` vertices, up to
    isomorphism of the underlying graph, with every sign pattern and the
    canonical bidirection."""
    for n, pairs in connected_shapes(nmax):
        if max_edges is not None and len(pairs) > max_edges:
            continue
        yield from all_sign_patterns(n, pairs)
