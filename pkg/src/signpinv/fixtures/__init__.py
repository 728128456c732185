"""Worked-example graphs shipped with the package.

``tree7`` and ``unicyclic9`` are derived from their reference incidence
matrices (kept here verbatim, rows = vertices 1..n, columns = edges in
order).  ``bicyclic10a`` and ``bicyclic10b`` were transcribed from edge
drawings: sign labels plus arrowheads, where an arrowhead pointing into a
vertex gives eta = -1 at that end.
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources

from ..ratmat import RatMatrix
from ..sgraph import SignedGraph, from_edge_list, incidence_to_graph, to_edge_list

TREE7_N = [
    [0, 1, 1, 0, 0, 1],
    [1, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, -1, -1],
    [0, 0, 0, -1, 0, 0],
    [1, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, -1, 0],
    [0, -1, 0, 0, 0, 0],
]

# 7 * N^+
TREE7_PINV_X7 = [
    [-2, 2, -2, 5, 5, 2, -2],
    [1, -1, 1, 1, 1, -1, -6],
    [3, 4, 3, -4, -4, -3, 3],
    [1, -1, 1, -6, 1, -1, 1],
    [-1, 1, -1, -1, -1, -6, -1],
    [2, -2, -5, 2, 2, 5, 2],
]

UNICYCLIC9_N = [
    [0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, -1, 0, 0, 0, 0],
    [1, -1, 0, 0, 0, 0, -1, 0, 1],
    [0, 0, 0, 1, 0, 1, 0, 1, 0],
    [0, -1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 1],
    [-1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 1, 0],
]

# 2 * N^-1
UNICYCLIC9_INV_X2 = [
    [0, 0, 0, 0, 0, 0, 0, -2, 0],
    [0, 0, 0, 0, 0, -2, 0, 0, 0],
    [2, 0, 0, 0, 0, 0, 0, 0, 0],
    [-2, 2, 2, 0, 0, 0, 0, 0, 0],
    [0, 0, -2, 0, 0, 0, 0, 0, 0],
    [1, -1, -1, -1, 1, 1, 1, -1, -1],
    [-1, 1, 1, -1, -1, 1, 1, -1, 1],
    [1, -1, -1, 1, 1, -1, -1, 1, 1],
    [-1, 1, 1, 1, -1, -1, 1, 1, 1],
]

NAMES = ("tree7", "unicyclic9", "bicyclic10a", "bicyclic10b")


def tree7_pinv() -> RatMatrix:
    return RatMatrix(TREE7_PINV_X7).scale(Fraction(1, 7))


def unicyclic9_inverse() -> RatMatrix:
    return RatMatrix(UNICYCLIC9_INV_X2).scale(Fraction(1, 2))


def generated_text(name: str) -> str:
    """Edge-list text regenerated from a reference incidence matrix."""
    src = {"tree7": TREE7_N, "unicyclic9": UNICYCLIC9_N}[name]
    return to_edge_list(incidence_to_graph(RatMatrix(src)))


def path(name: str):
    if name not in NAMES:
        raise KeyError(name)
    return resources.files(__package__).joinpath(f"{name}.txt")


def text(name: str) -> str:
    return path(name).read_text()


def load(name: str) -> SignedGraph:
    return from_edge_list(text(name))
