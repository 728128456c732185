import pytest

from signpinv import fixtures
from signpinv.ratmat import RatMatrix
from signpinv.sgraph import from_edge_list, incidence, is_balanced


@pytest.mark.parametrize("name", ["tree7", "unicyclic9"])
def test_file_is_regenerated_from_matrix(name):
    assert fixtures.text(name) == fixtures.generated_text(name)


def test_matrices_round_trip():
    assert incidence(fixtures.load("tree7")) == RatMatrix(fixtures.TREE7_N)
    assert incidence(fixtures.load("unicyclic9")) == RatMatrix(fixtures.UNICYCLIC9_N)


@pytest.mark.parametrize("name", ["bicyclic10a", "bicyclic10b"])
def test_bicyclic_shape(name):
    g = fixtures.load(name)
    assert (g.n, g.m) == (9, 10)
    assert g.is_connected() and not is_balanced(g)


def test_bicyclic_fixtures_differ_only_in_signs():
    a, b = fixtures.load("bicyclic10a"), fixtures.load("bicyclic10b")
    signs = lambda g: {tuple(sorted(e.ends)): e.sigma for e in g.edges}
    sa, sb = signs(a), signs(b)
    assert sa.keys() == sb.keys()
    assert sorted(k for k in sa if sa[k] != sb[k]) == [(1, 3)]


def test_unknown_name():
    with pytest.raises(KeyError):
        fixtures.path("nope")


def test_every_name_loads():
    for name in fixtures.NAMES:
        assert from_edge_list(fixtures.text(name)) == fixtures.load(name)
