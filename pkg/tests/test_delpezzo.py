import itertools

import pytest
from hypothesis import given, strategies as st

from k3audit.delpezzo import (
    DivisorClass,
    Graph,
    LatticeError,
    PicardLattice,
    anticanonical_dim,
    blowdown_selfint,
    emit_classes,
    emit_dot,
    emit_graph_text,
    genus_of_class,
    graph_automorphisms,
    graph_stats,
    intersection_graph,
    minus_one_classes,
    pairing,
    reflect,
    simple_roots,
    weyl_orbit,
)

EXCEPTIONAL_COUNTS = {1: 240, 2: 56, 3: 27, 4: 16, 5: 10, 6: 6, 7: 3, 8: 1, 9: 0}


def brute_minus_one(k, amax=6):
    """Direct search over a box for a H - sum b_i E_i with square -1 and K-degree -1."""
    out = set()
    for a in range(amax + 1):
        for b in itertools.product(range(-1, amax + 1), repeat=k):
            if a * a - sum(x * x for x in b) == -1 and 3 * a - sum(b) == 1:
                out.add((a,) + b)
    return out


@pytest.mark.parametrize("d, count", sorted(EXCEPTIONAL_COUNTS.items()))
def test_exceptional_counts(d, count):
    assert len(minus_one_classes(PicardLattice(d))) == count


@pytest.mark.parametrize("d", [4, 5, 6, 7, 8])
def test_exceptional_classes_match_box_search(d):
    lat = PicardLattice(d)
    assert {c.coeffs for c in minus_one_classes(lat)} == brute_minus_one(lat.blown_up)


def test_classes_are_rational_curves():
    lat = PicardLattice(3)
    assert all(genus_of_class(c, lat) == 0 for c in minus_one_classes(lat))
    assert genus_of_class(-lat.K, lat) == 1


def test_lattice_basics():
    lat = PicardLattice(6)
    assert lat.rank == 4 and lat.signature() == (1, 3)
    assert pairing(lat.K, lat.K, lat) == 6
    assert pairing(lat.E(1), lat.E(1), lat) == -1
    assert lat.labels() == ["H", "E1", "E2", "E3"]
    q = PicardLattice.p1xp1()
    assert pairing(q.K, q.K, q) == 8 and minus_one_classes(q) == []
    with pytest.raises(LatticeError):
        PicardLattice(10)
    with pytest.raises(LatticeError):
        PicardLattice(5, quadric=True)
    with pytest.raises(LatticeError):
        lat.E(4)
    with pytest.raises(LatticeError):
        pairing(DivisorClass((1, 0)), lat.K, lat)


def petersen():
    verts = list(itertools.combinations(range(5), 2))
    edges = {(i, j): 1 for i, j in itertools.combinations(range(10), 2) if not set(verts[i]) & set(verts[j])}
    return Graph(verts, edges)


def test_degree_five_graph_is_petersen():
    lat = PicardLattice(5)
    st_ = graph_stats(intersection_graph(minus_one_classes(lat), lat))
    ref = graph_stats(petersen())
    assert (st_.vertices, st_.edges, st_.regular_degree, st_.girth, st_.automorphisms) == (10, 15, 3, 5, 120)
    assert (ref.edges, ref.regular_degree, ref.girth, ref.automorphisms) == (15, 3, 5, 120)
    assert st_.edge_weights == {1: 15}


def test_automorphism_search_cap():
    lat = PicardLattice(4)
    g = intersection_graph(minus_one_classes(lat), lat)
    with pytest.raises(OverflowError):
        graph_automorphisms(g)
    assert graph_stats(g, automorphisms=False).regular_degree == 5


def test_small_graph_automorphisms():
    tri = Graph([0, 1, 2], {(0, 1): 1, (1, 2): 1, (0, 2): 1})
    assert len(graph_automorphisms(tri)) == 6
    path = Graph([0, 1, 2], {(0, 1): 1, (1, 2): 2})
    assert len(graph_automorphisms(path)) == 1


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_weyl_orbit_of_exceptional_curve(d):
    lat = PicardLattice(d)
    assert weyl_orbit(lat.E(1), lat) == EXCEPTIONAL_COUNTS[d]


def test_weyl_orbit_without_cubic_root():
    lat = PicardLattice(7)  # two points blown up: only E1 - E2 is a simple root
    assert weyl_orbit(lat.E(1), lat) == 2


def test_simple_roots_have_square_minus_two():
    for d in range(1, 9):
        lat = PicardLattice(d)
        for r in simple_roots(lat):
            assert pairing(r, r, lat) == -2 and pairing(r, lat.K, lat) == 0


@given(st.integers(1, 8), st.data())
def test_reflections_are_isometries(d, data):
    lat = PicardLattice(d)
    roots = simple_roots(lat)
    if not roots:
        return
    vec = st.lists(st.integers(-5, 5), min_size=lat.rank, max_size=lat.rank)
    x, y = DivisorClass(data.draw(vec)), DivisorClass(data.draw(vec))
    r = data.draw(st.sampled_from(roots))
    assert pairing(reflect(x, r, lat), reflect(y, r, lat), lat) == pairing(x, y, lat)
    assert reflect(reflect(x, r, lat), r, lat) == x


def test_dimension_formulas():
    # h^0(-K) = d + 1 and h^0(-2K) = 3d + 1
    for d in range(1, 10):
        assert anticanonical_dim(1, d) == d + 1
        assert anticanonical_dim(2, d) == 3 * d + 1
    assert blowdown_selfint(-2, 1) == -1


def test_text_output():
    lat = PicardLattice(7)
    text = emit_classes(lat)
    assert text.splitlines()[0] == "degree 7 rank 3 classes 3"
    g = intersection_graph(minus_one_classes(lat), lat)
    assert emit_graph_text(g).startswith("vertices 3 edges 2")
    dot = emit_dot(g, lat)
    assert dot.startswith("graph exceptional {") and dot.count("--") == 2
    assert lat.E(2).describe(lat) == "+E2"
    assert DivisorClass((1, 1, 1)).describe(lat) == "1H-E1-E2"
