"""Randomized algebraic laws, 1000 examples each."""
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from k3audit.delpezzo import DivisorClass, PicardLattice, pairing, reflect, simple_roots
from k3audit.exactfield import Cyclo, root_of_unity
from k3audit.invariants import act, reynolds
from k3audit.matgroup import catalogue
from k3audit.multipoly import Poly, partials, substitute_linear

ORDERS = (1, 3, 4, 5, 7, 8, 12)
THOROUGH = settings(max_examples=1000)


@st.composite
def cyclos(draw, order=None):
    n = order or draw(st.sampled_from(ORDERS))
    acc = Cyclo(0, n)
    for _ in range(draw(st.integers(0, 3))):
        c = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 4)))
        acc = acc + Cyclo(c) * root_of_unity(n, draw(st.integers(0, n - 1)))
    return acc


@st.composite
def forms(draw, nvars, degree, order=1):
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        cut = sorted(draw(st.integers(0, degree)) for _ in range(nvars - 1))
        mono = tuple(b - a for a, b in zip([0] + cut, cut + [degree]))
        terms[mono] = draw(cyclos(order))
    return Poly(nvars, terms)


@THOROUGH
@given(st.sampled_from(ORDERS).flatmap(lambda n: st.tuples(cyclos(n), cyclos(n), cyclos(n))))
def test_field_axioms(abc):
    a, b, c = abc
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0 and a + 0 == a and a * 1 == a
    if not a.is_zero():
        assert a * a.inverse() == 1


@st.composite
def substitution_data(draw):
    n = draw(st.integers(2, 3))
    f = draw(forms(n, draw(st.integers(1, 3))))
    mat = st.lists(st.lists(cyclos(1), min_size=n, max_size=n), min_size=n, max_size=n)
    return f, draw(mat), draw(mat)


@THOROUGH
@given(substitution_data())
def test_substitution_functoriality(data):
    f, A, B = data
    n = len(A)
    AB = [[sum((A[i][k] * B[k][j] for k in range(n)), Cyclo(0)) for j in range(n)] for i in range(n)]
    assert substitute_linear(f, AB) == substitute_linear(substitute_linear(f, A), B)


@st.composite
def euler_data(draw):
    n = draw(st.integers(1, 4))
    d = draw(st.integers(0, 5))
    return draw(forms(n, d, draw(st.sampled_from(ORDERS)))), d


@THOROUGH
@given(euler_data())
def test_euler_relation(data):
    f, d = data
    n = f.nvars
    acc = Poly(n)
    for i, g in enumerate(partials(f)):
        acc = acc + Poly.var(i, n) * g
    assert acc == f.scale(d)


@THOROUGH
@given(st.sampled_from(["q8_2d", "t48_2d"]), st.integers(1, 4).flatmap(lambda d: forms(2, d, 8)))
def test_reynolds_idempotence(name, f):
    G = catalogue(name).group
    r = reynolds(f, G)
    assert reynolds(r, G) == r
    assert all(act(g, r) == r for g in G.gens)


@st.composite
def reflection_data(draw):
    d = draw(st.integers(1, 7))  # degree 8 and 9 blow-ups have no simple roots
    lat = PicardLattice(d)
    vec = st.lists(st.integers(-4, 4), min_size=lat.rank, max_size=lat.rank)
    return lat, DivisorClass(draw(vec)), DivisorClass(draw(vec)), draw(st.sampled_from(simple_roots(lat)))


@THOROUGH
@given(reflection_data())
def test_reflection_invariance(data):
    lat, x, y, r = data
    assert pairing(reflect(x, r, lat), reflect(y, r, lat), lat) == pairing(x, y, lat)
