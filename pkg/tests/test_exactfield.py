import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from k3audit.exactfield import (
    BadPrimeError,
    Cyclo,
    ScalarSyntaxError,
    cyclotomic_polynomial,
    euler_phi,
    format_scalar,
    parse_scalar,
    primitive_root_mod,
    reduce_mod_prime,
    root_of_unity,
    to_common_order,
)

from conftest import close, to_complex

ORDERS = [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 24]


@st.composite
def cyclos(draw, order=None):
    n = order or draw(st.sampled_from(ORDERS))
    acc = Cyclo(0, n)
    for _ in range(draw(st.integers(0, 4))):
        c = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 6)))
        acc = acc + Cyclo(c) * root_of_unity(n, draw(st.integers(0, n - 1)))
    return acc


def test_euler_phi_small_values():
    assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 12, 15, 24])
def test_cyclotomic_polynomial_degree_and_roots(n):
    coeffs = cyclotomic_polynomial(n)
    assert len(coeffs) - 1 == euler_phi(n)
    z = cmath.exp(2j * math.pi / n)
    assert abs(sum(c * z**k for k, c in enumerate(coeffs))) < 1e-9


def test_root_of_unity_has_exact_order():
    for n in (3, 5, 7, 8, 12):
        z = root_of_unity(n)
        assert z**n == 1
        assert all(z**k != 1 for k in range(1, n))


def test_sum_of_primitive_roots_is_mobius():
    # sum of primitive n-th roots of unity equals mu(n)
    mu = {1: 1, 2: -1, 3: -1, 4: 0, 5: -1, 6: 1, 7: -1, 8: 0, 9: 0, 10: 1, 12: 0, 15: 1}
    for n, m in mu.items():
        s = sum((root_of_unity(n, k) for k in range(1, n + 1) if math.gcd(k, n) == 1), Cyclo(0))
        assert s == m


def test_mixed_orders_embed_to_lcm():
    a, b = to_common_order(root_of_unity(3), root_of_unity(4))
    assert a.order == b.order == 12
    assert root_of_unity(3) * root_of_unity(4) == root_of_unity(12, 7)


def test_minimal_descends():
    x = root_of_unity(12, 4)
    assert x.minimal().order == 3
    assert (root_of_unity(8) + root_of_unity(8, 7)).minimal().order == 8  # sqrt 2
    assert (root_of_unity(12) * 0 + 5).minimal().order == 1


def test_sqrt_identities():
    sqrt2 = root_of_unity(8) + root_of_unity(8, 7)
    assert sqrt2 * sqrt2 == 2
    sqrt_m3 = root_of_unity(3) * 2 + 1
    assert sqrt_m3 * sqrt_m3 == -3


def test_norm_and_trace():
    z = root_of_unity(5)
    assert z.norm() == 1
    assert z.trace() == -1
    assert (1 - z).norm() == 5


def test_immutable():
    with pytest.raises(AttributeError):
        root_of_unity(3).order = 4


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Cyclo(0, 5).inverse()


@given(cyclos(), cyclos())
def test_arithmetic_matches_complex_oracle(a, b):
    assert close(to_complex(a + b), to_complex(a) + to_complex(b))
    assert close(to_complex(a * b), to_complex(a) * to_complex(b))
    if not b.is_zero():
        assert close(to_complex(a / b), to_complex(a) / to_complex(b))


@given(cyclos())
def test_conjugate_matches_complex(a):
    assert close(to_complex(a.conjugate()), to_complex(a).conjugate())


@given(cyclos())
def test_equality_is_canonical(a):
    # same value via a redundant representation must compare and hash equal
    n = a.order
    red = list(a.coeffs) + [0] * n
    b = Cyclo.from_redundant(n, red)
    assert a == b and hash(a) == hash(b)


@given(cyclos())
def test_format_parse_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a


def test_parse_examples():
    assert parse_scalar("1/2 + 1/2*z8^2") == Cyclo(Fraction(1, 2)) * (1 + root_of_unity(4))
    assert parse_scalar("-z3^-1") == -root_of_unity(3, 2)
    assert parse_scalar("(2 - 3)^3") == -1
    assert parse_scalar("  7 ") == 7


@pytest.mark.parametrize("bad", ["", "1 +", "z0", "2 $ 3", "(1", "1 2"])
def test_parse_errors(bad):
    with pytest.raises(ScalarSyntaxError):
        parse_scalar(bad)


def test_primitive_root_mod():
    assert primitive_root_mod(3, 7) == 2
    assert pow(primitive_root_mod(4, 13), 2, 13) == 12
    with pytest.raises(BadPrimeError):
        primitive_root_mod(4, 7)
    with pytest.raises(BadPrimeError):
        primitive_root_mod(2, 9)


@given(cyclos(order=3), cyclos(order=3))
def test_reduction_is_ring_homomorphism(a, b):
    p = 13
    try:
        ra, rb = reduce_mod_prime(a, p), reduce_mod_prime(b, p)
    except BadPrimeError:
        return
    assert reduce_mod_prime(a + b, p) == (ra + rb) % p
    assert reduce_mod_prime(a * b, p) == (ra * rb) % p


def test_reduction_rejects_bad_primes():
    with pytest.raises(BadPrimeError):
        reduce_mod_prime(Cyclo(Fraction(1, 7)), 7)
    with pytest.raises(BadPrimeError):
        reduce_mod_prime(root_of_unity(4), 7)
    assert reduce_mod_prime(Cyclo(Fraction(1, 2)), 7) == 4
