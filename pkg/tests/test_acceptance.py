"""Acceptance criteria 1-10.

Each test recomputes the package's verdict, checks it against an oracle that
does not go through the code path under test, and records one
``criterion N PASS|FAIL`` line (printed, and repeated in the terminal summary).
A criterion the implementation cannot meet is recorded as FAIL while the test
pins down exactly what was observed instead.
"""
import itertools
from fractions import Fraction

from k3audit import acceptance, casebook as cb, coverbook as cov
from k3audit.delpezzo import PicardLattice, minus_one_classes
from k3audit.exactfield import Cyclo, root_of_unity
from k3audit.invariants import invariant_basis, invariant_dimension
from k3audit.matgroup import GMatrix, catalogue, element_orders, linear_characters
from k3audit.multipoly import Poly, exact_divide, is_singular_at, partials, substitute_linear

import conftest


def record(result, oracle_ok=True):
    status = "PASS" if result.passed and oracle_ok else "FAIL"
    line = f"criterion {result.number} {status} {result.title}: {result.witness}"
    if result.known_deviation and status == "FAIL":
        line += f" [known deviation: {result.known_deviation}]"
    conftest.ACCEPTANCE_LINES[result.number] = line
    print(line)


def poly(name):
    return cb._poly(name)[0]


# -- 1 ----------------------------------------------------------------------

TABLE_PROJECTIVE = {"l27": 168, "valentiner": 360, "s5_perm5": 120, "n72": 72, "m9": 72, "t48_p2": 48}


def test_criterion_1_group_certificates():
    res = acceptance.criterion_1()
    # oracle: |PG| = |G| / #(scalar matrices in G), counting scalars element by element
    got = {}
    for name in TABLE_PROJECTIVE:
        G = catalogue(name).group
        scalars = sum(1 for g in G.elements if g.scalar_value() is not None)
        got[name] = len(G) // scalars
    oracle_ok = got == TABLE_PROJECTIVE
    # and the simple groups have their textbook element-order statistics
    oracle_ok &= dict(element_orders(catalogue("l27").projective_group)) == {1: 1, 2: 21, 3: 56, 4: 42, 7: 48}
    oracle_ok &= dict(element_orders(catalogue("valentiner").projective_group)) == {1: 1, 2: 45, 3: 80, 4: 90, 5: 144}
    record(res, oracle_ok)
    assert res.passed and oracle_ok


# -- 2 ----------------------------------------------------------------------


def _semi_invariant_by_generators(f, gens):
    """Oracle: f o g = c f with c a root of unity, generator by generator."""
    for g in gens:
        c = substitute_linear(f, g.rows).ratio_to(f)
        if c is None or not any(c ** k == 1 for k in range(1, 121)):
            return False
    return True


def test_criterion_2_invariance():
    res = acceptance.criterion_2()
    l27 = catalogue("l27").generators
    swap = GMatrix.permutation([0, 2, 1]).rows
    items = [
        (poly("klein_quartic.poly"), l27),
        (poly("case1a_quartic.poly"), cb._lift(l27, 1) + [GMatrix.diag([1, 1, 1, root_of_unity(4)])]),
        (substitute_linear(poly("case1b_sextic.poly"), swap), l27),
        (poly("case2_sextic.poly"), catalogue("valentiner").generators),
        (poly("case3b_sextic.poly"), catalogue("s4_p2").generators),
        (poly("fermat_cubic4.poly"), catalogue("n72").generators),
        (poly("quadric4.poly"), catalogue("n72").generators),
        (poly("case10_sextic.poly"), catalogue("m9").generators),
        (poly("case11a_sextic.poly"), catalogue("t48_p2").generators),
        (poly("case11b_surface.poly"), cb._lift(catalogue("t48_2d").generators, 1, 1)),
    ] + [(poly(f"power_sum{k}_5.poly"), catalogue("s5_perm5").generators) for k in (1, 2, 3)]
    oracle_ok = all(_semi_invariant_by_generators(f, gens) for f, gens in items)
    # the printed form of case 2 is not invariant; the corrected one is
    oracle_ok &= not _semi_invariant_by_generators(poly("case2_sextic_as_printed.poly"), catalogue("valentiner").generators)
    record(res, oracle_ok)
    assert res.passed and oracle_ok


# -- 3 ----------------------------------------------------------------------


def test_criterion_3_uniqueness_dimensions():
    res = acceptance.criterion_3()
    # oracle: explicit kernel computations instead of trace averaging
    l27 = catalogue("l27").group
    dims = [
        invariant_basis(l27, 4).dimension,
        invariant_basis(l27, 6).dimension,
        invariant_basis(catalogue("valentiner").group, 6).dimension,
        invariant_basis(catalogue("t48_p2").group, 6).dimension - 1,
    ]
    m9 = catalogue("m9").group
    total = sum(invariant_basis(m9, 6, chi).dimension for chi in linear_characters(m9))
    newton_total = sum(invariant_dimension(m9, 6, chi) for chi in linear_characters(m9))
    derivation = cb.derive_m9_sextics()
    observed_ok = (
        dims == [1, 1, 1, 1]
        and total == newton_total == acceptance.M9_OBSERVED_TOTAL
        and len(derivation.curves) == 3
        and len(derivation.reducible) == 1
    )
    # expected to fail: the stated total 3 counts only irreducible curves
    record(res, observed_ok)
    assert not res.passed
    assert res.known_deviation is not None and res.acceptable
    assert observed_ok


# -- 4 ----------------------------------------------------------------------


def test_criterion_4_quintic_derivation():
    res = acceptance.criterion_4()
    # oracle: assemble sum a_i f_i by hand and check the node conditions directly
    sol = dict(zip(cb.UNKNOWNS, (0, 0, 2, -2, 2, 1, -6)))
    f = Poly(3)
    for exps, u in zip(((6, 0, 0), (5, 1, 0), (4, 1, 1), (4, 2, 0), (3, 3, 0), (3, 2, 1), (2, 2, 2)), cb.UNKNOWNS):
        orbit = Poly(3, {m: Cyclo(1) for m in set(itertools.permutations(exps))})
        f = f + orbit.scale(sol[u])
    oracle_ok = all(is_singular_at(f, p) for p in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)))
    oracle_ok &= f.ratio_to(poly("case3b_sextic.poly")) is not None
    record(res, oracle_ok)
    assert res.passed and oracle_ok


# -- 5 ----------------------------------------------------------------------


def test_criterion_5_proper_transform():
    res = acceptance.criterion_5()
    f = poly("case3b_sextic.poly")
    x1, x2, x3 = (Poly.var(i, 3) for i in range(3))
    q = [x1 * (x3 - x2), x3 * (x1 - x2), x1 * x3]
    # oracle: expand f(q) term by term, then check it factors as (product of lines) * c * f
    Fq = Poly(3)
    for mono, c in f.terms.items():
        t = Poly.constant(3, c)
        for qi, e in zip(q, mono):
            t = t * qi**e
        Fq = Fq + t
    lines = {"x1": x1, "x2": x2, "x3": x3, "x1-x2": x1 - x2, "x3-x2": x3 - x2, "x1-x3": x1 - x3, "x2-x3": x2 - x3}
    detail = cb.proper_transform_invariance(f)
    prod = Poly.constant(3, 1)
    for name in detail.stripped:
        prod = prod * lines[name]
    quotient = exact_divide(Fq, prod)
    oracle_ok = quotient is not None and quotient.ratio_to(f) is not None and prod.degree() == 6
    record(res, oracle_ok)
    assert res.passed and oracle_ok


# -- 6 ----------------------------------------------------------------------


def _box_count(k):
    hits = 0
    for a in range(0, 7):
        for b in itertools.product(range(-1, 7), repeat=k):
            if a * a - sum(x * x for x in b) == -1 and 3 * a - sum(b) == 1:
                hits += 1
    return hits


def test_criterion_6_del_pezzo_counts():
    res = acceptance.criterion_6()
    quoted = {2: 56, 3: 27, 4: 16, 5: 10, 6: 6, 7: 3}
    counts = {d: len(minus_one_classes(PicardLattice(d))) for d in quoted}
    oracle_ok = counts == quoted
    # brute-force box search where it is cheap
    oracle_ok &= all(_box_count(9 - d) == quoted[d] for d in (4, 5, 6, 7))
    # Petersen graph = Kneser graph K(5,2): 10 vertices, 15 edges
    kneser = [(a, b) for a, b in itertools.combinations(itertools.combinations(range(5), 2), 2) if not set(a) & set(b)]
    oracle_ok &= len(kneser) == 15
    record(res, oracle_ok)
    assert res.passed and oracle_ok


# -- 7 ----------------------------------------------------------------------


def test_criterion_7_bookkeeping():
    res = acceptance.criterion_7()
    oracle_ok = all(24 == 2 * e + (2 * g - 2) for e, g in ((3, 10), (9, 4), (11, 2)))
    oracle_ok &= 0 + 12 - 3 == 9
    oracle_ok &= max(n for n in range(20) if 4 * n <= 2 * (n + 9)) == 9
    oracle_ok &= max(n for n in range(20) if 5 * n <= 2 * (n + 9)) == 6
    # Nikulin: 24 / (n * prod_{p | n} (1 + 1/p)) fixed points for a symplectic automorphism of order n
    nik = []
    for n in range(2, 9):
        ps = [p for p in (2, 3, 5, 7) if n % p == 0]
        denom = Fraction(n)
        for p in ps:
            denom *= 1 + Fraction(1, p)
        nik.append(Fraction(24) / denom)
    oracle_ok &= nik == [8, 6, 4, 4, 2, 3, 2]
    oracle_ok &= [cov.nikulin_fix_count(n) for n in range(2, 9)] == nik
    record(res, oracle_ok)
    assert res.passed and oracle_ok


# -- 8 ----------------------------------------------------------------------


def test_criterion_8_nonexistence():
    res = acceptance.criterion_8()
    oracle_ok = 84 * (12 - 1) == 924 < 960 <= 84 * (13 - 1)
    oracle_ok &= 16 * 2 - (2 - 2 * 10) == 50 and 50 % 4 == 2
    oracle_ok &= 384 // 12 == 32  # minimum orbit of (-1)-curves exceeds every count 10, 6, 3, 1
    oracle_ok &= all(not cb.orbit_partition_possible(n, 384, 32) for n in (10, 6, 3, 1))
    oracle_ok &= all(cb.audit_nonexistence(g).passed for g in cb.GROUP_IDS)
    record(res, oracle_ok)
    assert res.passed and oracle_ok


# -- 9 ----------------------------------------------------------------------


def _brute_singular(f, p):
    """Oracle: integer evaluation mod p over all of P2(F_p), no reduction helpers."""
    cf = {m: int(c.rational()) % p for m, c in f.terms.items()}
    grads = [{m: int(c.rational()) % p for m, c in g.terms.items()} for g in partials(f)]

    def val(terms, pt):
        tot = 0
        for m, c in terms.items():
            v = c
            for x, e in zip(pt, m):
                v = v * pow(x, e, p)
            tot += v
        return tot % p

    pts = [(1, a, b) for a in range(p) for b in range(p)] + [(0, 1, b) for b in range(p)] + [(0, 0, 1)]
    if f.nvars == 4:
        pts = [pt + (0,) for pt in pts]  # only the plane curves are cross-checked
    return [pt for pt in pts if val(cf, pt) == 0 and all(val(g, pt) == 0 for g in grads)]


def test_criterion_9_smoothness_evidence():
    res = acceptance.criterion_9()
    oracle_ok = True
    for name, bad in (
        ("klein_quartic.poly", {7}),
        ("case1b_sextic.poly", {7}),
        ("case2_sextic.poly", set()),
        ("case10_sextic.poly", set()),
        ("case11a_sextic.poly", set()),
    ):
        f = poly(name)
        for p in (7, 11, 13):
            if p in bad:
                continue
            if all(c.is_rational() and c.rational().denominator % p for c in f.terms.values()):
                oracle_ok &= _brute_singular(f, p) == []
    record(res, oracle_ok)
    assert res.passed and oracle_ok


# -- 10 ---------------------------------------------------------------------


def test_criterion_10_property_suites():
    res = acceptance.criterion_10(1000)
    # oracle: the hypothesis-driven versions in test_properties.py; here the
    # seeded suite must report zero failures for all five properties
    fails = acceptance.property_suite(50, seed=7)
    oracle_ok = set(fails) == {
        "field axioms",
        "substitution functoriality",
        "Euler relation",
        "Reynolds idempotence",
        "reflection invariance",
    } and not any(fails.values())
    record(res, oracle_ok)
    assert res.passed and oracle_ok
