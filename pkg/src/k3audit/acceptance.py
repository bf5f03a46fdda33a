"""The ten acceptance criteria as runnable checks (used by ``k3audit selftest``).

Each criterion returns a :class:`CriterionResult`.  A criterion that cannot
hold as literally stated is marked with a ``known_deviation`` note together
with the value actually observed; it still reports FAIL, but the self-test
only treats it as a regression if the observed value changes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import casebook as cbk
from . import coverbook as cov
from .delpezzo import (
    DivisorClass,
    PicardLattice,
    graph_stats,
    intersection_graph,
    minus_one_classes,
    pairing,
    reflect,
    simple_roots,
)
from .exactfield import Cyclo, root_of_unity
from .invariants import curve_character, invariant_dimension, reynolds
from .matgroup import GMatrix, catalogue, closure
from .multipoly import Poly, partials, substitute_linear


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    witness: str
    known_deviation: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        note = f" [known deviation: {self.known_deviation}]" if self.known_deviation and not self.passed else ""
        return f"criterion {self.number:2d} {status} {self.title}: {self.witness}{note}"

    @property
    def acceptable(self) -> bool:
        return self.passed or self.known_deviation is not None


EXPECTED_PROJECTIVE = {"l27": 168, "valentiner": 360, "s5_perm5": 120, "n72": 72, "m9": 72, "t48_p2": 48}


def criterion_1() -> CriterionResult:
    got = {n: catalogue(n).projective_order for n in EXPECTED_PROJECTIVE}
    ok = got == EXPECTED_PROJECTIVE
    return CriterionResult(1, "group certificates", ok, " ".join(f"{k}={v}" for k, v in got.items()))


def _poly(name):
    return cbk._poly(name)[0]


def criterion_2() -> CriterionResult:
    results = []
    l27 = catalogue("l27")
    results.append(("klein", curve_character(_poly("klein_quartic.poly"), l27.group)))
    c4 = GMatrix.diag([1, 1, 1, root_of_unity(4)])
    G4 = closure(cbk._lift(l27.generators, 1) + [c4])
    results.append(("1a", curve_character(_poly("case1a_quartic.poly"), G4)))
    m = cbk.coordinate_match(_poly("case1b_sextic.poly"), l27.group)
    results.append(("1b", m[1] if m else None))
    results.append(("2", curve_character(_poly("case2_sextic.poly"), catalogue("valentiner").group)))
    s5 = catalogue("s5_perm5").group
    for k in (1, 2, 3):
        results.append((f"3a.p{k}", curve_character(_poly(f"power_sum{k}_5.poly"), s5)))
    results.append(("3b", curve_character(_poly("case3b_sextic.poly"), catalogue("s4_p2").group)))
    n72 = catalogue("n72").group
    results.append(("9.cubic", curve_character(_poly("fermat_cubic4.poly"), n72)))
    results.append(("9.quadric", curve_character(_poly("quadric4.poly"), n72)))
    results.append(("10", curve_character(_poly("case10_sextic.poly"), catalogue("m9").group)))
    results.append(("11a", curve_character(_poly("case11a_sextic.poly"), catalogue("t48_p2").group)))
    Gw = closure(cbk._lift(catalogue("t48_2d").generators, 1, 1))
    results.append(("11b", curve_character(_poly("case11b_surface.poly"), Gw)))
    ok = all(chi is not None for _, chi in results)
    wit = " ".join(f"{n}:{'ok' if chi is not None else 'NO'}" for n, chi in results)
    return CriterionResult(2, "invariance", ok, wit + " (1b after swapping x2,x3; 2 with the corrected term)")


M9_OBSERVED_TOTAL = 4


def criterion_3() -> CriterionResult:
    l27 = catalogue("l27").group
    val = catalogue("valentiner").group
    t48 = catalogue("t48_p2").group
    dims = {
        "L2(7),4": invariant_dimension(l27, 4),
        "L2(7),6": invariant_dimension(l27, 6),
        "A6,6": invariant_dimension(val, 6),
        "T48,6/scaling": invariant_dimension(t48, 6) - 1,
    }
    m9 = cbk.derive_m9_sextics()
    total = m9.total_dimension
    ok_dims = all(v == 1 for v in dims.values())
    ok = ok_dims and total == 3
    wit = " ".join(f"{k}={v}" for k, v in dims.items()) + f" M9 total={total} (irreducible {len(m9.curves)})"
    dev = None
    if ok_dims and total == M9_OBSERVED_TOTAL and len(m9.curves) == 3:
        dev = "a fourth semi-invariant sextic exists; it is a product of two Hesse cubics"
    return CriterionResult(3, "uniqueness dimensions", ok, wit, dev)


def criterion_4() -> CriterionResult:
    res = cbk.derive_quintic_dp_sextic()
    coeffs = tuple(int(c) for c in res.coefficients())
    ok = coeffs == (2, -2, 2, 1, -6) and res.matches_table
    return CriterionResult(4, "quintic Del Pezzo sextic", ok, f"(a3..a7)={coeffs} table-match={res.matches_table}")


def criterion_5() -> CriterionResult:
    res = cbk.proper_transform_invariance(cbk.derive_quintic_dp_sextic().sextic)
    return CriterionResult(5, "proper-transform invariance", res.invariant, f"stripped {len(res.stripped)} lines, scalar {res.scalar}")


def criterion_6() -> CriterionResult:
    counts = [len(minus_one_classes(PicardLattice(d))) for d in range(1, 8)]
    lat = PicardLattice(5)
    st = graph_stats(intersection_graph(minus_one_classes(lat), lat))
    ok = counts == [240, 56, 27, 16, 10, 6, 3] and (st.vertices, st.edges, st.regular_degree, st.girth, st.automorphisms) == (
        10,
        15,
        3,
        5,
        120,
    )
    return CriterionResult(
        6,
        "Del Pezzo counts",
        ok,
        f"counts d=1..7 {counts}; degree 5: {st.edges} edges {st.regular_degree}-regular girth {st.girth} |Aut|={st.automorphisms}",
    )


def criterion_7() -> CriterionResult:
    res = [cov.euler_residual(cov.CoverScenario(*s)) for s in ((3, 0, 0, 10), (9, 0, 0, 4), (11, 0, 0, 2))]
    mb = cov.mori_bound(0, 3)
    nik = [cov.nikulin_fix_count(k) for k in range(2, 9)]
    cut4, cut5 = cov.max_feasible_n(4, 3), cov.max_feasible_n(5, 3)
    ok = res == [0, 0, 0] and mb == 9 and nik == [8, 6, 4, 4, 2, 3, 2] and (cut4, cut5) == (9, 6)
    return CriterionResult(7, "bookkeeping identities", ok, f"residuals {res} mori {mb} fixed {nik} cutoffs N=4:{cut4} N=5:{cut5}")


_AUDIT_TOKENS = {"M20": "924<960", "F384": "=50;", "A44": ">=24", "T192": "5<6", "H192": "5<6"}


def criterion_8() -> CriterionResult:
    parts, ok = [], True
    for g in cbk.GROUP_IDS:
        rep = cbk.audit_nonexistence(g)
        text = rep.to_text()
        good = rep.passed and _AUDIT_TOKENS[g] in text
        ok = ok and good
        parts.append(f"{g}:{'ok' if good else 'NO'}")
    if ok:
        parts.append("witnesses 924<960, 50, 24, 34, 5<6")
    return CriterionResult(8, "non-existence audits", ok, " ".join(parts))


def criterion_9() -> CriterionResult:
    l27 = catalogue("l27")
    items = [
        ("1a", _poly("case1a_quartic.poly"), cbk._field_order(l27.generators + [GMatrix.diag([root_of_unity(4)])])),
        ("1a-branch", _poly("klein_quartic.poly"), cbk._field_order(l27.generators)),
        ("1b", _poly("case1b_sextic.poly"), cbk._field_order(l27.generators)),
        ("2", _poly("case2_sextic.poly"), cbk._field_order(catalogue("valentiner").generators)),
        ("10", _poly("case10_sextic.poly"), cbk._field_order(catalogue("m9").generators)),
        ("11a", _poly("case11a_sextic.poly"), cbk._field_order(catalogue("t48_p2").generators)),
    ]
    ok, parts = True, []
    for name, f, fo in items:
        scans = cbk.singular_scans(f, cbk.DEFAULT_PRIMES, fo)
        good = [s for s in scans if s.good]
        fine = bool(good) and all(s.status == "smooth" for s in good)
        ok = ok and fine
        parts.append(f"{name}:" + ",".join(f"{s.prime}{'' if s.good else '(bad)'}" for s in scans) + ("=empty" if fine else "=SINGULAR"))
    return CriterionResult(9, "smoothness evidence", ok, " ".join(parts) + " (evidence, not proof)")


# -- randomized property suite ----------------------------------------------

_ORDERS = (1, 3, 4, 5, 7, 8, 12)


def random_cyclo(rng: random.Random, order: int | None = None) -> Cyclo:
    n = order or rng.choice(_ORDERS)
    acc = Cyclo(0, n)
    for k in range(rng.randint(0, 3)):
        acc = acc + Cyclo(Fraction(rng.randint(-5, 5), rng.randint(1, 4))) * root_of_unity(n, rng.randrange(n))
    return acc


def random_poly(rng: random.Random, nvars: int, degree: int, order: int = 1) -> Poly:
    terms = {}
    for _ in range(rng.randint(1, 4)):
        cut = sorted(rng.randint(0, degree) for _ in range(nvars - 1))
        mono = tuple(b - a for a, b in zip([0] + cut, cut + [degree]))
        terms[mono] = random_cyclo(rng, order)
    return Poly(nvars, terms)


def random_matrix(rng: random.Random, n: int, order: int = 1) -> list:
    return [[random_cyclo(rng, order) for _ in range(n)] for _ in range(n)]


def _prop_field(rng):
    n = rng.choice(_ORDERS)
    a, b, c = (random_cyclo(rng, n) for _ in range(3))
    ok = a + b == b + a and a * b == b * a and (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
    ok = ok and a * (b + c) == a * b + a * c and a - a == 0
    if not a.is_zero():
        ok = ok and a * a.inverse() == 1
    return ok


def _prop_substitution(rng):
    n = rng.randint(2, 3)
    f = random_poly(rng, n, rng.randint(1, 3))
    A, B = random_matrix(rng, n), random_matrix(rng, n)
    AB = [[sum((A[i][k] * B[k][j] for k in range(n)), Cyclo(0)) for j in range(n)] for i in range(n)]
    return substitute_linear(f, AB) == substitute_linear(substitute_linear(f, A), B)


def _prop_euler(rng):
    n = rng.randint(1, 4)
    d = rng.randint(0, 5)
    f = random_poly(rng, n, d, rng.choice(_ORDERS))
    acc = Poly(n)
    for i, g in enumerate(partials(f)):
        acc = acc + Poly.var(i, n) * g
    return acc == f.scale(Cyclo(d))


_SMALL_GROUPS = ("q8_2d", "t48_2d")


def _prop_reynolds(rng):
    G = catalogue(rng.choice(_SMALL_GROUPS)).group
    f = random_poly(rng, 2, rng.randint(1, 4), 8)
    r = reynolds(f, G)
    return reynolds(r, G) == r


def _prop_reflection(rng):
    d = rng.randint(1, 8)
    lat = PicardLattice(d)
    roots = simple_roots(lat)
    if not roots:
        return True
    x = DivisorClass([rng.randint(-4, 4) for _ in range(lat.rank)])
    y = DivisorClass([rng.randint(-4, 4) for _ in range(lat.rank)])
    r = rng.choice(roots)
    return pairing(reflect(x, r, lat), reflect(y, r, lat), lat) == pairing(x, y, lat)


PROPERTIES: dict[str, Callable] = {
    "field axioms": _prop_field,
    "substitution functoriality": _prop_substitution,
    "Euler relation": _prop_euler,
    "Reynolds idempotence": _prop_reynolds,
    "reflection invariance": _prop_reflection,
}


def property_suite(n: int = 1000, seed: int = 20240601) -> dict:
    """Failure counts for each property over n seeded random instances."""
    out = {}
    for name, prop in PROPERTIES.items():
        rng = random.Random(f"{seed}:{name}")
        out[name] = sum(0 if prop(rng) else 1 for _ in range(n))
    return out


def criterion_10(n: int = 1000) -> CriterionResult:
    fails = property_suite(n)
    ok = not any(fails.values())
    return CriterionResult(10, "property suites", ok, f"{n} instances each; failures " + ", ".join(f"{k}={v}" for k, v in fails.items()))


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
)


def run_criteria(numbers=None) -> list[CriterionResult]:
    out = []
    for i, fn in enumerate(CRITERIA, 1):
        if numbers and i not in numbers:
            continue
        try:
            out.append(fn())
        except Exception as exc:
            out.append(CriterionResult(i, fn.__name__, False, f"error: {type(exc).__name__}: {exc}"))
    return out


__all__ = ["CriterionResult", "CRITERIA", "run_criteria", "property_suite", "PROPERTIES", "random_cyclo", "random_poly"]
