"""Polynomial invariant theory for finite matrix groups.

Convention: a matrix g acts on polynomials on the right, f -> f o g, where
(f o g)(x) = f(g x).  A polynomial is chi-semi-invariant if f o g = chi(g) f
for every g in the group.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactfield import ONE, ZERO, Cyclo, root_of_unity
from .matgroup import (
    FiniteMatrixGroup,
    GMatrix,
    LinearCharacter,
    _kernel,
    character_from_gen_exponents,
    trivial_character,
)
from .multipoly import DimensionError, Poly, evaluate, substitute_linear

FULL_CHECK_LIMIT = 200
BASIS_CAP = 10000


class NonIntegralAverage(ArithmeticError):
    """The trace average was not a nonnegative integer (implementation bug)."""


def act(g: GMatrix, f: Poly) -> Poly:
    """f o g."""
    if g.size != f.nvars:
        raise DimensionError("matrix size differs from variable count")
    return substitute_linear(f, g.rows)


def _root_exponent(c: Cyclo, limit: int):
    """(m, e) with c = zeta_m^e and m minimal, or None if c is not a root of unity."""
    x = c
    for k in range(1, limit + 1):
        if x == 1:
            m = k
            for e in range(m):
                if root_of_unity(m, e) == c:
                    return m, e
        x = x * c
    return None


_SAMPLE = (
    (1, 2, 3, 5, 7, 11),
    (2, -1, 4, 3, -5, 2),
    (3, 1, -2, 7, 1, -3),
    (-1, 5, 2, -4, 3, 1),
)


def _sample_points(f: Poly):
    for s in _SAMPLE:
        p = [Cyclo(v) for v in s[: f.nvars]]
        v = evaluate(f, p)
        if not v.is_zero():
            yield p, v


def curve_character(f: Poly, G: FiniteMatrixGroup) -> LinearCharacter | None:
    """The character chi with f o g = chi(g) f on all of G, or None.

    Determined exactly on the generators, propagated along the Schreier
    graph (whose consistency proves multiplicativity), then certified on
    every element: by exact substitution for small groups, otherwise by
    exact evaluation at fixed sample points.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    if G.projective:
        raise ValueError("curve_character needs the linear group (characters live on the linear closure)")
    if G.size != f.nvars:
        raise DimensionError("group size differs from variable count")
    ms, es = [], []
    for s in G.gens:
        c = act(s, f).ratio_to(f)
        if c is None:
            return None
        r = _root_exponent(c, max(len(G), 1))
        if r is None:
            return None
        ms.append(r[0])
        es.append(r[1])
    m = 1
    for k in ms:
        m = m * k // math.gcd(m, k)
    chi = character_from_gen_exponents(G, m, [e * (m // k) for e, k in zip(es, ms)])
    if not chi.is_multiplicative():
        return None
    if len(G) <= FULL_CHECK_LIMIT:
        for i, g in enumerate(G.elements):
            if act(g, f) != f.scale(chi.value_index(i)):
                return None
    else:
        for p, v in itertools.islice(_sample_points(f), 2):
            for i, g in enumerate(G.elements):
                if evaluate(f, g.apply(p)) != chi.value_index(i) * v:
                    return None
    return chi


def semi_invariance_factor(f: Poly, g: GMatrix):
    """c with f o g = c f, or None (used for weighted / projective checks)."""
    return act(g, f).ratio_to(f)


def reynolds(f: Poly, G: FiniteMatrixGroup, chi: LinearCharacter | None = None) -> Poly:
    """(1/|G|) sum chi(g)^-1 (f o g)."""
    acc = Poly(f.nvars)
    for i, g in enumerate(G.elements):
        term = act(g, f)
        if chi is not None and chi.exps[i]:
            term = term.scale(chi.value_index(i).inverse())
        acc = acc + term
    return acc.scale(Cyclo(Fraction(1, len(G))))


# ---------------------------------------------------------------------------
# dimensions


def _power_traces(G: FiniteMatrixGroup, dmax: int):
    cache = G.__dict__.setdefault("_power_trace_cache", {})
    have = cache.get("d", 0)
    if have >= dmax:
        return cache["traces"]
    traces = []
    for g in G.elements:
        row = [Cyclo(G.size)]
        x = g
        for k in range(1, dmax + 1):
            row.append(x.trace())
            if k < dmax:
                x = x @ g
        traces.append(row)
    cache["d"] = dmax
    cache["traces"] = traces
    return traces


def sym_traces(power: Sequence[Cyclo], d: int) -> list[Cyclo]:
    """Traces on Sym^0..Sym^d from power traces tr(g^k) (Newton's identities)."""
    h = [ONE]
    for j in range(1, d + 1):
        acc = ZERO
        for k in range(1, j + 1):
            acc = acc + power[k] * h[j - k]
        h.append(acc * Cyclo(Fraction(1, j)))
    return h


def monomials(nvars: int, d: int, weights: Sequence[int] | None = None) -> list[tuple]:
    """Exponent vectors of (weighted) degree d, in deg-lex (descending) order."""
    w = tuple(weights) if weights is not None else (1,) * nvars
    out = []

    def rec(i, left, prefix):
        if i == nvars - 1:
            if left % w[i] == 0:
                out.append(tuple(prefix + [left // w[i]]))
            return
        for e in range(left // w[i], -1, -1):
            rec(i + 1, left - e * w[i], prefix + [e])

    rec(0, d, [])
    return out


def monomial_trace(g: GMatrix, d: int, weights: Sequence[int] | None = None) -> Cyclo:
    """Trace of f -> f o g on the span of degree-d monomials (explicit matrix)."""
    acc = ZERO
    for m in monomials(g.size, d, weights):
        acc = acc + act(g, Poly.monomial(m)).coeff(m)
    return acc


def invariant_dimension(
    G: FiniteMatrixGroup,
    d: int,
    chi: LinearCharacter | None = None,
    method: str = "newton",
    weights: Sequence[int] | None = None,
) -> int:
    """dim of chi-semi-invariant forms of degree d, by trace averaging.

    ``method='newton'`` gets the trace on degree-d forms from power traces;
    ``method='monomial'`` builds it from the monomial basis (also the only
    option for weighted degrees).
    """
    if G.projective:
        raise ValueError("averaging needs the linear group")
    if d == 0:
        traces = [ONE] * len(G)
    elif method == "newton" and weights is None:
        traces = [sym_traces(p, d)[d] for p in _power_traces(G, d)]
    elif method in ("monomial", "newton"):
        traces = [monomial_trace(g, d, weights) for g in G.elements]
    else:
        raise ValueError(f"unknown method {method!r}")
    acc = ZERO
    for i, t in enumerate(traces):
        if chi is not None and chi.exps[i]:
            t = t * chi.value_index(i).conjugate()
        acc = acc + t
    avg = acc * Cyclo(Fraction(1, len(G)))
    if not avg.is_rational():
        raise NonIntegralAverage(f"non-rational trace average {avg}")
    q = avg.rational()
    if q.denominator != 1 or q < 0:
        raise NonIntegralAverage(f"trace average {q} is not a nonnegative integer")
    return int(q)


@dataclass
class InvariantSpace:
    group: FiniteMatrixGroup
    degree: int
    character: LinearCharacter
    basis: list
    monomials: list

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, f: Poly) -> bool:
        """True if f lies in the span of the basis."""
        if f.is_zero():
            return True
        idx = {m: i for i, m in enumerate(self.monomials)}
        if any(m not in idx for m in f.terms):
            return False
        cols = len(self.basis) + 1
        rows = [[ZERO] * cols for _ in self.monomials]
        for j, b in enumerate(self.basis + [f]):
            for m, c in b.terms.items():
                rows[idx[m]][j] = c
        # the basis is independent, so any relation must involve f
        return bool(_kernel(rows, cols))


def invariant_basis(
    G: FiniteMatrixGroup,
    d: int,
    chi: LinearCharacter | None = None,
    weights: Sequence[int] | None = None,
    cap: int = BASIS_CAP,
) -> InvariantSpace:
    """Reduced basis of chi-semi-invariant forms of (weighted) degree d."""
    chi = chi or trivial_character(G)
    mons = monomials(G.size, d, weights)
    if len(mons) > cap:
        raise OverflowError(f"{len(mons)} monomials exceed cap {cap}")
    idx = {m: i for i, m in enumerate(mons)}
    n = len(mons)
    rows = []
    for s, g in enumerate(G.gens):
        cval = chi.value_index(G.rmul[0][s])
        block = [[ZERO] * n for _ in range(n)]
        for j, m in enumerate(mons):
            img = act(g, Poly.monomial(m))
            for mm, c in img.terms.items():
                if mm not in idx:
                    raise ValueError("action does not preserve the degree")
                block[idx[mm]][j] = block[idx[mm]][j] + c
            block[j][j] = block[j][j] - cval
        rows.extend(block)
    kern = _kernel(rows, n) if rows else [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    # reduced echelon form on the monomial coordinates
    basis = _echelon_polys(kern, mons, G.size)
    return InvariantSpace(G, d, chi, basis, mons)


def _echelon_polys(vectors, mons, nvars):
    vecs = [list(v) for v in vectors]
    n = len(mons)
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(vecs)) if not vecs[i][c].is_zero()), None)
        if p is None:
            continue
        vecs[r], vecs[p] = vecs[p], vecs[r]
        inv = vecs[r][c].inverse()
        vecs[r] = [a * inv for a in vecs[r]]
        for i in range(len(vecs)):
            if i != r and not vecs[i][c].is_zero():
                f = vecs[i][c]
                vecs[i] = [a - f * b for a, b in zip(vecs[i], vecs[r])]
        r += 1
    return [Poly(nvars, {m: c for m, c in zip(mons, v) if not c.is_zero()}) for v in vecs[:r]]


def torus_invariant_monomials(
    weights: Sequence[int],
    r: int,
    degrees: Sequence[int],
    blocks: Sequence[Sequence[int]] | None = None,
) -> list[tuple]:
    """Monomials of the given (multi)degree whose weight sum is 0 mod r.

    ``blocks`` partitions the variables (default: one block); ``degrees[i]``
    is the degree in block i.  Output is lexicographically descending.
    """
    n = len(weights)
    blocks = [list(b) for b in blocks] if blocks is not None else [list(range(n))]
    if len(blocks) != len(degrees):
        raise ValueError("one degree per block required")
    per_block = []
    for b, d in zip(blocks, degrees):
        per_block.append([dict(zip(b, m)) for m in monomials(len(b), d)])
    out = []
    for combo in itertools.product(*per_block):
        e = [0] * n
        for part in combo:
            for v, k in part.items():
                e[v] = k
        if sum(a * w for a, w in zip(e, weights)) % r == 0:
            out.append(tuple(e))
    return sorted(out, reverse=True)


__all__ = [
    "act",
    "curve_character",
    "semi_invariance_factor",
    "reynolds",
    "invariant_dimension",
    "invariant_basis",
    "InvariantSpace",
    "NonIntegralAverage",
    "monomials",
    "monomial_trace",
    "sym_traces",
    "torus_invariant_monomials",
]
