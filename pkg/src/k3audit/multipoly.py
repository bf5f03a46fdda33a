"""Sparse multivariate polynomials over cyclotomic fields.

A :class:`Poly` is an immutable map from exponent tuples to nonzero
:class:`~k3audit.exactfield.Cyclo` coefficients.  Besides ring arithmetic the
module provides linear substitution (the matrix action used throughout the
invariant-theory code), differentiation, weighted degrees, exact division and
brute-force singularity scans over prime fields.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactfield import (
    ONE,
    ZERO,
    BadPrimeError,
    Cyclo,
    as_cyclo,
    format_scalar,
    parse_scalar,
    reduce_mod_prime,
    root_of_unity,
)

Monomial = tuple  # tuple of nonnegative ints, one per variable


class DimensionError(ValueError):
    """Variable / coordinate / matrix-row counts do not match."""


class PolySyntaxError(ValueError):
    pass


def _sort_key(mono):
    # degree-lexicographic, highest first: larger degree, then larger x1 power...
    return (-sum(mono), tuple(-e for e in mono))


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise DimensionError(f"bad monomial {mono} for {nvars} variables")
            c = as_cyclo(c)
            if c.is_zero():
                continue
            if mono in clean:
                c = clean[mono] + c
                if c.is_zero():
                    del clean[mono]
                    continue
            clean[mono] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, key, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _trusted(cls, nvars, terms):
        obj = object.__new__(cls)
        object.__setattr__(obj, "nvars", nvars)
        object.__setattr__(obj, "terms", terms)
        return obj

    # -- constructors ----------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, c=1) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        """The variable x_{i+1} (0-based index ``i``)."""
        mono = [0] * nvars
        mono[i] = 1
        return cls(nvars, {tuple(mono): ONE})

    @classmethod
    def monomial(cls, mono, c=1) -> "Poly":
        return cls(len(mono), {tuple(mono): c})

    # -- views -----------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def monomials(self):
        return [m for m, _ in self.sorted_terms()]

    def coeff(self, mono) -> Cyclo:
        return self.terms.get(tuple(mono), ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def leading(self):
        return min(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def __len__(self):
        return len(self.terms)

    # -- arithmetic ------------------------------------------------------
    def _check(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionError("variable count mismatch")
            return other
        c = as_cyclo(other)
        if c is NotImplemented:
            return NotImplemented
        return Poly.constant(self.nvars, c)

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = out[m] + c
                if s.is_zero():
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return Poly._trusted(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._trusted(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "Poly":
        c = as_cyclo(c)
        if c.is_zero():
            return Poly(self.nvars)
        return Poly._trusted(self.nvars, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_cyclo(other)
            if c is NotImplemented:
                return NotImplemented
            return self.scale(c)
        other = self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = c1 * c2
                if m in out:
                    out[m] = out[m] + v
                else:
                    out[m] = v
        return Poly._trusted(self.nvars, {m: c for m, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        c = as_cyclo(other)
        if c is NotImplemented:
            return NotImplemented
        return self == Poly.constant(self.nvars, c)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms)))

    def __repr__(self):
        return f"Poly({to_expr(self)!r})"

    __str__ = lambda self: to_expr(self)  # noqa: E731

    # -- proportionality ---------------------------------------------------
    def ratio_to(self, other: "Poly"):
        """Scalar c with self = c * other, or None."""
        if self.nvars != other.nvars or set(self.terms) != set(other.terms):
            return None
        if not self.terms:
            return ONE
        m0 = next(iter(other.terms))
        c = self.terms[m0] / other.terms[m0]
        for m, v in other.terms.items():
            if self.terms[m] != c * v:
                return None
        return c

    def normalized(self) -> "Poly":
        """Scale so that the leading (deg-lex) coefficient is 1."""
        if not self.terms:
            return self
        return self.scale(self.leading()[1].inverse())


# ---------------------------------------------------------------------------
# weights and points


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not self.weights or any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")

    @classmethod
    def plain(cls, n: int) -> "WeightSystem":
        return cls((1,) * n)

    def __len__(self):
        return len(self.weights)


INHOMOGENEOUS = None


class ProjPoint:
    """Point of (weighted) projective space given by a representative."""

    __slots__ = ("coords", "weights")

    def __init__(self, coords, weights=None):
        coords = tuple(as_cyclo(c) for c in coords)
        if not coords or all(c.is_zero() for c in coords):
            raise ValueError("projective point needs a nonzero coordinate")
        object.__setattr__(self, "coords", coords)
        w = tuple(weights) if weights is not None else (1,) * len(coords)
        if len(w) != len(coords):
            raise DimensionError("weight count mismatch")
        object.__setattr__(self, "weights", w)

    def __setattr__(self, key, value):
        raise AttributeError("ProjPoint is immutable")

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def normalized(self) -> "ProjPoint":
        """First nonzero coordinate scaled to 1 (unweighted spaces only)."""
        if any(w != 1 for w in self.weights):
            return self
        lead = next(c for c in self.coords if not c.is_zero())
        inv = lead.inverse()
        return ProjPoint([c * inv for c in self.coords])

    def __eq__(self, other):
        if not isinstance(other, ProjPoint) or len(other) != len(self):
            return NotImplemented
        if self.weights != other.weights:
            return False
        zero_a = [c.is_zero() for c in self.coords]
        zero_b = [c.is_zero() for c in other.coords]
        if zero_a != zero_b:
            return False
        idx = [i for i, z in enumerate(zero_a) if not z]
        ratios = [other.coords[i] / self.coords[i] for i in idx]
        ws = [self.weights[i] for i in idx]
        # q_i = lam^{w_i} p_i  <=>  r_i^{w_j} = r_j^{w_i} (gcd of weights assumed 1)
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                if ratios[a] ** ws[b] != ratios[b] ** ws[a]:
                    return False
        return True

    def __hash__(self):
        return hash(tuple(c.is_zero() for c in self.coords))

    def __repr__(self):
        return "[" + " : ".join(format_scalar(c) for c in self.coords) + "]"


def _coords(p):
    return p.coords if isinstance(p, ProjPoint) else tuple(as_cyclo(c) for c in p)


# ---------------------------------------------------------------------------
# operations


def evaluate(f: Poly, p) -> Cyclo:
    """Exact value of ``f`` at the representative ``p``."""
    xs = _coords(p)
    if len(xs) != f.nvars:
        raise DimensionError(f"{len(xs)} coordinates for {f.nvars} variables")
    cache = [dict() for _ in xs]

    def pw(i, e):
        if e == 0:
            return ONE
        hit = cache[i].get(e)
        if hit is None:
            hit = xs[i] ** e
            cache[i][e] = hit
        return hit

    total = ZERO
    for mono, c in f.terms.items():
        term = c
        for i, e in enumerate(mono):
            if e:
                term = term * pw(i, e)
                if term.is_zero():
                    break
        total = total + term
    return total


def substitute_linear(f: Poly, M: Sequence[Sequence]) -> Poly:
    """f(M y): variable x_i is replaced by sum_j M[i][j] y_j.

    ``M`` has ``f.nvars`` rows and any number k >= 1 of columns; the result
    lives in k variables.
    """
    M = getattr(M, "rows", M)
    if len(M) != f.nvars:
        raise DimensionError(f"matrix has {len(M)} rows, polynomial has {f.nvars} variables")
    k = len(M[0])
    if k < 1 or any(len(r) != k for r in M):
        raise DimensionError("ragged substitution matrix")
    forms = [
        Poly._trusted(k, {tuple(1 if t == j else 0 for t in range(k)): as_cyclo(c) for j, c in enumerate(row) if not as_cyclo(c).is_zero()})
        for row in M
    ]
    cache: dict = {}

    def pw(i, e):
        key = (i, e)
        hit = cache.get(key)
        if hit is None:
            if e == 0:
                hit = Poly.constant(k, 1)
            elif e == 1:
                hit = forms[i]
            else:
                hit = pw(i, e // 2) * pw(i, e - e // 2)
            cache[key] = hit
        return hit

    out: dict = {}
    for mono, c in f.terms.items():
        prod = None
        for i, e in enumerate(mono):
            if e:
                prod = pw(i, e) if prod is None else prod * pw(i, e)
        if prod is None:
            prod = Poly.constant(k, 1)
        for m, v in prod.terms.items():
            w = v * c
            if m in out:
                out[m] = out[m] + w
            else:
                out[m] = w
    return Poly._trusted(k, {m: c for m, c in out.items() if not c.is_zero()})


def weighted_degree(f: Poly, w: WeightSystem | Sequence[int] | None = None):
    """Common weighted degree of all terms, or ``None`` if inhomogeneous."""
    ws = w.weights if isinstance(w, WeightSystem) else tuple(w) if w is not None else (1,) * f.nvars
    if len(ws) != f.nvars:
        raise DimensionError("weight count mismatch")
    degs = {sum(a * b for a, b in zip(m, ws)) for m in f.terms}
    if len(degs) > 1:
        return INHOMOGENEOUS
    return degs.pop() if degs else 0


def partials(f: Poly) -> list[Poly]:
    out = []
    for i in range(f.nvars):
        terms = {}
        for mono, c in f.terms.items():
            e = mono[i]
            if e:
                m = list(mono)
                m[i] -= 1
                terms[tuple(m)] = c * e
        out.append(Poly._trusted(f.nvars, terms))
    return out


def is_singular_at(f: Poly, p) -> bool:
    xs = _coords(p)
    if len(xs) != f.nvars:
        raise DimensionError("coordinate count mismatch")
    if not evaluate(f, xs).is_zero():
        return False
    return all(evaluate(g, xs).is_zero() for g in partials(f))


def _reduce_poly(f: Poly, p: int):
    out = []
    for mono, c in f.terms.items():
        r = reduce_mod_prime(c, p)
        if r:
            out.append((mono, r))
    return out


def _eval_mod(terms, pt, p):
    s = 0
    for mono, c in terms:
        v = c
        for x, e in zip(pt, mono):
            if e:
                v = v * pow(x, e, p)
                if not v:
                    break
        s += v
    return s % p


def projective_points_mod(p: int, n: int):
    """All points of P^{n-1}(F_p), normalized with first nonzero coordinate 1."""
    for lead in range(n):
        for tail in itertools.product(range(p), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail


def finite_field_singular_scan(f: Poly, p: int) -> list[tuple]:
    """Every point of P^{n-1}(F_p) where f and all its partials vanish.

    Coefficients are reduced with :func:`reduce_mod_prime`; an inadmissible
    prime raises :class:`BadPrimeError`.
    """
    if not f.is_homogeneous():
        raise ValueError("scan needs a homogeneous polynomial")
    red = _reduce_poly(f, p)
    grads = [_reduce_poly(g, p) for g in partials(f)]
    found = []
    for pt in projective_points_mod(p, f.nvars):
        if _eval_mod(red, pt, p):
            continue
        if all(_eval_mod(g, pt, p) == 0 for g in grads):
            found.append(pt)
    return sorted(found)


def exact_divide(f: Poly, g: Poly):
    """h with f = g*h, or ``None`` when g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.nvars != g.nvars:
        raise DimensionError("variable count mismatch")
    lm, lc = g.leading()
    inv = lc.inverse()
    rem = f
    quot: dict = {}
    while rem.terms:
        m, c = rem.leading()
        if any(a < b for a, b in zip(m, lm)):
            return None
        qm = tuple(a - b for a, b in zip(m, lm))
        qc = c * inv
        quot[qm] = qc
        rem = rem - Poly._trusted(f.nvars, {qm: qc}) * g
    return Poly._trusted(f.nvars, quot)


def common_variable_factor(monos: Iterable[Sequence[int]]) -> tuple:
    monos = [tuple(m) for m in monos]
    if not monos:
        raise ValueError("need at least one monomial")
    return tuple(min(col) for col in zip(*monos))


# ---------------------------------------------------------------------------
# text formats


def to_expr(f: Poly, names=None) -> str:
    """Human-readable expression, e.g. ``x1^3*x2 - 5*x1^2*x2^2``."""
    names = names or [f"x{i + 1}" for i in range(f.nvars)]
    if not f.terms:
        return "0"
    parts = []
    for mono, c in f.sorted_terms():
        vs = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, mono) if e)
        if c.is_rational():
            q = c.rational()
            sign = "-" if q < 0 else "+"
            mag = abs(q)
            cs = "" if mag == 1 and vs else (str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}")
        else:
            sign = "+"
            cs = f"({format_scalar(c)})"
        body = cs + ("*" if cs and vs else "") + vs
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_PTOK = re.compile(r"\s*(?:(x)(\d+)|(z)(\d+)|(\d+)|(\S))")


class _PolyParser:
    def __init__(self, text, nvars):
        self.text = text
        self.nvars = nvars
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _PTOK.match(text, pos)
            if m is None:
                break
            if m.group(1):
                self.toks.append(("x", int(m.group(2))))
            elif m.group(3):
                self.toks.append(("z", int(m.group(4))))
            elif m.group(5):
                self.toks.append(("int", int(m.group(5))))
            else:
                ch = m.group(6)
                if ch not in "+-*/^()":
                    raise PolySyntaxError(f"unexpected {ch!r} in {text!r}")
                self.toks.append((ch, None))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if self.i >= len(self.toks):
            raise PolySyntaxError(f"unexpected end of {self.text!r}")
        tok = self.toks[self.i]
        if kind and tok[0] != kind:
            raise PolySyntaxError(f"expected {kind} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            r = self.term()
            v = v + r if op == "+" else v - r
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/", "x", "z", "int", "("):
            if self.peek() in ("*", "/"):
                op = self.take()[0]
            else:
                op = "*"  # implicit multiplication
            r = self.unary()
            if op == "*":
                v = v * r
            else:
                if r.degree() > 0:
                    raise PolySyntaxError("division by a non-constant")
                v = v.scale(r.coeff((0,) * self.nvars).inverse())
        return v

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        kind, base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            e = self.take("int")[1]
            if kind == "root":
                return Poly.constant(self.nvars, root_of_unity(base, -e if neg else e))
            if neg:
                if base.degree() > 0:
                    raise PolySyntaxError("negative power of a non-constant")
                return Poly.constant(self.nvars, base.coeff((0,) * self.nvars) ** (-e))
            return base**e
        if kind == "root":
            return Poly.constant(self.nvars, root_of_unity(base, 1))
        return base

    def atom(self):
        kind = self.peek()
        if kind == "int":
            return "poly", Poly.constant(self.nvars, self.take()[1])
        if kind == "z":
            return "root", self.take()[1]
        if kind == "x":
            i = self.take()[1]
            if not 1 <= i <= self.nvars:
                raise PolySyntaxError(f"variable x{i} outside 1..{self.nvars}")
            return "poly", Poly.var(i - 1, self.nvars)
        if kind == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return "poly", v
        raise PolySyntaxError(f"unexpected token in {self.text!r}")


def parse_poly(text: str, nvars: int | None = None) -> Poly:
    """Parse an expression in x1..xk, z<n> roots of unity, integers and + - * / ^."""
    if nvars is None:
        idx = [int(m) for m in re.findall(r"x(\d+)", text)]
        nvars = max(idx) if idx else 1
    p = _PolyParser(text, nvars)
    if not p.toks:
        raise PolySyntaxError("empty polynomial")
    v = p.expr()
    if p.i != len(p.toks):
        raise PolySyntaxError(f"trailing input in {text!r}")
    return v


def dump_poly_file(f: Poly, weights: Sequence[int] | None = None, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    head = f"vars {f.nvars}"
    if weights is not None and any(w != 1 for w in weights):
        head += " weights " + " ".join(str(w) for w in weights)
    lines.append(head)
    for mono, c in f.sorted_terms():
        lines.append(f"{format_scalar(c)} ; " + " ".join(str(e) for e in mono))
    return "\n".join(lines) + "\n"


def load_poly_text(text: str) -> tuple[Poly, WeightSystem]:
    """Parse the term-per-line polynomial format; returns (poly, weights)."""
    nvars = None
    weights = None
    terms: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if nvars is None:
            parts = line.split()
            if parts[0] != "vars" or len(parts) < 2:
                raise PolySyntaxError(f"line {lineno}: expected 'vars k' header")
            nvars = int(parts[1])
            if len(parts) > 2:
                if parts[2] != "weights" or len(parts) != 3 + nvars:
                    raise PolySyntaxError(f"line {lineno}: malformed weights")
                weights = WeightSystem(tuple(int(w) for w in parts[3:]))
            continue
        if ";" not in line:
            raise PolySyntaxError(f"line {lineno}: missing ';'")
        cs, es = line.split(";", 1)
        exps = tuple(int(e) for e in es.split())
        if len(exps) != nvars:
            raise PolySyntaxError(f"line {lineno}: expected {nvars} exponents")
        c = parse_scalar(cs)
        terms[exps] = terms[exps] + c if exps in terms else c
    if nvars is None:
        raise PolySyntaxError("missing header")
    return Poly(nvars, terms), weights or WeightSystem.plain(nvars)


def load_poly_file(path) -> tuple[Poly, WeightSystem]:
    with open(path, encoding="utf-8") as fh:
        return load_poly_text(fh.read())


def rational_content_ok(f: Poly, p: int) -> bool:
    """True if every coefficient of f can be reduced modulo p."""
    try:
        _reduce_poly(f, p)
    except BadPrimeError:
        return False
    return True


def mat_vec(M, v):
    M = getattr(M, "rows", M)
    return [sum((as_cyclo(a) * b for a, b in zip(row, v)), ZERO) for row in M]


__all__ = [
    "Poly",
    "Monomial",
    "WeightSystem",
    "ProjPoint",
    "DimensionError",
    "PolySyntaxError",
    "INHOMOGENEOUS",
    "evaluate",
    "substitute_linear",
    "weighted_degree",
    "partials",
    "is_singular_at",
    "finite_field_singular_scan",
    "projective_points_mod",
    "exact_divide",
    "common_variable_factor",
    "to_expr",
    "parse_poly",
    "dump_poly_file",
    "load_poly_text",
    "load_poly_file",
    "rational_content_ok",
    "mat_vec",
    "Fraction",
]
