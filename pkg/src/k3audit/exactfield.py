"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) of
Q[x]/Phi_n(x) as an integer numerator vector over a single positive common
denominator.  That keeps the hot multiplication loop in pure integer
arithmetic while still giving a unique (canonical) representation, so two
values of the same order are equal iff their stored data are equal.
"""
from __future__ import annotations

import math
import re
import threading
from fractions import Fraction
from functools import reduce

__all__ = [
    "Cyclo",
    "BadPrimeError",
    "ScalarSyntaxError",
    "cyclotomic_polynomial",
    "euler_phi",
    "root_of_unity",
    "to_common_order",
    "reduce_mod_prime",
    "primitive_root_mod",
    "parse_scalar",
    "format_scalar",
    "as_cyclo",
    "ZERO",
    "ONE",
]


class BadPrimeError(ValueError):
    """A prime is not admissible for reduction of a given value."""


class ScalarSyntaxError(ValueError):
    """Raised for malformed textual scalars."""


# ---------------------------------------------------------------------------
# cyclotomic polynomials and per-order tables (cached, lock-protected)

_lock = threading.Lock()
_phi_cache: dict[int, tuple[int, ...]] = {}
_table_cache: dict[int, "_OrderData"] = {}


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact cyclotomic division")
    return q


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("order must be positive")
    with _lock:
        hit = _phi_cache.get(n)
    if hit is not None:
        return hit
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    result = tuple(poly)
    with _lock:
        _phi_cache.setdefault(n, result)
        return _phi_cache[n]


class _OrderData:
    """Reduction tables for Q(zeta_n)."""

    __slots__ = ("n", "phi", "powers", "units")

    def __init__(self, n: int):
        self.n = n
        phi_poly = cyclotomic_polynomial(n)
        phi = len(phi_poly) - 1
        self.phi = phi
        top = max(n, 2 * phi - 1)
        powers: list[tuple[int, ...]] = []
        cur = [0] * phi
        cur[0] = 1
        for _ in range(top):
            powers.append(tuple(cur))
            # multiply by x and reduce x^phi = -sum Phi_i x^i
            carry = cur[-1]
            cur = [0] + cur[:-1]
            if carry:
                for i in range(phi):
                    cur[i] -= carry * phi_poly[i]
        self.powers = tuple(powers)
        self.units = tuple(k for k in range(1, n + 1) if math.gcd(k, n) == 1)


def _data(n: int) -> _OrderData:
    with _lock:
        hit = _table_cache.get(n)
    if hit is not None:
        return hit
    built = _OrderData(n)
    with _lock:
        _table_cache.setdefault(n, built)
        return _table_cache[n]


# ---------------------------------------------------------------------------
# the element type


def _normalize(num, den):
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = reduce(math.gcd, num, den)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class Cyclo:
    """An element of Q(zeta_n) in canonical power-basis form.

    ``Cyclo(3)`` and ``Cyclo(Fraction(1, 2))`` build rationals (order 1).
    Use :func:`root_of_unity` and arithmetic for everything else.
    """

    __slots__ = ("order", "num", "den")

    def __init__(self, value=0, order: int = 1):
        if isinstance(value, Cyclo):
            c = value.embed(order * value.order // math.gcd(order, value.order))
            object.__setattr__(self, "order", c.order)
            object.__setattr__(self, "num", c.num)
            object.__setattr__(self, "den", c.den)
            return
        q = Fraction(value)
        phi = _data(order).phi
        num = [0] * phi
        num[0] = q.numerator
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", q.denominator)

    def __setattr__(self, key, value):
        raise AttributeError("Cyclo is immutable")

    @classmethod
    def _raw(cls, order: int, num, den: int = 1) -> "Cyclo":
        num, den = _normalize(num, den)
        obj = object.__new__(cls)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    @classmethod
    def from_coeffs(cls, order: int, coeffs) -> "Cyclo":
        """Build from power-basis coordinates (length phi(order))."""
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != _data(order).phi:
            raise ValueError("coefficient count must equal phi(order)")
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in coeffs), 1)
        return cls._raw(order, [int(c * den) for c in coeffs], den)

    @classmethod
    def from_redundant(cls, order: int, coeffs) -> "Cyclo":
        """Build from coefficients on 1, z, ..., z^(len-1) (any length)."""
        data = _data(order)
        coeffs = [Fraction(c) for c in coeffs]
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in coeffs), 1)
        acc = [0] * data.phi
        for k, c in enumerate(coeffs):
            if c:
                ci = int(c * den)
                row = data.powers[k % order]
                for i, v in enumerate(row):
                    if v:
                        acc[i] += ci * v
        return cls._raw(order, acc, den)

    # -- views -----------------------------------------------------------
    @property
    def coeffs(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __bool__(self):
        return not self.is_zero()

    # -- embedding -------------------------------------------------------
    def embed(self, m: int) -> "Cyclo":
        """Image in Q(zeta_m) under zeta_n -> zeta_m^(m/n); requires n | m."""
        n = self.order
        if m == n:
            return self
        if m % n:
            raise ValueError(f"cannot embed order {n} into order {m}")
        step = m // n
        data = _data(m)
        acc = [0] * data.phi
        for k, c in enumerate(self.num):
            if c:
                row = data.powers[k * step]
                for i, v in enumerate(row):
                    if v:
                        acc[i] += c * v
        obj = object.__new__(Cyclo)
        object.__setattr__(obj, "order", m)
        object.__setattr__(obj, "num", tuple(acc))
        object.__setattr__(obj, "den", self.den)
        return obj

    def minimal(self) -> "Cyclo":
        """Same value expressed over the smallest order that contains it."""
        n = self.order
        if self.is_rational():
            return Cyclo(self.rational())
        for d in _divisors(n)[:-1]:
            cand = _descend(self, d)
            if cand is not None:
                return cand
        return self

    # -- Galois action ---------------------------------------------------
    def galois(self, k: int) -> "Cyclo":
        """Apply the automorphism zeta -> zeta^k (gcd(k, n) = 1)."""
        n = self.order
        if math.gcd(k, n) != 1:
            raise ValueError("Galois exponent must be a unit")
        data = _data(n)
        acc = [0] * data.phi
        for j, c in enumerate(self.num):
            if c:
                row = data.powers[(j * k) % n]
                for i, v in enumerate(row):
                    if v:
                        acc[i] += c * v
        return Cyclo._raw(n, acc, self.den)

    def conjugate(self) -> "Cyclo":
        """Complex conjugate (zeta -> zeta^-1)."""
        return self.galois(-1 % self.order if self.order > 1 else 1)

    def norm(self) -> Fraction:
        prod = ONE
        for k in _data(self.order).units:
            prod = prod * self.galois(k)
        return prod.rational()

    def trace(self) -> Fraction:
        acc = ZERO
        for k in _data(self.order).units:
            acc = acc + self.galois(k)
        return acc.rational()

    # -- arithmetic ------------------------------------------------------
    def __neg__(self):
        obj = object.__new__(Cyclo)
        object.__setattr__(obj, "order", self.order)
        object.__setattr__(obj, "num", tuple(-c for c in self.num))
        object.__setattr__(obj, "den", self.den)
        return obj

    def __pos__(self):
        return self

    def __add__(self, other):
        other = as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = to_common_order(self, other)
        if a.den == b.den:
            return Cyclo._raw(a.order, [x + y for x, y in zip(a.num, b.num)], a.den)
        return Cyclo._raw(a.order, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = to_common_order(self, other)
        if a.is_rational() or b.is_rational():
            if b.is_rational():
                a, b = b, a
            s = a.num[0]
            return Cyclo._raw(b.order, [s * c for c in b.num], a.den * b.den)
        data = _data(a.order)
        phi = data.phi
        prod = [0] * (2 * phi - 1)
        bn = b.num
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        prod[i + j] += x * y
        acc = prod[:phi]
        powers = data.powers
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                for i, v in enumerate(powers[k]):
                    if v:
                        acc[i] += c * v
        return Cyclo._raw(a.order, acc, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            return Cyclo(1 / self.rational(), self.order)
        # product of the non-trivial conjugates divided by the norm
        others = ONE
        for k in _data(self.order).units:
            if k % self.order != 1:
                others = others * self.galois(k)
        nrm = (others * self).rational()
        return Cyclo._raw(self.order, [c * nrm.denominator for c in others.num], others.den * nrm.numerator)

    def __truediv__(self, other):
        other = as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclo(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        other = as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == other.order:
            return self.den == other.den and self.num == other.num
        a, b = to_common_order(self, other)
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        # embedding-independent: the rational value for rationals, otherwise
        # the normalized trace (which does not change under embedding)
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.trace() / _data(self.order).phi, "cyclo"))

    def __repr__(self):
        return f"Cyclo({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)

    # -- numerics for diagnostics only ------------------------------------
    def __complex__(self):
        import cmath

        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(c * z**k for k, c in enumerate(self.num)) / self.den


def _descend(x: Cyclo, d: int):
    """Express x over order d if it lies in Q(zeta_d), else None."""
    n = x.order
    # invariance under Gal(Q(zeta_n)/Q(zeta_d)): k = 1 mod d
    for k in _data(n).units:
        if k % d == 1 % d and k != 1 and x.galois(k) != x:
            return None
    # solve embed(y) = x by Gaussian elimination over Q
    dd = _data(d)
    cols = [Cyclo._raw(d, [1 if i == j else 0 for i in range(dd.phi)]).embed(n).num for j in range(dd.phi)]
    rows = len(x.num)
    mat = [[Fraction(cols[j][i]) for j in range(dd.phi)] + [Fraction(x.num[i], x.den)] for i in range(rows)]
    sol = _solve_dense(mat, dd.phi)
    if sol is None:
        return None
    y = Cyclo.from_coeffs(d, sol)
    return y if y.embed(n) == x else None


def _solve_dense(mat, ncols):
    mat = [row[:] for row in mat]
    piv_cols = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        pv = mat[r][c]
        mat[r] = [v / pv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(mat)):
        if mat[i][-1] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(piv_cols):
        sol[c] = mat[i][-1]
    return sol


def as_cyclo(x):
    if isinstance(x, Cyclo):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclo(x)
    return NotImplemented


ZERO = Cyclo(0)
ONE = Cyclo(1)


def root_of_unity(n: int, k: int = 1) -> Cyclo:
    """zeta_n^k in canonical form."""
    if n < 1:
        raise ValueError("order must be positive")
    data = _data(n)
    return Cyclo._raw(n, data.powers[k % n], 1)


def to_common_order(a: Cyclo, b: Cyclo) -> tuple[Cyclo, Cyclo]:
    if a.order == b.order:
        return a, b
    m = a.order * b.order // math.gcd(a.order, b.order)
    return a.embed(m), b.embed(m)


# ---------------------------------------------------------------------------
# reduction modulo primes


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


def primitive_root_mod(n: int, p: int) -> int:
    """Smallest r in 1..p-1 of multiplicative order exactly n modulo p."""
    if not _is_prime(p) or (p - 1) % n:
        raise BadPrimeError(f"F_{p} has no primitive {n}-th root of unity")
    for r in range(1, p):
        if pow(r, n, p) == 1 and all(pow(r, n // q, p) != 1 for q in _prime_factors(n)):
            return r
    raise BadPrimeError(f"no primitive {n}-th root mod {p}")  # pragma: no cover


def _prime_factors(n: int) -> list[int]:
    out, m, q = [], n, 2
    while q * q <= m:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        out.append(m)
    return out


def reduce_mod_prime(a, p: int) -> int:
    """Image of ``a`` in F_p, sending zeta_n to the smallest primitive n-th root.

    Rational values are reduced directly, whatever order they are stored at.
    """
    a = as_cyclo(a)
    if not _is_prime(p):
        raise BadPrimeError(f"{p} is not prime")
    if a.den % p == 0:
        raise BadPrimeError(f"{p} divides a denominator of {a}")
    inv = pow(a.den, -1, p)
    if a.is_rational():
        return a.num[0] * inv % p
    r = primitive_root_mod(a.order, p)
    acc, rk = 0, 1
    for c in a.num:
        acc += c * rk
        rk = rk * r % p
    return acc * inv % p


# ---------------------------------------------------------------------------
# textual syntax

_TOKEN = re.compile(r"\s*(?:(z)(\d+)|(\d+)|(.))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1):
            out.append(("z", int(m.group(2))))
        elif m.group(3):
            out.append(("int", int(m.group(3))))
        else:
            ch = m.group(4)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in "+-*/^()":
                raise ScalarSyntaxError(f"unexpected character {ch!r} in {text!r}")
            out.append((ch, None))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if self.i >= len(self.toks):
            raise ScalarSyntaxError(f"unexpected end of {self.text!r}")
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ScalarSyntaxError(f"expected {kind!r} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            rhs = self.unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            exp = sign * self.take("int")[1]
            if base[0] == "root":
                return root_of_unity(base[1], exp)
            return base[1] ** exp
        return root_of_unity(base[1], 1) if base[0] == "root" else base[1]

    def atom(self):
        kind = self.peek()
        if kind == "int":
            return ("val", Cyclo(self.take()[1]))
        if kind == "z":
            n = self.take()[1]
            if n < 1:
                raise ScalarSyntaxError("root-of-unity order must be positive")
            return ("root", n)
        if kind == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return ("val", val)
        raise ScalarSyntaxError(f"unexpected token in {self.text!r}")


def parse_scalar(text: str) -> Cyclo:
    """Parse the scalar syntax: integers, p/q, z<n>^<k>, + - * /, parentheses."""
    p = _Parser(text)
    if not p.toks:
        raise ScalarSyntaxError("empty scalar")
    val = p.expr()
    if p.i != len(p.toks):
        raise ScalarSyntaxError(f"trailing input in {text!r}")
    return val


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(a: Cyclo) -> str:
    """Canonical text for ``a`` over its stored order; round-trips via parse_scalar."""
    parts = []
    for k, c in enumerate(a.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = _fmt_frac(mag)
        else:
            root = f"z{a.order}" if k == 1 else f"z{a.order}^{k}"
            body = root if mag == 1 else f"{_fmt_frac(mag)}*{root}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
