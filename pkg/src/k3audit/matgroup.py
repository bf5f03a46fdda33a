"""Finite matrix groups over cyclotomic fields.

Groups are enumerated breadth-first from their generators.  The enumeration
keeps the right-multiplication-by-generator table (the Schreier graph), which
is enough to derive words for every element, abelianization invariants and
all linear characters without ever forming the full multiplication table.
"""
from __future__ import annotations

import itertools
import math
import os
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .exactfield import ONE, ZERO, Cyclo, as_cyclo, format_scalar, parse_scalar, root_of_unity
from .multipoly import DimensionError, ProjPoint

DEFAULT_CAP = 12000


class CapExceeded(RuntimeError):
    """Closure produced more elements than allowed."""


class CertificateError(RuntimeError):
    """A catalogue expectation failed on load."""


# ---------------------------------------------------------------------------
# matrices


def _lcm(a, b):
    return a * b // math.gcd(a, b)


class GMatrix:
    """Immutable square matrix with Cyclo entries."""

    __slots__ = ("rows", "label", "_key")

    def __init__(self, rows, label: str | None = None):
        rows = tuple(tuple(as_cyclo(c) if not isinstance(c, str) else parse_scalar(c) for c in r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionError("GMatrix must be square")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, key, value):
        raise AttributeError("GMatrix is immutable")

    @classmethod
    def identity(cls, n: int, order: int = 1) -> "GMatrix":
        return cls([[Cyclo(1 if i == j else 0, order) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries, label=None) -> "GMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)], label)

    @classmethod
    def permutation(cls, perm: Sequence[int], label=None) -> "GMatrix":
        """Matrix sending basis vector e_j to e_perm[j] (0-based)."""
        n = len(perm)
        rows = [[ZERO] * n for _ in range(n)]
        for j, i in enumerate(perm):
            rows[i][j] = ONE
        return cls(rows, label)

    @classmethod
    def block(cls, *blocks) -> "GMatrix":
        n = sum(b.size for b in blocks)
        rows = [[ZERO] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.size):
                for j in range(b.size):
                    rows[off + i][off + j] = b.rows[i][j]
            off += b.size
        return cls(rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def field_order(self) -> int:
        m = 1
        for r in self.rows:
            for c in r:
                m = _lcm(m, c.order)
        return m

    def embed(self, m: int) -> "GMatrix":
        return GMatrix._trusted(tuple(tuple(c.embed(m) for c in r) for r in self.rows), self.label)

    @classmethod
    def _trusted(cls, rows, label=None):
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", rows)
        object.__setattr__(obj, "label", label)
        object.__setattr__(obj, "_key", None)
        return obj

    def key(self):
        k = self._key
        if k is None:
            m = self.field_order
            k = (m,) + tuple((c.embed(m).num, c.embed(m).den) for r in self.rows for c in r)
            object.__setattr__(self, "_key", k)
        return k

    def with_label(self, label):
        return GMatrix._trusted(self.rows, label)

    # -- arithmetic ------------------------------------------------------
    def __matmul__(self, other: "GMatrix") -> "GMatrix":
        if other.size != self.size:
            raise DimensionError("size mismatch")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = None
                for a, b in zip(r, c):
                    if a.is_zero() or b.is_zero():
                        continue
                    t = a * b
                    acc = t if acc is None else acc + t
                row.append(acc if acc is not None else (r[0] * ZERO))
            out.append(tuple(row))
        return GMatrix._trusted(tuple(out))

    __mul__ = __matmul__

    def apply(self, v):
        return [sum((a * as_cyclo(b) for a, b in zip(r, v)), ZERO) for r in self.rows]

    def scale(self, c) -> "GMatrix":
        c = as_cyclo(c)
        return GMatrix._trusted(tuple(tuple(x * c for x in r) for r in self.rows), self.label)

    def __eq__(self, other):
        if not isinstance(other, GMatrix):
            return NotImplemented
        return self.size == other.size and all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash(tuple(hash(c) for r in self.rows for c in r))

    def transpose(self):
        return GMatrix._trusted(tuple(zip(*self.rows)))

    def trace(self) -> Cyclo:
        return sum((self.rows[i][i] for i in range(self.size)), ZERO)

    def det(self) -> Cyclo:
        m = [list(r) for r in self.rows]
        n = len(m)
        det = ONE
        for c in range(n):
            p = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
            if p is None:
                return ZERO
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = -det
            pv = m[c][c]
            det = det * pv
            inv = pv.inverse()
            for i in range(c + 1, n):
                if not m[i][c].is_zero():
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return det

    def inverse(self) -> "GMatrix":
        n = self.size
        m = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
            if p is None:
                raise ZeroDivisionError("singular matrix")
            m[c], m[p] = m[p], m[c]
            inv = m[c][c].inverse()
            m[c] = [a * inv for a in m[c]]
            for i in range(n):
                if i != c and not m[i][c].is_zero():
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return GMatrix._trusted(tuple(tuple(r[n:]) for r in m))

    def __pow__(self, k: int) -> "GMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = GMatrix.identity(self.size)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all((c == 1) if i == j else c.is_zero() for i, r in enumerate(self.rows) for j, c in enumerate(r))

    def scalar_value(self):
        """c if this matrix is c*I, else None."""
        c = self.rows[0][0]
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if (i == j and x != c) or (i != j and not x.is_zero()):
                    return None
        return c

    def proj_normalized(self) -> "GMatrix":
        """Scale so that the first nonzero entry (row-major) equals 1."""
        lead = next(c for r in self.rows for c in r if not c.is_zero())
        if lead == 1:
            return self
        return self.scale(lead.inverse())

    def order(self, cap: int = 1000) -> int:
        """Smallest k >= 1 with self^k = identity."""
        g = self
        for k in range(1, cap + 1):
            if g.is_identity():
                return k
            g = g @ self
        raise ValueError("matrix does not have finite order within cap")

    def proj_order(self, cap: int = 1000) -> int:
        """Smallest k >= 1 with self^k scalar."""
        g = self
        for k in range(1, cap + 1):
            if g.scalar_value() is not None:
                return k
            g = g @ self
        raise ValueError("matrix does not have finite projective order within cap")

    def __repr__(self):
        body = "; ".join(", ".join(format_scalar(c) for c in r) for r in self.rows)
        return f"GMatrix([{body}])"


# ---------------------------------------------------------------------------
# groups


@dataclass
class FiniteMatrixGroup:
    """A closed, duplicate-free list of matrices with its Schreier graph.

    ``rmul[i][s]`` is the index of ``elements[i] @ gens[s]`` (normalized when
    the group is projective); ``tree[i] = (parent, s)`` records the BFS edge
    that first reached element ``i`` (``None`` for the identity).
    """

    elements: list
    gens: list
    projective: bool
    rmul: list
    tree: list
    index: dict = field(repr=False, default_factory=dict)
    name: str | None = None

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def size(self) -> int:
        return self.elements[0].size

    def __iter__(self):
        return iter(self.elements)

    def canon(self, g: GMatrix) -> GMatrix:
        g = g.embed(self.field_order) if g.field_order != self.field_order and self.field_order % g.field_order == 0 else g
        return g.proj_normalized() if self.projective else g

    @property
    def field_order(self) -> int:
        return self.elements[0].field_order if self.elements else 1

    def index_of(self, g: GMatrix):
        return self.index.get(self.canon(g).key())

    def __contains__(self, g: GMatrix):
        return self.index_of(g) is not None

    def mul_index(self, i: int, j: int) -> int:
        prod = self.canon(self.elements[i] @ self.elements[j])
        return self.index[prod.key()]

    def words(self) -> list[list[int]]:
        """Exponent vectors over the generators along the BFS tree."""
        k = len(self.gens)
        out = [None] * len(self.elements)
        out[0] = [0] * k
        for i, t in enumerate(self.tree):
            if t is None:
                continue
            parent, s = t
            w = list(out[parent])
            w[s] += 1
            out[i] = w
        return out


def _canon_key(g: GMatrix, projective: bool):
    h = g.proj_normalized() if projective else g
    return h, h.key()


def closure(gens: Sequence[GMatrix], cap: int = DEFAULT_CAP, projective: bool = False, name=None) -> FiniteMatrixGroup:
    """Enumerate the group generated by ``gens`` breadth-first."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].size
    if any(g.size != n for g in gens):
        raise DimensionError("generators of different sizes")
    m = 1
    for g in gens:
        m = _lcm(m, g.field_order)
    gens = [(g.embed(m).proj_normalized() if projective else g.embed(m)).with_label(g.label) for g in gens]
    ident = GMatrix.identity(n).embed(m)
    elements = [ident]
    index = {ident.key(): 0}
    tree = [None]
    rmul = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        x = elements[i]
        row = []
        for s, g in enumerate(gens):
            y, key = _canon_key(x @ g, projective)
            j = index.get(key)
            if j is None:
                j = len(elements)
                if j >= cap:
                    raise CapExceeded(f"closure exceeded cap {cap}")
                elements.append(y)
                index[key] = j
                tree.append((i, s))
                queue.append(j)
            row.append(j)
        rmul.append(row)
    return FiniteMatrixGroup(elements, gens, projective, rmul, tree, index, name)


def projectivize(G: FiniteMatrixGroup) -> FiniteMatrixGroup:
    """The image in PGL: elements normalized with first nonzero entry 1."""
    if G.projective:
        return G
    return closure(G.gens, cap=max(len(G), 1), projective=True, name=G.name)


def scalar_subgroup(G: FiniteMatrixGroup) -> list[GMatrix]:
    return [g for g in G.elements if g.scalar_value() is not None]


# ---------------------------------------------------------------------------
# structure


def element_order(G: FiniteMatrixGroup, g: GMatrix, cap: int = 10000) -> int:
    """Order of g as an element of G (projective order for projective groups)."""
    return g.proj_order(cap) if G.projective else g.order(cap)


def _commutes(G, a: GMatrix, b: GMatrix) -> bool:
    ab, ba = a @ b, b @ a
    if G.projective:
        return ab.proj_normalized() == ba.proj_normalized()
    return ab == ba


def center(G: FiniteMatrixGroup) -> list[GMatrix]:
    return [x for x in G.elements if all(_commutes(G, x, s) for s in G.gens)]


def subgroup(G: FiniteMatrixGroup, gens: Sequence[GMatrix]) -> FiniteMatrixGroup:
    gens = [G.canon(g) for g in gens] or [G.elements[0]]
    return closure(gens, cap=len(G), projective=G.projective)


def normal_closure(G: FiniteMatrixGroup, gens: Sequence[GMatrix]) -> FiniteMatrixGroup:
    """Smallest normal subgroup of G containing ``gens``."""
    gens = list(gens) or [G.elements[0]]
    conj = [(s.inverse(), s) for s in G.gens]
    H = subgroup(G, gens)
    changed = True
    while changed:
        changed = False
        for si, s in conj:
            for h in list(H.gens):
                c = si @ h @ s
                if c not in H:
                    gens.append(c)
                    H = subgroup(G, gens)
                    changed = True
    return H


def derived_subgroup(G: FiniteMatrixGroup) -> FiniteMatrixGroup:
    comms = []
    inv = [s.inverse() for s in G.gens]
    for a, ai in zip(G.gens, inv):
        for b, bi in zip(G.gens, inv):
            comms.append(ai @ bi @ a @ b)
    return normal_closure(G, comms)


# -- integer lattices (Smith form of the Schreier relations) -----------------


def _schreier_relations(G: FiniteMatrixGroup):
    words = G.words()
    rels = []
    for i, row in enumerate(G.rmul):
        for s, j in enumerate(row):
            r = [a - b for a, b in zip(words[i], words[j])]
            r[s] += 1
            if any(r):
                rels.append(r)
    return rels


def _hermite(rows, k):
    """Row-reduce integer rows to echelon form (same row lattice)."""
    rows = [list(r) for r in rows if any(r)]
    out = []
    col = 0
    while rows and col < k:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        zero = [r for r in rows if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            new = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r2 = [a - q * b for a, b in zip(r, piv)]
                if r2[col]:
                    new.append(r2)
                elif any(r2):
                    zero.append(r2)
            nz = new
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        rows = [r for r in zero if any(r)]
        col += 1
    return out


def _smith(rows, k):
    """Smith normal form of an integer matrix with k columns.

    Returns (diagonal, V, Vinv) with U A V = diag for some unimodular U.
    The abelian group Z^k / rowspace is isomorphic to sum Z/d_i via
    x -> (Vinv x)_i mod d_i; homomorphisms to Q/Z are x -> sum_i (V^T x)_i t_i / d_i.
    """
    A = [list(r) for r in rows]
    while len(A) < k:
        A.append([0] * k)
    A = A[: max(len(A), k)]
    m = len(A)
    Vinv = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    V = [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    def col_op_add(src, dst, q):
        # column dst += q * column src (on A and V); Vinv row src -= q * row dst
        for r in A:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]
        Vinv[src] = [a - q * b for a, b in zip(Vinv[src], Vinv[dst])]

    def col_swap(a, b):
        for r in A:
            r[a], r[b] = r[b], r[a]
        for r in V:
            r[a], r[b] = r[b], r[a]
        Vinv[a], Vinv[b] = Vinv[b], Vinv[a]

    def col_neg(a):
        for r in A:
            r[a] = -r[a]
        for r in V:
            r[a] = -r[a]
        Vinv[a] = [-x for x in Vinv[a]]

    t = 0
    while t < min(m, k):
        # choose pivot with smallest nonzero absolute value in the submatrix
        best = None
        for i in range(t, m):
            for j in range(t, k):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        col_swap(t, j)
        done = False
        while not done:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, k):
                if A[t][j]:
                    q = A[t][j] // p
                    col_op_add(t, j, -q)
                    if A[t][j]:
                        done = False
            if not done:
                # move the smallest remaining entry of row/col t into the pivot
                cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]] + [
                    (abs(A[t][j]), t, j) for j in range(t, k) if A[t][j]
                ]
                _, i, j = min(cands)
                if i != t:
                    A[t], A[i] = A[i], A[t]
                if j != t:
                    col_swap(t, j)
                continue
            # divisibility condition
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, k) if A[i][j] % p), None)
            if bad is not None:
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                done = False
        if A[t][t] < 0:
            col_neg(t)
        t += 1
    diag = [abs(A[i][i]) if i < m else 0 for i in range(k)]
    return diag, V, Vinv


def abelianization(G: FiniteMatrixGroup):
    """Invariants (d_i > 1) of G/G' plus the map data for characters."""
    k = len(G.gens)
    rels = _hermite(_schreier_relations(G), k)
    diag, V, _ = _smith(rels, k)
    return diag, V


@dataclass
class StructuralProfile:
    order: int
    element_orders: dict
    center_order: int
    derived_order: int
    abelianization: tuple

    def as_dict(self):
        return {
            "order": self.order,
            "element_orders": dict(sorted(self.element_orders.items())),
            "center_order": self.center_order,
            "derived_order": self.derived_order,
            "abelianization": list(self.abelianization),
        }


def element_orders(G: FiniteMatrixGroup) -> Counter:
    return Counter(element_order(G, g) for g in G.elements)


def structural_profile(G: FiniteMatrixGroup) -> StructuralProfile:
    diag, _ = abelianization(G)
    inv = tuple(sorted(d for d in diag if d != 1))
    if any(d == 0 for d in inv):
        raise ArithmeticError("infinite abelianization: group is not closed")
    ab_order = math.prod(inv) if inv else 1
    derived = derived_subgroup(G)
    if len(derived) * ab_order != len(G):
        raise ArithmeticError("derived subgroup and abelianization disagree")
    return StructuralProfile(
        order=len(G),
        element_orders=dict(element_orders(G)),
        center_order=len(center(G)),
        derived_order=len(derived),
        abelianization=inv,
    )


# ---------------------------------------------------------------------------
# characters


class LinearCharacter:
    """Degree-one character, stored as exponents of a fixed root of unity.

    ``exps[i]`` is e with chi(elements[i]) = zeta_m^e.
    """

    def __init__(self, group: FiniteMatrixGroup, m: int, exps: Sequence[int]):
        self.group = group
        self.m = m
        self.exps = tuple(e % m for e in exps)

    def value_index(self, i: int) -> Cyclo:
        return root_of_unity(self.m, self.exps[i])

    def __call__(self, g) -> Cyclo:
        i = g if isinstance(g, int) else self.group.index_of(g)
        if i is None:
            raise KeyError("element not in group")
        return self.value_index(i)

    def gen_values(self) -> list[Cyclo]:
        return [self.value_index(self.group.rmul[0][s]) for s in range(len(self.group.gens))]

    def is_trivial(self) -> bool:
        return not any(self.exps)

    def order(self) -> int:
        g = 0
        for e in self.exps:
            g = math.gcd(g, e)
        return self.m // math.gcd(self.m, g) if any(self.exps) else 1

    def __eq__(self, other):
        if not isinstance(other, LinearCharacter) or other.group is not self.group:
            return NotImplemented
        L = _lcm(self.m, other.m)
        return all(a * (L // self.m) % L == b * (L // other.m) % L for a, b in zip(self.exps, other.exps))

    def __hash__(self):
        return hash(tuple(Fraction(e, self.m) for e in self.exps))

    def inverse(self):
        return LinearCharacter(self.group, self.m, [-e for e in self.exps])

    def is_multiplicative(self, pairs=None) -> bool:
        """Check chi(gh) = chi(g)chi(h) on the given index pairs (default: generator edges)."""
        G = self.group
        if self.exps[0] % self.m:
            return False
        if pairs is None:
            for i, row in enumerate(G.rmul):
                for s, j in enumerate(row):
                    if (self.exps[i] + self.exps[G.rmul[0][s]] - self.exps[j]) % self.m:
                        return False
            return True
        for i, j in pairs:
            if (self.exps[i] + self.exps[j] - self.exps[G.mul_index(i, j)]) % self.m:
                return False
        return True

    def spec(self) -> str:
        return "gens=" + ",".join(format_scalar(v.minimal()).replace(" ", "") for v in self.gen_values())

    def __repr__(self):
        return f"LinearCharacter({self.spec()})"


def trivial_character(G: FiniteMatrixGroup) -> LinearCharacter:
    return LinearCharacter(G, 1, [0] * len(G))


def character_from_gen_exponents(G: FiniteMatrixGroup, m: int, gen_exps: Sequence[int]) -> LinearCharacter:
    words = G.words()
    return LinearCharacter(G, m, [sum(a * b for a, b in zip(w, gen_exps)) for w in words])


def linear_characters(G: FiniteMatrixGroup) -> list[LinearCharacter]:
    """All degree-one characters via the Smith form of G/G'."""
    diag, V = abelianization(G)
    k = len(G.gens)
    ds = [d for d in diag]
    if any(d == 0 for d in ds):
        raise ArithmeticError("infinite abelianization")
    m = 1
    for d in ds:
        m = _lcm(m, d)
    # character t: gen s -> sum_i V[s][i] * t_i * (m / d_i)  (mod m)
    out = []
    for t in itertools.product(*[range(d) for d in ds]):
        gen_exps = [sum(V[s][i] * t[i] * (m // ds[i]) for i in range(k)) % m for s in range(k)]
        out.append(character_from_gen_exponents(G, m, gen_exps))
    for chi in out:
        if not chi.is_multiplicative():
            raise ArithmeticError("constructed character is not multiplicative")
    return out


# ---------------------------------------------------------------------------
# fixed points


def _kernel(rows, ncols):
    """Basis of the right kernel of a Cyclo matrix (list of vectors)."""
    m = [list(r) for r in rows]
    piv = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for i, pc in enumerate(piv):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


@dataclass
class FixedLocus:
    eigenvalue: Cyclo
    point: ProjPoint | None  # set when the eigenspace is a line
    dimension: int  # projective dimension of the fixed component
    basis: list

    @property
    def positive_dimensional(self) -> bool:
        return self.dimension > 0


def fixed_points_projective(g: GMatrix, extra_scalar_order: int = 1) -> list[FixedLocus]:
    """Eigenlines (and higher-dimensional eigenspaces, flagged) of ``g``.

    Eigenvalues are searched among the m-th roots of unity (m = order of g)
    times the ``extra_scalar_order``-th roots of unity.
    """
    m = g.order(cap=10000)
    s = extra_scalar_order
    n = g.size
    N = _lcm(m, s)
    cands = []
    seen = set()
    for j in range(m):
        for t in range(s):
            lam = root_of_unity(m, j) * root_of_unity(s, t)
            key = (j * (N // m) + t * (N // s)) % N
            if key not in seen:
                seen.add(key)
                cands.append((key, lam))
    out = []
    for _, lam in sorted(cands, key=lambda kv: kv[0]):
        rows = [[g.rows[i][j] - (lam if i == j else ZERO) for j in range(n)] for i in range(n)]
        basis = _kernel(rows, n)
        if not basis:
            continue
        lam = lam.minimal()
        if len(basis) == 1:
            out.append(FixedLocus(lam, ProjPoint(basis[0]).normalized(), 0, basis))
        else:
            out.append(FixedLocus(lam, None, len(basis) - 1, basis))
    return out


def tangent_determinant(g: GMatrix, v) -> Cyclo:
    """det of the induced action on T_[v] P^{n-1}: det(g) / lambda_v^n."""
    coords = [as_cyclo(c) for c in (v.coords if isinstance(v, ProjPoint) else v)]
    gv = g.apply(coords)
    k = next(i for i, c in enumerate(coords) if not c.is_zero())
    lam = gv[k] / coords[k]
    if any(a != lam * b for a, b in zip(gv, coords)):
        raise ValueError("vector is not an eigenline of the matrix")
    return (g.det() / lam ** g.size).minimal()


# ---------------------------------------------------------------------------
# catalogue files


def data_dir() -> Path:
    env = os.environ.get("K3AUDIT_DATA")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


@dataclass
class CatalogueFile:
    name: str
    size: int
    order: int
    projorder: int
    items: list  # ("comment", text) | ("gen", label, rows) | ("cert", polyfile, spec)

    @property
    def generators(self) -> list[GMatrix]:
        return [GMatrix(rows, label) for kind, label, rows in (it for it in self.items if it[0] == "gen")]

    @property
    def certs(self) -> list[tuple[str, str]]:
        return [(it[1], it[2]) for it in self.items if it[0] == "cert"]


class CatalogueSyntaxError(ValueError):
    pass


def parse_catalogue(text: str) -> CatalogueFile:
    lines = text.splitlines()
    items = []
    header = None
    i = 0
    while i < len(lines):
        raw = lines[i]
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            items.append(("comment", raw))
            i += 1
            continue
        parts = stripped.split()
        if parts[0] == "group":
            if len(parts) != 8 or parts[2::2] != ["size", "order", "projorder"]:
                raise CatalogueSyntaxError(f"line {i + 1}: malformed header")
            header = (parts[1], int(parts[3]), int(parts[5]), int(parts[7]))
            i += 1
        elif parts[0] == "gen":
            if header is None:
                raise CatalogueSyntaxError("gen before header")
            label = parts[1] if len(parts) > 1 else None
            n = header[1]
            rows = []
            for r in range(n):
                if i + 1 + r >= len(lines):
                    raise CatalogueSyntaxError("truncated gen block")
                cells = [c.strip() for c in lines[i + 1 + r].split(",")]
                if len(cells) != n:
                    raise CatalogueSyntaxError(f"line {i + 2 + r}: expected {n} entries")
                rows.append([parse_scalar(c) for c in cells])
            items.append(("gen", label, rows))
            i += n + 1
        elif parts[0] == "cert":
            if len(parts) != 3:
                raise CatalogueSyntaxError(f"line {i + 1}: cert needs <polyfile> <spec>")
            items.append(("cert", parts[1], parts[2]))
            i += 1
        else:
            raise CatalogueSyntaxError(f"line {i + 1}: unknown directive {parts[0]!r}")
    if header is None:
        raise CatalogueSyntaxError("missing group header")
    return CatalogueFile(header[0], header[1], header[2], header[3], items)


def dump_catalogue(cat: CatalogueFile) -> str:
    out = []
    header_done = False
    for it in cat.items:
        if it[0] != "comment" and not header_done:
            out.append(f"group {cat.name} size {cat.size} order {cat.order} projorder {cat.projorder}")
            header_done = True
        if it[0] == "comment":
            out.append(it[1])
        elif it[0] == "gen":
            out.append("gen" + (f" {it[1]}" if it[1] else ""))
            for row in it[2]:
                out.append(", ".join(format_scalar(c) for c in row))
        else:
            out.append(f"cert {it[1]} {it[2]}")
    if not header_done:
        out.append(f"group {cat.name} size {cat.size} order {cat.order} projorder {cat.projorder}")
    return "\n".join(out) + "\n"


CATALOGUE_NAMES = (
    "l27",
    "valentiner",
    "s5_perm5",
    "s4_p2",
    "m9",
    "n72",
    "t48_p2",
    "t48_2d",
    "q8_2d",
    "t192_check",
    "h192_check",
)


@dataclass
class CatalogueEntry:
    name: str
    size: int
    generators: list
    linear_order: int
    projective_order: int
    certificates: list  # (Poly, expected spec, computed LinearCharacter)
    group: FiniteMatrixGroup
    projective_group: FiniteMatrixGroup
    source: CatalogueFile


def parse_character_spec(spec: str):
    """'trivial', 'any', or 'gens=v1,v2,...' (scalar expressions)."""
    if spec in ("trivial", "any"):
        return spec
    if spec.startswith("gens="):
        return [parse_scalar(v) for v in spec[5:].split(",")]
    raise CatalogueSyntaxError(f"bad character spec {spec!r}")


_CACHE: dict = {}


def catalogue(name: str, directory=None) -> CatalogueEntry:
    """Load, close and certify a catalogue group (results cached per directory)."""
    from .invariants import curve_character
    from .multipoly import load_poly_file

    if name not in CATALOGUE_NAMES:
        raise KeyError(f"unknown catalogue group {name!r}; valid: {', '.join(CATALOGUE_NAMES)}")
    d = Path(directory) if directory else data_dir()
    ck = (str(d), name)
    if ck in _CACHE:
        return _CACHE[ck]
    cat = parse_catalogue((d / f"{name}.grp").read_text(encoding="utf-8"))
    if cat.name != name:
        raise CertificateError(f"{name}: file declares group {cat.name!r}")
    gens = cat.generators
    if any(g.size != cat.size for g in gens):
        raise CertificateError(f"{name}: generator size differs from header")
    if any(g.det().is_zero() for g in gens):
        raise CertificateError(f"{name}: singular generator")
    G = closure(gens, name=name)
    if len(G) != cat.order:
        raise CertificateError(f"{name}: linear order {len(G)} != expected {cat.order}")
    P = projectivize(G)
    if len(P) != cat.projorder:
        raise CertificateError(f"{name}: projective order {len(P)} != expected {cat.projorder}")
    certs = []
    for polyfile, spec in cat.certs:
        f, _w = load_poly_file(d / polyfile)
        chi = curve_character(f, G)
        want = parse_character_spec(spec)
        if chi is None:
            raise CertificateError(f"{name}: {polyfile} is not semi-invariant")
        if want == "trivial" and not chi.is_trivial():
            raise CertificateError(f"{name}: {polyfile} has non-trivial character {chi.spec()}")
        if isinstance(want, list):
            got = chi.gen_values()
            if len(got) != len(want) or any(a != b for a, b in zip(got, want)):
                raise CertificateError(f"{name}: {polyfile} character {chi.spec()} != {spec}")
        certs.append((f, spec, chi))
    entry = CatalogueEntry(name, cat.size, gens, len(G), len(P), certs, G, P, cat)
    _CACHE[ck] = entry
    return entry


__all__ = [
    "GMatrix",
    "FiniteMatrixGroup",
    "LinearCharacter",
    "CatalogueEntry",
    "CatalogueFile",
    "StructuralProfile",
    "FixedLocus",
    "CapExceeded",
    "CertificateError",
    "CatalogueSyntaxError",
    "closure",
    "projectivize",
    "scalar_subgroup",
    "structural_profile",
    "element_order",
    "element_orders",
    "center",
    "subgroup",
    "normal_closure",
    "derived_subgroup",
    "abelianization",
    "linear_characters",
    "trivial_character",
    "character_from_gen_exponents",
    "fixed_points_projective",
    "tangent_determinant",
    "catalogue",
    "CATALOGUE_NAMES",
    "parse_catalogue",
    "dump_catalogue",
    "parse_character_spec",
    "data_dir",
]
