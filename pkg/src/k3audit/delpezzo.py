"""Picard-lattice combinatorics of Del Pezzo surfaces.

A class is stored as (a; b_1, ..., b_k) meaning a*H - sum b_i E_i on the
blow-up of P2 in k = 9 - d points.  The quadric P1 x P1 is a separate
rank-2 lattice with hyperbolic form.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class PicardLattice:
    degree: int
    quadric: bool = False  # P1 x P1 instead of a blow-up of P2

    def __post_init__(self):
        if not 1 <= self.degree <= 9:
            raise LatticeError("Del Pezzo degree must be in 1..9")
        if self.quadric and self.degree != 8:
            raise LatticeError("P1 x P1 has degree 8")

    @classmethod
    def p1xp1(cls) -> "PicardLattice":
        return cls(8, quadric=True)

    @property
    def rank(self) -> int:
        return 2 if self.quadric else 10 - self.degree

    @property
    def blown_up(self) -> int:
        return 9 - self.degree

    @property
    def K(self) -> "DivisorClass":
        if self.quadric:
            return DivisorClass((-2, -2))
        return DivisorClass((-3,) + (-1,) * self.blown_up)

    def H(self) -> "DivisorClass":
        return DivisorClass((1,) + (0,) * self.blown_up)

    def E(self, i: int) -> "DivisorClass":
        """Exceptional class E_i (1-based)."""
        if self.quadric or not 1 <= i <= self.blown_up:
            raise LatticeError(f"no exceptional class E{i}")
        b = [0] * self.blown_up
        b[i - 1] = -1
        return DivisorClass((0,) + tuple(b))

    def labels(self) -> list[str]:
        if self.quadric:
            return ["F1", "F2"]
        return ["H"] + [f"E{i}" for i in range(1, self.blown_up + 1)]

    def signature(self) -> tuple[int, int]:
        return (1, self.rank - 1)


@dataclass(frozen=True)
class DivisorClass:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __add__(self, other):
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return DivisorClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, k: int):
        return DivisorClass(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def __neg__(self):
        return DivisorClass(tuple(-a for a in self.coeffs))

    def __len__(self):
        return len(self.coeffs)

    def describe(self, lat: PicardLattice | None = None) -> str:
        if lat is not None and lat.quadric:
            return f"({self.coeffs[0]},{self.coeffs[1]})"
        a, bs = self.coeffs[0], self.coeffs[1:]
        parts = [f"{a}H"] if a else []
        for i, b in enumerate(bs, 1):
            if b:
                parts.append(f"{'-' if b > 0 else '+'}{abs(b) if abs(b) != 1 else ''}E{i}")
        return "".join(parts) or "0"


def pairing(c1: DivisorClass, c2: DivisorClass, lat: PicardLattice) -> int:
    if len(c1) != lat.rank or len(c2) != lat.rank:
        raise LatticeError("class rank does not match the lattice")
    if lat.quadric:
        # classes are bidegrees (p, q) = p*F1 + q*F2 with F1.F2 = 1
        return c1.coeffs[0] * c2.coeffs[1] + c1.coeffs[1] * c2.coeffs[0]
    return c1.coeffs[0] * c2.coeffs[0] - sum(a * b for a, b in zip(c1.coeffs[1:], c2.coeffs[1:]))


def _b_vectors(k: int, total: int, sq: int):
    """Integer vectors of length k with given sum and sum of squares (sorted output)."""
    bound = math.isqrt(sq)
    out = []

    def rec(i, s, q, prefix):
        if i == k:
            if s == 0 and q == 0:
                out.append(tuple(prefix))
            return
        left = k - i
        for b in range(bound, -bound - 1, -1):
            q2 = q - b * b
            if q2 < 0:
                continue
            s2 = s - b
            # Cauchy-Schwarz on the remaining coordinates: s2^2 <= (left-1) q2
            if s2 * s2 > (left - 1) * q2:
                continue
            rec(i + 1, s2, q2, prefix + [b])

    rec(0, total, sq, [])
    return out


# The enumeration bound a <= 7 is the correctness linchpin: for a (-1)-class
# a^2 + 1 = sum b_i^2 and sum b_i = 3a - 1, so Cauchy-Schwarz on the k = 9-d
# coordinates gives (3a-1)^2 <= k (a^2 + 1); with k <= 8 this forces a <= 6,
# and scanning a in [0..7] therefore cannot miss a class.
A_MAX = 7


def minus_one_classes(lat: PicardLattice) -> list[DivisorClass]:
    """All classes C with C.C = -1 and C.K = -1, in a deterministic order."""
    if lat.quadric:
        return []
    k = lat.blown_up
    if k == 0:
        return []
    out = []
    for a in range(0, A_MAX + 1):
        if (3 * a - 1) ** 2 > k * (a * a + 1):
            continue
        for b in _b_vectors(k, 3 * a - 1, a * a + 1):
            c = DivisorClass((a,) + b)
            assert pairing(c, c, lat) == -1 and pairing(c, lat.K, lat) == -1
            out.append(c)
    return out


@dataclass
class Graph:
    vertices: list
    edges: dict = field(default_factory=dict)  # (i, j) with i < j -> weight

    def adjacency(self) -> list[set]:
        adj = [set() for _ in self.vertices]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj


def intersection_graph(classes: list[DivisorClass], lat: PicardLattice) -> Graph:
    g = Graph(list(classes))
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            w = pairing(classes[i], classes[j], lat)
            if w >= 1:
                g.edges[(i, j)] = w
    return g


@dataclass
class GraphStats:
    vertices: int
    edges: int
    regular_degree: int | None
    girth: int | None
    automorphisms: int | None
    edge_weights: dict


AUTOMORPHISM_CAP = 12


def _girth(adj) -> int | None:
    best = None
    n = len(adj)
    for s in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    q.append(v)
                elif parent[u] != v:
                    cyc = dist[u] + dist[v] + 1
                    if best is None or cyc < best:
                        best = cyc
    return best


def graph_automorphisms(g: Graph, cap: int = AUTOMORPHISM_CAP) -> list[tuple]:
    """All weight-preserving vertex permutations (backtracking, degree pruning)."""
    n = len(g.vertices)
    if n > cap:
        raise OverflowError(f"automorphism search limited to {cap} vertices")
    adj = g.adjacency()
    w = {}
    for (i, j), x in g.edges.items():
        w[(i, j)] = w[(j, i)] = x
    deg = [len(a) for a in adj]
    found = []
    image = [-1] * n
    used = [False] * n

    def rec(v):
        if v == n:
            found.append(tuple(image))
            return
        for t in range(n):
            if used[t] or deg[t] != deg[v]:
                continue
            ok = True
            for u in range(v):
                if w.get((u, v), 0) != w.get((image[u], t), 0):
                    ok = False
                    break
            if ok:
                image[v] = t
                used[t] = True
                rec(v + 1)
                used[t] = False
        image[v] = -1

    rec(0)
    return found


def graph_stats(g: Graph, automorphisms: bool = True) -> GraphStats:
    adj = g.adjacency()
    degs = {len(a) for a in adj}
    auts = None
    if automorphisms:
        auts = len(graph_automorphisms(g))
    weights = {}
    for x in g.edges.values():
        weights[x] = weights.get(x, 0) + 1
    return GraphStats(
        vertices=len(g.vertices),
        edges=len(g.edges),
        regular_degree=degs.pop() if len(degs) == 1 else None,
        girth=_girth(adj),
        automorphisms=auts,
        edge_weights=dict(sorted(weights.items())),
    )


def genus_of_class(c: DivisorClass, lat: PicardLattice) -> int:
    """Arithmetic genus by adjunction: 1 + (C.C + C.K)/2."""
    s = pairing(c, c, lat) + pairing(c, lat.K, lat)
    if s % 2:
        raise LatticeError(f"adjunction gives a half-integral genus for {c.describe(lat)}")
    return 1 + s // 2


def simple_roots(lat: PicardLattice) -> list[DivisorClass]:
    """alpha_0 = H - E1 - E2 - E3 (when k >= 3) and alpha_i = E_i - E_{i+1}."""
    if lat.quadric:
        return []
    k = lat.blown_up
    roots = []
    if k >= 3:
        roots.append(DivisorClass((1, 1, 1, 1) + (0,) * (k - 3)))
    for i in range(1, k):
        roots.append(lat.E(i) - lat.E(i + 1))
    return roots


def reflect(x: DivisorClass, root: DivisorClass, lat: PicardLattice) -> DivisorClass:
    """s(x) = x + (x.alpha) alpha  for a root with alpha.alpha = -2."""
    return x + root * pairing(x, root, lat)


WEYL_CAP = 100000


def weyl_orbit(c: DivisorClass, lat: PicardLattice, cap: int = WEYL_CAP) -> int:
    roots = simple_roots(lat)
    seen = {c.coeffs}
    q = deque([c])
    while q:
        x = q.popleft()
        for r in roots:
            y = reflect(x, r, lat)
            if y.coeffs not in seen:
                seen.add(y.coeffs)
                if len(seen) > cap:
                    raise OverflowError(f"Weyl orbit exceeds cap {cap}")
                q.append(y)
    return len(seen)


def anticanonical_dim(r: int, d: int) -> int:
    """h^0(-rK) = 1 + r(r+1)d/2."""
    return 1 + r * (r + 1) * d // 2


def blowdown_selfint(b_sq: int, eb: int) -> int:
    """Self-intersection of the image of B after contracting a (-1)-curve E."""
    return b_sq + eb * eb


# ---------------------------------------------------------------------------
# text output


def emit_classes(lat: PicardLattice) -> str:
    classes = minus_one_classes(lat)
    lines = [f"degree {lat.degree} rank {lat.rank} classes {len(classes)}"]
    for i, c in enumerate(classes):
        lines.append(f"{i} {' '.join(str(x) for x in c.coeffs)} {c.describe(lat)}")
    return "\n".join(lines) + "\n"


def emit_graph_text(g: Graph) -> str:
    lines = [f"vertices {len(g.vertices)} edges {len(g.edges)}"]
    for (i, j), w in sorted(g.edges.items()):
        lines.append(f"{i} {j} {w}")
    return "\n".join(lines) + "\n"


def emit_dot(g: Graph, lat: PicardLattice, name: str = "exceptional") -> str:
    lines = [f"graph {name} {{"]
    for i, c in enumerate(g.vertices):
        lines.append(f'  v{i} [label="{c.describe(lat)}"];')
    for (i, j), w in sorted(g.edges.items()):
        extra = f' [label="{w}"]' if w != 1 else ""
        lines.append(f"  v{i} -- v{j}{extra};")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "PicardLattice",
    "DivisorClass",
    "Graph",
    "GraphStats",
    "LatticeError",
    "pairing",
    "minus_one_classes",
    "intersection_graph",
    "graph_stats",
    "graph_automorphisms",
    "genus_of_class",
    "simple_roots",
    "reflect",
    "weyl_orbit",
    "anticanonical_dim",
    "blowdown_selfint",
    "emit_classes",
    "emit_graph_text",
    "emit_dot",
    "A_MAX",
]
