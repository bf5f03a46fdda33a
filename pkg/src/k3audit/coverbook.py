"""Numerical bookkeeping for equivariant double covers X -> Y.

Everything here is integer arithmetic: the Euler-characteristic identity of
the cover, bounds on Mori fibers and rational branch curves, fixed-point
counts of symplectic automorphisms, Hurwitz caps and Riemann-Hurwitz branch
contributions.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

K3_EULER = 24

# Known bound on the number of rational branch curves; switchable to the
# weaker bound 19 to re-run audits under weaker assumptions.
N_BOUND_STRICT = 10
N_BOUND_WEAK = 19
_n_bound = N_BOUND_STRICT


def set_n_bound(bound: int) -> None:
    global _n_bound
    if bound not in (N_BOUND_STRICT, N_BOUND_WEAK):
        raise ValueError("n-bound must be 10 or 19")
    _n_bound = bound


def n_bound() -> int:
    return _n_bound


# Euler characteristic of a Del Pezzo surface of degree d is 12 - d
# (P2: 3, P1 x P1: 4); kept in one table.
DEL_PEZZO_EULER = {d: 12 - d for d in range(1, 10)}


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class CoverScenario:
    e_min: int
    m: int = 0
    n: int = 0
    g: int | None = None

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ScenarioError("m and n are nonnegative")
        if self.n > _n_bound:
            raise ScenarioError(f"n = {self.n} exceeds the bound {_n_bound}")
        if self.e_min < 3:
            raise ScenarioError("Euler characteristic of Y_min is at least 3")


def euler_residual(s: CoverScenario) -> int:
    """24 - [2 e_min + 2m - 2n + (2g - 2)]; zero means consistent."""
    branch = 2 * s.g - 2 if s.g is not None else 0
    return K3_EULER - (2 * s.e_min + 2 * s.m - 2 * s.n + branch)


def mori_bound(n: int, e_min: int) -> int:
    """Upper bound n + 12 - e_min for the number of Mori fibers."""
    return n + 12 - e_min


def ek_lower_bound(k: int, r_k: int) -> int:
    """ceil(k r_k / 2)."""
    return -(-k * r_k // 2)


def minimizing_feasible(N: int, n: int, e_min: int) -> bool:
    """Whether N n / 2 <= n + 12 - e_min."""
    return N * n <= 2 * mori_bound(n, e_min)


def max_feasible_n(N: int, e_min: int, limit: int = N_BOUND_WEAK) -> int:
    """Largest n <= limit with minimizing_feasible(N, n, e_min)."""
    return max(n for n in range(0, limit + 1) if minimizing_feasible(N, n, e_min))


NIKULIN_FIXED_POINTS = {2: 8, 3: 6, 4: 4, 5: 4, 6: 2, 7: 3, 8: 2}


def nikulin_fix_count(order: int) -> int:
    if order not in NIKULIN_FIXED_POINTS:
        raise ValueError("symplectic automorphisms of K3 surfaces have order 2..8")
    return NIKULIN_FIXED_POINTS[order]


def hurwitz_cap(g: int) -> int:
    if g < 2:
        raise ValueError("Hurwitz bound needs genus >= 2")
    return 84 * (g - 1)


def min_genus_for_group(order: int) -> int:
    """Smallest g >= 2 with hurwitz_cap(g) >= order."""
    g = 2
    while hurwitz_cap(g) < order:
        g += 1
    return g


def rh_branch_contribution(cover_degree: int, e_total: int, e_quotient: int) -> int:
    """Branch-point contribution deg * e(Q) - e(B) of a cover B -> Q."""
    return cover_degree * e_quotient - e_total


def cyclic_contribution(orbits) -> int:
    """Sum over branch orbits of (|stabilizer| - 1) * orbit length."""
    return sum((stab - 1) * length for stab, length in orbits)


class Meeting(str, Enum):
    CONTAINED = "contained"
    DISJOINT = "disjoint"
    ONE_POINT = "one-point"
    TWO_POINTS = "two-points"


@dataclass(frozen=True)
class MoriFiberRecord:
    self_intersection: int
    branch_meeting: Meeting
    preimage_irreducible: bool | None  # None: curve lies in the branch locus


_FIBER_TABLE = {
    Meeting.CONTAINED: (-4, None),
    Meeting.DISJOINT: (-2, False),
    Meeting.ONE_POINT: (-1, False),
    Meeting.TWO_POINTS: (-1, True),
}


def classify_mori_fiber(meeting) -> MoriFiberRecord:
    meeting = Meeting(meeting)
    sq, irr = _FIBER_TABLE[meeting]
    return MoriFiberRecord(sq, meeting, irr)


def ramification_selfint(c_sq: int) -> int:
    """(pi(C))^2 = 2 C^2 for a curve C in the ramification locus."""
    return 2 * c_sq


def genus_from_degree(d: int) -> int:
    """Genus of a smooth branch curve in |-2K| on a Del Pezzo surface of degree d."""
    if d < 1:
        raise ValueError("degree must be positive")
    return d + 1


def del_pezzo_scenario(d: int) -> CoverScenario:
    """The scenario (e = 12 - d, m = 0, n = 0, g = d + 1)."""
    return CoverScenario(DEL_PEZZO_EULER[d], 0, 0, genus_from_degree(d))


__all__ = [
    "CoverScenario",
    "MoriFiberRecord",
    "Meeting",
    "ScenarioError",
    "DEL_PEZZO_EULER",
    "NIKULIN_FIXED_POINTS",
    "euler_residual",
    "mori_bound",
    "ek_lower_bound",
    "minimizing_feasible",
    "max_feasible_n",
    "nikulin_fix_count",
    "hurwitz_cap",
    "min_genus_for_group",
    "rh_branch_contribution",
    "cyclic_contribution",
    "classify_mori_fiber",
    "ramification_selfint",
    "genus_from_degree",
    "del_pezzo_scenario",
    "set_n_bound",
    "n_bound",
]
