import pytest
from hypothesis import given, strategies as st

from k3audit import coverbook as cov


@pytest.fixture(autouse=True)
def strict_bound():
    cov.set_n_bound(cov.N_BOUND_STRICT)
    yield
    cov.set_n_bound(cov.N_BOUND_STRICT)


@pytest.mark.parametrize("scenario", [(3, 0, 0, 10), (9, 0, 0, 4), (11, 0, 0, 2), (4, 0, 0, 9)])
def test_consistent_scenarios(scenario):
    assert cov.euler_residual(cov.CoverScenario(*scenario)) == 0


@pytest.mark.parametrize("d", range(1, 10))
def test_del_pezzo_scenarios_balance(d):
    # 24 = 2 e(Y) + e(B) with e(Y) = 12 - d and B of genus d + 1
    assert cov.euler_residual(cov.del_pezzo_scenario(d)) == 0


def test_scenario_validation():
    with pytest.raises(cov.ScenarioError):
        cov.CoverScenario(2)
    with pytest.raises(cov.ScenarioError):
        cov.CoverScenario(3, m=-1)
    with pytest.raises(cov.ScenarioError):
        cov.CoverScenario(3, n=11)
    cov.set_n_bound(cov.N_BOUND_WEAK)
    assert cov.CoverScenario(3, n=11).n == 11
    with pytest.raises(ValueError):
        cov.set_n_bound(12)


def test_mori_and_feasibility():
    assert cov.mori_bound(0, 3) == 9
    assert cov.max_feasible_n(4, 3) == 9
    assert cov.max_feasible_n(5, 3) == 6
    assert cov.ek_lower_bound(3, 3) == 5


@given(st.integers(1, 12), st.integers(0, 19), st.integers(3, 12))
def test_feasibility_matches_inequality(N, n, e):
    assert cov.minimizing_feasible(N, n, e) == (N * n / 2 <= n + 12 - e)


@given(st.integers(1, 10), st.integers(0, 20))
def test_ek_bound_is_ceiling(k, r):
    v = cov.ek_lower_bound(k, r)
    assert 2 * v >= k * r > 2 * (v - 1)


def test_fixed_point_table():
    assert [cov.nikulin_fix_count(k) for k in range(2, 9)] == [8, 6, 4, 4, 2, 3, 2]
    with pytest.raises(ValueError):
        cov.nikulin_fix_count(9)


def test_hurwitz():
    assert cov.hurwitz_cap(3) == 168
    assert cov.min_genus_for_group(168) == 3
    assert cov.min_genus_for_group(169) == 4
    with pytest.raises(ValueError):
        cov.hurwitz_cap(1)


def test_riemann_hurwitz_pieces():
    # Klein quartic -> P1 under L2(7): 168 * 2 - (-4) = 340 = sum of branch contributions
    assert cov.rh_branch_contribution(168, -4, 2) == 340
    assert cov.cyclic_contribution([(2, 84), (3, 56), (7, 24)]) == 84 + 112 + 144


def test_mori_fiber_table():
    rec = cov.classify_mori_fiber("two-points")
    assert rec.self_intersection == -1 and rec.preimage_irreducible
    assert cov.classify_mori_fiber(cov.Meeting.CONTAINED).preimage_irreducible is None
    with pytest.raises(ValueError):
        cov.classify_mori_fiber("three-points")
    assert cov.ramification_selfint(-2) == -4
    with pytest.raises(ValueError):
        cov.genus_from_degree(0)
