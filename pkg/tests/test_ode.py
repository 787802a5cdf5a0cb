import numpy as np
import pytest

from angelesco import (AngelescoSystem, Interval, NumericalFailure,
                       star_normalize)
from angelesco.ode import (BoundaryPack, assemble_curve, boundary_values,
                           branch_curve, endpoint_slopes, integrate_branch,
                           rhs, solve_system, startup)
from angelesco.surface import limit_curve, limits_at, plateau_bounds


@pytest.fixture(scope="module")
def touching_pack(touching_system):
    return boundary_values(touching_system)


def test_boundary_values_touching(touching_pack):
    pk = touching_pack
    assert pk.C1_0 == pytest.approx(6.061862, abs=1e-6)
    assert pk.C2_0 == pytest.approx(0.0625, abs=1e-12)
    assert pk.C1_1 == pytest.approx(0.25, abs=1e-12)
    assert pk.C2_1 == pytest.approx(3.232051, abs=1e-6)
    assert pk.B1_0 == pytest.approx(-1.9747449, abs=1e-6)
    assert pk.B2_0 == pytest.approx(0.5, abs=1e-12)
    assert pk.B1_1 == pytest.approx(-1.0, abs=1e-12)
    assert pk.B2_1 == pytest.approx(0.8660254, abs=1e-6)
    # tighter regression pins on the closed forms
    assert pk.C1_0 == pytest.approx(6.0618621784789725, abs=1e-13)
    assert pk.C2_1 == pytest.approx(np.sqrt(3.0) + 1.5, abs=1e-13)


def test_boundary_identity(touching_pack):
    pk = touching_pack
    assert pk.gap_0 == pytest.approx(2.4747449, abs=1e-6)
    assert pk.gap_0 ** 2 == pytest.approx(6.1243622, abs=1e-6)
    assert pk.gap_0 ** 2 == pytest.approx(pk.C1_0 + pk.C2_0, abs=1e-10)
    assert pk.gap_1 ** 2 == pytest.approx(pk.C1_1 + pk.C2_1, abs=1e-10)


def test_boundary_values_depend_on_facing_edges_only(gap_system):
    # s = 0 data ignores i1.hi; s = 1 data ignores i2.lo
    pk = boundary_values(gap_system)
    closed0 = boundary_values(AngelescoSystem(Interval(-2.0, 0.25),
                                              Interval(0.25, 1.0)))
    assert (pk.C1_0, pk.C2_0, pk.B1_0, pk.B2_0) == (
        closed0.C1_0, closed0.C2_0, closed0.B1_0, closed0.B2_0)
    closed1 = boundary_values(AngelescoSystem(Interval(-2.0, 0.0),
                                              Interval(0.0, 1.0)))
    assert (pk.C1_1, pk.C2_1, pk.B1_1, pk.B2_1) == (
        closed1.C1_1, closed1.C2_1, closed1.B1_1, closed1.B2_1)


@pytest.mark.parametrize("c", [0.3, 0.7, 2.0])
def test_rhs_symmetric_point(c):
    d = rhs(0.5, np.array([c, c, -1.0, 1.0]))
    assert d[0] == pytest.approx(-4.0 * c, abs=1e-14)
    assert d[1] == pytest.approx(4.0 * c, abs=1e-14)


def test_rhs_solves_stated_linear_system():
    rng = np.random.default_rng(11)
    for _ in range(50):
        s = rng.uniform(0.01, 0.99)
        C1, C2 = rng.uniform(0.05, 5.0, 2)
        d = rhs(s, np.array([C1, C2, -1.0, 1.0]))
        M = np.array([[(1.0 + s) * s, (2.0 - s) * (1.0 - s)],
                      [s * s / C1, -(1.0 - s) ** 2 / C2]])
        b = np.array([-4.0 * s * C1 + 4.0 * (1.0 - s) * C2, -2.0])
        ref = np.linalg.solve(M, b)
        np.testing.assert_allclose(d[:2], ref, rtol=1e-11, atol=1e-11)


def test_rhs_positivity_guard():
    with pytest.raises(NumericalFailure):
        rhs(0.5, np.array([-0.1, 1.0, -1.0, 1.0]))
    with pytest.raises(NumericalFailure):
        rhs(0.5, np.array([1.0, 0.0, -1.0, 1.0]))


def test_endpoint_slopes(touching_pack):
    d1, d2 = endpoint_slopes(touching_pack, 0)
    assert d2 == pytest.approx(0.125, abs=1e-12)
    assert d1 == pytest.approx(-24.622448, abs=1e-6)
    d1, d2 = endpoint_slopes(touching_pack, 1)
    assert d1 == pytest.approx(-2.0 * touching_pack.C1_1, abs=1e-14)
    assert d2 == pytest.approx(4.0 * touching_pack.C2_1
                               + 6.0 * touching_pack.C1_1, abs=1e-12)


def test_endpoint_slopes_are_rhs_limits(touching_pack):
    pk = touching_pack
    d = rhs(0.0, np.array([pk.C1_0, pk.C2_0, pk.B1_0, pk.B2_0]))
    np.testing.assert_allclose(d[:2], endpoint_slopes(pk, 0), rtol=1e-13)
    d = rhs(1.0, np.array([pk.C1_1, pk.C2_1, pk.B1_1, pk.B2_1]))
    np.testing.assert_allclose(d[:2], endpoint_slopes(pk, 1), rtol=1e-13)


def test_startup_symmetric_mirror():
    sys = AngelescoSystem(Interval(-1.0, 0.0), Interval(0.0, 1.0))
    pk = boundary_values(sys)
    st0 = startup(pk, 0, 1e-5)
    st1 = startup(pk, 1, 1e-5)
    assert st0.s == pytest.approx(1.0 - st1.s, abs=1e-15)
    assert st0.C1 == pytest.approx(st1.C2, abs=1e-14)
    assert st0.C2 == pytest.approx(st1.C1, abs=1e-14)
    assert st0.B1 == pytest.approx(-st1.B2, abs=1e-14)
    assert st0.B2 == pytest.approx(-st1.B1, abs=1e-14)


def test_startup_validation(touching_pack):
    with pytest.raises(ValueError):
        startup(touching_pack, 2)
    with pytest.raises(ValueError):
        startup(touching_pack, 0, eps=0.0)
    with pytest.raises(ValueError):
        startup(touching_pack, 0, eps=1e-3)


def test_startup_refinement(touching_pack):
    # halving eps must improve the state at s = 0.01 at least linearly
    def state_at(eps):
        br = integrate_branch(touching_pack, 0, 0.02, eps=eps)
        return br.sample(np.array([0.01]))[0]

    d_coarse = np.max(np.abs(state_at(1e-4) - state_at(5e-5)))
    d_fine = np.max(np.abs(state_at(1e-5) - state_at(5e-6)))
    assert d_coarse < 1e-6
    assert d_fine < d_coarse / 8.0


def test_branch_drift_and_splice(touching_system, touching_info):
    cv = solve_system(touching_system, touching_info,
                      np.linspace(0.0, 1.0, 181))
    drift = cv.meta["identity_drift"]
    assert drift["forward"] <= 1e-8
    assert drift["backward"] <= 1e-8
    mism = cv.meta["splice_mismatch"]
    assert mism["ok"]
    assert max(mism["at_c1_vs_c2"]) <= 1e-8


def test_branch_stop_validation(touching_pack):
    with pytest.raises(ValueError):
        integrate_branch(touching_pack, 0, 1e-9)
    with pytest.raises(ValueError):
        integrate_branch(touching_pack, 1, 0.99999999)


def test_ode_matches_surface(touching_system, touching_info,
                             gap_system, gap_info):
    grid = np.linspace(0.0, 1.0, 181)
    for sys, info in ((touching_system, touching_info),
                      (gap_system, gap_info)):
        cv = solve_system(sys, info, grid)
        sf = limit_curve(sys, grid, info=info)
        for f in ("A1", "A2", "B1", "B2"):
            assert np.max(np.abs(getattr(cv, f) - getattr(sf, f))) < 1e-6


def test_forward_branch_continues_touching_curve(gap_system, gap_info):
    # closing the gap from the right leaves the s = 0 data unchanged, so the
    # forward branch follows the touching system sharing the facing edges
    pk = boundary_values(gap_system)
    fwd = integrate_branch(pk, 0, gap_info.c1)
    grid = np.linspace(0.0, 1.0, 181)
    sub = grid[grid <= gap_info.c1]
    bc = branch_curve(fwd, sub)
    assert bc.meta["side"] == 0
    closed = AngelescoSystem(Interval(-2.0, 0.25), Interval(0.25, 1.0))
    info = plateau_bounds(star_normalize(closed)[0])
    ref = solve_system(closed, info, sub)
    for f in ("A1", "A2", "B1", "B2"):
        assert np.max(np.abs(getattr(bc, f) - getattr(ref, f))) < 1e-9


def test_assembled_curve_endpoints_exact(touching_system, touching_info,
                                         touching_pack):
    cv = solve_system(touching_system, touching_info,
                      np.linspace(0.0, 1.0, 21))
    assert cv.A1[0] == 0.0
    assert cv.A2[-1] == 0.0
    assert cv.A2[0] == touching_pack.C2_0
    assert cv.A1[-1] == touching_pack.C1_1
    assert cv.B1[0] == touching_pack.B1_0
    assert cv.B2[-1] == touching_pack.B2_1


def test_monotone_structure_near_ends(touching_pack, touching_info):
    fwd = integrate_branch(touching_pack, 0, touching_info.c1)
    assert np.all(np.diff(fwd.y[:100, 1]) > 0)      # C2 grows off s = 0
    assert np.all(np.diff(fwd.y[:100, 0]) < 0)      # C1 falls
    bwd = integrate_branch(touching_pack, 1, touching_info.c2)
    assert np.all(np.diff(bwd.y[-100:, 0]) < 0)     # C1 still falling into s = 1


def test_plateau_values_match_surface(gap_system, gap_info):
    grid = np.linspace(0.0, 1.0, 181)
    cv = solve_system(gap_system, gap_info, grid)
    mid = 0.5 * (gap_info.c1 + gap_info.c2)
    i = int(np.argmin(np.abs(grid - mid)))
    assert gap_info.c1 < grid[i] < gap_info.c2
    p = limits_at(gap_system, float(grid[i]), info=gap_info)
    assert cv.A1[i] == pytest.approx(p.A1, abs=1e-8)
    assert cv.A2[i] == pytest.approx(p.A2, abs=1e-8)
    assert cv.B1[i] == pytest.approx(p.B1, abs=1e-8)
    assert cv.B2[i] == pytest.approx(p.B2, abs=1e-8)


def test_positivity_failure_reports_last_good_s():
    # fabricated data that drives C1 through zero almost immediately
    pk = BoundaryPack(1e-4, 25.0, 0.25, 3.0, -4.5, 0.5001, -1.0, 0.8)
    with pytest.raises(NumericalFailure) as exc:
        integrate_branch(pk, 0, 0.5)
    assert "last_good_s" in exc.value.context
