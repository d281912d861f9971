
import numpy as np
import pytest

from shutterbath import (
    BathParams,
    DomainError,
    ShutterSchedule,
    Trajectory,
    evolve_shuttered,
    evolve_unshuttered,
    heating_stroboscopic,
    heating_unshuttered,
    period_map,
    steady_state,
)

PARAM_GRID = [
    BathParams(g=0.1, r=10.0, nbar=10.0),
    BathParams(g=0.1, r=0.1, nbar=10.0),
    BathParams(g=0.05, r=1.0, nbar=20.0),
]


class TestTypes:
    def test_schedule_validation(self):
        with pytest.raises(DomainError):
            ShutterSchedule(tau=0.0, periods=3)
        with pytest.raises(DomainError):
            ShutterSchedule(tau=1.0, periods=-1)
        sched = ShutterSchedule(tau=0.5, periods=4)
        assert sched.total_time == 2.0

    def test_trajectory_validation(self, p_res):
        with pytest.raises(DomainError):
            Trajectory(times=np.array([0.0, 0.0]), n_mean=np.array([0.0, 1.0]),
                       shuttered=False, params=p_res)
        with pytest.raises(DomainError):
            Trajectory(times=np.array([0.0, 1.0]), n_mean=np.array([0.0]),
                       shuttered=False, params=p_res)


class TestHeatingUnshuttered:
    @pytest.mark.parametrize("n0", [0.0, 0.7, 5.0])
    def test_initial_value(self, p_res, n0):
        assert heating_unshuttered(0.0, n0, p_res) == n0

    def test_thermalizes_to_high_t_level(self, p_res):
        # long-time limit nbar - 1/2 (the -1/2 is the high-T residual)
        value = heating_unshuttered(1e4 / p_res.omega_c, 0.0, p_res)
        assert value == pytest.approx(p_res.nbar - 0.5, rel=1e-2)
        assert value == pytest.approx(p_res.nbar - 0.5, rel=1e-6)

    def test_negative_arguments_rejected(self, p_res):
        with pytest.raises(DomainError):
            heating_unshuttered(-1.0, 0.0, p_res)
        with pytest.raises(DomainError):
            heating_unshuttered(1.0, -0.5, p_res)


class TestPeriodMap:
    @pytest.mark.parametrize("p", PARAM_GRID)
    def test_map_is_affine(self, p):
        pm = period_map(1.0 / p.omega_c, p)
        n1, n2 = 0.3, 7.1
        assert pm.apply(n1) - pm.apply(n2) == pytest.approx(
            pm.gain * (n1 - n2), rel=1e-12
        )

    @pytest.mark.parametrize("p", PARAM_GRID)
    def test_fixed_point_is_steady_state(self, p):
        tau = 1.0 / p.omega_c
        assert period_map(tau, p).fixed_point() == pytest.approx(
            steady_state(tau, p), rel=1e-12
        )

    @pytest.mark.parametrize("m", [1, 10, 1000])
    def test_iterate_matches_stroboscopic(self, p_res, m):
        tau = 1.0 / p_res.omega_c
        pm = period_map(tau, p_res)
        assert pm.iterate(0.0, m) == pytest.approx(
            heating_stroboscopic(m, tau, p_res), rel=1e-12
        )


class TestHeatingStroboscopic:
    def test_zero_periods(self, p_res):
        assert heating_stroboscopic(0, 0.1, p_res) == 0.0

    @pytest.mark.parametrize("p", PARAM_GRID)
    def test_single_period_is_plain_evolution(self, p):
        tau = 1.0 / p.omega_c
        assert heating_stroboscopic(1, tau, p) == pytest.approx(
            heating_unshuttered(tau, 0.0, p), rel=1e-12
        )

    def test_large_period_count_reaches_steady_state(self, p_res):
        tau = 1.0 / p_res.omega_c
        assert heating_stroboscopic(10**6, tau, p_res) == pytest.approx(
            steady_state(tau, p_res), rel=1e-9
        )

    def test_zero_tau_rejected(self, p_res):
        with pytest.raises(DomainError):
            heating_stroboscopic(3, 0.0, p_res)

    @pytest.mark.parametrize("p", PARAM_GRID)
    def test_monotone_approach_bounded_by_steady_state(self, p):
        tau = 0.7 / p.omega_c
        target = steady_state(tau, p)
        values = [heating_stroboscopic(m, tau, p) for m in range(0, 2000, 25)]
        assert all(b >= a for a, b in zip(values, values[1:]))
        assert all(v <= target * (1.0 + 1e-12) for v in values)

    def test_nonzero_initial_state_extension(self, p_res):
        # a^m n0 + (1 - a^m) n_s, checked against explicit iteration
        tau = 0.5 / p_res.omega_c
        pm = period_map(tau, p_res)
        n = 2.5
        for _ in range(7):
            n = pm.apply(n)
        assert heating_stroboscopic(7, tau, p_res, n0=2.5) == pytest.approx(n, rel=1e-12)


class TestEvolveUnshuttered:
    def test_grid_refinement_consistency(self, p_res):
        coarse = evolve_unshuttered(5.0, 101, 0.0, p_res)
        fine = evolve_unshuttered(5.0, 201, 0.0, p_res)
        np.testing.assert_allclose(fine.times[::2], coarse.times, rtol=0, atol=1e-12)
        np.testing.assert_allclose(fine.n_mean[::2], coarse.n_mean, rtol=0, atol=1e-10)

    def test_final_value_near_thermal_level(self, p_res):
        trajectory = evolve_unshuttered(1e4 / p_res.omega_c, 501, 0.0, p_res)
        assert trajectory.n_mean[-1] == pytest.approx(p_res.nbar - 0.5, rel=1e-2)

    @pytest.mark.parametrize("p", PARAM_GRID)
    def test_positivity_from_ground_state(self, p):
        trajectory = evolve_unshuttered(200.0 / p.omega0, 4001, 0.0, p)
        assert np.all(trajectory.n_mean >= -1e-9)

    def test_validation(self, p_res):
        with pytest.raises(DomainError):
            evolve_unshuttered(0.0, 10, 0.0, p_res)
        with pytest.raises(DomainError):
            evolve_unshuttered(1.0, 1, 0.0, p_res)


class TestEvolveShuttered:
    def test_zero_periods_single_point(self, p_res):
        sched = ShutterSchedule(tau=0.1, periods=0)
        trajectory = evolve_shuttered(sched, p_res, n0=0.25)
        assert trajectory.times.tolist() == [0.0]
        assert trajectory.n_mean.tolist() == [0.25]

    @pytest.mark.parametrize("p", PARAM_GRID)
    def test_endpoints_match_stroboscopic(self, p):
        tau = 1.0 / p.omega_c
        sched = ShutterSchedule(tau=tau, periods=100)
        trajectory = evolve_shuttered(sched, p, samples_per_period=5)
        for m in (1, 10, 50, 100):
            idx = m * 5
            assert trajectory.times[idx] == pytest.approx(m * tau, rel=1e-14)
            assert trajectory.n_mean[idx] == pytest.approx(
                heating_stroboscopic(m, tau, p), rel=1e-12
            )

    def test_period_boundaries_appear_exactly_once(self, p_res):
        sched = ShutterSchedule(tau=0.05, periods=6)
        trajectory = evolve_shuttered(sched, p_res, samples_per_period=8)
        for k in range(1, 7):
            matches = np.flatnonzero(trajectory.times == k * sched.tau)
            assert matches.size == 1

    def test_zeno_reduction_at_second_boundary(self, p_res):
        # wc tau = 0.5, r = 10: shuttering reduces the heating
        tau = 0.5 / p_res.omega_c
        sched = ShutterSchedule(tau=tau, periods=2)
        shuttered = evolve_shuttered(sched, p_res, samples_per_period=1)
        assert shuttered.n_mean[-1] < heating_unshuttered(2 * tau, 0.0, p_res)

    def test_first_period_coincides_with_unshuttered(self, p_res):
        spp = 16
        tau = 1.0 / p_res.omega_c
        sched = ShutterSchedule(tau=tau, periods=1)
        shuttered = evolve_shuttered(sched, p_res, samples_per_period=spp, n0=0.4)
        unshuttered = evolve_unshuttered(tau, spp + 1, 0.4, p_res)
        np.testing.assert_allclose(shuttered.times, unshuttered.times, rtol=0, atol=1e-15)
        np.testing.assert_allclose(shuttered.n_mean, unshuttered.n_mean, rtol=1e-12, atol=1e-15)

    def test_period_index_column(self, p_res):
        sched = ShutterSchedule(tau=0.1, periods=3)
        trajectory = evolve_shuttered(sched, p_res, samples_per_period=2)
        assert trajectory.period_index.tolist() == [0, 0, 0, 1, 1, 2, 2]

    @pytest.mark.parametrize("p", PARAM_GRID)
    def test_positivity_from_ground_state(self, p):
        sched = ShutterSchedule(tau=2.0 / p.omega_c, periods=50)
        trajectory = evolve_shuttered(sched, p, samples_per_period=10)
        assert np.all(trajectory.n_mean >= -1e-9)

    def test_bad_samples_per_period(self, p_res):
        with pytest.raises(DomainError):
            evolve_shuttered(ShutterSchedule(tau=0.1, periods=1), p_res, samples_per_period=0)
