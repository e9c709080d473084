import numpy as np
import pytest

from orthorate.core import (
    DEFAULT_TOLERANCES,
    OrthogonalityProblem,
    WeightVector,
    pairwise_differences,
)
from orthorate.lp import solve_lp
from orthorate.minenergy import (
    SpectralSense,
    build_lp,
    minimize_energy,
    verify_orthogonality,
)

from lp_oracles import enumerate_lp_optimum


class TestBuildLp:
    def test_equal_four_structure(self):
        lp = build_lp(OrthogonalityProblem.from_intervals([1, 1, 1, 1]))
        # normalization + Re/Im at d=1 + Re at d=2 (Im row identically zero)
        assert lp.shape == (4, 4)
        assert lp.b == pytest.approx([1.0, 0.0, 0.0, 0.0])
        assert lp.A[0] == pytest.approx(np.ones(4))
        assert lp.c == pytest.approx([0.0, 1.0, 2.0, 3.0])

    def test_two_times_period_two(self):
        lp = build_lp(OrthogonalityProblem(period=2, times=(0, 1)))
        assert lp.shape == (2, 2)  # normalization + Re at d=1

    def test_single_state_has_only_normalization(self):
        lp = build_lp(OrthogonalityProblem(period=5, times=(0,)))
        assert lp.shape == (1, 5)
        sol = solve_lp(lp)
        assert sol.objective == pytest.approx(0.0, abs=1e-12)
        assert sol.x[0] == pytest.approx(1.0)

    def test_sine_row_dropped_only_at_half_period(self):
        p = OrthogonalityProblem.from_intervals([1, 2])  # T=3, folded {1}
        lp = build_lp(p)
        assert lp.shape == (3, 3)  # no d = T/2 on odd periods

    def test_from_above_mirrors_cost(self):
        p = OrthogonalityProblem.from_intervals([1, 1])
        lp = build_lp(p, sense=SpectralSense.FROM_ABOVE)
        assert lp.c == pytest.approx([1.0, 0.0])

    def test_n_max_cannot_truncate_below_period(self):
        p = OrthogonalityProblem.from_intervals([1, 1])
        with pytest.raises(ValueError):
            build_lp(p, n_max=1)


class TestMinimizeEnergy:
    def test_equal_intervals_reach_bound_with_uniform_weights(self):
        res = minimize_energy(OrthogonalityProblem.from_intervals([1, 1, 1, 1]))
        assert res.e_min == pytest.approx(3.0, abs=1e-9)
        assert res.ratio == pytest.approx(1.0, abs=1e-9)
        assert res.weights.weights == pytest.approx([0.25] * 4, abs=1e-9)
        assert res.certificate.passed
        assert res.orthogonality_ok

    def test_double_interval_inherits_next_bound(self):
        # (1,1,2) imposes the same folded separations as four equal intervals
        res = minimize_energy(OrthogonalityProblem.from_intervals([1, 1, 2]))
        assert res.e_min == pytest.approx(3.0, abs=1e-9)
        assert res.ratio == pytest.approx(1.5, abs=1e-9)
        assert res.weights.weights == pytest.approx([0.25] * 4, abs=1e-9)

    def test_one_two_intervals_against_enumeration(self):
        problem = OrthogonalityProblem.from_intervals([1, 2])
        lp = build_lp(problem)
        oracle_val, _ = enumerate_lp_optimum(lp.c, lp.A, lp.b)
        res = minimize_energy(problem)
        assert res.e_min == pytest.approx(2.0 * oracle_val, abs=1e-9)
        assert res.e_min == pytest.approx(2.0, abs=1e-9)
        assert res.ratio == pytest.approx(2.0, abs=1e-9)
        assert res.weights.weights == pytest.approx([1 / 3] * 3, abs=1e-9)

    def test_single_state_has_no_ratio(self):
        res = minimize_energy(OrthogonalityProblem(period=5, times=(0,)))
        assert res.e_min == pytest.approx(0.0, abs=1e-12)
        assert res.ratio is None
        assert res.e_bound == 0.0

    @pytest.mark.parametrize("n", range(2, 13))
    def test_equal_interval_family(self, n):
        res = minimize_energy(OrthogonalityProblem.from_intervals([1] * n))
        assert res.e_min == pytest.approx(n - 1, abs=1e-6)
        expected = np.zeros(n)
        expected[:n] = 1.0 / n
        assert res.weights.weights == pytest.approx(expected, abs=1e-6)

    def test_lower_bound_holds_on_random_problems(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            n = int(rng.integers(2, 8))
            intervals = rng.integers(1, 9, size=n).tolist()
            res = minimize_energy(OrthogonalityProblem.from_intervals(intervals))
            assert res.e_min >= res.e_bound - 1e-7
            assert res.certificate.passed
            assert res.orthogonality_ok

    def test_taumin_bound_holds_on_random_problems(self):
        rng = np.random.default_rng(13)
        for _ in range(15):
            n = int(rng.integers(2, 7))
            intervals = rng.integers(1, 12, size=n).tolist()
            problem = OrthogonalityProblem.from_intervals(intervals)
            res = minimize_energy(problem)
            tau_min = min(problem.intervals)
            assert res.e_min >= problem.period / (2.0 * tau_min) - 1e-6

    def test_ratio_is_one_exactly_for_equal_intervals(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            n = int(rng.integers(2, 9))
            length = int(rng.integers(1, 7))
            res = minimize_energy(OrthogonalityProblem.from_intervals([length] * n))
            assert res.ratio == pytest.approx(1.0, abs=1e-6)

    def test_unequal_intervals_exceed_bound_strictly(self):
        rng = np.random.default_rng(19)
        for _ in range(10):
            n = int(rng.integers(2, 7))
            intervals = rng.integers(1, 9, size=n).tolist()
            problem = OrthogonalityProblem.from_intervals(intervals)
            res = minimize_energy(problem)
            if problem.n_different > 1:
                assert res.ratio > 1.0 + 1e-6


class TestSupportBound:
    def test_doubling_the_grid_never_lowers_the_optimum(self):
        rng = np.random.default_rng(23)
        for _ in range(8):
            n = int(rng.integers(2, 6))
            intervals = rng.integers(1, 7, size=n).tolist()
            problem = OrthogonalityProblem.from_intervals(intervals)
            base = solve_lp(build_lp(problem))
            wide = solve_lp(build_lp(problem, n_max=2 * problem.period))
            assert base.status == wide.status == "optimal"
            assert wide.objective == pytest.approx(base.objective, abs=1e-7)


class TestFromAbove:
    def test_equal_intervals_symmetric(self):
        p = OrthogonalityProblem.from_intervals([1] * 5)
        below = minimize_energy(p, sense=SpectralSense.FROM_BELOW)
        above = minimize_energy(p, sense=SpectralSense.FROM_ABOVE)
        assert above.e_min == pytest.approx(below.e_min, abs=1e-7)
        assert above.e_min == pytest.approx(4.0, abs=1e-7)

    def test_matches_time_reversed_problem(self):
        p = OrthogonalityProblem(period=7, times=(0, 1, 3))
        reversed_times = tuple(sorted((7 - t) % 7 for t in p.times))
        p_rev = OrthogonalityProblem(period=7, times=reversed_times)
        above = minimize_energy(p, sense=SpectralSense.FROM_ABOVE)
        below_rev = minimize_energy(p_rev, sense=SpectralSense.FROM_BELOW)
        assert above.e_min == pytest.approx(below_rev.e_min, abs=1e-7)


class TestVerifyOrthogonality:
    def test_uniform_weights_pass_equal_problem(self):
        w = WeightVector(np.full(4, 0.25))
        p = OrthogonalityProblem.from_intervals([1, 1, 1, 1])
        assert verify_orthogonality(w, p)

    def test_ground_state_fails(self):
        w = WeightVector(np.array([1.0, 0.0, 0.0, 0.0]))
        p = OrthogonalityProblem.from_intervals([1, 1, 1, 1])
        assert not verify_orthogonality(w, p)

    def test_optimum_passes_after_solve(self):
        p = OrthogonalityProblem.from_intervals([1, 1, 2])
        res = minimize_energy(p)
        assert verify_orthogonality(res.weights, p, DEFAULT_TOLERANCES)

    def test_overlap_magnitude_actually_small_at_optimum(self):
        p = OrthogonalityProblem.from_intervals([2, 3, 4])
        res = minimize_energy(p)
        from orthorate.core import overlap
        for d in pairwise_differences(p):
            assert abs(overlap(res.weights, d, p.period)) <= 1e-8
