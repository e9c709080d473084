import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthorate.core import (
    OrthogonalityProblem,
    ToleranceProfile,
    WeightVector,
    average_energy,
    overlap,
    pairwise_differences,
)


def uniform_weights(k, n_max=None):
    n_max = k if n_max is None else n_max
    w = np.zeros(n_max)
    w[:k] = 1.0 / k
    return WeightVector(w)


class TestOrthogonalityProblem:
    def test_from_intervals_round_trip(self):
        p = OrthogonalityProblem.from_intervals([1, 1, 2])
        assert p.period == 4
        assert p.times == (0, 1, 2)
        assert p.intervals == (1, 1, 2)
        assert p.n_states == 3
        assert p.n_different == 2

    def test_single_state(self):
        p = OrthogonalityProblem(period=5, times=(2,))
        assert p.intervals == (5,)
        assert p.n_different == 1
        assert pairwise_differences(p) == ()

    def test_intervals_sum_to_period(self):
        p = OrthogonalityProblem(period=10, times=(1, 4, 8))
        assert p.intervals == (3, 4, 3)
        assert sum(p.intervals) == p.period
        assert p.n_different == 2

    def test_equal_intervals_have_one_length(self):
        p = OrthogonalityProblem.from_intervals([3, 3, 3, 3])
        assert p.n_different == 1

    @pytest.mark.parametrize("times", [(0, 0), (3, 1), (0, 1, 1)])
    def test_repeated_or_unsorted_times_rejected(self, times):
        with pytest.raises(ValueError):
            OrthogonalityProblem(period=6, times=times)

    def test_out_of_range_times_rejected(self):
        with pytest.raises(ValueError):
            OrthogonalityProblem(period=4, times=(0, 4))
        with pytest.raises(ValueError):
            OrthogonalityProblem(period=4, times=(-1, 2))

    def test_zero_interval_rejected(self):
        with pytest.raises(ValueError):
            OrthogonalityProblem.from_intervals([1, 0, 2])

    def test_non_integer_rejected(self):
        with pytest.raises(ValueError):
            OrthogonalityProblem(period=4, times=(0, 1.5))
        with pytest.raises(ValueError):
            OrthogonalityProblem.from_intervals([1.2, 2])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            OrthogonalityProblem(period=4, times=())
        with pytest.raises(ValueError):
            OrthogonalityProblem.from_intervals([])


class TestWeightVector:
    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            WeightVector(np.array([0.5, -0.1, 0.6]))

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            WeightVector(np.array([0.5, 0.6]))

    def test_immutable(self):
        w = uniform_weights(2)
        with pytest.raises(ValueError):
            w.weights[0] = 1.0

    def test_support(self):
        w = WeightVector(np.array([0.5, 0.0, 0.5, 0.0]))
        assert list(w.support()) == [0, 2]


class TestToleranceProfile:
    def test_defaults(self):
        tol = ToleranceProfile()
        assert tol.feasibility == 1e-9
        assert tol.orthogonality == 1e-8
        assert tol.duality_gap == 1e-7
        assert tol.normalization == 1e-12

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            ToleranceProfile(feasibility=0.0)


class TestPairwiseDifferences:
    def test_three_times_period_four(self):
        p = OrthogonalityProblem(period=4, times=(0, 1, 2))
        assert pairwise_differences(p) == (1, 2)  # raw {1,2,3}; 3 folds to 1

    def test_two_times_period_two(self):
        p = OrthogonalityProblem(period=2, times=(0, 1))
        assert pairwise_differences(p) == (1,)

    def test_gapped_times_period_six(self):
        p = OrthogonalityProblem(period=6, times=(0, 2, 3))
        assert pairwise_differences(p) == (1, 2, 3)


class TestAverageEnergy:
    def test_ground_state(self):
        assert average_energy(uniform_weights(1, 4)) == 0.0

    def test_uniform_four(self):
        assert average_energy(uniform_weights(4)) == pytest.approx(3.0)

    def test_two_level(self):
        assert average_energy(uniform_weights(2)) == pytest.approx(1.0)


class TestOverlap:
    def test_full_roots_of_unity_cancel(self):
        for n in (2, 3, 4, 7):
            assert abs(overlap(uniform_weights(n), 1, n)) < 1e-12

    def test_zero_separation_is_one(self):
        w = WeightVector(np.array([0.3, 0.2, 0.5]))
        assert overlap(w, 0, 5) == pytest.approx(1.0)

    def test_two_level_half_period(self):
        assert abs(overlap(uniform_weights(2), 1, 2)) < 1e-12

    def test_separation_range_enforced(self):
        w = uniform_weights(2)
        with pytest.raises(ValueError):
            overlap(w, 2, 2)
        with pytest.raises(ValueError):
            overlap(w, -1, 2)


def normalized_weights(draw, max_len=12):
    raw = draw(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=max_len))
    total = sum(raw)
    if total <= 0:
        raw = [1.0] + raw[1:]
        total = sum(raw)
    return np.array(raw) / total


@st.composite
def weight_vectors(draw):
    return WeightVector(normalized_weights(draw))


@given(weight_vectors(), st.integers(1, 30), st.data())
@settings(max_examples=100, deadline=None)
def test_overlap_conjugate_symmetry(w, T, data):
    """Folding separations is sound: overlap at d and T - d are conjugates."""
    d = data.draw(st.integers(1, T - 1)) if T > 1 else 0
    lhs = overlap(w, d, T)
    rhs = overlap(w, (T - d) % T, T)
    assert lhs == pytest.approx(rhs.conjugate(), abs=1e-12)


@given(weight_vectors(), st.integers(1, 30))
@settings(max_examples=50, deadline=None)
def test_overlap_at_zero_is_one(w, T):
    assert overlap(w, 0, T) == pytest.approx(1.0, abs=1e-12)


@given(weight_vectors(), st.integers(1, 8))
@settings(max_examples=50, deadline=None)
def test_average_energy_invariant_under_zero_padding(w, pad):
    padded = WeightVector(np.concatenate([w.weights, np.zeros(pad)]))
    assert average_energy(padded) == pytest.approx(average_energy(w), abs=1e-12)


@given(weight_vectors(), weight_vectors(), st.floats(0.0, 1.0))
@settings(max_examples=50, deadline=None)
def test_average_energy_linear_in_weights(w1, w2, lam):
    n = max(w1.n_max, w2.n_max)
    a = np.concatenate([w1.weights, np.zeros(n - w1.n_max)])
    b = np.concatenate([w2.weights, np.zeros(n - w2.n_max)])
    mix = WeightVector(lam * a + (1.0 - lam) * b)
    expected = lam * average_energy(w1) + (1.0 - lam) * average_energy(w2)
    assert average_energy(mix) == pytest.approx(expected, abs=1e-9)
