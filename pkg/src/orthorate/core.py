"""Domain model for lattice-time orthogonality problems and spectral weights.

A state that returns to itself after a period T can only carry the evenly
spaced frequencies n/T (up to a constant offset that cancels out of every
energy difference, so the offset is fixed at zero here).  A problem is a set
of lattice times whose states must be mutually orthogonal; a weight vector
holds the squared spectral amplitudes on the frequency grid.  Energies are
reported dimensionless in units of h/2T throughout, which puts the
equal-interval optimum for N states exactly at N - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "ToleranceProfile",
    "DEFAULT_TOLERANCES",
    "OrthogonalityProblem",
    "WeightVector",
    "pairwise_differences",
    "average_energy",
    "overlap",
]


@dataclass(frozen=True)
class ToleranceProfile:
    """Numerical tolerances shared by the solver, certificates, and physics checks."""

    feasibility: float = 1e-9
    orthogonality: float = 1e-8
    duality_gap: float = 1e-7
    normalization: float = 1e-12

    def __post_init__(self) -> None:
        for name in ("feasibility", "orthogonality", "duality_gap", "normalization"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} tolerance must be strictly positive")


DEFAULT_TOLERANCES = ToleranceProfile()


def _lattice_int(value, what: str) -> int:
    try:
        as_int = int(value)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{what} must be an integer, got {value!r}") from exc
    if as_int != value:
        raise ValueError(f"{what} must be an integer lattice value, got {value!r}")
    return as_int


@dataclass(frozen=True)
class OrthogonalityProblem:
    """A period T and N lattice times in [0, T) whose states must be mutually orthogonal.

    The cyclic interval sequence (including the wrap-around interval back to
    t_0 + T) is what experiments are parameterized by; the number of distinct
    values in it is ``n_different``.  Repeated times and zero-length intervals
    are rejected outright rather than deduplicated: they signal a malformed
    problem.
    """

    period: int
    times: tuple[int, ...]

    def __post_init__(self) -> None:
        period = _lattice_int(self.period, "period")
        if period < 1:
            raise ValueError("period must be a positive integer")
        if len(self.times) == 0:
            raise ValueError("need at least one time")
        times = tuple(_lattice_int(t, "time") for t in self.times)
        if any(t < 0 or t >= period for t in times):
            raise ValueError("times must lie in [0, period)")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("times must be strictly increasing and distinct")
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "times", times)

    @classmethod
    def from_intervals(cls, intervals: Sequence[int]) -> "OrthogonalityProblem":
        """Build the problem whose times are 0, l_0, l_0+l_1, ... with period sum(l)."""
        lengths = [_lattice_int(l, "interval length") for l in intervals]
        if not lengths:
            raise ValueError("need at least one interval")
        if any(l <= 0 for l in lengths):
            raise ValueError("interval lengths must be positive")
        times = [0]
        for l in lengths[:-1]:
            times.append(times[-1] + l)
        return cls(period=sum(lengths), times=tuple(times))

    @property
    def n_states(self) -> int:
        return len(self.times)

    @property
    def intervals(self) -> tuple[int, ...]:
        """Cyclic gaps between consecutive times; the last one wraps around to t_0 + T."""
        ts = self.times
        gaps = [b - a for a, b in zip(ts, ts[1:])]
        gaps.append(self.period - ts[-1] + ts[0])
        return tuple(gaps)

    @property
    def n_different(self) -> int:
        return len(set(self.intervals))


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Nonnegative spectral weights w_0..w_{n_max-1} on the frequency grid, summing to one."""

    weights: np.ndarray
    tolerances: ToleranceProfile = DEFAULT_TOLERANCES

    def __post_init__(self) -> None:
        w = np.ascontiguousarray(np.asarray(self.weights, dtype=float))
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a nonempty 1-D array")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if w.min() < 0.0:
            raise ValueError("weights must be nonnegative")
        total = float(w.sum())
        if abs(total - 1.0) > self.tolerances.normalization:
            raise ValueError(f"weights must sum to 1 within tolerance (got {total!r})")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def n_max(self) -> int:
        return int(self.weights.size)

    def support(self) -> np.ndarray:
        """Grid indices carrying strictly positive weight."""
        return np.flatnonzero(self.weights > 0.0)


def pairwise_differences(problem: OrthogonalityProblem) -> tuple[int, ...]:
    """Distinct separations (t_k - t_m) mod T, folded into [1, T//2].

    A weight vector cancels the overlap at separation d exactly when it
    cancels it at T - d (the two overlaps are complex conjugates), so only
    the folded representative is kept.
    """
    T = problem.period
    ts = np.asarray(problem.times, dtype=np.int64)
    diffs = (ts[None, :] - ts[:, None]) % T
    nonzero = diffs[diffs != 0]
    folded = np.minimum(nonzero, T - nonzero)
    return tuple(int(d) for d in np.unique(folded))


def average_energy(w: WeightVector) -> float:
    """Average energy above the ground grid point, in units of h/2T: 2 * sum_n w_n n."""
    n = np.arange(w.n_max, dtype=float)
    return float(2.0 * (w.weights @ n))


def overlap(w: WeightVector, d: int, T: int) -> complex:
    """Autocorrelation sum_n w_n exp(2 pi i n d / T) at lattice separation d."""
    d = _lattice_int(d, "separation")
    T = _lattice_int(T, "period")
    if T < 1:
        raise ValueError("period must be positive")
    if not 0 <= d < T:
        raise ValueError("separation must lie in [0, period)")
    n = np.arange(w.n_max, dtype=float)
    return complex(np.exp((2j * np.pi * d / T) * n) @ w.weights)
