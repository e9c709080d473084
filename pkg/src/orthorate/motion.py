"""Rigid-shift dynamics: orthogonal displacements and two-frame state counting.

A generator that translates a state at speed v has eigenfrequencies v p / h,
so displacement plays exactly the role time plays for energy and the
time-domain zero finder carries over under x = v t.  Momentum support is
restricted to nonnegative values by construction, which turns the h/4
minimum-displacement bound's precondition into a type invariant.  Units put
c = 1; h stays explicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import BOUND_CHECK_TOL
from .core import DEFAULT_TOLERANCES, ToleranceProfile
from .evolution import scan_autocorrelation_minima

__all__ = [
    "MomentumState",
    "PminReport",
    "FrameCount",
    "shift_autocorrelation",
    "lambda_min",
    "pmin_check",
    "frame_count",
]

# How many beat lengths h / (p_max - p_min) the displacement scan covers
# before concluding that no orthogonal displacement exists.
_SCAN_BEATS = 16.0


@dataclass(frozen=True, eq=False)
class MomentumState:
    """Nonnegative momentum eigenvalues with normalized weights."""

    momenta: np.ndarray
    weights: np.ndarray
    h: float = 1.0

    def __post_init__(self) -> None:
        p = np.ascontiguousarray(np.asarray(self.momenta, dtype=float))
        u = np.ascontiguousarray(np.asarray(self.weights, dtype=float))
        if p.ndim != 1 or p.size == 0 or u.shape != p.shape:
            raise ValueError("momenta and weights must be matching 1-D arrays")
        if not (np.all(np.isfinite(p)) and np.all(np.isfinite(u))):
            raise ValueError("momenta and weights must be finite")
        if p.min() < 0.0:
            raise ValueError("momentum support must be nonnegative")
        if np.any(np.diff(p) <= 0.0):
            raise ValueError("momenta must be strictly increasing")
        if u.min() < 0.0:
            raise ValueError("weights must be nonnegative")
        if abs(float(u.sum()) - 1.0) > DEFAULT_TOLERANCES.normalization:
            raise ValueError("weights must sum to 1")
        if not self.h > 0:
            raise ValueError("h must be positive")
        p.setflags(write=False)
        u.setflags(write=False)
        object.__setattr__(self, "momenta", p)
        object.__setattr__(self, "weights", u)

    def mean_momentum(self) -> float:
        return float(self.momenta @ self.weights)


def shift_autocorrelation(state: MomentumState, v: float, x: float) -> complex:
    """Overlap of the state with itself displaced by x: sum_j u_j exp(2 pi i p_j x / h).

    The value depends on the displacement alone; the speed v > 0 only sets
    the clock that produced it (x = v t) and is validated for that reason.
    """
    if not v > 0:
        raise ValueError("shift speed must be positive")
    phases = (2.0 * np.pi * x / state.h) * state.momenta
    return complex(np.exp(1j * phases) @ state.weights)


def lambda_min(state: MomentumState,
               tolerances: ToleranceProfile = DEFAULT_TOLERANCES) -> float | None:
    """Smallest displacement whose shifted state is orthogonal to the original.

    Scans a fixed number of beat lengths h/(p_max - p_min) with the shared
    autocorrelation zero finder; returns None when no displacement within
    that window reaches the orthogonality tolerance (in particular, for any
    effectively single-momentum state).
    """
    occupied = state.weights > 0.0
    p = state.momenta[occupied]
    u = state.weights[occupied]
    if p.size <= 1:
        return None
    spread = float(p.max() - p.min())
    span = _SCAN_BEATS * state.h / spread
    for x, mag in scan_autocorrelation_minima(p / state.h, u, span):
        if mag <= tolerances.orthogonality:
            return x
    return None


@dataclass(frozen=True)
class PminReport:
    """Outcome of the minimum-displacement bound check <p> lambda_min >= h/4."""

    mean_momentum: float
    lam_min: float | None
    product: float | None
    h: float
    satisfied: bool
    equality: bool


def pmin_check(state: MomentumState,
               tolerances: ToleranceProfile = DEFAULT_TOLERANCES) -> PminReport:
    """Check <p> lambda_min >= h/4; vacuously satisfied when no orthogonal shift exists."""
    p_avg = state.mean_momentum()
    lam = lambda_min(state, tolerances)
    if lam is None:
        return PminReport(mean_momentum=p_avg, lam_min=None, product=None,
                          h=state.h, satisfied=True, equality=False)
    product = float(p_avg * lam)
    quarter = state.h / 4.0
    return PminReport(mean_momentum=p_avg, lam_min=lam, product=product,
                      h=state.h,
                      satisfied=bool(product >= quarter - BOUND_CHECK_TOL),
                      equality=bool(abs(product - quarter) <= BOUND_CHECK_TOL))


@dataclass(frozen=True)
class FrameCount:
    """Relativistic bookkeeping for a system moving at speed v for lab time dt.

    count_lab - count_rest = count_motion holds as an algebraic identity, so
    the residual is pure floating-point noise.
    """

    rest_energy: float
    speed: float
    duration: float
    gamma: float
    energy: float
    momentum: float
    rest_duration: float
    displacement: float
    count_lab: float      # E dt
    count_rest: float     # E_r dt_r
    count_motion: float   # p dx

    @property
    def identity_residual(self) -> float:
        return self.count_lab - self.count_rest - self.count_motion

    @property
    def motional_rate(self) -> float:
        """v p, the energy of the pure-shift part of the dynamics."""
        return self.speed * self.momentum

    @property
    def split_residual(self) -> float:
        """motional_rate minus (E - E_r / gamma); zero up to rounding."""
        return self.motional_rate - (self.energy - self.rest_energy / self.gamma)


def frame_count(rest_energy: float, speed: float, duration: float = 1.0) -> FrameCount:
    """Populate all two-frame quantities for rest energy E_r, speed v in [0, 1), lab time dt."""
    if not rest_energy > 0:
        raise ValueError("rest energy must be positive")
    if not 0.0 <= speed < 1.0:
        raise ValueError("speed must lie in [0, 1) (units c = 1)")
    if duration < 0:
        raise ValueError("duration must be nonnegative")
    inv_gamma = math.sqrt((1.0 - speed) * (1.0 + speed))
    gamma = 1.0 / inv_gamma
    energy = gamma * rest_energy
    momentum = gamma * speed * rest_energy
    rest_duration = duration * inv_gamma
    displacement = speed * duration
    return FrameCount(rest_energy=rest_energy, speed=speed, duration=duration,
                      gamma=gamma, energy=energy, momentum=momentum,
                      rest_duration=rest_duration, displacement=displacement,
                      count_lab=energy * duration,
                      count_rest=rest_energy * rest_duration,
                      count_motion=momentum * displacement)
