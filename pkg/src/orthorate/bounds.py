"""Closed-form rate bounds and the dominance comparison between them.

Planck's constant is an explicit argument everywhere (no hidden unit
convention), and the ``*_check`` predicates share one absolute tolerance so
callers never re-invent assertion slack.  All bounds are on E - E_0, the
average energy above the lowest occupied level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "BOUND_CHECK_TOL",
    "BoundReport",
    "eband_bound",
    "taumin_bound",
    "n2t_bound",
    "dominating_bound",
    "average_rate_check",
    "oscillator_bound",
    "px_bound",
]

# Shared slack for the boolean bound checks.
BOUND_CHECK_TOL = 1e-6


@dataclass(frozen=True)
class BoundReport:
    """A named bound value with the inputs that produced it.

    ``satisfied`` is only populated when an actual value was supplied to
    compare against.
    """

    name: str
    value: float
    inputs: dict = field(default_factory=dict)
    satisfied: bool | None = None


def _require_positive(**kwargs: float) -> None:
    for name, value in kwargs.items():
        if not value > 0:
            raise ValueError(f"{name} must be positive")


def eband_bound(n_states: int, period: float, h: float = 1.0) -> float:
    """Minimum E - E_0 admitting N mutually orthogonal states per period: h(N-1)/2T.

    N distinct frequencies separated by at least 1/T occupy a band of width
    at least (N-1)/T, and the average sits no lower than the midpoint.
    """
    if n_states < 1:
        raise ValueError("n_states must be at least 1")
    _require_positive(period=period, h=h)
    return h * (n_states - 1) / (2.0 * period)


def taumin_bound(tau_min: float, h: float = 1.0) -> float:
    """Minimum E - E_0 for any pair of states separated by tau_min: h/(4 tau_min)."""
    _require_positive(tau_min=tau_min, h=h)
    return h / (4.0 * tau_min)


def n2t_bound(n_states: int, period: float, h: float = 1.0) -> float:
    """The weaker hN/4T bound obtained by substituting T/N for tau_min.

    Coincides with :func:`eband_bound` at N = 2 and falls behind by a factor
    approaching 2 for large N.
    """
    if n_states < 1:
        raise ValueError("n_states must be at least 1")
    _require_positive(period=period, h=h)
    return h * n_states / (4.0 * period)


def dominating_bound(n_states: int, period: float, tau_min: float,
                     h: float = 1.0) -> BoundReport:
    """The stronger of the interval-count and minimum-interval bounds.

    The minimum-interval bound dominates exactly when tau_min < T/(2(N-1));
    at the threshold the two coincide, so the maximum is continuous.
    """
    _require_positive(tau_min=tau_min)
    band = eband_bound(n_states, period, h)
    pair = taumin_bound(tau_min, h)
    threshold = math.inf if n_states == 1 else period / (2.0 * (n_states - 1))
    taumin_dominates = tau_min < threshold
    return BoundReport(
        name="taumin" if taumin_dominates else "eband",
        value=max(band, pair),
        inputs={"n_states": n_states, "period": period, "tau_min": tau_min,
                "h": h, "threshold": threshold, "eband": band, "taumin": pair},
    )


def average_rate_check(energy: float, tau_avg: float, h: float = 1.0) -> bool:
    """True iff E * tau_avg >= h/2 (within the shared check tolerance)."""
    _require_positive(tau_avg=tau_avg, h=h)
    return energy * tau_avg >= h / 2.0 - BOUND_CHECK_TOL


def oscillator_bound(period: float, h: float = 1.0) -> float:
    """Minimum average energy of any period-T evolution through distinct states: h/2T."""
    _require_positive(period=period, h=h)
    return h / (2.0 * period)


def px_bound(momentum: float, lambda_avg: float, h: float = 1.0) -> bool:
    """True iff p * lambda_avg >= h/2 for the average distance between distinct positions.

    Note the distinct h/4 constant that applies to the *minimum* orthogonal
    displacement (see the motion module); this check is for the average.
    """
    _require_positive(lambda_avg=lambda_avg, h=h)
    return momentum * lambda_avg >= h / 2.0 - BOUND_CHECK_TOL
