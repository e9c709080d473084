"""Autocorrelation traces over a period and numerical location of orthogonality times.

|overlap|^2 is a trigonometric polynomial whose degree equals the highest
occupied grid index, so a scan with eight samples per cycle of the top
frequency cannot step over a zero.  Each bracketed local minimum of the
squared magnitude is refined by golden-section search (the magnitude has no
sign changes to bisect on), and a refined minimum only counts as orthogonal
if it clears the orthogonality tolerance; everything else is reported as a
near miss, never silently included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOLERANCES, ToleranceProfile, WeightVector

__all__ = [
    "OverlapTrace",
    "equal_weight_state",
    "overlap_trace",
    "scan_autocorrelation_minima",
    "refined_overlap_minima",
    "find_orthogonal_times",
    "min_cyclic_interval",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True, eq=False)
class OverlapTrace:
    """Autocorrelation sampled on a uniform grid over one period."""

    period: float
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if t.shape != v.shape or t.ndim != 1 or t.size < 2:
            raise ValueError("times and values must be matching 1-D arrays")
        mags = np.abs(v)
        if mags.max() > 1.0 + 1e-9 or abs(v[0] - 1.0) > 1e-9:
            raise ValueError("trace must start at 1 and stay inside the unit disk")
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    @property
    def samples(self) -> int:
        return int(self.times.size)


def equal_weight_state(n_levels: int, n_max: int | None = None) -> WeightVector:
    """Weight 1/N on the lowest N grid indices, zero-padded to n_max (default N)."""
    if n_levels < 1:
        raise ValueError("need at least one level")
    n_max = n_levels if n_max is None else int(n_max)
    if n_max < n_levels:
        raise ValueError("n_max must cover the occupied levels")
    w = np.zeros(n_max)
    w[:n_levels] = 1.0 / n_levels
    return WeightVector(w)


def _autocorrelation(frequencies: np.ndarray, amplitudes: np.ndarray,
                     t: np.ndarray) -> np.ndarray:
    return np.exp(2j * np.pi * np.outer(t, frequencies)) @ amplitudes


def overlap_trace(w: WeightVector, T: int, samples: int) -> OverlapTrace:
    """Autocorrelation at t_j = j T / samples for j = 0..samples-1."""
    if T < 1:
        raise ValueError("period must be positive")
    if samples < 2 * T:
        raise ValueError("need at least 2T samples to resolve the lattice")
    sup = w.support()
    freqs = sup / T
    amps = w.weights[sup]
    t = np.arange(samples) * (T / samples)
    return OverlapTrace(period=float(T), times=t,
                        values=_autocorrelation(freqs, amps, t))


def _golden_minimize(fun, lo: float, hi: float, xtol: float) -> tuple[float, float]:
    a, b = lo, hi
    c = b - (b - a) * _GOLDEN
    d = a + (b - a) * _GOLDEN
    fc, fd = fun(c), fun(d)
    while b - a > xtol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - (b - a) * _GOLDEN
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) * _GOLDEN
            fd = fun(d)
    x = 0.5 * (a + b)
    return x, fun(x)


def scan_autocorrelation_minima(frequencies: np.ndarray, amplitudes: np.ndarray,
                                span: float, min_samples: int = 32
                                ) -> list[tuple[float, float]]:
    """Refined local minima of |sum_j u_j exp(2 pi i f_j t)| for t in (0, span).

    Returns (t, magnitude) pairs sorted by t, deduplicated within one grid
    step.  The grid takes eight samples per cycle of the fastest component,
    which is enough to bracket every minimum of the squared magnitude.
    """
    freqs = np.asarray(frequencies, dtype=float)
    amps = np.asarray(amplitudes, dtype=float)
    if freqs.size <= 1 or span <= 0.0:
        return []
    f_top = float(freqs.max())
    if f_top <= 0.0:
        return []
    samples = max(int(math.ceil(8.0 * f_top * span)), min_samples)
    step = span / samples
    t = np.arange(samples + 1) * step
    g = np.abs(_autocorrelation(freqs, amps, t)) ** 2
    interior = np.flatnonzero((g[1:-1] <= g[:-2]) & (g[1:-1] <= g[2:])) + 1

    def objective(x: float) -> float:
        phases = 2.0 * np.pi * freqs * x
        re = float(np.cos(phases) @ amps)
        im = float(np.sin(phases) @ amps)
        return re * re + im * im

    found: list[tuple[float, float]] = []
    xtol = max(span * 1e-12, 1e-15)
    for i in interior:
        x, gx = _golden_minimize(objective, t[i - 1], t[i + 1], xtol)
        if 0.0 < x < span:
            found.append((x, math.sqrt(max(gx, 0.0))))
    found.sort()
    merged: list[tuple[float, float]] = []
    for x, v in found:
        if merged and x - merged[-1][0] <= step:
            if v < merged[-1][1]:
                merged[-1] = (x, v)
        else:
            merged.append((x, v))
    return merged


def refined_overlap_minima(w: WeightVector, T: int) -> list[tuple[float, float]]:
    """All refined minima (t, |overlap|) of the weight vector's autocorrelation in (0, T)."""
    if T < 1:
        raise ValueError("period must be positive")
    sup = w.support()
    return scan_autocorrelation_minima(sup / T, w.weights[sup], float(T))


def find_orthogonal_times(w: WeightVector, T: int,
                          tolerances: ToleranceProfile = DEFAULT_TOLERANCES) -> list[float]:
    """Times in (0, T) where the evolved state is orthogonal to the initial one."""
    return [t for t, mag in refined_overlap_minima(w, T)
            if mag <= tolerances.orthogonality]


def min_cyclic_interval(times, T: float) -> float:
    """Smallest gap between consecutive orthogonality times, counting t = 0
    (the initial state) and the wrap-around back to it."""
    if T <= 0:
        raise ValueError("period must be positive")
    pts = [0.0] + sorted(float(t) for t in times)
    gaps = [b - a for a, b in zip(pts, pts[1:])]
    gaps.append(T - pts[-1])
    return min(gaps)
