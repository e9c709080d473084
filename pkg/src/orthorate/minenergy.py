"""Translate an orthogonality problem into a spectral-weight LP and solve it.

On the integer time lattice, grid frequencies n and n + T impose identical
orthogonality constraints while the higher one always costs more, so the
weight grid is truncated losslessly at n_max = T.  Each folded separation d
contributes a real and an imaginary zero-overlap row; at d = T/2 the
imaginary row vanishes identically and is dropped by the builder.

Feasibility is never in question: uniform weights over a full period cancel
every separation, so a non-optimal solver status is a numerical failure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    OrthogonalityProblem,
    ToleranceProfile,
    WeightVector,
    overlap,
    pairwise_differences,
)
from .lp import CertificateReport, LPSolution, StandardFormLP, check_certificate, solve_lp

__all__ = [
    "SpectralSense",
    "MinEnergyResult",
    "build_lp",
    "minimize_energy",
    "verify_orthogonality",
]


class SpectralSense(enum.Enum):
    """Whether the objective counts bandwidth above the bottom of the grid or
    below its top (the mirror-image problem, equivalent under n -> n_max-1-n)."""

    FROM_BELOW = "from-below"
    FROM_ABOVE = "from-above"


@dataclass(frozen=True, eq=False)
class MinEnergyResult:
    """Optimal weights for a problem, with the bound comparison and both
    verification gates (LP certificate and direct orthogonality check)."""

    problem: OrthogonalityProblem
    weights: WeightVector
    e_min: float
    e_bound: float
    ratio: float | None  # e_min / (N - 1); absent for N = 1
    certificate: CertificateReport
    orthogonality_ok: bool
    solution: LPSolution


def build_lp(problem: OrthogonalityProblem,
             sense: SpectralSense = SpectralSense.FROM_BELOW,
             n_max: int | None = None) -> StandardFormLP:
    """Equality-form LP over w_0..w_{n_max-1} for the problem's folded separations.

    Rows: normalization, then for each folded separation d (ascending) the
    cosine row and, unless d = T/2, the sine row.  n_max defaults to T and may
    only be enlarged (the redundant-tail case used by support-bound tests).
    """
    T = problem.period
    n_max = T if n_max is None else int(n_max)
    if n_max < T:
        raise ValueError("n_max below the period would drop admissible frequencies")
    n = np.arange(n_max, dtype=float)
    rows = [np.ones(n_max)]
    rhs = [1.0]
    for d in pairwise_differences(problem):
        phase = (2.0 * np.pi * d / T) * n
        rows.append(np.cos(phase))
        rhs.append(0.0)
        if 2 * d != T:
            rows.append(np.sin(phase))
            rhs.append(0.0)
    if sense is SpectralSense.FROM_BELOW:
        cost = n.copy()
    else:
        cost = (n_max - 1.0) - n
    return StandardFormLP(c=cost, A=np.array(rows), b=np.array(rhs))


def verify_orthogonality(weights: WeightVector, problem: OrthogonalityProblem,
                         tolerances: ToleranceProfile = DEFAULT_TOLERANCES) -> bool:
    """True iff |overlap| at every folded separation is within the orthogonality tolerance."""
    return all(
        abs(overlap(weights, d, problem.period)) <= tolerances.orthogonality
        for d in pairwise_differences(problem)
    )


def minimize_energy(problem: OrthogonalityProblem,
                    tolerances: ToleranceProfile = DEFAULT_TOLERANCES,
                    sense: SpectralSense = SpectralSense.FROM_BELOW) -> MinEnergyResult:
    """Solve the spectral LP and package energy, bound, ratio, and verifications.

    e_min is dimensionless (units h/2T), so the interval-count bound is
    exactly N - 1.  Solver iteration-limit failures propagate.
    """
    lp = build_lp(problem, sense)
    sol = solve_lp(lp, tolerances)
    if sol.status != "optimal":
        # The uniform weight vector over n = 0..T-1 is always feasible.
        raise RuntimeError(f"energy LP unexpectedly reported {sol.status}")
    w = sol.x.copy()
    w[w < 0.0] = 0.0  # basic solves may leave -1e-16-level noise
    w /= w.sum()
    weights = WeightVector(w, tolerances)
    e_min = 2.0 * sol.objective
    N = problem.n_states
    e_bound = float(N - 1)
    ratio = None if N == 1 else e_min / e_bound
    certificate = check_certificate(lp, sol, tolerances)
    ortho_ok = verify_orthogonality(weights, problem, tolerances)
    return MinEnergyResult(problem=problem, weights=weights, e_min=e_min,
                           e_bound=e_bound, ratio=ratio, certificate=certificate,
                           orthogonality_ok=ortho_ok, solution=sol)
