"""Minimum average energy for periodic evolutions through prescribed orthogonal
states, the rate bounds that constrain it, and the sweep experiments around it."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    DEFAULT_TOLERANCES,
    OrthogonalityProblem,
    ToleranceProfile,
    WeightVector,
    average_energy,
    overlap,
    pairwise_differences,
)
from .lp import (  # noqa: E402
    CertificateReport,
    IterationLimitError,
    LPSolution,
    StandardFormLP,
    check_certificate,
    solve_lp,
)
from .minenergy import (  # noqa: E402
    MinEnergyResult,
    SpectralSense,
    build_lp,
    minimize_energy,
    verify_orthogonality,
)

__all__ = [
    "__version__",
    "DEFAULT_TOLERANCES",
    "OrthogonalityProblem",
    "ToleranceProfile",
    "WeightVector",
    "average_energy",
    "overlap",
    "pairwise_differences",
    "CertificateReport",
    "IterationLimitError",
    "LPSolution",
    "StandardFormLP",
    "check_certificate",
    "solve_lp",
    "MinEnergyResult",
    "SpectralSense",
    "build_lp",
    "minimize_energy",
    "verify_orthogonality",
]
