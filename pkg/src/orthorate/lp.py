"""Dense equality-form linear programming by two-phase simplex.

Minimizes c.x subject to A x = b, x >= 0.  Phase one starts from a full
artificial basis and never lets a departed artificial re-enter; artificials
still basic at level zero afterwards are pivoted out where possible, and rows
that admit no pivot are dropped as redundant (their dual components are
reported as zero).

Pricing is devex (a steepest-edge approximation) with a fallback to Bland's
smallest-index rule during degenerate stalls, which keeps the anti-cycling
termination guarantee while avoiding the enormous degenerate walks that
plain index-order pricing produces on these instances.  A deterministic
ramp perturbation of the right-hand side removes most of that degeneracy up
front; the true right-hand side is restored afterwards and any residual
primal infeasibility is repaired by a short dual-simplex cleanup (reduced
costs do not depend on b, so dual feasibility survives the restore).  When
the fast path cannot certify an optimum, the exact unperturbed algorithm
runs instead.  Pivot sequences are a deterministic function of the input.

The hot pivot loop is compiled with numba; the basis inverse is maintained
by product-form updates and refactorized periodically, and conclusions
("optimal"/"unbounded") are always re-confirmed on a freshly factorized
inverse.  Final primal and dual vectors come from direct solves against the
final basis.  Optimality can be re-checked from scratch with
:func:`check_certificate`, which never touches solver state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import DEFAULT_TOLERANCES, ToleranceProfile

__all__ = [
    "StandardFormLP",
    "LPSolution",
    "CertificateReport",
    "IterationLimitError",
    "solve_lp",
    "check_certificate",
]

_REDUCED_COST_TOL = 1e-9
# Constraint entries here are O(1); anything smaller than this is noise, and
# pivoting on it is what actually destroys a basis.
_PIVOT_TOL = 1e-7
_REFACTOR_EVERY = 64
# Consecutive degenerate pivots tolerated under devex pricing before
# switching to Bland's rule for the remainder of the stall.
_STALL_SWITCH = 12
_DEGENERATE_STEP = 1e-12

_OPTIMAL, _UNBOUNDED, _BUDGET = 0, 1, 2


class IterationLimitError(RuntimeError):
    """Pivot budget exhausted before reaching optimal, infeasible, or unbounded."""


@dataclass(frozen=True, eq=False)
class StandardFormLP:
    """min c.x  subject to  A x = b, x >= 0, with a dense m-by-n matrix A.

    Identically zero constraint rows are rejected; builders are expected to
    strip them before construction.
    """

    c: np.ndarray
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        A = np.ascontiguousarray(np.asarray(self.A, dtype=float))
        b = np.ascontiguousarray(np.asarray(self.b, dtype=float))
        c = np.ascontiguousarray(np.asarray(self.c, dtype=float))
        if A.ndim != 2:
            raise ValueError("A must be a 2-D matrix")
        m, n = A.shape
        if m < 1 or n < 1:
            raise ValueError("need at least one row and one column")
        if b.shape != (m,) or c.shape != (n,):
            raise ValueError("b and c must match the shape of A")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b)) and np.all(np.isfinite(c))):
            raise ValueError("LP data must be finite")
        row_norms = np.abs(A).max(axis=1)
        if np.any(row_norms == 0.0):
            raise ValueError("identically zero constraint rows are not allowed")
        for arr in (A, b, c):
            arr.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def shape(self) -> tuple[int, int]:
        return self.A.shape


@dataclass(frozen=True, eq=False)
class LPSolution:
    """Solver output; x and y are None unless status is "optimal"."""

    status: str  # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None
    y: np.ndarray | None
    objective: float
    iterations: int


@dataclass(frozen=True)
class CertificateReport:
    """Independently recomputed optimality evidence for an LP solution.

    primal_residual        max(||Ax - b||_inf, -min(x, 0))
    dual_residual          min_j (c - A^T y)_j, clipped above at zero
    complementary_slackness |x . (c - A^T y)|
    duality_gap            |c.x - b.y|
    """

    primal_residual: float
    dual_residual: float
    complementary_slackness: float
    duality_gap: float
    passed: bool


@njit(cache=True)
def _refactor(A, b, basis, Binv, xB):  # pragma: no cover - exercised via kernel
    m, n = A.shape
    B = np.empty((m, m))
    for k in range(m):
        bi = basis[k]
        if bi < n:
            for i in range(m):
                B[i, k] = A[i, bi]
        else:
            for i in range(m):
                B[i, k] = 0.0
            B[bi - n, k] = 1.0
    Binv[:, :] = np.linalg.inv(B)
    xB[:] = np.dot(Binv, b)
    for i in range(m):
        if xB[i] < 0.0:
            xB[i] = 0.0


@njit(cache=True)
def _pivot_kernel(A, b, c, c_art, basis, Binv, xB, budget):  # pragma: no cover
    """Simplex pivots until no reduced cost over the real columns is negative.

    A holds the real columns only; basis entries >= n denote artificial unit
    columns whose cost is ``c_art``.  Entering is restricted to real columns.
    Pricing is devex with a Bland fallback after _STALL_SWITCH consecutive
    degenerate pivots: any non-terminating run eventually consists of
    degenerate pivots only, hence runs under Bland's rule only, which cannot
    cycle, while a strict objective decrease resets the counter and there are
    finitely many basis objective values.  Ratio ties always leave the
    smallest basic variable index, so the pivot sequence is deterministic.

    Candidates are priced over a working set of columns that starts with the
    basis plus the lowest indices and grows by the most negative outside
    reduced costs whenever the working set prices out; optimality is only
    declared after a full pricing pass finds no candidate anywhere, so the
    answer is exactly that of the full problem.

    Returns (status, pivots) with status 0 optimal, 1 unbounded, 2 budget
    exhausted.
    """
    m, n = A.shape
    gamma = np.ones(n)
    cB = np.empty(m)
    col = np.empty(m)
    pivots = 0
    stale = 0
    stalled = 0

    # Working set, kept sorted ascending so the Bland fallback scans indices
    # in order.
    in_set = np.zeros(n, np.uint8)
    seed_cap = 4 * m + 64
    if seed_cap > n:
        seed_cap = n
    for i in range(m):
        bi = basis[i]
        if bi < n:
            in_set[bi] = 1
    count = int(in_set.sum())
    j = 0
    while j < n and count < seed_cap:
        if in_set[j] == 0:
            in_set[j] = 1
            count += 1
        j += 1
    work = np.flatnonzero(in_set == 1)
    AW = np.empty((m, work.size))
    for k in range(work.size):
        wj = work[k]
        for i in range(m):
            AW[i, k] = A[i, wj]
    grow = m // 2 + 16

    while True:
        for i in range(m):
            bi = basis[i]
            cB[i] = c[bi] if bi < n else c_art
        y = np.dot(cB, Binv)
        zW = np.dot(y, AW)

        best = -1  # position within the working set
        if stalled >= _STALL_SWITCH:
            for k in range(work.size):
                if c[work[k]] - zW[k] < -_REDUCED_COST_TOL:
                    best = k
                    break
        else:
            best_score = 0.0
            for k in range(work.size):
                zk = c[work[k]] - zW[k]
                if zk < -_REDUCED_COST_TOL:
                    score = zk * zk / gamma[work[k]]
                    if score > best_score:
                        best_score = score
                        best = k
        if best < 0:
            # Working set priced out: confirm against every column.
            z_all = c - np.dot(y, A)
            outside = -1
            worst = -_REDUCED_COST_TOL
            n_cand = 0
            for jj in range(n):
                if in_set[jj] == 0 and z_all[jj] < -_REDUCED_COST_TOL:
                    n_cand += 1
                    if z_all[jj] < worst:
                        worst = z_all[jj]
                        outside = jj
            if outside < 0:
                if stale > 0:  # confirm on a fresh inverse before concluding
                    _refactor(A, b, basis, Binv, xB)
                    stale = 0
                    continue
                return _OPTIMAL, pivots
            # Grow the working set by the most negative outside candidates.
            take = grow if grow < n_cand else n_cand
            if take < n_cand:
                neg = np.empty(n_cand)
                t = 0
                for jj in range(n):
                    if in_set[jj] == 0 and z_all[jj] < -_REDUCED_COST_TOL:
                        neg[t] = z_all[jj]
                        t += 1
                cutoff = np.partition(neg, take - 1)[take - 1]
            else:
                cutoff = -_REDUCED_COST_TOL
            for jj in range(n):
                if in_set[jj] == 0 and z_all[jj] <= cutoff:
                    in_set[jj] = 1
            work = np.flatnonzero(in_set == 1)
            AW = np.empty((m, work.size))
            for k in range(work.size):
                wj = work[k]
                for i in range(m):
                    AW[i, k] = A[i, wj]
            continue
        if pivots >= budget:
            return _BUDGET, pivots

        j = int(work[best])
        for i in range(m):
            col[i] = A[i, j]
        d = np.dot(Binv, col)

        r = -1
        theta = 0.0
        for i in range(m):
            if d[i] > _PIVOT_TOL:
                ratio = xB[i] / d[i]
                if r < 0 or ratio < theta or (ratio == theta and basis[i] < basis[r]):
                    r = i
                    theta = ratio
        if r < 0:
            if stale > 0:
                _refactor(A, b, basis, Binv, xB)
                stale = 0
                continue
            return _UNBOUNDED, pivots

        # devex reference-weight update from the pivot row (before the pivot)
        alpha = np.dot(Binv[r], AW)
        apiv = alpha[best]
        gj = gamma[j] if gamma[j] > 1.0 else 1.0
        for k in range(work.size):
            ak = alpha[k]
            if ak != 0.0:
                g = (ak / apiv) * (ak / apiv) * gj
                wk = work[k]
                if g > gamma[wk]:
                    gamma[wk] = g
        leaving = basis[r]
        if leaving < n:
            g = gj / (apiv * apiv)
            gamma[leaving] = g if g > 1.0 else 1.0

        for i in range(m):
            xB[i] -= theta * d[i]
            if xB[i] < 0.0:
                xB[i] = 0.0
        xB[r] = theta
        basis[r] = j
        piv = d[r]
        for k in range(m):
            Binv[r, k] /= piv
        for i in range(m):
            if i != r:
                di = d[i]
                if di != 0.0:
                    for k in range(m):
                        Binv[i, k] -= di * Binv[r, k]

        pivots += 1
        stalled = 0 if theta > _DEGENERATE_STEP else stalled + 1
        stale += 1
        if stale >= _REFACTOR_EVERY or gamma.max() > 1e10:
            if gamma.max() > 1e10:
                for k in range(n):
                    gamma[k] = 1.0
            _refactor(A, b, basis, Binv, xB)
            stale = 0


def _run_pivots(A, b, c, c_art, basis, Binv, xB, budget) -> tuple[str, int]:
    try:
        status, pivots = _pivot_kernel(A, b, c, c_art, basis, Binv, xB, int(budget))
    except np.linalg.LinAlgError as exc:
        raise IterationLimitError("basis matrix became singular") from exc
    if status == _BUDGET:
        raise IterationLimitError(
            f"simplex exceeded {budget} pivots (numerical cycling or a too-small limit)")
    return ("optimal" if status == _OPTIMAL else "unbounded"), pivots


def _two_phase(A: np.ndarray, b: np.ndarray, c: np.ndarray,
               budget: int, tolerances: ToleranceProfile):
    """Phase one from a full artificial basis, artificial drive-out, phase two.

    Expects b >= 0.  Returns (status, A_kept, b_kept, basis, pivots,
    kept_rows); A_kept/b_kept differ from the inputs only when redundant rows
    were dropped.
    """
    m, n = A.shape
    basis = np.arange(n, n + m, dtype=np.int64)
    Binv = np.eye(m)
    xB = b.copy()
    status, total = _run_pivots(A, b, np.zeros(n), 1.0, basis, Binv, xB, budget)
    if status != "optimal":
        # The phase-one objective is bounded below by zero, so an unbounded
        # verdict can only mean the arithmetic fell apart.
        raise IterationLimitError("phase one reported an impossible unbounded ray")

    kept_rows = np.arange(m)
    artificial_level = float(xB[basis >= n].sum())
    if artificial_level > tolerances.feasibility * (1.0 + float(np.abs(b).sum())):
        return "infeasible", A, b, basis, total, kept_rows

    # Pivot zero-level artificials out; rows with no real pivot are redundant.
    keep = np.ones(m, dtype=bool)
    for r in np.flatnonzero(basis >= n):
        row = Binv[r] @ A
        choices = np.flatnonzero(np.abs(row) > _PIVOT_TOL)
        if choices.size == 0:
            keep[r] = False
            continue
        j = int(choices[0])
        d = Binv @ A[:, j]
        xB[r] = 0.0
        basis[r] = j
        Binv[r, :] /= d[r]
        d[r] = 0.0
        Binv -= d[:, None] * Binv[r, None, :]
        total += 1

    if not keep.all():
        kept_rows = np.flatnonzero(keep)
        A = np.ascontiguousarray(A[kept_rows])
        b = np.ascontiguousarray(b[kept_rows])
        basis = basis[keep].copy()
        m = A.shape[0]
        try:
            Binv = np.linalg.inv(A[:, basis])
        except np.linalg.LinAlgError as exc:
            raise IterationLimitError("basis matrix became singular") from exc
        xB = Binv @ b
        np.maximum(xB, 0.0, out=xB)
    else:
        Binv = np.ascontiguousarray(Binv)

    status, used = _run_pivots(A, b, c, 0.0, basis, Binv, xB, budget - total)
    total += used
    return status, A, b, basis, total, kept_rows


def _dual_cleanup(A: np.ndarray, b: np.ndarray, c: np.ndarray,
                  basis: np.ndarray, Binv: np.ndarray,
                  budget: int, tolerances: ToleranceProfile) -> tuple[str, int]:
    """Dual simplex steps restoring primal feasibility of a dual-feasible basis.

    Used after the anti-degeneracy perturbation is removed; typically a
    handful of pivots.  Returns ("optimal" | "infeasible", pivots).
    """
    pivots = 0
    xB = Binv @ b
    while True:
        violated = np.flatnonzero(xB < -tolerances.feasibility)
        if violated.size == 0:
            return "optimal", pivots
        if pivots >= budget:
            raise IterationLimitError("dual cleanup exceeded its pivot budget")
        r = int(violated[np.argmin(xB[violated])])
        y = c[basis] @ Binv
        z = c - y @ A
        row = Binv[r] @ A
        candidates = np.flatnonzero(row < -_PIVOT_TOL)
        if candidates.size == 0:
            return "infeasible", pivots
        ratios = z[candidates] / (-row[candidates])
        theta = ratios.min()
        j = int(candidates[ratios == theta][0])
        d = Binv @ A[:, j]
        basis[r] = j
        Binv[r, :] /= d[r]
        d[r] = 0.0
        Binv -= d[:, None] * Binv[r, None, :]
        xB = Binv @ b
        pivots += 1


def _package_optimal(lp: StandardFormLP, A: np.ndarray, b: np.ndarray,
                     basis: np.ndarray, kept_rows: np.ndarray,
                     flipped: np.ndarray, pivots: int,
                     tolerances: ToleranceProfile) -> LPSolution:
    """Recompute the basic solution and the dual directly from the final basis."""
    m0, n = lp.shape
    B = A[:, basis]
    xb = np.linalg.solve(B, b)
    xb[(xb < 0.0) & (xb > -tolerances.feasibility)] = 0.0
    x = np.zeros(n)
    x[basis] = xb
    y = np.zeros(m0)
    y[kept_rows] = np.linalg.solve(B.T, lp.c[basis])
    y[flipped] = -y[flipped]
    return LPSolution(status="optimal", x=x, y=y,
                      objective=float(lp.c @ x), iterations=pivots)


def _solve_perturbed(lp: StandardFormLP, A: np.ndarray, b: np.ndarray,
                     flipped: np.ndarray, budget: int,
                     tolerances: ToleranceProfile) -> LPSolution | None:
    """Fast path: solve with a deterministically perturbed right-hand side.

    Returns None whenever optimality cannot be certified this way (the
    caller then reruns the exact, unperturbed algorithm).
    """
    m = A.shape[0]
    delta = 1e-7 * (1.0 + float(b.max(initial=0.0)))
    b_perturbed = b + delta * (np.arange(m) + 1.0) / m
    status, A2, b2, basis, pivots, kept_rows = _two_phase(
        A, b_perturbed, lp.c, budget, tolerances)
    if status != "optimal":
        return None
    b_true = np.ascontiguousarray(b[kept_rows])
    xb = np.linalg.solve(A2[:, basis], b_true)
    if float(xb.min()) < -tolerances.feasibility:
        Binv = np.linalg.inv(A2[:, basis])
        status, used = _dual_cleanup(A2, b_true, lp.c, basis, Binv,
                                     budget - pivots, tolerances)
        pivots += used
        if status != "optimal":
            return None
    return _package_optimal(lp, A2, b_true, basis, kept_rows, flipped,
                            pivots, tolerances)


def solve_lp(lp: StandardFormLP, tolerances: ToleranceProfile = DEFAULT_TOLERANCES,
             max_iterations: int | None = None) -> LPSolution:
    """Two-phase simplex with stall-guarded devex pricing; deterministic for
    identical inputs.

    A perturbed-RHS fast path handles the heavily degenerate instances this
    package generates; whenever it cannot certify an optimum, the exact
    unperturbed algorithm runs instead and settles infeasible and unbounded
    verdicts.  The default pivot budget is 50 * (n + m) per attempt;
    exceeding it raises IterationLimitError rather than returning a
    best-effort answer.
    """
    m0, n = lp.shape
    budget = 50 * (n + m0) if max_iterations is None else int(max_iterations)

    flipped = lp.b < 0.0
    A = np.ascontiguousarray(np.where(flipped[:, None], -lp.A, lp.A))
    b = np.ascontiguousarray(np.where(flipped, -lp.b, lp.b))

    try:
        solution = _solve_perturbed(lp, A, b, flipped, budget, tolerances)
    except (IterationLimitError, np.linalg.LinAlgError):
        solution = None
    if solution is not None:
        return solution

    status, A2, b2, basis, pivots, kept_rows = _two_phase(
        A, b, lp.c, budget, tolerances)
    if status == "infeasible":
        return LPSolution(status="infeasible", x=None, y=None,
                          objective=math.nan, iterations=pivots)
    if status == "unbounded":
        return LPSolution(status="unbounded", x=None, y=None,
                          objective=-math.inf, iterations=pivots)
    return _package_optimal(lp, A2, b2, basis, kept_rows, flipped,
                            pivots, tolerances)


def check_certificate(lp: StandardFormLP, solution: LPSolution,
                      tolerances: ToleranceProfile = DEFAULT_TOLERANCES) -> CertificateReport:
    """Recompute optimality residuals from scratch; no solver state is reused."""
    if solution.status != "optimal":
        raise ValueError("certificates are only defined for optimal solutions")
    x = solution.x
    y = solution.y
    primal = max(float(np.abs(lp.A @ x - lp.b).max()), max(0.0, -float(x.min())))
    slack = lp.c - lp.A.T @ y
    dual = min(0.0, float(slack.min()))
    comp = abs(float(x @ slack))
    gap = abs(float(lp.c @ x - lp.b @ y))
    passed = (primal <= tolerances.feasibility
              and -dual <= tolerances.feasibility
              and comp <= tolerances.duality_gap
              and gap <= tolerances.duality_gap)
    return CertificateReport(primal_residual=primal, dual_residual=dual,
                             complementary_slackness=comp, duality_gap=gap,
                             passed=passed)
