"""Stochastic sweeps over interval patterns, scaling aggregation, and persistence.

Per-record randomness comes from a splitmix64 sub-seed stream feeding one
numpy PCG64 generator per record, so results are independent of execution
order and worker count.  Persisted record files are a pure function of
(seed, config, code version); wall-clock timings are therefore written as
zero unless timing capture is explicitly requested, in which case byte
reproducibility of the timing column is waived.
"""

from __future__ import annotations

import dataclasses
import json
import math
import multiprocessing
import statistics
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .core import DEFAULT_TOLERANCES, OrthogonalityProblem, ToleranceProfile
from .lp import IterationLimitError
from .minenergy import minimize_energy

__all__ = [
    "CSV_FIELDS",
    "SweepConfig",
    "SweepRecord",
    "ScalingRow",
    "ScalingStudy",
    "ScaleInvarianceReport",
    "subseed",
    "generate_problem",
    "run_sweep",
    "write_sweep_files",
    "sweep_file_paths",
    "scaling_study",
    "scale_invariance_check",
    "double_interval_family",
]

CSV_FIELDS = ("index", "N", "T", "n_different", "intervals", "e_min", "e_bound",
              "ratio", "cert_gap", "ortho_ok", "solve_ms", "sub_seed")

_MASK64 = (1 << 64) - 1
_GOLDEN64 = 0x9E3779B97F4A7C15


def subseed(seed: int, index: int) -> int:
    """The index-th output of the splitmix64 stream seeded with ``seed``.

    subseed(seed, i) = mix64(seed + (i+1) * 0x9E3779B97F4A7C15), where mix64
    is the standard splitmix64 finalizer.  Pure 64-bit arithmetic, so any
    implementation of the sweep can reproduce the stream exactly.
    """
    z = (seed + (index + 1) * _GOLDEN64) & _MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return z


@dataclass(frozen=True)
class SweepConfig:
    """Knobs for one sweep run; defaults match the desk-scale experiment."""

    seed: int = 1
    samples: int = 10_000
    n_states_range: tuple[int, int] = (2, 20)
    length_range: tuple[int, int] = (1, 100)
    n_different_choices: tuple[int, ...] = (2, 3, 4)
    tolerances: ToleranceProfile = DEFAULT_TOLERANCES
    output_path: str | None = None
    parallelism: int = 1
    include_timing: bool = False

    def __post_init__(self) -> None:
        if self.samples < 0:
            raise ValueError("samples must be nonnegative")
        n_lo, n_hi = self.n_states_range
        if not 1 <= n_lo <= n_hi:
            raise ValueError("n_states_range must be a nonempty range with n >= 1")
        l_lo, l_hi = self.length_range
        if not 1 <= l_lo <= l_hi:
            raise ValueError("length_range must be a nonempty range with lengths >= 1")
        nd = tuple(sorted(set(int(d) for d in self.n_different_choices)))
        if not nd or nd[0] < 1:
            raise ValueError("n_different_choices must hold positive counts")
        if nd[0] > min(n_lo, l_hi - l_lo + 1):
            raise ValueError("smallest n_different choice must fit every sampled N")
        object.__setattr__(self, "n_different_choices", nd)
        if self.parallelism < 1:
            raise ValueError("parallelism must be at least 1")


@dataclass(frozen=True)
class SweepRecord:
    """One solved problem; ratio and the residual fields are NaN on solver failure."""

    index: int
    intervals: tuple[int, ...]
    n_states: int
    period: int
    n_different: int
    e_min: float
    e_bound: float
    ratio: float
    cert_gap: float
    ortho_ok: bool
    solve_ms: float
    sub_seed: int


def generate_problem(sub_seed: int, n_states: int, n_different: int,
                     max_len: int, min_len: int = 1) -> OrthogonalityProblem:
    """Random cyclic interval pattern with exactly ``n_different`` distinct lengths.

    Draws the distinct lengths uniformly without replacement from
    [min_len, max_len], then assigns them to the N interval slots uniformly,
    rejecting assignments that fail to use every chosen length.  Deterministic
    given sub_seed (numpy PCG64).
    """
    available = max_len - min_len + 1
    if not 1 <= n_different <= min(n_states, available):
        raise ValueError("n_different must fit both the state count and the length pool")
    rng = np.random.Generator(np.random.PCG64(sub_seed))
    lengths = rng.choice(available, size=n_different, replace=False) + min_len
    for _ in range(100_000):
        slots = rng.integers(0, n_different, size=n_states)
        if np.unique(slots).size == n_different:
            break
    else:  # pragma: no cover - probability ~ (1 - n!/n^n)^1e5
        raise RuntimeError("could not place every chosen length")
    return OrthogonalityProblem.from_intervals(lengths[slots].tolist())


def _solve_record(config: SweepConfig, index: int) -> SweepRecord:
    ss = subseed(config.seed, index)
    rng = np.random.Generator(np.random.PCG64(ss))
    n_lo, n_hi = config.n_states_range
    l_lo, l_hi = config.length_range
    n_states = int(rng.integers(n_lo, n_hi + 1))
    allowed = [d for d in config.n_different_choices
               if d <= min(n_states, l_hi - l_lo + 1)]
    n_diff = int(allowed[int(rng.integers(0, len(allowed)))])
    problem_seed = int(rng.integers(0, 2 ** 64, dtype=np.uint64))
    problem = generate_problem(problem_seed, n_states, n_diff, l_hi, l_lo)
    started = time.perf_counter()
    try:
        res = minimize_energy(problem, config.tolerances)
        elapsed_ms = (time.perf_counter() - started) * 1e3
        return SweepRecord(index=index, intervals=problem.intervals,
                           n_states=n_states, period=problem.period,
                           n_different=n_diff, e_min=res.e_min,
                           e_bound=res.e_bound,
                           ratio=math.nan if res.ratio is None else res.ratio,
                           cert_gap=res.certificate.duality_gap,
                           ortho_ok=res.orthogonality_ok,
                           solve_ms=elapsed_ms, sub_seed=ss)
    except IterationLimitError:
        elapsed_ms = (time.perf_counter() - started) * 1e3
        return SweepRecord(index=index, intervals=problem.intervals,
                           n_states=n_states, period=problem.period,
                           n_different=n_diff, e_min=math.nan,
                           e_bound=float(n_states - 1), ratio=math.nan,
                           cert_gap=math.nan, ortho_ok=False,
                           solve_ms=elapsed_ms, sub_seed=ss)


_WORKER_CONFIG: SweepConfig | None = None


def _worker_init(config: SweepConfig) -> None:
    global _WORKER_CONFIG
    _WORKER_CONFIG = config


def _worker_solve(index: int) -> SweepRecord:
    assert _WORKER_CONFIG is not None
    return _solve_record(_WORKER_CONFIG, index)


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """Generate, solve, certify, and verify ``config.samples`` problems.

    Individual solver failures become NaN records; they never abort the
    sweep.  Records come back sorted by index regardless of worker count, and
    are persisted (CSV + JSONL + metadata) when an output path is configured.
    """
    if config.parallelism > 1 and config.samples > 1:
        chunk = max(1, config.samples // (config.parallelism * 8))
        with multiprocessing.Pool(config.parallelism, initializer=_worker_init,
                                  initargs=(config,)) as pool:
            records = pool.map(_worker_solve, range(config.samples), chunksize=chunk)
    else:
        records = [_solve_record(config, i) for i in range(config.samples)]
    records.sort(key=lambda r: r.index)
    if config.output_path is not None:
        write_sweep_files(config, records)
    return records


def _fmt_float(value: float) -> str:
    if math.isnan(value):
        return "nan"
    return f"{value:.12g}"


def _json_float(value: float):
    if math.isnan(value):
        return None
    return float(f"{value:.12g}")


def sweep_file_paths(output_path: str | Path) -> tuple[Path, Path, Path]:
    """CSV, JSONL, and metadata paths derived from a base path (".csv" is stripped)."""
    base = Path(output_path)
    if base.suffix == ".csv":
        base = base.with_suffix("")
    return (base.with_suffix(".csv"), base.with_suffix(".jsonl"),
            base.with_suffix(".meta.json"))


def _record_row(record: SweepRecord, include_timing: bool) -> str:
    ms = record.solve_ms if include_timing else 0.0
    return ",".join([
        str(record.index),
        str(record.n_states),
        str(record.period),
        str(record.n_different),
        "-".join(str(l) for l in record.intervals),
        _fmt_float(record.e_min),
        _fmt_float(record.e_bound),
        _fmt_float(record.ratio),
        _fmt_float(record.cert_gap),
        "true" if record.ortho_ok else "false",
        _fmt_float(ms),
        str(record.sub_seed),
    ])


def _record_json(record: SweepRecord, include_timing: bool) -> str:
    ms = record.solve_ms if include_timing else 0.0
    obj = {
        "index": record.index,
        "N": record.n_states,
        "T": record.period,
        "n_different": record.n_different,
        "intervals": list(record.intervals),
        "e_min": _json_float(record.e_min),
        "e_bound": _json_float(record.e_bound),
        "ratio": _json_float(record.ratio),
        "cert_gap": _json_float(record.cert_gap),
        "ortho_ok": record.ortho_ok,
        "solve_ms": _json_float(ms),
        "sub_seed": record.sub_seed,
    }
    return json.dumps(obj, separators=(",", ":"))


def write_sweep_files(config: SweepConfig, records: list[SweepRecord]
                      ) -> tuple[Path, Path, Path]:
    """Write the CSV records, the JSONL mirror, and the run-metadata header."""
    if config.output_path is None:
        raise ValueError("config has no output path")
    csv_path, jsonl_path, meta_path = sweep_file_paths(config.output_path)
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(CSV_FIELDS) + "\n")
        for record in records:
            fh.write(_record_row(record, config.include_timing) + "\n")
    with open(jsonl_path, "w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(_record_json(record, config.include_timing) + "\n")
    metadata = {
        "format": "sweep-records-v1",
        "code_version": __version__,
        "seed": config.seed,
        "samples": config.samples,
        "n_states_range": list(config.n_states_range),
        "interval_length_range": list(config.length_range),
        "n_different_choices": list(config.n_different_choices),
        "tolerances": dataclasses.asdict(config.tolerances),
        "parallelism": config.parallelism,
        "timing_recorded": config.include_timing,
        "subseed_mixer": "splitmix64: subseed(seed, i) = mix64(seed + (i+1)*0x9E3779B97F4A7C15)",
        "record_rng": "numpy PCG64 seeded with the record sub-seed",
        "sampling": "N uniform in range; n_different uniform over choices <= N; "
                    "distinct lengths uniform without replacement; slots uniform "
                    "with rejection until every length is used",
        "csv_header": ",".join(CSV_FIELDS),
    }
    with open(meta_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(metadata, indent=2, sort_keys=True) + "\n")
    return csv_path, jsonl_path, meta_path


def _aggregate(ratios: list[float]) -> tuple[int, float, float]:
    if not ratios:
        return 0, math.nan, math.nan
    return len(ratios), min(ratios), statistics.median(ratios)


@dataclass(frozen=True)
class ScalingRow:
    """Ratio statistics for one distinct-length count, split at N = 8."""

    n_different: int
    count: int
    min_ratio: float
    median_ratio: float
    count_small_n: int
    min_ratio_small_n: float
    median_ratio_small_n: float
    count_large_n: int
    min_ratio_large_n: float
    median_ratio_large_n: float


@dataclass(frozen=True)
class ScalingStudy:
    rows: tuple[ScalingRow, ...]
    family: tuple[tuple[int, float], ...]  # (N, ratio) for the doubled-interval family


def double_interval_family(n_max: int = 19) -> tuple[tuple[int, float], ...]:
    """Solved ratios for intervals (1, ..., 1, 2) with N = 2..n_max.

    The doubled interval is an integer multiple of the others, so each member
    inherits the (N+1)-equal-interval optimum and its ratio is N/(N-1).
    """
    out = []
    for n in range(2, n_max + 1):
        problem = OrthogonalityProblem.from_intervals((1,) * (n - 1) + (2,))
        res = minimize_energy(problem)
        out.append((n, float(res.ratio)))
    return tuple(out)


def scaling_study(config: SweepConfig, records: list[SweepRecord] | None = None,
                  family_n_max: int = 19) -> ScalingStudy:
    """Aggregate sweep ratios per n_different (split N < 8 / N >= 8) plus the
    constructed doubled-interval family."""
    if records is None:
        records = run_sweep(dataclasses.replace(config, output_path=None))
    usable = [r for r in records if math.isfinite(r.ratio)]
    rows = []
    for nd in sorted(set(r.n_different for r in usable)):
        group = [r for r in usable if r.n_different == nd]
        count, mn, med = _aggregate([r.ratio for r in group])
        c_s, mn_s, med_s = _aggregate([r.ratio for r in group if r.n_states < 8])
        c_l, mn_l, med_l = _aggregate([r.ratio for r in group if r.n_states >= 8])
        rows.append(ScalingRow(n_different=nd, count=count, min_ratio=mn,
                               median_ratio=med, count_small_n=c_s,
                               min_ratio_small_n=mn_s, median_ratio_small_n=med_s,
                               count_large_n=c_l, min_ratio_large_n=mn_l,
                               median_ratio_large_n=med_l))
    return ScalingStudy(rows=tuple(rows), family=double_interval_family(family_n_max))


@dataclass(frozen=True)
class ScaleInvarianceReport:
    """Dimensionless optimum of a problem against its integer-scaled copies."""

    base_e_min: float
    checks: tuple[tuple[int, float, float], ...]  # (factor, e_min, |difference|)
    tolerance: float
    passed: bool


def scale_invariance_check(problem: OrthogonalityProblem, factors,
                           tolerances: ToleranceProfile = DEFAULT_TOLERANCES,
                           tolerance: float = 1e-9) -> ScaleInvarianceReport:
    """Multiply all times and the period by each integer factor and compare
    the dimensionless optimum; the frequency grid refines but the optimum
    must not move."""
    base = minimize_energy(problem, tolerances).e_min
    checks = []
    for s in sorted(set(int(f) for f in factors)):
        if s < 1:
            raise ValueError("scale factors must be positive integers")
        scaled = OrthogonalityProblem(period=problem.period * s,
                                      times=tuple(t * s for t in problem.times))
        e_scaled = minimize_energy(scaled, tolerances).e_min
        checks.append((s, e_scaled, abs(e_scaled - base)))
    passed = all(diff <= tolerance for _, _, diff in checks)
    return ScaleInvarianceReport(base_e_min=base, checks=tuple(checks),
                                 tolerance=tolerance, passed=passed)
