"""Command-line surface: solve, bounds, evolve, shift, frames, sweep.

Exit codes: 0 success, 2 bad arguments, 3 solver failure, 4 I/O failure.
All numeric output is printed to 12 significant digits in every format, so
table, csv, and jsonl renderings of the same run carry identical values.
Interval lists accept rationals ("1/2" or "0.5"); they are scaled onto the
integer lattice by the least common multiple of the denominators and the
scale is echoed in the output.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import (
    dominating_bound,
    eband_bound,
    n2t_bound,
    oscillator_bound,
    taumin_bound,
)
from .core import DEFAULT_TOLERANCES, OrthogonalityProblem, ToleranceProfile, WeightVector
from .evolution import (
    equal_weight_state,
    find_orthogonal_times,
    min_cyclic_interval,
    overlap_trace,
    refined_overlap_minima,
)
from .experiments import (
    SweepConfig,
    double_interval_family,
    run_sweep,
    scaling_study,
    sweep_file_paths,
    write_sweep_files,
)
from .lp import IterationLimitError
from .minenergy import SpectralSense, minimize_energy
from .motion import MomentumState, frame_count, pmin_check

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_IO = 4

_NEAR_MISS_CEILING = 1e-3


class UsageError(ValueError):
    pass


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, float):
        return "nan" if math.isnan(value) else f"{value:.12g}"
    return str(value)


def _json_value(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, float):
        if math.isnan(value):
            return None
        return float(f"{value:.12g}")
    return value


def _emit(pairs: list[tuple[str, object]], fmt: str, stream) -> None:
    """Render key/value results as an aligned table, a one-row csv, or jsonl."""
    if fmt == "table":
        width = max(len(k) for k, _ in pairs)
        for key, value in pairs:
            stream.write(f"{key:<{width}}  {_fmt(value)}\n")
    elif fmt == "csv":
        stream.write(",".join(k for k, _ in pairs) + "\n")
        stream.write(",".join(_fmt(v) for _, v in pairs) + "\n")
    else:  # jsonl
        stream.write(json.dumps({k: _json_value(v) for k, v in pairs},
                                separators=(",", ":")) + "\n")


def _parse_lattice_values(text: str, what: str) -> tuple[list[int], int]:
    """Comma-separated rationals -> integer lattice values plus the scale used."""
    try:
        fractions = [Fraction(part.strip()) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"could not parse {what}: {exc}") from exc
    if not fractions:
        raise UsageError(f"{what} must contain at least one value")
    scale = 1
    for f in fractions:
        scale = scale * f.denominator // math.gcd(scale, f.denominator)
    return [int(f * scale) for f in fractions], scale


def _parse_floats(text: str, what: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"could not parse {what}: {exc}") from exc
    if not values:
        raise UsageError(f"{what} must contain at least one value")
    return values


def _tolerances(args) -> ToleranceProfile:
    return ToleranceProfile(
        feasibility=args.feasibility_tol,
        orthogonality=args.orthogonality_tol,
        duality_gap=args.duality_gap_tol,
        normalization=args.normalization_tol,
    )


def _add_tolerance_flags(parser) -> None:
    d = DEFAULT_TOLERANCES
    parser.add_argument("--feasibility-tol", type=float, default=d.feasibility)
    parser.add_argument("--orthogonality-tol", type=float, default=d.orthogonality)
    parser.add_argument("--duality-gap-tol", type=float, default=d.duality_gap)
    parser.add_argument("--normalization-tol", type=float, default=d.normalization)


def _add_format_flags(parser) -> None:
    parser.add_argument("--format", choices=("table", "csv", "jsonl"), default="table")
    parser.add_argument("--out", type=Path, help="write output here instead of stdout")


def _open_out(args):
    if args.out is None:
        return sys.stdout, False
    return open(args.out, "w", encoding="utf-8", newline="\n"), True


def _load_problem(args) -> tuple[OrthogonalityProblem, int]:
    if args.problem_file is not None:
        payload = json.loads(Path(args.problem_file).read_text(encoding="utf-8"))
        if "intervals" in payload:
            values, scale = _parse_lattice_values(
                ",".join(str(v) for v in payload["intervals"]), "intervals")
            return OrthogonalityProblem.from_intervals(values), scale
        if "times" in payload and "period" in payload:
            values, scale = _parse_lattice_values(
                ",".join(str(v) for v in payload["times"] + [payload["period"]]),
                "times/period")
            return OrthogonalityProblem(period=values[-1], times=tuple(values[:-1])), scale
        raise UsageError("problem file needs either 'intervals' or 'times'+'period'")
    if args.intervals is None:
        raise UsageError("give intervals inline or via --problem-file")
    values, scale = _parse_lattice_values(args.intervals, "intervals")
    return OrthogonalityProblem.from_intervals(values), scale


def _cmd_solve(args) -> int:
    problem, scale = _load_problem(args)
    sense = SpectralSense.FROM_ABOVE if args.sense == "above" else SpectralSense.FROM_BELOW
    result = minimize_energy(problem, _tolerances(args), sense)
    support = result.weights.support()
    weights = ";".join(f"{int(n)}:{result.weights.weights[n]:.12g}" for n in support)
    pairs = [
        ("intervals", "-".join(str(v) for v in problem.intervals)),
        ("n_states", problem.n_states),
        ("period", problem.period),
        ("n_different", problem.n_different),
        ("lattice_scale", scale),
        ("e_min", result.e_min),
        ("e_bound", result.e_bound),
        ("ratio", result.ratio),
        ("weights", weights),
        ("cert_gap", result.certificate.duality_gap),
        ("cert_passed", result.certificate.passed),
        ("ortho_ok", result.orthogonality_ok),
        ("lp_iterations", result.solution.iterations),
    ]
    stream, owned = _open_out(args)
    try:
        _emit(pairs, args.format, stream)
    finally:
        if owned:
            stream.close()
    return EXIT_OK


def _cmd_bounds(args) -> int:
    h = args.h
    pairs = [
        ("n_states", args.n),
        ("period", args.t),
        ("h", h),
        ("eband", eband_bound(args.n, args.t, h)),
        ("n2t", n2t_bound(args.n, args.t, h)),
        ("oscillator", oscillator_bound(args.t, h)),
    ]
    if args.taumin is not None:
        report = dominating_bound(args.n, args.t, args.taumin, h)
        pairs += [
            ("taumin", taumin_bound(args.taumin, h)),
            ("dominant", report.name),
            ("dominant_value", report.value),
            ("threshold", report.inputs["threshold"]),
        ]
    stream, owned = _open_out(args)
    try:
        _emit(pairs, args.format, stream)
    finally:
        if owned:
            stream.close()
    return EXIT_OK


def _cmd_evolve(args) -> int:
    tolerances = _tolerances(args)
    if args.equal is not None:
        period = args.t if args.t is not None else args.equal
        state = equal_weight_state(args.equal, period)
    else:
        if args.t is None:
            raise UsageError("--t is required with --weights")
        period = args.t
        values = np.array(_parse_floats(args.weights, "weights"))
        if values.size < period:
            values = np.concatenate([values, np.zeros(period - values.size)])
        state = WeightVector(values, tolerances)
    samples = args.samples if args.samples is not None else max(2 * period, 512)
    trace = overlap_trace(state, period, samples)
    zeros = find_orthogonal_times(state, period, tolerances)
    pairs = [
        ("period", period),
        ("samples", samples),
        ("orthogonal_times", ";".join(f"{t:.12g}" for t in zeros)),
        ("n_orthogonal", len(zeros)),
        ("min_cyclic_interval", min_cyclic_interval(zeros, period) if zeros else None),
    ]
    if args.verbose:
        misses = [(t, v) for t, v in refined_overlap_minima(state, period)
                  if tolerances.orthogonality < v <= _NEAR_MISS_CEILING]
        pairs.append(("near_misses",
                      ";".join(f"{t:.12g}:{v:.12g}" for t, v in misses)))
    _emit(pairs, args.format, sys.stdout)
    if args.out is not None:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write("t,re,im,abs\n")
                for t, v in zip(trace.times, trace.values):
                    fh.write(f"{t:.12g},{v.real:.12g},{v.imag:.12g},{abs(v):.12g}\n")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def _cmd_shift(args) -> int:
    momenta = np.array(_parse_floats(args.p, "momenta"))
    weights = np.array(_parse_floats(args.u, "weights"))
    state = MomentumState(momenta=momenta, weights=weights, h=args.h)
    report = pmin_check(state, _tolerances(args))
    pairs = [
        ("h", args.h),
        ("mean_momentum", report.mean_momentum),
        ("lambda_min", report.lam_min),
        ("product", report.product),
        ("quarter_h", args.h / 4.0),
        ("satisfied", report.satisfied),
        ("equality", report.equality),
    ]
    stream, owned = _open_out(args)
    try:
        _emit(pairs, args.format, stream)
    finally:
        if owned:
            stream.close()
    return EXIT_OK


def _cmd_frames(args) -> int:
    fc = frame_count(args.er, args.v, args.dt)
    pairs = [
        ("rest_energy", fc.rest_energy),
        ("speed", fc.speed),
        ("duration", fc.duration),
        ("gamma", fc.gamma),
        ("energy", fc.energy),
        ("momentum", fc.momentum),
        ("rest_duration", fc.rest_duration),
        ("displacement", fc.displacement),
        ("count_lab", fc.count_lab),
        ("count_rest", fc.count_rest),
        ("count_motion", fc.count_motion),
        ("identity_residual", fc.identity_residual),
        ("motional_rate", fc.motional_rate),
        ("split_residual", fc.split_residual),
        # distinct-state counts: a state change needs h/2 of action
        ("states_lab", 2.0 * fc.count_lab / args.h),
        ("states_motion", 2.0 * fc.count_motion / args.h),
    ]
    stream, owned = _open_out(args)
    try:
        _emit(pairs, args.format, stream)
    finally:
        if owned:
            stream.close()
    return EXIT_OK


def _family_records(n_max: int):
    from .experiments import SweepRecord
    records = []
    for index, (n, ratio) in enumerate(double_interval_family(n_max)):
        intervals = (1,) * (n - 1) + (2,)
        problem = OrthogonalityProblem.from_intervals(intervals)
        res = minimize_energy(problem)
        records.append(SweepRecord(
            index=index, intervals=intervals, n_states=n, period=problem.period,
            n_different=2, e_min=res.e_min, e_bound=res.e_bound, ratio=ratio,
            cert_gap=res.certificate.duality_gap, ortho_ok=res.orthogonality_ok,
            solve_ms=0.0, sub_seed=0))
    return records


def _cmd_sweep(args) -> int:
    ndiff = tuple(int(v) for v in _parse_floats(args.ndiff, "n_different choices"))
    config = SweepConfig(
        seed=args.seed,
        samples=args.samples,
        n_states_range=(args.nmin, args.nmax),
        length_range=(args.minlen, args.maxlen),
        n_different_choices=ndiff,
        tolerances=_tolerances(args),
        output_path=str(args.out),
        parallelism=args.parallel,
        include_timing=args.timing,
    )
    if args.family == "double":
        records = _family_records(args.nmax)
        write_sweep_files(config, records)
    else:
        records = run_sweep(config)
    csv_path, jsonl_path, meta_path = sweep_file_paths(config.output_path)
    finite = [r.ratio for r in records if math.isfinite(r.ratio)]
    pairs = [
        ("records", len(records)),
        ("failures", sum(1 for r in records if not math.isfinite(r.e_min))),
        ("min_ratio", min(finite) if finite else None),
        ("max_ratio", max(finite) if finite else None),
        ("csv", str(csv_path)),
        ("jsonl", str(jsonl_path)),
        ("metadata", str(meta_path)),
    ]
    _emit(pairs, args.format, sys.stdout)
    if args.study:
        study = scaling_study(config, records)
        for row in study.rows:
            _emit([
                ("n_different", row.n_different),
                ("count", row.count),
                ("min_ratio", row.min_ratio),
                ("median_ratio", row.median_ratio),
                ("count_n_below_8", row.count_small_n),
                ("min_ratio_n_below_8", row.min_ratio_small_n),
                ("median_ratio_n_below_8", row.median_ratio_small_n),
                ("count_n_8_plus", row.count_large_n),
                ("min_ratio_n_8_plus", row.min_ratio_large_n),
                ("median_ratio_n_8_plus", row.median_ratio_large_n),
            ], args.format, sys.stdout)
        for n, ratio in study.family:
            _emit([("family_n", n), ("family_ratio", ratio),
                   ("family_expected", n / (n - 1))], args.format, sys.stdout)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthorate",
        description="Minimum average energy for evolutions through prescribed "
                    "orthogonal states, rate bounds, and sweep experiments.")
    parser.add_argument("--version", action="version", version=f"orthorate {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="minimize energy for an interval pattern")
    p.add_argument("intervals", nargs="?", help="comma-separated cyclic interval lengths, e.g. 1,1,2")
    p.add_argument("--problem-file", type=Path, help="JSON with 'intervals' or 'times'+'period'")
    p.add_argument("--sense", choices=("below", "above"), default="below")
    _add_format_flags(p)
    _add_tolerance_flags(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bounds", help="evaluate the closed-form rate bounds")
    p.add_argument("--n", type=int, required=True, help="number of distinct states")
    p.add_argument("--t", type=float, required=True, help="period")
    p.add_argument("--taumin", type=float, help="minimum interval between orthogonal states")
    p.add_argument("--h", type=float, default=1.0)
    _add_format_flags(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("evolve", help="trace the autocorrelation and find orthogonality times")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--equal", type=int, help="equal-weight state over N levels")
    group.add_argument("--weights", help="comma-separated weights")
    p.add_argument("--t", type=int, help="period (defaults to N for --equal)")
    p.add_argument("--samples", type=int)
    p.add_argument("--verbose", action="store_true", help="also report near misses")
    _add_format_flags(p)
    _add_tolerance_flags(p)
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("shift", help="minimum orthogonal displacement of a momentum state")
    p.add_argument("--p", required=True, help="comma-separated momenta (nonnegative, increasing)")
    p.add_argument("--u", required=True, help="comma-separated weights")
    p.add_argument("--h", type=float, default=1.0)
    _add_format_flags(p)
    _add_tolerance_flags(p)
    p.set_defaults(func=_cmd_shift)

    p = sub.add_parser("frames", help="two-frame state-count bookkeeping")
    p.add_argument("--er", type=float, required=True, help="rest energy")
    p.add_argument("--v", type=float, required=True, help="speed, units c = 1")
    p.add_argument("--dt", type=float, default=1.0, help="lab-frame duration")
    p.add_argument("--h", type=float, default=2.0, help="h for state counts (default: h = 2 units)")
    _add_format_flags(p)
    p.set_defaults(func=_cmd_frames)

    p = sub.add_parser("sweep", help="run a stochastic sweep and persist records")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--nmin", type=int, default=2)
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument("--minlen", type=int, default=1)
    p.add_argument("--maxlen", type=int, default=100)
    p.add_argument("--ndiff", default="2,3,4", help="comma-separated distinct-length choices")
    p.add_argument("--out", type=Path, default=Path("sweep"))
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--timing", action="store_true",
                   help="record real per-solve wall time (waives byte reproducibility)")
    p.add_argument("--study", action="store_true", help="print the scaling aggregation")
    p.add_argument("--family", choices=("double",),
                   help="solve the 1,...,1,2 family for N = 2..nmax instead of sampling")
    p.add_argument("--format", choices=("table", "csv", "jsonl"), default="table")
    _add_tolerance_flags(p)
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IterationLimitError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return EXIT_IO


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
