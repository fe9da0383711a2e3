"""Command-line front end: synth, bench, sweep, analyze, compare.

Exit codes: 0 success, 1 usage error, 2 input parse error, 3 verification
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .analyze import profile, select_subset
from .bench import BenchConfig, report_to_csv, report_to_json, run_bench
from .errors import SynthesisError, VerificationFailed
from .machine import machine_to_json, machine_to_text
from .permutation import parse_perm_spec
from .pipeline import sweep_parallelization, synthesize
from .sequence import flatten, load_patterns, load_sequence

EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="binmachine",
                     description="Synthesize binary machines that replay "
                                 "incompletely specified bit sequences.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="synthesize one machine from a sequence file")
    synth.add_argument("--seq", required=True, help="sequence file ({0,1,X,-})")
    synth.add_argument("-p", default="1", help="bits per cycle, or 'sweep'")
    synth.add_argument("--perm", default="lfsr", help="tag permutation spec")
    synth.add_argument("--algorithm", choices=("presented", "baseline"),
                       default="presented")
    synth.add_argument("--fill", choices=("balance", "zeros", "random"),
                       default="balance")
    synth.add_argument("--seed", type=int, default=0, help="fill seed (baseline/random)")
    synth.add_argument("--out", default=".", help="output directory")

    bench = sub.add_parser("bench", help="random-sequence comparison benchmark")
    bench.add_argument("--config", help="config file (key = value or JSON)")
    bench.add_argument("--seed", type=int, help="override master seed")
    bench.add_argument("--jobs", type=int, default=1)
    bench.add_argument("--out", default=".", help="output directory")

    sweep = sub.add_parser("sweep", help="rank parallelization degrees by gate count")
    sweep.add_argument("--seq", required=True)
    sweep.add_argument("--p-min", type=int)
    sweep.add_argument("--p-max", type=int)
    sweep.add_argument("--perm", default="lfsr")
    sweep.add_argument("--algorithm", choices=("presented", "baseline"),
                       default="presented")
    sweep.add_argument("--out", default=".")
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")

    analyze = sub.add_parser("analyze", help="pattern-set statistics and subsets")
    analyze.add_argument("--patterns", required=True, help="one pattern per line")
    analyze.add_argument("--drop-fraction", type=float,
                         help="drop this fraction of densest patterns")
    analyze.add_argument("--budget", type=int, help="greedy gate budget")
    analyze.add_argument("--pilot-p", type=int, default=1)
    analyze.add_argument("--perm", default="lfsr")
    analyze.add_argument("--out", default=".")

    compare = sub.add_parser("compare", help="both algorithms on one sequence")
    compare.add_argument("--seq", required=True)
    compare.add_argument("-p", type=int, default=1)
    compare.add_argument("--perm", default="lfsr")
    compare.add_argument("--fill", choices=("balance", "zeros", "random"),
                         default="balance")
    compare.add_argument("--out", default=".")
    return parser


def _outdir(path: str) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write(path: Path, text: str):
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path}")


def _cmd_synth(args) -> int:
    a = load_sequence(args.seq)
    perm = parse_perm_spec(args.perm)
    if args.p == "sweep":
        report = sweep_parallelization(a, perm=perm, algorithm=args.algorithm,
                                       fill=args.fill)
        best = report.best()
        if best is None:
            print("sweep found no synthesizable p", file=sys.stderr)
            return EXIT_VERIFY
        p = best.p
    else:
        p = int(args.p)
    result = synthesize(a, p, algorithm=args.algorithm, perm=perm,
                        fill=args.fill, fill_seed=args.seed)
    out = _outdir(args.out)
    stem = f"{Path(args.seq).stem}.{args.algorithm}"
    _write(out / f"{stem}.machine.json", machine_to_json(result.machine))
    _write(out / f"{stem}.machine.txt", machine_to_text(result.machine))
    print(result.summary())
    if not result.verified:
        print(f"verification mismatch at bit {result.mismatch}", file=sys.stderr)
        return EXIT_VERIFY
    return 0


def _cmd_bench(args) -> int:
    cfg = BenchConfig.from_file(args.config) if args.config else BenchConfig()
    if args.seed is not None:
        cfg = BenchConfig.from_mapping({**cfg.to_dict(), "seed": args.seed})
    report = run_bench(cfg, jobs=args.jobs)
    out = _outdir(args.out)
    _write(out / "bench.csv", report_to_csv(report))
    _write(out / "bench.json", report_to_json(report))
    for agg in report.aggregates:
        if agg.get("trials_ok"):
            print(
                f"fraction={agg['fraction']}"
                f" mean_g1={agg['mean_g_baseline']:.1f}"
                f" mean_g2={agg['mean_g_presented']:.1f}"
                f" mean_reduction={agg['mean_reduction_pct']:.2f}%"
            )
    return 2 if report.all_failed else 0


def _cmd_sweep(args) -> int:
    a = load_sequence(args.seq)
    perm = parse_perm_spec(args.perm)
    p_range = None
    if args.p_min is not None or args.p_max is not None:
        if args.p_min is None or args.p_max is None:
            print("give both --p-min and --p-max", file=sys.stderr)
            return EXIT_USAGE
        p_range = (args.p_min, args.p_max)
    report = sweep_parallelization(a, p_range=p_range, perm=perm,
                                   algorithm=args.algorithm)
    out = _outdir(args.out)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["p", "stages", "gate_count", "seconds", "error"])
        for row in report.rows:
            writer.writerow([row.p, row.stages, row.gate_count,
                             f"{row.seconds:.4f}", row.error or ""])
        _write(out / "sweep.csv", buf.getvalue())
    else:
        doc = [
            {"p": row.p, "stages": row.stages, "gate_count": row.gate_count,
             "seconds": row.seconds, "error": row.error}
            for row in report.rows
        ]
        _write(out / "sweep.json", json.dumps(doc, indent=1))
    for row in report.rows:
        status = row.error or f"stages={row.stages} gates={row.gate_count}"
        print(f"p={row.p}: {status}")
    return 0


def _cmd_analyze(args) -> int:
    ps = load_patterns(args.patterns)
    prof = profile(ps)
    out = _outdir(args.out)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["pattern_index", "specified_bits", "specified_fraction"])
    for idx, cnt, frac in prof.per_pattern:
        writer.writerow([idx, cnt, f"{frac:.6f}"])
    _write(out / "patterns.csv", buf.getvalue())

    summary = {
        "count": ps.count,
        "width": ps.width,
        "total_fraction": prof.total_fraction,
        "entropy_bits": prof.entropy_bits,
        "entropy_per_position": prof.entropy_per_position,
    }
    if args.drop_fraction is not None or args.budget is not None:
        if args.drop_fraction is not None:
            plan = select_subset(ps, "drop-most-specified-prefix",
                                 fraction=args.drop_fraction,
                                 pilot_p=args.pilot_p,
                                 perm=parse_perm_spec(args.perm))
        else:
            plan = select_subset(ps, "greedy-by-specified-bits",
                                 budget=args.budget, pilot_p=args.pilot_p,
                                 perm=parse_perm_spec(args.perm))
        summary["subset"] = {
            "kept": list(plan.kept),
            "dropped": list(plan.dropped),
            "predicted_gate_count": plan.predicted_gate_count,
            "coverage_proxy": plan.coverage_proxy,
        }
    _write(out / "patterns.json", json.dumps(summary, indent=1, sort_keys=True))
    print(
        f"patterns={ps.count} width={ps.width}"
        f" specified={prof.total_fraction:.4f}"
        f" entropy_bits={prof.entropy_bits:.1f}"
    )
    return 0


def _cmd_compare(args) -> int:
    a = load_sequence(args.seq)
    perm = parse_perm_spec(args.perm)
    results = {
        name: synthesize(a, args.p, algorithm=name, perm=perm, fill=args.fill)
        for name in ("baseline", "presented")
    }
    out = _outdir(args.out)
    stem = Path(args.seq).stem
    for name, result in results.items():
        _write(out / f"{stem}.{name}.machine.json", machine_to_json(result.machine))
        print(result.summary())
    g1 = results["baseline"].gate_count
    g2 = results["presented"].gate_count
    reduction = 100.0 * (g1 - g2) / g1 if g1 else 0.0
    doc = {
        "g_baseline": g1, "g_presented": g2, "reduction_pct": reduction,
        "stages_baseline": results["baseline"].stages,
        "stages_presented": results["presented"].stages,
    }
    _write(out / f"{stem}.compare.json", json.dumps(doc, indent=1, sort_keys=True))
    print(f"reduction={reduction:.2f}%")
    if not all(result.verified for result in results.values()):
        return EXIT_VERIFY
    return 0


_COMMANDS = {
    "synth": _cmd_synth,
    "bench": _cmd_bench,
    "sweep": _cmd_sweep,
    "analyze": _cmd_analyze,
    "compare": _cmd_compare,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except VerificationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (SynthesisError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
