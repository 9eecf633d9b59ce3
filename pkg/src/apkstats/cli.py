"""Command-line interface.

Subcommands: baseline, scenarios, simulate, enumerate, hist, evaluate.
All output is deterministic given the flags (including --seed); exit code 0
means no error and, for ``scenarios --check``, no deviation from the
reference values.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .closed_form import Model, WorModel, WrModel, baseline, paired_normalization
from .enumeration import ExactDistribution, exact_wor, exact_wr
from .evaluation import AutoWor, AutoWr, evaluate, parse_qrels, parse_run
from .metrics import Normalization
from .sampling import HistogramData, histogram, monte_carlo
from .scenarios import (
    CHECK_TOLERANCE,
    DEFAULT_GRID,
    REFERENCE_MOMENTS,
    check_grid,
    load_grid,
    scenario_moments,
)


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _add_model_flags(parser: argparse.ArgumentParser, exclusive: bool = True) -> None:
    target = parser.add_mutually_exclusive_group(required=True) if exclusive else parser
    target.add_argument(
        "--wor",
        nargs=2,
        type=int,
        metavar=("N", "M"),
        help="fixed-m model: N items, M of them relevant",
    )
    target.add_argument(
        "--wr",
        type=float,
        metavar="P",
        help="Bernoulli model: each item relevant with probability P",
    )


def _add_norm_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--norm",
        choices=[n.value for n in Normalization],
        default=None,
        help="AP@k normalization (default: the one paired with the model)",
    )


def _add_format_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=["text", "structured"],
        default="text",
        help="text for humans, structured for JSON on stdout",
    )


def _model_from_args(args: argparse.Namespace) -> Model:
    if args.wor is not None:
        n, m = args.wor
        return WorModel(n, m)
    return WrModel(args.wr)


def _resolve_norm(args: argparse.Namespace, model: Model) -> Normalization:
    if args.norm is None:
        return paired_normalization(model)
    return Normalization(args.norm)


def _write_csv(path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _cmd_baseline(args: argparse.Namespace) -> int:
    model = _model_from_args(args)
    moments = baseline(model, args.k)
    if args.format == "structured":
        print(
            json.dumps(
                {
                    "model": model.describe(),
                    "k": args.k,
                    "mean": moments.mean,
                    "variance": moments.variance,
                },
                indent=2,
            )
        )
    else:
        print(f"model:    {model.describe()}")
        print(f"k:        {args.k}")
        print(f"mean:     {_fmt(moments.mean)}")
        print(f"variance: {_fmt(moments.variance)}")
    return 0


def _cmd_scenarios(args: argparse.Namespace) -> int:
    grid = load_grid(args.config) if args.config else DEFAULT_GRID
    rows = []
    for scenario in grid:
        wor, wr = scenario_moments(scenario)
        rows.append((scenario, wor, wr))

    if args.format == "structured":
        payload = [
            {
                "label": s.label,
                "n": s.n,
                "m": s.m,
                "p": s.p,
                "k": s.k,
                "wor_mean": wor.mean,
                "wr_mean": wr.mean,
                "wor_variance": wor.variance,
                "wr_variance": wr.variance,
            }
            for s, wor, wr in rows
        ]
        print(json.dumps(payload, indent=2))
    else:
        print(
            f"{'label':<8}{'n':>5}{'m':>5}{'p':>7}{'k':>5}"
            f"{'WOR mean':>12}{'WR mean':>12}{'WOR var':>12}{'WR var':>12}"
        )
        for s, wor, wr in rows:
            print(
                f"{s.label:<8}{s.n:>5}{s.m:>5}{s.p:>7.2f}{s.k:>5}"
                f"{_fmt(wor.mean):>12}{_fmt(wr.mean):>12}"
                f"{_fmt(wor.variance):>12}{_fmt(wr.variance):>12}"
            )

    if not args.check:
        return 0
    deviations = check_grid(grid, REFERENCE_MOMENTS, CHECK_TOLERANCE)
    if not deviations:
        print(f"check: all values within {CHECK_TOLERANCE:g} of the reference")
        return 0
    for dev in deviations:
        print(
            f"check: {dev.label} {dev.column}: computed {dev.computed:.7f} "
            f"deviates from reference {dev.reference:.5f} by {dev.difference:.2e}"
        )
    return 1


def _cmd_simulate(args: argparse.Namespace) -> int:
    model = _model_from_args(args)
    norm = _resolve_norm(args, model)
    moments = monte_carlo(model, args.k, norm, args.samples, args.seed)
    analytic = None
    if norm is paired_normalization(model):
        analytic = baseline(model, args.k)
    if args.format == "structured":
        payload = {
            "model": model.describe(),
            "k": args.k,
            "norm": norm.value,
            "n": moments.n,
            "seed": args.seed,
            "sample_mean": moments.mean,
            "sample_variance": moments.variance,
            "std_error": moments.std_error,
            "analytic_mean": analytic.mean if analytic else None,
            "analytic_variance": analytic.variance if analytic else None,
        }
        print(json.dumps(payload, indent=2))
        return 0
    print(f"model:           {model.describe()}")
    print(f"k:               {args.k}")
    print(f"norm:            {norm.value}")
    print(f"samples:         {moments.n}")
    print(f"seed:            {args.seed}")
    print(f"sample mean:     {_fmt(moments.mean)}")
    print(f"sample variance: {_fmt(moments.variance)}")
    print(f"std error:       {_fmt(moments.std_error)}")
    if analytic is not None:
        print(f"analytic mean:     {_fmt(analytic.mean)}")
        print(f"analytic variance: {_fmt(analytic.variance)}")
    else:
        print("analytic moments: not available for this model/norm pairing")
    return 0


def _distribution_rows(dist: ExactDistribution):
    return [(value, prob) for value, prob in dist.support]


def _cmd_enumerate(args: argparse.Namespace) -> int:
    model = _model_from_args(args)
    norm = _resolve_norm(args, model)
    if isinstance(model, WorModel):
        dist = exact_wor(model.n, model.m, args.k, norm)
    else:
        dist = exact_wr(model.p, args.k, norm)
    rows = _distribution_rows(dist)
    if args.out:
        _write_csv(args.out, ["ap_value", "probability"], rows)
        print(f"wrote {len(rows)} support points to {args.out}")
        print(f"mean:     {_fmt(dist.mean)}")
        print(f"variance: {_fmt(dist.variance)}")
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["ap_value", "probability"])
        writer.writerows(rows)
    return 0


def _hist_out_path(out: str, suffix: str, multiple: bool) -> Path:
    path = Path(out)
    if not multiple:
        return path
    return path.with_name(f"{path.stem}_{suffix}{path.suffix}")


def _cmd_hist(args: argparse.Namespace) -> int:
    if args.wor is None and args.wr is None:
        raise ValueError("hist needs --wor and/or --wr")
    models: list[tuple[str, Model]] = []
    if args.wor is not None:
        models.append(("wor", WorModel(args.wor[0], args.wor[1])))
    if args.wr is not None:
        models.append(("wr", WrModel(args.wr)))
    datasets: list[HistogramData] = []
    for suffix, model in models:
        norm = _resolve_norm(args, model)
        data = histogram(model, args.k, norm, args.samples, args.seed, args.bins)
        datasets.append(data)
        rows = [
            (lo, hi, count)
            for lo, hi, count in zip(data.bin_edges[:-1], data.bin_edges[1:], data.counts)
        ]
        out_path = _hist_out_path(args.out, suffix, len(models) > 1)
        _write_csv(out_path, ["bin_lo", "bin_hi", "count"], rows)
        print(f"wrote {out_path} ({data.model_label}, n={data.n})")
    if args.plot:
        from .plotting import render_histograms

        render_histograms(datasets, args.plot, title=f"AP@{args.k} under random rankings")
        print(f"wrote {args.plot}")
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    if args.auto_wor is not None:
        choice = AutoWor(args.auto_wor)
        default_norm = Normalization.BY_MIN_MK
    elif args.auto_wr:
        choice = AutoWr()
        default_norm = Normalization.BY_K
    elif args.wor is not None:
        choice = WorModel(args.wor[0], args.wor[1])
        default_norm = Normalization.BY_MIN_MK
    else:
        choice = WrModel(args.wr)
        default_norm = Normalization.BY_K
    norm = Normalization(args.norm) if args.norm else default_norm

    run = parse_run(args.run)
    judgments = parse_qrels(args.qrels)
    report = evaluate(run, judgments, args.k, norm, choice)

    if args.out:
        Path(args.out).write_text(
            json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8"
        )
    if args.format == "structured":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.render_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apkstats",
        description="AP@k / MAP@k metrics and their chance baselines under random rankings",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("baseline", help="closed-form mean and variance of AP@k")
    _add_model_flags(p)
    p.add_argument("--k", type=int, required=True, help="rank cutoff")
    _add_format_flag(p)
    p.set_defaults(handler=_cmd_baseline)

    p = sub.add_parser("scenarios", help="moment table for a scenario grid")
    p.add_argument("--config", help="JSON file with a custom scenario grid")
    p.add_argument(
        "--check",
        action="store_true",
        help="compare computed values against the embedded reference; "
        "nonzero exit on deviation",
    )
    _add_format_flag(p)
    p.set_defaults(handler=_cmd_scenarios)

    p = sub.add_parser("simulate", help="Monte Carlo sample moments of AP@k")
    _add_model_flags(p)
    p.add_argument("--k", type=int, required=True, help="rank cutoff")
    p.add_argument(
        "-n", "--samples", type=int, default=100_000, help="number of sampled rankings"
    )
    p.add_argument("--seed", type=int, default=0, help="stream seed")
    _add_norm_flag(p)
    _add_format_flag(p)
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("enumerate", help="exact AP@k distribution by brute force")
    _add_model_flags(p)
    p.add_argument("--k", type=int, required=True, help="rank cutoff (max 24)")
    _add_norm_flag(p)
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("hist", help="histogram of sampled AP@k values as CSV")
    _add_model_flags(p, exclusive=False)
    p.add_argument("--k", type=int, required=True, help="rank cutoff")
    p.add_argument(
        "-n", "--samples", type=int, default=100_000, help="number of sampled rankings"
    )
    p.add_argument("--seed", type=int, default=0, help="stream seed")
    p.add_argument("--bins", type=int, default=40, help="number of equal-width bins")
    _add_norm_flag(p)
    p.add_argument("--out", required=True, help="CSV output path (suffixed per model)")
    p.add_argument("--plot", help="also render the histogram(s) to this image file")
    p.set_defaults(handler=_cmd_hist)

    p = sub.add_parser("evaluate", help="score a run against qrels and the chance baseline")
    p.add_argument("--run", required=True, help="six-column run file")
    p.add_argument("--qrels", required=True, help="four-column qrels file")
    p.add_argument("--k", type=int, required=True, help="rank cutoff")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--wor", nargs=2, type=int, metavar=("N", "M"), help="explicit fixed-m baseline"
    )
    group.add_argument("--wr", type=float, metavar="P", help="explicit Bernoulli baseline")
    group.add_argument(
        "--auto-wor",
        type=int,
        metavar="N",
        help="fixed-m baseline from each user's judged-relevant count, pool size N",
    )
    group.add_argument(
        "--auto-wr",
        action="store_true",
        help="Bernoulli baseline with p pooled from the observed top-k prevalence",
    )
    _add_norm_flag(p)
    p.add_argument("--out", help="write the structured report (JSON) to this path")
    _add_format_flag(p)
    p.set_defaults(handler=_cmd_evaluate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
