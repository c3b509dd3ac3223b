"""Command-line front end.

Five subcommands:

* ``table1``   - closed-form information-equivalence table: how many raw
  samples per interval the max / mix / min statistics are worth, over a
  grid of group sizes.
* ``compare``  - plug-in approximation vs exact quadrature for the
  maximum's information, optionally with an empirical column.
* ``simulate`` - run a seeded study and write a tidy CSV plus a JSON
  summary for external plotting.
* ``estimate`` - estimate theta from a CSV of per-interval extremes.
* ``astat``    - evaluate the max-vs-min information balance A.

Tables print with 6 significant digits; CSV and JSON carry full
precision. Commands are deterministic given their flags; ``simulate``
refuses to run without an explicit ``--seed``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .distributions import DistributionModel, Exponential, Uniform
from .estimators import estimate_max, estimate_min, estimate_mix
from .exceptions import ExtremeFimError
from .extremes import ExtremeDataset
from .fim import a_statistic, crlb, fim_min_exact, fim_opt, fim_plugin, fim_quadrature, l_equivalent
from .montecarlo import StudyConfig, StudyReport, run_study

_TABLE1_DEFAULT_K = (5, 10, 25, 50, 100, 1000)
_COMPARE_DEFAULT_K = (5, 10, 20, 30, 40, 50, 100, 200)
_SIMULATE_DEFAULT_K = (5, 10, 15, 20, 25, 30, 40, 50, 75, 100)
_MISSING = "--"

_MODELS: dict[str, type[DistributionModel]] = {
    "exponential": Exponential,
    "uniform": Uniform,
}


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    return f"{value:.6g}"


def _print_table(header: list[str], rows: list[list], stream) -> None:
    cells = [[_fmt(c) for c in row] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) for i, h in enumerate(header)]
    print("  ".join(h.rjust(w) for h, w in zip(header, widths)), file=stream)
    for row in cells:
        print("  ".join(c.rjust(w) for c, w in zip(row, widths)), file=stream)


def cmd_table1(args) -> int:
    model = Exponential()
    rows = []
    for K in args.K_list:
        row: list = [K]
        try:
            row.append(l_equivalent(fim_opt(model, args.theta, args.N, K)))
        except ExtremeFimError:
            row.append(_MISSING)
        try:
            row.append(l_equivalent(fim_min_exact(model, args.theta, args.N, K)))
        except ExtremeFimError:
            row.append(_MISSING)
        try:
            le_max = l_equivalent(fim_plugin(model, "max", args.theta, args.N, K))
            row.append(le_max)
        except ExtremeFimError:
            le_max = None
            row.append(_MISSING)
        try:
            le_mix = l_equivalent(fim_plugin(model, "mix", args.theta, args.N, K))
            row.append(le_mix)
        except ExtremeFimError:
            le_mix = None
            row.append(_MISSING)
        row.append(le_mix - le_max if le_max is not None and le_mix is not None else _MISSING)
        rows.append(row)
    _print_table(["K", "opt", "min", "max", "mix", "delta"], rows, sys.stdout)
    return 0


def cmd_compare(args) -> int:
    model = Exponential()
    header = ["K", "plug_in", "quadrature_exact"]
    report: StudyReport | None = None
    if args.simulate:
        config = StudyConfig(
            theta=args.theta,
            N=args.N,
            K_list=tuple(args.K_list),
            trials=args.trials,
            base_seed=args.seed,
            variants=("max",),
            overlays=(),
        )
        report = run_study(config)
        header.append("empirical")
    rows = []
    for K in args.K_list:
        row: list = [K]
        try:
            row.append(l_equivalent(fim_plugin(model, "max", args.theta, 1, K)))
        except ExtremeFimError:
            row.append(_MISSING)
        try:
            row.append(l_equivalent(fim_quadrature(model, "max", args.theta, 1, K)))
        except ExtremeFimError:
            row.append(_MISSING)
        if report is not None:
            row.append(report.cells[(K, "max")].inv_var_normalized)
        rows.append(row)
    _print_table(header, rows, sys.stdout)
    return 0


def _report_json(report: StudyReport) -> dict:
    results = []
    for K in report.K_list:
        for variant in report.variants:
            stats = report.cells[(K, variant)]
            results.append(
                {
                    "k": K,
                    "variant": variant,
                    "mean_theta_hat": stats.mean_theta_hat,
                    "var_theta_hat": stats.var_theta_hat,
                    "inv_var_normalized": stats.inv_var_normalized,
                    "mean_bias": stats.mean_bias,
                    "crlb": report.overlays.get((K, variant), {}),
                }
            )
    return {
        "theta": report.theta,
        "n": report.N,
        "trials": report.trials,
        "base_seed": report.base_seed,
        "k_list": list(report.K_list),
        "variants": list(report.variants),
        "results": results,
    }


def write_report_csv(report: StudyReport, path) -> None:
    """Write the tidy rows (K, variant, source, value) at full precision."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["K", "variant", "source", "value"])
        for K, variant, source, value in report.to_rows():
            writer.writerow([K, variant, source, repr(value)])


def read_tidy_csv(path) -> list[tuple[int, str, str, float]]:
    """Parse a tidy study CSV back into (K, variant, source, value) rows."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for rec in reader:
            rows.append(
                (int(rec["K"]), rec["variant"], rec["source"], float(rec["value"]))
            )
    return rows


def cmd_simulate(args) -> int:
    variants = ("opt", "min", "max", "mix") + (("partial",) if args.L else ())
    config = StudyConfig(
        theta=args.theta,
        N=args.N,
        K_list=tuple(args.K_list),
        trials=args.trials,
        base_seed=args.seed,
        variants=variants,
        L=args.L,
    )
    report = run_study(config)
    csv_path = Path(args.out)
    json_path = csv_path.with_suffix(".json")
    try:
        write_report_csv(report, csv_path)
        with open(json_path, "w") as fh:
            json.dump(_report_json(report), fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {csv_path} and {json_path}")
    return 0


def _read_extremes_csv(path, K: int) -> ExtremeDataset:
    expected = ["interval_id", "y_min", "y_max"]
    pairs: list[tuple[float, float]] = []
    seen_ids: set[int] = set()
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != expected:
            raise ExtremeFimError(
                f"expected CSV header {','.join(expected)!r}, got {reader.fieldnames}"
            )
        for rec in reader:
            line = reader.line_num
            try:
                interval_id = int(rec["interval_id"])
                y_min = float(rec["y_min"])
                y_max = float(rec["y_max"])
            except (TypeError, ValueError) as exc:
                raise ExtremeFimError(f"line {line}: malformed row: {exc}") from None
            if interval_id in seen_ids:
                raise ExtremeFimError(f"line {line}: duplicate interval_id {interval_id}")
            seen_ids.add(interval_id)
            if y_min > y_max:
                raise ExtremeFimError(
                    f"line {line}: y_min={y_min} exceeds y_max={y_max}"
                )
            pairs.append((y_min, y_max))
    if not pairs:
        raise ExtremeFimError("input file contains no data rows")
    return ExtremeDataset.from_pairs(K, pairs)


def cmd_estimate(args) -> int:
    dataset = _read_extremes_csv(args.input, args.K)
    estimator = {"min": estimate_min, "max": estimate_max, "mix": estimate_mix}[args.variant]
    estimate = estimator(dataset)
    plugin = fim_plugin(Exponential(), args.variant, estimate.theta_hat, dataset.N, dataset.K)
    out = {
        "variant": estimate.variant,
        "theta_hat": estimate.theta_hat,
        "n": dataset.N,
        "k": dataset.K,
        "crlb_plugin": crlb(plugin),
        "low_accuracy": plugin.low_accuracy,
        "optimizer": None,
    }
    if estimate.optimizer is not None:
        out["optimizer"] = {
            "iterations": estimate.optimizer.iterations,
            "bracket": list(estimate.optimizer.bracket),
            "converged": estimate.optimizer.converged,
            "loglik_at_opt": estimate.optimizer.loglik_at_opt,
        }
    if estimate.raw_mean_min is not None:
        out["raw_mean_min"] = estimate.raw_mean_min
    print(json.dumps(out, indent=2))
    return 0


def cmd_astat(args) -> int:
    model = _MODELS[args.dist]()
    stat = a_statistic(model, args.theta, args.K)
    j_min = fim_plugin(model, "min", args.theta, 1, args.K)
    j_max = fim_plugin(model, "max", args.theta, 1, args.K)
    out = {
        "a": stat.value,
        "sign_class": stat.sign_class,
        "j_plugin_min": j_min.value,
        "j_plugin_max": j_max.value,
        "k": args.K,
        "theta": args.theta,
    }
    print(json.dumps(out, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extremefim",
        description="Information bounds and estimation from per-interval extremes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser(
        "table1", help="information-equivalence table of the extreme statistics"
    )
    p_table.add_argument("--K-list", dest="K_list", type=int, nargs="+", default=list(_TABLE1_DEFAULT_K))
    p_table.add_argument("--theta", type=float, default=1.0)
    p_table.add_argument("--N", type=int, default=1)
    p_table.set_defaults(func=cmd_table1)

    p_cmp = sub.add_parser(
        "compare", help="plug-in vs quadrature information of the maximum"
    )
    p_cmp.add_argument("--K-list", dest="K_list", type=int, nargs="+", default=list(_COMPARE_DEFAULT_K))
    p_cmp.add_argument("--theta", type=float, default=1.0)
    p_cmp.add_argument("--simulate", action="store_true", help="add an empirical column")
    p_cmp.add_argument("--trials", type=int, default=10000)
    p_cmp.add_argument("--N", type=int, default=100)
    p_cmp.add_argument("--seed", type=int, default=None)
    p_cmp.set_defaults(func=cmd_compare)

    p_sim = sub.add_parser("simulate", help="run a seeded study, write CSV + JSON")
    p_sim.add_argument("--K-list", dest="K_list", type=int, nargs="+", default=list(_SIMULATE_DEFAULT_K))
    p_sim.add_argument("--theta", type=float, default=1.0)
    p_sim.add_argument("--N", type=int, default=100)
    p_sim.add_argument("--trials", type=int, default=10000)
    p_sim.add_argument("--seed", type=int, required=True, help="base seed (no silent default)")
    p_sim.add_argument("--L", type=int, default=None, help="also estimate from L retained samples")
    p_sim.add_argument("--out", type=str, default="study.csv")
    p_sim.set_defaults(func=cmd_simulate)

    p_est = sub.add_parser("estimate", help="estimate theta from an extreme-log CSV")
    p_est.add_argument("input", help="CSV with header interval_id,y_min,y_max")
    p_est.add_argument("--K", type=int, required=True, help="group size behind each interval")
    p_est.add_argument("--variant", choices=("min", "max", "mix"), default="mix")
    p_est.set_defaults(func=cmd_estimate)

    p_ast = sub.add_parser("astat", help="max-vs-min information balance")
    p_ast.add_argument("--dist", choices=sorted(_MODELS), required=True)
    p_ast.add_argument("--theta", type=float, default=1.0)
    p_ast.add_argument("--K", type=int, default=25)
    p_ast.set_defaults(func=cmd_astat)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "simulate", False) and args.seed is None:
        parser.error("--simulate requires --seed (results must be reproducible)")
    try:
        return args.func(args)
    except ExtremeFimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
