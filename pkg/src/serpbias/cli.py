"""Command-line interface.

Subcommands: validate (parse and sanity-check a dataset), evaluate (full
bias report), compare (paired engine comparison only), baselines (rND/rKL/
rRD scores per list). Exit codes: 0 success, 1 input or validation error,
2 configuration error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace

from .dataset import Dataset, load_dataset
from .errors import ConfigError, InputError, MeasureUndefinedError
from .fairness import BASELINE_KINDS, BaselineConfig, baseline_score
from .measures import MeasureConfig
from .model import IdeologyLabel, StanceLabel, transform_list
from .report import (
    MODES,
    REPORT_FORMATS,
    ComparisonReport,
    evaluate,
    render_report,
    resolve_measures,
    to_json_text,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="serpbias",
        description="Quantify stance and ideological slant in ranked search results.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument("--input", required=True, help="JSONL dataset path, or - for stdin")
        p.add_argument(
            "--output", choices=REPORT_FORMATS, default="json", help="output format"
        )

    def add_measure_flags(p):
        p.add_argument("--measures", default="p,rbp,dcg", help="comma-separated: p, rbp, dcg")
        p.add_argument("--cutoff", type=int, default=10, help="cutoff for precision and DCG")
        p.add_argument("--persistence", type=float, default=0.8, help="RBP persistence")
        p.add_argument("--log-base", type=float, default=2.0, dest="log_base", help="DCG log base")
        p.add_argument("--mode", choices=MODES, default="stance", help="label space to measure")
        p.add_argument("--alpha", type=float, default=0.05, help="significance level")

    p_validate = sub.add_parser("validate", help="parse the dataset and report its shape")
    add_io(p_validate)

    p_evaluate = sub.add_parser("evaluate", help="per-engine slant, aggregates, and t-tests")
    add_io(p_evaluate)
    add_measure_flags(p_evaluate)

    p_compare = sub.add_parser("compare", help="paired t-tests between engines")
    add_io(p_compare)
    add_measure_flags(p_compare)

    p_base = sub.add_parser("baselines", help="rND/rKL/rRD scores per (engine, query)")
    add_io(p_base)
    p_base.add_argument("--baseline", choices=BASELINE_KINDS, default="rnd")
    p_base.add_argument("--step", type=int, default=10, help="evaluation-point spacing")
    p_base.add_argument("--mode", choices=MODES, default="stance", help="label space to measure")
    p_base.add_argument(
        "--g1",
        default=None,
        help="protected group label (default: pro, or conservative in ideology mode)",
    )
    return parser


def _cmd_validate(args) -> str:
    ds = load_dataset(args.input)
    info = {
        "engines": ds.engine_ids(),
        "n_queries": len(ds.query_table),
        "n_records": sum(len(run.lists) for run in ds.runs),
        "n_documents": ds.document_count(),
    }
    if args.output == "json":
        return to_json_text(info) + "\n"
    if args.output == "tsv":
        rows = ["field\tvalue"]
        rows.append("engines\t" + ",".join(info["engines"]))
        for key in ("n_queries", "n_records", "n_documents"):
            rows.append(f"{key}\t{info[key]}")
        return "\n".join(rows) + "\n"
    lines = ["# Dataset", ""]
    lines.append(f"- engines: {', '.join(info['engines'])}")
    lines.append(f"- queries: {info['n_queries']}")
    lines.append(f"- records: {info['n_records']}")
    lines.append(f"- documents: {info['n_documents']}")
    return "\n".join(lines) + "\n"


def _evaluation(args) -> tuple[Dataset, ComparisonReport]:
    ds = load_dataset(args.input)
    cfg = MeasureConfig(
        cutoff=args.cutoff, persistence=args.persistence, log_base=args.log_base
    )
    measures = resolve_measures(args.measures.split(","))
    rep = evaluate(ds, cfg, mode=args.mode, measures=measures, alpha=args.alpha)
    return ds, rep


def _cmd_evaluate(args) -> str:
    _, rep = _evaluation(args)
    return render_report(rep, args.output)


def _cmd_compare(args) -> str:
    ds, rep = _evaluation(args)
    if len(ds.runs) < 2:
        raise InputError("compare needs at least 2 engines in the dataset")
    trimmed = replace(rep, summaries=(), one_sample=())
    return render_report(trimmed, args.output)


def _default_g1(mode: str):
    return IdeologyLabel.CONSERVATIVE if mode == "ideology" else StanceLabel.PRO


def _parse_g1(mode: str, text: str):
    cls = IdeologyLabel if mode == "ideology" else StanceLabel
    try:
        return cls.from_str(text)
    except InputError as exc:
        raise ConfigError(f"invalid --g1: {exc}") from None


def _cmd_baselines(args) -> str:
    ds = load_dataset(args.input)
    cfg = BaselineConfig(step=args.step, kind=args.baseline)
    g1 = _default_g1(args.mode) if args.g1 is None else _parse_g1(args.mode, args.g1)
    scores = []
    summary = []
    for run in ds.runs:
        defined = []
        undefined = 0
        for query_id in run.query_ids():
            ranked = run.lists[query_id]
            if args.mode == "ideology":
                ranked = transform_list(ranked)
            row = {"engine": run.engine_id, "query_id": query_id}
            try:
                row["status"] = "ok"
                row["score"] = baseline_score(ranked, g1, cfg)
                row["detail"] = ""
                defined.append(row["score"])
            except (MeasureUndefinedError, InputError) as exc:
                row["status"] = "undefined"
                row["score"] = None
                row["detail"] = str(exc)
                undefined += 1
            scores.append(row)
        summary.append(
            {
                "engine": run.engine_id,
                "mean_score": math.fsum(defined) / len(defined) if defined else None,
                "defined": len(defined),
                "undefined": undefined,
            }
        )
    doc = {
        "mode": args.mode,
        "config": {"baseline": args.baseline, "step": args.step, "g1": str(g1)},
        "engines": ds.engine_ids(),
        "scores": scores,
        "summary": summary,
    }
    if args.output == "json":
        return to_json_text(doc) + "\n"
    if args.output == "tsv":
        rows = ["engine\tquery_id\tstatus\tscore\tdetail"]
        for row in scores:
            score = "" if row["score"] is None else repr(row["score"])
            rows.append(
                "\t".join([row["engine"], row["query_id"], row["status"], score, row["detail"]])
            )
        return "\n".join(rows) + "\n"
    lines = [f"# {args.baseline} baseline (step {args.step}, g1 = {g1})", ""]
    lines += ["| engine | query | status | score |", "| --- | --- | --- | --- |"]
    for row in scores:
        score = "" if row["score"] is None else format(row["score"], ".6g")
        lines.append(f"| {row['engine']} | {row['query_id']} | {row['status']} | {score} |")
    lines += ["", "| engine | mean score | defined | undefined |", "| --- | --- | --- | --- |"]
    for row in summary:
        mean = "" if row["mean_score"] is None else format(row["mean_score"], ".6g")
        lines.append(f"| {row['engine']} | {mean} | {row['defined']} | {row['undefined']} |")
    return "\n".join(lines) + "\n"


_COMMANDS = {
    "validate": _cmd_validate,
    "evaluate": _cmd_evaluate,
    "compare": _cmd_compare,
    "baselines": _cmd_baselines,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return 0


def run() -> None:
    raise SystemExit(main())
