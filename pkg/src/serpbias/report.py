"""Evaluation protocol and report rendering.

`evaluate` runs the whole pipeline over a validated dataset: per-query slant
under each requested measure, per-engine MB/MAB aggregates, a one-sample
t-test per (engine, measure) against a true mean of zero, and a paired
t-test per engine pair. `render_report` serializes the result as JSON
(floats at 17 significant digits, lossless to re-parse), flat TSV, or
Markdown; identical reports always render to identical bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .bias import BiasRecord, BiasSummary, summarize_run
from .dataset import Dataset
from .errors import ConfigError, DegenerateSampleError
from .measures import MEASURE_KINDS, MeasureConfig
from .model import EngineRun, transform_list
from .stats import TTestResult, one_sample_ttest, paired_ttest

MODES = ("stance", "ideology")
REPORT_FORMATS = ("json", "tsv", "markdown")

STATUS_OK = "ok"
STATUS_DEGENERATE = "degenerate_certain"
STATUS_SKIPPED = "skipped"


@dataclass(frozen=True)
class ReportConfig:
    """Echo of the evaluation parameters, embedded in every report."""

    cutoff: int
    persistence: float
    log_base: float
    alpha: float
    measures: tuple[str, ...]


@dataclass(frozen=True)
class TestEntry:
    """One t-test slot: a result, or the reason there is none."""

    engine: str
    engine_b: Optional[str]
    measure_kind: str
    status: str
    detail: str = ""
    result: Optional[TTestResult] = None


@dataclass(frozen=True)
class ComparisonReport:
    mode: str
    config: ReportConfig
    engines: tuple[str, ...]
    n_queries: int
    warnings: tuple[str, ...]
    summaries: tuple[BiasSummary, ...]
    one_sample: tuple[TestEntry, ...]
    paired: tuple[TestEntry, ...]

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "config": {
                "cutoff": self.config.cutoff,
                "persistence": self.config.persistence,
                "log_base": self.config.log_base,
                "alpha": self.config.alpha,
                "measures": list(self.config.measures),
            },
            "engines": list(self.engines),
            "n_queries": self.n_queries,
            "warnings": list(self.warnings),
            "bias_summaries": [
                {
                    "engine": s.engine_id,
                    "measure": s.measure_kind,
                    "mb": s.mb,
                    "mab": s.mab,
                    "per_query": [
                        {"query_id": rec.query_id, "beta": rec.beta} for rec in s.per_query
                    ],
                }
                for s in self.summaries
            ],
            "one_sample_tests": [_test_dict(e) for e in self.one_sample],
            "paired_tests": [_test_dict(e) for e in self.paired],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ComparisonReport":
        cfg = data["config"]
        return cls(
            mode=data["mode"],
            config=ReportConfig(
                cutoff=int(cfg["cutoff"]),
                persistence=float(cfg["persistence"]),
                log_base=float(cfg["log_base"]),
                alpha=float(cfg["alpha"]),
                measures=tuple(cfg["measures"]),
            ),
            engines=tuple(data["engines"]),
            n_queries=int(data["n_queries"]),
            warnings=tuple(data["warnings"]),
            summaries=tuple(
                BiasSummary(
                    engine_id=s["engine"],
                    measure_kind=s["measure"],
                    mb=float(s["mb"]),
                    mab=float(s["mab"]),
                    per_query=tuple(
                        BiasRecord(rec["query_id"], s["measure"], float(rec["beta"]))
                        for rec in s["per_query"]
                    ),
                )
                for s in data["bias_summaries"]
            ),
            one_sample=tuple(_test_entry(e) for e in data["one_sample_tests"]),
            paired=tuple(_test_entry(e) for e in data["paired_tests"]),
        )


def _test_dict(entry: TestEntry) -> dict:
    out: dict = {"engine": entry.engine}
    if entry.engine_b is not None:
        out["engine_b"] = entry.engine_b
    out["measure"] = entry.measure_kind
    out["status"] = entry.status
    out["detail"] = entry.detail
    res = entry.result
    out["t_stat"] = res.t_stat if res else None
    out["df"] = res.df if res else None
    out["p_value"] = res.p_value if res else None
    out["sample_mean"] = res.sample_mean if res else None
    out["std_err"] = res.std_err if res else None
    out["reject_at"] = res.reject_at if res else None
    return out


def _test_entry(data: dict) -> TestEntry:
    result = None
    if data["t_stat"] is not None:
        result = TTestResult(
            t_stat=float(data["t_stat"]),
            df=int(data["df"]),
            p_value=float(data["p_value"]),
            sample_mean=float(data["sample_mean"]),
            std_err=float(data["std_err"]),
            reject_at=None if data["reject_at"] is None else float(data["reject_at"]),
        )
    return TestEntry(
        engine=data["engine"],
        engine_b=data.get("engine_b"),
        measure_kind=data["measure"],
        status=data["status"],
        detail=data["detail"],
        result=result,
    )


_MEASURE_ALIASES = {"p": "precision", "precision": "precision", "rbp": "rbp", "dcg": "dcg"}


def resolve_measures(names: Sequence[str]) -> tuple[str, ...]:
    """Map user-facing measure names (p, rbp, dcg) to kinds, sorted for stable output."""
    kinds = []
    for name in names:
        kind = _MEASURE_ALIASES.get(name.strip().lower())
        if kind is None:
            raise ConfigError(
                f"unknown measure {name!r} (expected one of: p, rbp, dcg)"
            )
        kinds.append(kind)
    return tuple(sorted(set(kinds)))


def evaluate(
    ds: Dataset,
    cfg: Optional[MeasureConfig] = None,
    mode: str = "stance",
    measures: Optional[Sequence[str]] = None,
    alpha: float = 0.05,
) -> ComparisonReport:
    """Run the full bias-evaluation protocol over a dataset.

    cfg supplies the measure parameters (its measure_kind is ignored);
    `measures` picks which utility measures to compute, defaulting to all
    three. In ideology mode every list is relabeled through its query's
    leaning before anything is measured. With fewer than two queries the
    statistical tests are skipped and flagged in the report warnings.
    """
    cfg = cfg if cfg is not None else MeasureConfig()
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r} (expected one of: {', '.join(MODES)})")
    if not 0.0 < alpha < 1.0:
        raise ConfigError(f"alpha must lie strictly between 0 and 1, got {alpha!r}")
    if measures is None:
        kinds = tuple(sorted(MEASURE_KINDS))
    else:
        kinds = tuple(sorted(set(measures)))
        for kind in kinds:
            if kind not in MEASURE_KINDS:
                raise ConfigError(
                    f"unknown measure kind {kind!r} "
                    f"(expected one of: {', '.join(MEASURE_KINDS)})"
                )

    runs = []
    for run in sorted(ds.runs, key=lambda r: r.engine_id):
        if mode == "ideology":
            lists = {qid: transform_list(r) for qid, r in run.lists.items()}
            run = EngineRun(engine_id=run.engine_id, lists=lists)
        runs.append(run)
    engines = tuple(run.engine_id for run in runs)
    n_queries = len(ds.query_table)

    warnings: list[str] = []
    summaries: list[BiasSummary] = []
    betas: dict[tuple[str, str], list[float]] = {}
    for run in runs:
        for kind in kinds:
            summary = summarize_run(run, replace(cfg, measure_kind=kind))
            summaries.append(summary)
            betas[(run.engine_id, kind)] = [rec.beta for rec in summary.per_query]

    stats_possible = n_queries >= 2
    if not stats_possible:
        warnings.append("fewer than 2 queries: statistical tests skipped")

    one_sample = []
    for run in runs:
        for kind in kinds:
            one_sample.append(
                _run_test(run.engine_id, None, kind, betas[(run.engine_id, kind)], None, alpha)
                if stats_possible
                else TestEntry(run.engine_id, None, kind, STATUS_SKIPPED, "fewer than 2 queries")
            )

    paired = []
    for i, run_a in enumerate(runs):
        for run_b in runs[i + 1 :]:
            for kind in kinds:
                paired.append(
                    _run_test(
                        run_a.engine_id,
                        run_b.engine_id,
                        kind,
                        betas[(run_a.engine_id, kind)],
                        betas[(run_b.engine_id, kind)],
                        alpha,
                    )
                    if stats_possible
                    else TestEntry(
                        run_a.engine_id,
                        run_b.engine_id,
                        kind,
                        STATUS_SKIPPED,
                        "fewer than 2 queries",
                    )
                )

    return ComparisonReport(
        mode=mode,
        config=ReportConfig(
            cutoff=cfg.cutoff,
            persistence=cfg.persistence,
            log_base=cfg.log_base,
            alpha=alpha,
            measures=kinds,
        ),
        engines=engines,
        n_queries=n_queries,
        warnings=tuple(warnings),
        summaries=tuple(summaries),
        one_sample=tuple(one_sample),
        paired=tuple(paired),
    )


def _run_test(engine, engine_b, kind, values_a, values_b, alpha) -> TestEntry:
    try:
        if values_b is None:
            result = one_sample_ttest(values_a, 0.0, alpha)
        else:
            result = paired_ttest(values_a, values_b, alpha)
    except DegenerateSampleError as exc:
        return TestEntry(engine, engine_b, kind, STATUS_DEGENERATE, str(exc))
    return TestEntry(engine, engine_b, kind, STATUS_OK, "", result)


# ---------------------------------------------------------------------------
# Rendering


def _float_text(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot render non-finite number {x!r}")
    out = format(x, ".17g")
    if "." not in out and "e" not in out and "E" not in out:
        out += ".0"
    return out


def to_json_text(value, indent: int = 0) -> str:
    """Deterministic JSON with floats at 17 significant digits."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _float_text(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = ",\n".join(inner + to_json_text(v, indent + 1) for v in value)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = ",\n".join(
            f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {to_json_text(v, indent + 1)}"
            for k, v in value.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    raise TypeError(f"cannot render {type(value).__name__} as JSON")


def report_from_json(text: str) -> ComparisonReport:
    """Inverse of the JSON rendering; numeric fields survive to full precision."""
    return ComparisonReport.from_dict(json.loads(text))


_TSV_HEADER = "section\tengine\tengine_b\tmeasure\tquery_id\tfield\tvalue"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _tsv_row(section, engine="", engine_b="", measure="", query_id="", field="", value=""):
    return "\t".join([section, engine, engine_b, measure, query_id, field, _cell(value)])


def _render_tsv(rep: ComparisonReport) -> str:
    rows = [_TSV_HEADER]
    rows.append(_tsv_row("config", field="mode", value=rep.mode))
    rows.append(_tsv_row("config", field="cutoff", value=rep.config.cutoff))
    rows.append(_tsv_row("config", field="persistence", value=rep.config.persistence))
    rows.append(_tsv_row("config", field="log_base", value=rep.config.log_base))
    rows.append(_tsv_row("config", field="alpha", value=rep.config.alpha))
    rows.append(_tsv_row("config", field="measures", value=",".join(rep.config.measures)))
    rows.append(_tsv_row("config", field="engines", value=",".join(rep.engines)))
    rows.append(_tsv_row("config", field="n_queries", value=rep.n_queries))
    for i, warning in enumerate(rep.warnings, start=1):
        rows.append(_tsv_row("warning", field=str(i), value=warning))
    for s in rep.summaries:
        rows.append(_tsv_row("summary", s.engine_id, "", s.measure_kind, field="mb", value=s.mb))
        rows.append(_tsv_row("summary", s.engine_id, "", s.measure_kind, field="mab", value=s.mab))
    for s in rep.summaries:
        for rec in s.per_query:
            rows.append(
                _tsv_row("beta", s.engine_id, "", s.measure_kind, rec.query_id, "beta", rec.beta)
            )
    for section, entries in (("one_sample", rep.one_sample), ("paired", rep.paired)):
        for e in entries:
            base = (section, e.engine, e.engine_b or "", e.measure_kind)
            rows.append(_tsv_row(*base, field="status", value=e.status))
            if e.detail:
                rows.append(_tsv_row(*base, field="detail", value=e.detail))
            if e.result is not None:
                res = e.result
                rows.append(_tsv_row(*base, field="t_stat", value=res.t_stat))
                rows.append(_tsv_row(*base, field="df", value=res.df))
                rows.append(_tsv_row(*base, field="p_value", value=res.p_value))
                rows.append(_tsv_row(*base, field="sample_mean", value=res.sample_mean))
                rows.append(_tsv_row(*base, field="std_err", value=res.std_err))
                rows.append(_tsv_row(*base, field="reject_at", value=res.reject_at))
    return "\n".join(rows) + "\n"


def _md_num(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".6g")
    return str(x)


def _render_markdown(rep: ComparisonReport) -> str:
    lines = ["# Search bias report", ""]
    lines.append(f"- mode: {rep.mode}")
    lines.append(f"- engines: {', '.join(rep.engines) if rep.engines else '(none)'}")
    lines.append(f"- queries: {rep.n_queries}")
    lines.append(f"- measures: {', '.join(rep.config.measures)}")
    lines.append(
        f"- cutoff: {rep.config.cutoff}, persistence: {_md_num(rep.config.persistence)}, "
        f"log base: {_md_num(rep.config.log_base)}, alpha: {_md_num(rep.config.alpha)}"
    )
    for warning in rep.warnings:
        lines.append(f"- warning: {warning}")
    if rep.summaries:
        lines += ["", "## Engine summaries", "", "| engine | measure | MB | MAB |", "| --- | --- | --- | --- |"]
        for s in rep.summaries:
            lines.append(f"| {s.engine_id} | {s.measure_kind} | {_md_num(s.mb)} | {_md_num(s.mab)} |")
    if rep.one_sample:
        lines += [
            "",
            "## One-sample t-tests (null: mean slant is 0)",
            "",
            "| engine | measure | status | t | df | p | mean | rejected at |",
            "| --- | --- | --- | --- | --- | --- | --- | --- |",
        ]
        for e in rep.one_sample:
            res = e.result
            lines.append(
                "| {} | {} | {} | {} | {} | {} | {} | {} |".format(
                    e.engine,
                    e.measure_kind,
                    e.status,
                    _md_num(res.t_stat if res else None),
                    _md_num(res.df if res else None),
                    _md_num(res.p_value if res else None),
                    _md_num(res.sample_mean if res else None),
                    _md_num(res.reject_at if res else None),
                )
            )
    if rep.paired:
        lines += [
            "",
            "## Paired t-tests (null: engines share one true mean)",
            "",
            "| engine A | engine B | measure | status | t | df | p | mean diff | rejected at |",
            "| --- | --- | --- | --- | --- | --- | --- | --- | --- |",
        ]
        for e in rep.paired:
            res = e.result
            lines.append(
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} |".format(
                    e.engine,
                    e.engine_b,
                    e.measure_kind,
                    e.status,
                    _md_num(res.t_stat if res else None),
                    _md_num(res.df if res else None),
                    _md_num(res.p_value if res else None),
                    _md_num(res.sample_mean if res else None),
                    _md_num(res.reject_at if res else None),
                )
            )
    if rep.summaries:
        lines += ["", "## Per-query slant", "", "| engine | measure | query | beta |", "| --- | --- | --- | --- |"]
        for s in rep.summaries:
            for rec in s.per_query:
                lines.append(
                    f"| {s.engine_id} | {s.measure_kind} | {rec.query_id} | {_md_num(rec.beta)} |"
                )
    return "\n".join(lines) + "\n"


def render_report(rep: ComparisonReport, fmt: str = "json") -> str:
    """Serialize a report; identical reports render to identical bytes."""
    if fmt == "json":
        return to_json_text(rep.to_dict()) + "\n"
    if fmt == "tsv":
        return _render_tsv(rep)
    if fmt == "markdown":
        return _render_markdown(rep)
    raise ConfigError(
        f"unknown output format {fmt!r} (expected one of: {', '.join(REPORT_FORMATS)})"
    )
