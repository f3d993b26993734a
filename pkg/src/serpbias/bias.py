"""Signed slant of one list and per-engine aggregates.

The slant of a list is the utility of the positive side minus the utility of
the negative side: pro minus against for stance-labeled lists, conservative
minus liberal for ideology-labeled lists. Positive values mean the list
favors the pro (or conservative) side. Per-engine aggregation offers the
signed mean, where opposite slants on different queries cancel, and the mean
absolute value, which keeps the magnitude but drops the direction; the two
are complementary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import InputError
from .measures import MeasureConfig, dcg_at, precision_at, rbp
from .model import EngineRun, IdeologyLabel, Label, RankedList, StanceLabel


@dataclass(frozen=True)
class BiasRecord:
    """Slant of one list under one measure."""

    query_id: str
    measure_kind: str
    beta: float


@dataclass(frozen=True)
class BiasSummary:
    """Per-engine aggregate: signed mean (mb), mean absolute (mab), per-query detail."""

    engine_id: str
    measure_kind: str
    mb: float
    mab: float
    per_query: tuple[BiasRecord, ...]


def label_sides(r: RankedList) -> tuple[Label, Label]:
    """Positive/negative label pair for a list: pro/against, or conservative/liberal
    when the documents carry ideology labels. Empty lists default to the stance pair
    (their slant is 0 either way)."""
    for doc in r.docs:
        if isinstance(doc.stance, IdeologyLabel):
            return IdeologyLabel.CONSERVATIVE, IdeologyLabel.LIBERAL
        break
    return StanceLabel.PRO, StanceLabel.AGAINST


def bias(r: RankedList, cfg: MeasureConfig) -> float:
    """Positive-side utility minus negative-side utility under cfg.measure_kind."""
    positive, negative = label_sides(r)
    if cfg.measure_kind == "precision":
        return precision_at(r, positive, cfg.cutoff) - precision_at(r, negative, cfg.cutoff)
    if cfg.measure_kind == "rbp":
        return rbp(r, positive, cfg.persistence) - rbp(r, negative, cfg.persistence)
    return dcg_at(r, positive, cfg.cutoff, cfg.log_base) - dcg_at(
        r, negative, cfg.cutoff, cfg.log_base
    )


def per_query_bias(run: EngineRun, cfg: MeasureConfig) -> list[BiasRecord]:
    """Slant of every list in the run, sorted by query_id for reproducibility."""
    if not run.lists:
        raise InputError(f"engine {run.engine_id!r} has an empty query set")
    return [
        BiasRecord(query_id, cfg.measure_kind, bias(run.lists[query_id], cfg))
        for query_id in run.query_ids()
    ]


def mean_bias(run: EngineRun, cfg: MeasureConfig) -> float:
    """Signed mean slant over the query set. 0 for an unbiased engine, but also
    0 when slants in opposite directions cancel out."""
    records = per_query_bias(run, cfg)
    return math.fsum(rec.beta for rec in records) / len(records)


def mean_abs_bias(run: EngineRun, cfg: MeasureConfig) -> float:
    """Mean absolute slant over the query set; immune to cancellation, blind to direction."""
    records = per_query_bias(run, cfg)
    return math.fsum(abs(rec.beta) for rec in records) / len(records)


def summarize_run(run: EngineRun, cfg: MeasureConfig) -> BiasSummary:
    """Per-query slants plus both aggregates for one engine under one measure."""
    records = per_query_bias(run, cfg)
    n = len(records)
    return BiasSummary(
        engine_id=run.engine_id,
        measure_kind=cfg.measure_kind,
        mb=math.fsum(rec.beta for rec in records) / n,
        mab=math.fsum(abs(rec.beta) for rec in records) / n,
        per_query=tuple(records),
    )


def beta_max(measure_kind: str, cfg: MeasureConfig, list_len: int) -> float:
    """Tight upper bound on |bias| for a list of the given length.

    Attained by a list entirely labeled on one side: 1 for precision,
    1 - p**len for RBP, and the truncated discount sum for DCG.
    """
    kind_cfg = cfg if cfg.measure_kind == measure_kind else replace(cfg, measure_kind=measure_kind)
    if list_len < 0:
        raise InputError(f"list length must be >= 0, got {list_len}")
    if measure_kind == "precision":
        return 1.0
    if measure_kind == "rbp":
        return 1.0 - kind_cfg.persistence ** list_len
    return math.fsum(
        1.0 / math.log(i + 1, kind_cfg.log_base)
        for i in range(1, min(kind_cfg.cutoff, list_len) + 1)
    )
