"""Loading and validating labeled result-page datasets.

Input is UTF-8 JSON Lines, one object per (engine, query) pair:

    {"engine": "engine-a", "query_id": "q01", "query": "some topic",
     "leaning": "conservative",
     "docs": [{"rank": 1, "doc_id": "d1", "stance": "pro"}, ...]}

`leaning` is one of conservative / liberal / both_or_neither and `stance`
one of pro / neutral / against / not-relevant. Ranks must run contiguously
from 1 in the order given. Every engine must cover exactly the same set of
query ids, and a query's text and leaning must agree across engines. Lists
are ingested whole; cutoffs are applied by the measures, never here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Iterable, Union

from .errors import InputError
from .model import Document, EngineRun, LeaningLabel, RankedList, StanceLabel


@dataclass(frozen=True)
class Dataset:
    """All engine runs plus the shared query table (query_id -> text, leaning)."""

    runs: tuple[EngineRun, ...]
    query_table: dict[str, tuple[str, LeaningLabel]]

    def engine_ids(self) -> list[str]:
        return [run.engine_id for run in self.runs]

    def query_ids(self) -> list[str]:
        return sorted(self.query_table)

    def document_count(self) -> int:
        return sum(len(r) for run in self.runs for r in run.lists.values())


def _field(obj: dict, key: str, kind: type, line_no: int):
    if key not in obj:
        raise InputError(f"line {line_no}: missing field {key!r}")
    value = obj[key]
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise InputError(f"line {line_no}: field {key!r} must be an integer")
    elif not isinstance(value, kind):
        raise InputError(f"line {line_no}: field {key!r} must be a {kind.__name__}")
    return value


def _parse_record(obj: dict, line_no: int):
    engine = _field(obj, "engine", str, line_no)
    query_id = _field(obj, "query_id", str, line_no)
    query_text = _field(obj, "query", str, line_no)
    leaning_text = _field(obj, "leaning", str, line_no)
    raw_docs = _field(obj, "docs", list, line_no)
    try:
        leaning = LeaningLabel.from_str(leaning_text)
        docs = []
        for raw in raw_docs:
            if not isinstance(raw, dict):
                raise InputError("each docs entry must be an object")
            rank = _field(raw, "rank", int, line_no)
            doc_id = _field(raw, "doc_id", str, line_no)
            stance = StanceLabel.from_str(_field(raw, "stance", str, line_no))
            docs.append(Document(rank=rank, stance=stance, doc_id=doc_id))
        ranked = RankedList(engine_id=engine, query_id=query_id, leaning=leaning, docs=tuple(docs))
    except InputError as exc:
        if str(exc).startswith(f"line {line_no}:"):
            raise
        raise InputError(f"line {line_no}: {exc}") from None
    return engine, query_id, query_text, leaning, ranked


def parse_dataset(stream: Union[IO[str], Iterable[str]]) -> Dataset:
    """Parse and validate a JSON Lines dataset.

    Blank lines are skipped. Raises InputError, with the offending line
    number where one exists, on malformed JSON, missing or mistyped fields,
    unknown labels, rank gaps, duplicate doc ids, duplicate (engine, query)
    pairs, inconsistent query metadata, or query sets that differ across
    engines.
    """
    by_engine: dict[str, dict[str, RankedList]] = {}
    query_table: dict[str, tuple[str, LeaningLabel]] = {}
    n_records = 0
    for line_no, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise InputError(f"line {line_no}: malformed JSON: {exc.msg}") from None
        if not isinstance(obj, dict):
            raise InputError(f"line {line_no}: record must be a JSON object")
        engine, query_id, query_text, leaning, ranked = _parse_record(obj, line_no)
        lists = by_engine.setdefault(engine, {})
        if query_id in lists:
            raise InputError(
                f"line {line_no}: duplicate record for engine {engine!r}, query {query_id!r}"
            )
        lists[query_id] = ranked
        known = query_table.get(query_id)
        if known is None:
            query_table[query_id] = (query_text, leaning)
        elif known != (query_text, leaning):
            raise InputError(
                f"line {line_no}: query {query_id!r} disagrees with an earlier record "
                f"on its text or leaning"
            )
        n_records += 1
    if n_records == 0:
        raise InputError("no records in input")
    all_queries = set(query_table)
    for engine in sorted(by_engine):
        covered = set(by_engine[engine])
        if covered != all_queries:
            missing = sorted(all_queries - covered)
            raise InputError(
                f"engine {engine!r} is missing queries {missing}; "
                "all engines must cover the identical query set"
            )
    runs = tuple(
        EngineRun(engine_id=engine, lists=by_engine[engine]) for engine in sorted(by_engine)
    )
    return Dataset(runs=runs, query_table=query_table)


def load_dataset(path: str) -> Dataset:
    """Read a dataset from a file path, or from stdin when path is '-'."""
    if path == "-":
        import sys

        return parse_dataset(sys.stdin)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse_dataset(handle)
    except OSError as exc:
        raise InputError(f"cannot read {path!r}: {exc.strerror or exc}") from None
