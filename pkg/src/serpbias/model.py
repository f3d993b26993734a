"""Label vocabularies and the ranked-result data model.

A result page is a RankedList of labeled documents for one (engine, query)
pair; an EngineRun collects one list per query for a single engine. Each
document carries a stance toward the query's controversial topic, each query
carries an ideological leaning, and the two combine into per-document
ideology labels when slant is measured on the conservative/liberal axis.

All types are immutable after construction and every function here is pure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Union

from .errors import InputError


class StanceLabel(enum.Enum):
    """Document stance toward the query topic."""

    PRO = "pro"
    NEUTRAL = "neutral"
    AGAINST = "against"
    NOT_RELEVANT = "not-relevant"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_str(cls, text: str) -> "StanceLabel":
        return _parse_label(cls, text, "stance")


class LeaningLabel(enum.Enum):
    """Ideological leaning of a query topic."""

    CONSERVATIVE = "conservative"
    LIBERAL = "liberal"
    BOTH_OR_NEITHER = "both_or_neither"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_str(cls, text: str) -> "LeaningLabel":
        return _parse_label(cls, text, "leaning")


class IdeologyLabel(enum.Enum):
    """Per-document ideology derived from (query leaning, document stance).

    EXCLUDED only arises for documents of both-or-neither queries, which have
    no side to credit.
    """

    CONSERVATIVE = "conservative"
    LIBERAL = "liberal"
    NEUTRAL = "neutral"
    NOT_RELEVANT = "not-relevant"
    EXCLUDED = "excluded"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_str(cls, text: str) -> "IdeologyLabel":
        return _parse_label(cls, text, "ideology")


Label = Union[StanceLabel, IdeologyLabel]


def _parse_label(cls, text, what):
    for member in cls:
        if member.value == text:
            return member
    valid = ", ".join(m.value for m in cls)
    raise InputError(f"unknown {what} label {text!r} (expected one of: {valid})")


@dataclass(frozen=True)
class Document:
    """One retrieved document: 1-based rank, its label, and an opaque id."""

    rank: int
    stance: Label
    doc_id: str

    def __post_init__(self):
        if self.rank < 1:
            raise InputError(f"document rank must be >= 1, got {self.rank}")


@dataclass(frozen=True)
class RankedList:
    """The ranked documents one engine returned for one query.

    Ranks must be contiguous 1..len(docs) in ascending order and doc_ids must
    be unique within the list. Empty lists are legal (a failed crawl still
    counts as a result page).
    """

    engine_id: str
    query_id: str
    leaning: LeaningLabel
    docs: tuple[Document, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "docs", tuple(self.docs))
        for position, doc in enumerate(self.docs, start=1):
            if doc.rank != position:
                raise InputError(
                    f"rank gap in list ({self.engine_id}, {self.query_id}): "
                    f"expected rank {position}, got {doc.rank}"
                )
        ids = [doc.doc_id for doc in self.docs]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise InputError(
                f"duplicate doc_id in list ({self.engine_id}, {self.query_id}): {dupes}"
            )

    def __len__(self) -> int:
        return len(self.docs)


@dataclass(frozen=True)
class EngineRun:
    """One engine's lists over the whole query set, keyed by query_id."""

    engine_id: str
    lists: dict[str, RankedList]

    def __post_init__(self):
        object.__setattr__(self, "lists", dict(self.lists))
        for query_id, ranked in self.lists.items():
            if ranked.engine_id != self.engine_id:
                raise InputError(
                    f"list for query {query_id!r} belongs to engine "
                    f"{ranked.engine_id!r}, not {self.engine_id!r}"
                )
            if ranked.query_id != query_id:
                raise InputError(
                    f"list keyed {query_id!r} carries query_id {ranked.query_id!r}"
                )

    def query_ids(self) -> list[str]:
        return sorted(self.lists)


_PRO_SIDE = {
    LeaningLabel.CONSERVATIVE: IdeologyLabel.CONSERVATIVE,
    LeaningLabel.LIBERAL: IdeologyLabel.LIBERAL,
}
_AGAINST_SIDE = {
    LeaningLabel.CONSERVATIVE: IdeologyLabel.LIBERAL,
    LeaningLabel.LIBERAL: IdeologyLabel.CONSERVATIVE,
}


def transform_stance_to_ideology(leaning: LeaningLabel, stance: StanceLabel) -> IdeologyLabel:
    """Map one (query leaning, document stance) pair to an ideology label.

    A pro document on a conservative topic carries conservative content and
    an against document carries liberal content; the sides swap for liberal
    topics. Neutral and not-relevant stances pass through unchanged, and
    documents of both-or-neither queries come back EXCLUDED.
    """
    if stance is StanceLabel.NEUTRAL:
        return IdeologyLabel.NEUTRAL
    if stance is StanceLabel.NOT_RELEVANT:
        return IdeologyLabel.NOT_RELEVANT
    if leaning is LeaningLabel.BOTH_OR_NEITHER:
        return IdeologyLabel.EXCLUDED
    side = _PRO_SIDE if stance is StanceLabel.PRO else _AGAINST_SIDE
    return side[leaning]


def transform_list(r: RankedList) -> RankedList:
    """Relabel a stance list with ideology labels, keeping length and ranks.

    EXCLUDED documents are stored as NOT_RELEVANT so they keep their rank
    position while contributing nothing to any measure.
    """
    docs = []
    for doc in r.docs:
        ideology = transform_stance_to_ideology(r.leaning, doc.stance)
        if ideology is IdeologyLabel.EXCLUDED:
            ideology = IdeologyLabel.NOT_RELEVANT
        docs.append(replace(doc, stance=ideology))
    return replace(r, docs=tuple(docs))


_MIRROR = {
    StanceLabel.PRO: StanceLabel.AGAINST,
    StanceLabel.AGAINST: StanceLabel.PRO,
    IdeologyLabel.CONSERVATIVE: IdeologyLabel.LIBERAL,
    IdeologyLabel.LIBERAL: IdeologyLabel.CONSERVATIVE,
}


def mirror(r: RankedList) -> RankedList:
    """Swap the two opposing labels (pro/against or conservative/liberal).

    Everything else is left alone, so mirror(mirror(r)) == r.
    """
    docs = tuple(
        replace(doc, stance=_MIRROR.get(doc.stance, doc.stance)) for doc in r.docs
    )
    return replace(r, docs=docs)
