"""Positional utility measures restricted to one label.

Each measure scores how well a single ranked list serves a reader looking
for documents with a given label: precision counts the share of the top n,
rank-biased precision applies a geometric persistence model, and DCG applies
a logarithmic position discount. Ranks past the end of a short list simply
contribute nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError
from .model import Label, RankedList

MEASURE_KINDS = ("precision", "rbp", "dcg")

DEFAULT_CUTOFF = 10
DEFAULT_PERSISTENCE = 0.8
DEFAULT_LOG_BASE = 2.0


@dataclass(frozen=True)
class MeasureConfig:
    """Parameters shared by the utility measures.

    cutoff bounds precision and DCG, persistence drives RBP's geometric
    decay, log_base sets the DCG discount, and measure_kind picks which of
    the three is computed by the slant functions.
    """

    cutoff: int = DEFAULT_CUTOFF
    persistence: float = DEFAULT_PERSISTENCE
    log_base: float = DEFAULT_LOG_BASE
    measure_kind: str = "precision"

    def __post_init__(self):
        _check_cutoff(self.cutoff)
        _check_persistence(self.persistence)
        _check_log_base(self.log_base)
        if self.measure_kind not in MEASURE_KINDS:
            raise ConfigError(
                f"unknown measure kind {self.measure_kind!r} "
                f"(expected one of: {', '.join(MEASURE_KINDS)})"
            )


def _check_cutoff(n):
    if not isinstance(n, int) or n < 1:
        raise ConfigError(f"cutoff must be a positive integer, got {n!r}")


def _check_persistence(p):
    if not 0.0 < p < 1.0:
        raise ConfigError(f"persistence must lie strictly between 0 and 1, got {p!r}")


def _check_log_base(base):
    if not base > 1.0:
        raise ConfigError(f"log base must be greater than 1, got {base!r}")


def precision_at(r: RankedList, label: Label, n: int) -> float:
    """Fraction of the top n ranks occupied by documents labeled `label`."""
    _check_cutoff(n)
    hits = sum(1 for doc in r.docs[:n] if doc.stance == label)
    return hits / n


def rbp(r: RankedList, label: Label, p: float) -> float:
    """Rank-biased precision for `label`: (1 - p) * sum of p**(i-1) over matching ranks i.

    The sum runs over retrieved documents only; no residual is imputed for
    ranks beyond the list, so the value is bounded by 1 - p**len(r).
    """
    _check_persistence(p)
    return (1.0 - p) * math.fsum(
        p ** (doc.rank - 1) for doc in r.docs if doc.stance == label
    )


def dcg_at(r: RankedList, label: Label, n: int, base: float = DEFAULT_LOG_BASE) -> float:
    """Discounted cumulative gain at cutoff n: a match at rank i gains 1/log_base(i+1)."""
    _check_cutoff(n)
    _check_log_base(base)
    return math.fsum(
        1.0 / math.log(doc.rank + 1, base) for doc in r.docs[:n] if doc.stance == label
    )
