"""Precision@i, AP@k and MAP@k over binary relevance vectors.

A relevance vector is any non-empty sequence of 0/1 indicators (booleans are
accepted), ordered by rank. All functions here are pure and thread-safe.
"""

from __future__ import annotations

import enum
import statistics
from collections.abc import Iterable, Sequence


class Normalization(enum.Enum):
    """Denominator used when averaging precision values in ``ap_at_k``.

    ``BY_K`` divides by the cutoff k; ``BY_MIN_MK`` divides by min(m, k),
    where m is the total number of relevant items in the vector, so that a
    ranking with all relevant items on top scores exactly 1 even when m < k.
    """

    BY_K = "byk"
    BY_MIN_MK = "bymin"


def _validate_relevance(rel: Sequence[int]) -> None:
    if len(rel) == 0:
        raise ValueError("relevance vector must contain at least one indicator")
    for value in rel:
        if value not in (0, 1):
            raise ValueError(f"relevance indicators must be 0 or 1, got {value!r}")


def precision_at(rel: Sequence[int], i: int) -> float:
    """Fraction of relevant items among the first ``i`` ranked positions.

    ``i`` is a 1-based rank. Raises IndexError if ``i`` is outside
    ``1..len(rel)``.
    """
    _validate_relevance(rel)
    if not 1 <= i <= len(rel):
        raise IndexError(f"rank {i} out of range for a vector of length {len(rel)}")
    return sum(rel[:i]) / i


def ap_at_k(
    rel: Sequence[int],
    k: int,
    norm: Normalization = Normalization.BY_MIN_MK,
) -> float:
    """Average precision of the top-``k`` prefix of a binary relevance vector.

    Computes sum(P@i * rel[i] for i in 1..k) divided by k (``BY_K``) or by
    min(m, k) (``BY_MIN_MK``), where m counts relevant items over the whole
    vector, not only the prefix. A vector with no relevant items scores 0
    under either normalization.
    """
    _validate_relevance(rel)
    if not 1 <= k <= len(rel):
        raise ValueError(f"cutoff k={k} must be in 1..{len(rel)}")
    m = sum(rel)
    if m == 0:
        return 0.0
    hits = 0
    acc = 0.0
    for i in range(k):
        if rel[i]:
            hits += 1
            acc += hits / (i + 1)
    denom = k if norm is Normalization.BY_K else min(m, k)
    return acc / denom


def map_at_k(
    users: Iterable[Sequence[int]],
    k: int,
    norm: Normalization = Normalization.BY_MIN_MK,
) -> float:
    """Mean of ``ap_at_k`` over a collection of per-user relevance vectors.

    The mean is computed exactly (rational arithmetic), so the result does
    not depend on user order. Raises ValueError for an empty collection.
    """
    scores = [ap_at_k(rel, k, norm) for rel in users]
    if not scores:
        raise ValueError("map_at_k requires at least one user")
    return statistics.mean(scores)
