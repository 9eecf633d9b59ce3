"""Brute-force AP@k distributions for small instances.

Two independent derivations are provided for the fixed-m model: a weighted
enumeration of the 2^k top-k indicator patterns (bounded by k) and a raw
enumeration of all C(n, m) placements (bounded by n). Each serves as ground
truth for the closed forms and as a cross-check on the other.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .metrics import Normalization, ap_at_k

MAX_PATTERN_K = 24
MAX_PLACEMENT_N = 20


@dataclass(frozen=True)
class ExactDistribution:
    """Finite distribution of AP@k: support points, their probabilities, moments."""

    support: tuple[tuple[float, float], ...]  # (ap_value, probability), ascending
    mean: float
    variance: float

    def probability_total(self) -> float:
        return math.fsum(p for _, p in self.support)


def _from_weights(weights: dict[float, float]) -> ExactDistribution:
    support = tuple(sorted(weights.items()))
    mean = math.fsum(v * p for v, p in support)
    variance = math.fsum(v * v * p for v, p in support) - mean * mean
    return ExactDistribution(support, mean, variance)


def exact_wor(n: int, m: int, k: int, norm: Normalization) -> ExactDistribution:
    """Exact AP@k distribution when m of n items are relevant, ranked uniformly.

    Enumerates the 2^k top-k patterns; a pattern with s relevant entries has
    probability C(n-k, m-s) / C(n, m). Each pattern is scored through
    ``ap_at_k`` on a full-length vector so that min(m, k) normalization sees
    the true m rather than the prefix count.
    """
    if n < 1 or not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n with n >= 1, got n={n}, m={m}")
    if not 1 <= k <= n:
        raise ValueError(f"cutoff k={k} must be in 1..{n}")
    if k > MAX_PATTERN_K:
        raise ValueError(
            f"k={k} exceeds the 2^k enumeration capacity (k <= {MAX_PATTERN_K})"
        )
    denom = math.comb(n, m)
    weights: dict[float, float] = {}
    for pattern in itertools.product((0, 1), repeat=k):
        s = sum(pattern)
        if s > m or m - s > n - k:
            continue
        w = math.comb(n - k, m - s) / denom
        tail = (1,) * (m - s) + (0,) * (n - k - (m - s))
        ap = ap_at_k(pattern + tail, k, norm)
        weights[ap] = weights.get(ap, 0.0) + w
    return _from_weights(weights)


def exact_wor_by_placements(
    n: int, m: int, k: int, norm: Normalization
) -> ExactDistribution:
    """Same distribution as ``exact_wor`` via all C(n, m) relevant-set placements.

    Independent of the pattern-weighting argument: every placement is listed
    explicitly with probability 1 / C(n, m).
    """
    if n < 1 or not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n with n >= 1, got n={n}, m={m}")
    if not 1 <= k <= n:
        raise ValueError(f"cutoff k={k} must be in 1..{n}")
    if n > MAX_PLACEMENT_N:
        raise ValueError(
            f"n={n} exceeds the placement enumeration capacity (n <= {MAX_PLACEMENT_N})"
        )
    w = 1.0 / math.comb(n, m)
    weights: dict[float, float] = {}
    for positions in itertools.combinations(range(n), m):
        rel = [0] * n
        for pos in positions:
            rel[pos] = 1
        ap = ap_at_k(rel, k, norm)
        weights[ap] = weights.get(ap, 0.0) + w
    return _from_weights(weights)


def exact_wr(p: float, k: int, norm: Normalization) -> ExactDistribution:
    """Exact AP@k distribution when each of k items is relevant with probability p.

    Enumerates all 2^k indicator patterns; a pattern with s ones has
    probability p^s (1-p)^(k-s). The vector is the whole list, so min(m, k)
    normalization here uses the pattern's own count of ones.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if k > MAX_PATTERN_K:
        raise ValueError(
            f"k={k} exceeds the 2^k enumeration capacity (k <= {MAX_PATTERN_K})"
        )
    q = 1.0 - p
    weights: dict[float, float] = {}
    for pattern in itertools.product((0, 1), repeat=k):
        s = sum(pattern)
        w = p**s * q ** (k - s)
        if w == 0.0:
            continue
        ap = ap_at_k(pattern, k, norm)
        weights[ap] = weights.get(ap, 0.0) + w
    return _from_weights(weights)
