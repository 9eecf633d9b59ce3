"""Harmonic-number partial sums and related identities."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

EULER_MASCHERONI = 0.5772156649015329

# math.fsum is exactly rounded but O(k) in Python; above this size switch to
# numpy's pairwise summation, accurate to a few ulps.
_FSUM_LIMIT = 1 << 20


class HarmonicPair(NamedTuple):
    """H_k = sum(1/i) and the second-order partial sum sum(1/i^2)."""

    h1: float
    h2: float


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")


def harmonic_numbers(k: int) -> HarmonicPair:
    """First- and second-order harmonic partial sums by direct summation.

    Terms are accumulated smallest-first (or pairwise via numpy for large k),
    keeping the result exact to within a few ulps for k up to 1e7.
    """
    _check_k(k)
    if k <= _FSUM_LIMIT:
        h1 = math.fsum(1.0 / i for i in range(k, 0, -1))
        h2 = math.fsum(1.0 / (i * i) for i in range(k, 0, -1))
    else:
        inv = 1.0 / np.arange(k, 0, -1, dtype=np.float64)
        h1 = float(inv.sum())
        h2 = float((inv * inv).sum())
    return HarmonicPair(h1, h2)


def harmonic_approx(k: int) -> tuple[float, float]:
    """Logarithmic approximation of H_k with its error bound.

    Returns ``(ln k + gamma + 1/(2k), 1/(8 k^2))``; the approximation
    overshoots H_k by at most the bound and never undershoots it.
    """
    _check_k(k)
    approx = math.log(k) + EULER_MASCHERONI + 1.0 / (2 * k)
    bound = 1.0 / (8 * k * k)
    return approx, bound


class TriangularSums(NamedTuple):
    """Sums over the strict upper triangle 1 <= i < l <= k."""

    s1: float  # sum of 1/i
    s2: float  # sum of 1/l
    s3: float  # sum of 1/(i*l)


def triangular_sums(k: int) -> TriangularSums:
    """Closed forms for the three double sums over pairs i < l up to k.

    s1 = k(H_k - 1), s2 = k - H_k, s3 = (H_k^2 - H_k2)/2, with H_k2 the
    second-order partial sum. All three are 0 for k = 1 (empty range).
    """
    _check_k(k)
    h1, h2 = harmonic_numbers(k)
    return TriangularSums(k * (h1 - 1.0), k - h1, 0.5 * (h1 * h1 - h2))
