"""Exact mean and variance of AP@k under two random-ranking models.

Two randomization models are covered:

* fixed-m ("WOR"): exactly m of n items are relevant and the ranking is a
  uniformly random permutation, i.e. the relevant positions are a uniform
  m-subset (sampling without replacement). Matches AP@k normalized by
  min(m, k).
* Bernoulli ("WR"): each of the top-k items is independently relevant with
  probability p (sampling with replacement). Matches AP@k normalized by k.

The pairing between model and normalization is intrinsic: no closed form is
provided for the crossed combinations, and ``baseline`` enforces it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .harmonics import harmonic_numbers
from .metrics import Normalization
from . import enumeration


@dataclass(frozen=True)
class WorModel:
    """Fixed-m model: n ranked items of which exactly m are relevant."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.m <= self.n:
            raise ValueError(f"m must lie in 0..{self.n}, got {self.m}")

    def describe(self) -> str:
        return f"WOR(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class WrModel:
    """Bernoulli model: each item independently relevant with probability p."""

    p: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.p) and 0.0 <= self.p <= 1.0):
            raise ValueError(f"p must lie in [0, 1], got {self.p}")

    def describe(self) -> str:
        return f"WR(p={self.p:g})"


Model = WorModel | WrModel


@dataclass(frozen=True)
class BaselineMoments:
    """Analytic mean and variance of AP@k under a random-ranking model."""

    mean: float
    variance: float


@dataclass(frozen=True)
class WorCoefficients:
    """Coefficients of the fixed-m variance expansion, plus min(m, k).

    ``a``/``b``/``c`` weight the 1/i^2, 1/i and constant parts of the
    per-rank variance terms; ``d``..``g`` weight the 1/(il), 1/l, 1/i and
    constant parts of the cross-rank covariance terms.
    """

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float
    g: float
    m_norm: int


def _check_wor_args(n: int, m: int, k: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= m <= n:
        raise ValueError(f"m must lie in 0..{n}, got {m}")
    if not 1 <= k <= n:
        raise ValueError(f"cutoff k={k} must be in 1..{n}")


def _check_wr_args(p: float, k: int) -> None:
    if not (math.isfinite(p) and 0.0 <= p <= 1.0):
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")


def wor_expectation(n: int, m: int, k: int) -> float:
    """Expected AP@k (min(m, k) normalization) under the fixed-m model.

    E = m / (n * min(k, m)) * ((m-1)/(n-1) * k + (n-m)/(n-1) * H_k).
    The degenerate cases m = 0 and m = n return 0 and 1 without touching the
    formula (n = 1 is always one of these, so the n-1 denominator is safe).
    """
    _check_wor_args(n, m, k)
    if m == 0:
        return 0.0
    if m == n:
        return 1.0
    h1 = harmonic_numbers(k).h1
    return (m / (n * min(k, m))) * ((m - 1) / (n - 1) * k + (n - m) / (n - 1) * h1)


def wor_coefficients(n: int, m: int, k: int) -> WorCoefficients:
    """Variance-expansion coefficients for the fixed-m model.

    Defined only for n >= 4 (the expressions carry n-1, n-2 and n-3
    denominators); callers needing smaller n should enumerate instead.
    """
    _check_wor_args(n, m, k)
    if n < 4:
        raise ValueError(
            f"coefficients are undefined for n={n} < 4; use the exact enumeration"
        )
    q = m / n
    r1 = (m - 1) / (n - 1)
    r2 = (m - 2) / (n - 2)
    r3 = (m - 3) / (n - 3)
    a = 1 - q - r1 * (3 - 2 * r2 - q * (2 - r1))
    b = r1 * (3 * (1 - r2) - 2 * q * (1 - r1))
    c = r1 * (r2 - q * r1)
    d = r1 * (2 - 5 * r2 + 3 * r2 * r3) - q * (1 - r1) ** 2
    e = r1 * (3 * r2 * (1 - r3) - q * (1 - r1))
    f = r1 * (r2 * (1 - r3) - q * (1 - r1))
    g = r1 * (r2 * r3 - q * r1)
    return WorCoefficients(a, b, c, d, e, f, g, min(m, k))


def wor_variance(n: int, m: int, k: int) -> float:
    """Variance of AP@k (min(m, k) normalization) under the fixed-m model.

    Evaluates the coefficient expansion against H_k and the second-order
    partial sum. For n < 4 (where the coefficients are undefined) the value
    is taken from the exact pattern enumeration; m = 0 and m = n are
    deterministic and return 0.
    """
    _check_wor_args(n, m, k)
    if m == 0 or m == n:
        return 0.0
    if n < 4:
        return enumeration.exact_wor(n, m, k, Normalization.BY_MIN_MK).variance
    co = wor_coefficients(n, m, k)
    h1, h2 = harmonic_numbers(k)
    bracket = (
        k * (co.c + 2 * (co.e - co.f) + (k - 1) * co.g)
        + h1 * (co.b - 2 * (co.e - k * co.f))
        + h1 * h1 * co.d
        + h2 * (co.a - co.d)
    )
    return (m / n) * bracket / (co.m_norm * co.m_norm)


def wr_expectation(p: float, k: int) -> float:
    """Expected AP@k (1/k normalization) under the Bernoulli model.

    E = p * (p + (1 - p) * H_k / k).
    """
    _check_wr_args(p, k)
    h1 = harmonic_numbers(k).h1
    return p * (p + (1.0 - p) * h1 / k)


def wr_variance(p: float, k: int) -> float:
    """Variance of AP@k (1/k normalization) under the Bernoulli model.

    Var = 5/k * p^3 (1-p)
        + 1/k^2 * p (1-p) * [p (1-2p) (3 H_k + H_k^2) + (1-p)(1-3p) H_k2].
    """
    _check_wr_args(p, k)
    h1, h2 = harmonic_numbers(k)
    q = 1.0 - p
    return (5.0 / k) * p**3 * q + (p * q / (k * k)) * (
        p * (1 - 2 * p) * (3 * h1 + h1 * h1) + q * (1 - 3 * p) * h2
    )


def baseline(model: Model, k: int) -> BaselineMoments:
    """Mean and variance of AP@k under ``model`` at cutoff ``k``.

    The normalization is implied by the model: min(m, k) for ``WorModel``,
    1/k for ``WrModel``. Mixed combinations have no closed form and are not
    offered.
    """
    if isinstance(model, WorModel):
        return BaselineMoments(
            wor_expectation(model.n, model.m, k),
            wor_variance(model.n, model.m, k),
        )
    if isinstance(model, WrModel):
        return BaselineMoments(wr_expectation(model.p, k), wr_variance(model.p, k))
    raise TypeError(f"unsupported model type: {type(model).__name__}")


def paired_normalization(model: Model) -> Normalization:
    """The normalization whose moments the closed forms describe."""
    if isinstance(model, WorModel):
        return Normalization.BY_MIN_MK
    if isinstance(model, WrModel):
        return Normalization.BY_K
    raise TypeError(f"unsupported model type: {type(model).__name__}")
