"""Random ranking generators and a deterministic Monte Carlo estimator.

Sampling is driven by counter-based Philox streams. ``monte_carlo`` and
``histogram`` split the requested sample count into fixed-size chunks, give
each chunk its own stream derived from the user seed, and merge chunk
statistics in chunk order with the exact pairwise update. The result is
bit-identical for a given (model, k, norm, n_samples, seed) no matter how
many worker threads execute the chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .closed_form import Model, WorModel, WrModel
from .metrics import Normalization

CHUNK_SIZE = 1 << 15


@dataclass(frozen=True)
class SampleMoments:
    """Monte Carlo estimate of the AP@k mean and spread."""

    mean: float
    variance: float  # unbiased (n-1 denominator)
    std_error: float  # sqrt(variance / n)
    n: int


@dataclass(frozen=True)
class HistogramData:
    """Equal-width histogram of sampled AP@k values over [0, 1]."""

    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]
    model_label: str
    n: int


def sample_wor(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """One length-n relevance vector with exactly m ones, placed uniformly.

    Partial Fisher-Yates: only the m selected positions are shuffled out of
    the pool, so every size-m position set has probability 1 / C(n, m).
    """
    if n < 1 or not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n with n >= 1, got n={n}, m={m}")
    pool = np.arange(n)
    for j in range(m):
        r = int(rng.integers(j, n))
        pool[j], pool[r] = pool[r], pool[j]
    rel = np.zeros(n, dtype=np.int8)
    rel[pool[:m]] = 1
    return rel


def sample_wr(k: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """One length-k relevance vector of independent Bernoulli(p) indicators."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return (rng.random(k) < p).astype(np.int8)


def _draw_batch(model: Model, k: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Batch of relevance vectors as an int8 matrix, one row per sample."""
    if isinstance(model, WorModel):
        rel = np.zeros((size, model.n), dtype=np.int8)
        rel[:, : model.m] = 1
        rng.permuted(rel, axis=1, out=rel)
        return rel
    rel = rng.random((size, k)) < model.p
    return rel.astype(np.int8)


def _batch_ap(rel: np.ndarray, k: int, norm: Normalization) -> np.ndarray:
    """AP@k of every row of a 0/1 matrix; mirrors ``metrics.ap_at_k``."""
    prefix = rel[:, :k].astype(np.float64).cumsum(axis=1)
    ranks = np.arange(1, k + 1, dtype=np.float64)
    numer = np.where(rel[:, :k] == 1, prefix / ranks, 0.0).sum(axis=1)
    m_total = rel.sum(axis=1, dtype=np.int64)
    if norm is Normalization.BY_K:
        denom = np.full(rel.shape[0], float(k))
    else:
        denom = np.minimum(m_total, k).astype(np.float64)
    return np.where(m_total > 0, numer / np.maximum(denom, 1.0), 0.0)


def _validate_model_cutoff(model: Model, k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if isinstance(model, WorModel) and k > model.n:
        raise ValueError(f"cutoff k={k} exceeds the item count n={model.n}")


def _chunk_sizes(n_samples: int) -> list[int]:
    full, rest = divmod(n_samples, CHUNK_SIZE)
    return [CHUNK_SIZE] * full + ([rest] if rest else [])


def _chunk_streams(seed: int, n_chunks: int) -> list[np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    return [np.random.Generator(np.random.Philox(child)) for child in children]


def _merge_moments(
    a: tuple[int, float, float], b: tuple[int, float, float]
) -> tuple[int, float, float]:
    """Combine (count, mean, sum of squared deviations) of two disjoint chunks."""
    n_a, mean_a, m2_a = a
    n_b, mean_b, m2_b = b
    n = n_a + n_b
    delta = mean_b - mean_a
    mean = mean_a + delta * (n_b / n)
    m2 = m2_a + m2_b + delta * delta * (n_a * n_b / n)
    return n, mean, m2


def _map_chunks(worker, specs, workers: int):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(worker, specs))
    return [worker(spec) for spec in specs]


def monte_carlo(
    model: Model,
    k: int,
    norm: Normalization,
    n_samples: int,
    seed: int,
    workers: int = 1,
) -> SampleMoments:
    """Sample moments of AP@k under ``model`` from ``n_samples`` random rankings.

    Deterministic in (model, k, norm, n_samples, seed); ``workers`` only
    controls how many threads evaluate the pre-assigned chunks.
    """
    _validate_model_cutoff(model, k)
    if n_samples < 2:
        raise ValueError(f"n_samples must be >= 2, got {n_samples}")
    sizes = _chunk_sizes(n_samples)
    streams = _chunk_streams(seed, len(sizes))

    def chunk_stats(spec: tuple[int, np.random.Generator]) -> tuple[int, float, float]:
        size, rng = spec
        aps = _batch_ap(_draw_batch(model, k, size, rng), k, norm)
        mean = float(aps.mean())
        m2 = float(((aps - mean) ** 2).sum())
        return size, mean, m2

    results = _map_chunks(chunk_stats, list(zip(sizes, streams)), workers)
    total = results[0]
    for part in results[1:]:
        total = _merge_moments(total, part)
    n, mean, m2 = total
    variance = m2 / (n - 1)
    return SampleMoments(mean, variance, math.sqrt(variance / n), n)


def histogram(
    model: Model,
    k: int,
    norm: Normalization,
    n_samples: int,
    seed: int,
    n_bins: int = 40,
    workers: int = 1,
) -> HistogramData:
    """Histogram of sampled AP@k values over n_bins equal-width bins in [0, 1].

    Values of exactly 1.0 land in the last bin. Uses the same chunked,
    seed-derived streams as ``monte_carlo``.
    """
    _validate_model_cutoff(model, k)
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    if n_bins < 2:
        raise ValueError(f"n_bins must be >= 2, got {n_bins}")
    sizes = _chunk_sizes(n_samples)
    streams = _chunk_streams(seed, len(sizes))
    edges = np.linspace(0.0, 1.0, n_bins + 1)

    def chunk_counts(spec: tuple[int, np.random.Generator]) -> np.ndarray:
        size, rng = spec
        aps = _batch_ap(_draw_batch(model, k, size, rng), k, norm)
        return np.histogram(aps, bins=edges)[0]

    results = _map_chunks(chunk_counts, list(zip(sizes, streams)), workers)
    counts = np.sum(results, axis=0)
    return HistogramData(
        bin_edges=tuple(float(e) for e in edges),
        counts=tuple(int(c) for c in counts),
        model_label=model.describe(),
        n=n_samples,
    )
