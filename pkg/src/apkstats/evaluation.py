"""Run/qrels ingestion and MAP@k scoring against the chance baseline.

File formats (whitespace-separated, UTF-8, LF or CRLF):

* run:   ``qid Q0 docid rank score tag`` - one row per (query, document);
  within a query the ranking is ascending rank, ties broken by descending
  score then docid.
* qrels: ``qid 0 docid rel`` with rel in {0, 1}; rel > 1 is coerced to 1
  with a warning.
"""

from __future__ import annotations

import math
import statistics
import warnings
from dataclasses import dataclass
from os import PathLike
from pathlib import Path

from .closed_form import (
    BaselineMoments,
    Model,
    WorModel,
    WrModel,
    baseline,
    paired_normalization,
)
from .metrics import Normalization, ap_at_k


@dataclass(frozen=True)
class RankedRun:
    """Per-query ordered document id lists."""

    rankings: dict[str, tuple[str, ...]]

    def __len__(self) -> int:
        return len(self.rankings)


@dataclass(frozen=True)
class JudgmentSet:
    """Per-query sets of relevant document ids (binary relevance)."""

    relevant: dict[str, frozenset[str]]

    def __len__(self) -> int:
        return len(self.relevant)


@dataclass(frozen=True)
class AutoWor:
    """Fixed-m baseline with the supplied pool size and each user's own m."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")


@dataclass(frozen=True)
class AutoWr:
    """Bernoulli baseline with p pooled from the observed top-k prevalence."""


BaselineChoice = AutoWor | AutoWr | WorModel | WrModel


@dataclass(frozen=True)
class EvaluationReport:
    """Observed AP@k per user plus MAP@k scored against the chance baseline."""

    per_user_ap: dict[str, float]
    map_at_k: float
    baseline_mean: float
    baseline_variance_of_map: float
    z_score: float | None
    model_used: str
    k: int
    norm: Normalization
    user_count: int

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "norm": self.norm.value,
            "user_count": self.user_count,
            "model_used": self.model_used,
            "map_at_k": self.map_at_k,
            "baseline_mean": self.baseline_mean,
            "baseline_variance_of_map": self.baseline_variance_of_map,
            "z_score": self.z_score,
            "per_user_ap": dict(self.per_user_ap),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EvaluationReport":
        return cls(
            per_user_ap=dict(data["per_user_ap"]),
            map_at_k=data["map_at_k"],
            baseline_mean=data["baseline_mean"],
            baseline_variance_of_map=data["baseline_variance_of_map"],
            z_score=data["z_score"],
            model_used=data["model_used"],
            k=data["k"],
            norm=Normalization(data["norm"]),
            user_count=data["user_count"],
        )

    def render_text(self) -> str:
        z = "n/a" if self.z_score is None else f"{self.z_score:.6g}"
        lines = [
            "AP@k evaluation report",
            f"  k:                        {self.k}",
            f"  normalization:            {self.norm.value}",
            f"  users:                    {self.user_count}",
            f"  baseline model:           {self.model_used}",
            f"  MAP@k:                    {self.map_at_k:.6g}",
            f"  baseline mean:            {self.baseline_mean:.6g}",
            f"  baseline variance of MAP: {self.baseline_variance_of_map:.6g}",
            f"  z-score vs chance:        {z}",
            "",
            "  query id        AP@k",
        ]
        for qid in sorted(self.per_user_ap):
            lines.append(f"  {qid:<14s}  {self.per_user_ap[qid]:.6g}")
        return "\n".join(lines)


def parse_run(path: str | PathLike) -> RankedRun:
    """Parse a six-column run file into per-query rankings.

    Raises ValueError (with the line number) for malformed rows and for
    duplicate (query, document) pairs.
    """
    path = Path(path)
    rows: dict[str, list[tuple[int, float, str]]] = {}
    seen: set[tuple[str, str]] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            fields = line.split()
            if not fields:
                continue
            if len(fields) != 6:
                raise ValueError(
                    f"{path}: line {lineno}: expected 6 fields, got {len(fields)}"
                )
            qid, _, docid, rank_s, score_s, _ = fields
            try:
                rank = int(rank_s)
                score = float(score_s)
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from None
            if (qid, docid) in seen:
                raise ValueError(
                    f"{path}: line {lineno}: duplicate document {docid!r} for query {qid!r}"
                )
            seen.add((qid, docid))
            rows.setdefault(qid, []).append((rank, -score, docid))
    rankings = {
        qid: tuple(docid for _, _, docid in sorted(entries))
        for qid, entries in rows.items()
    }
    return RankedRun(rankings)


def parse_qrels(path: str | PathLike) -> JudgmentSet:
    """Parse a four-column qrels file into per-query relevant-document sets.

    Every query mentioned in the file is recorded, including those whose
    judged documents are all non-relevant. Graded judgments (rel > 1) count
    as relevant and trigger a warning.
    """
    path = Path(path)
    sets: dict[str, set[str]] = {}
    coerced = 0
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            fields = line.split()
            if not fields:
                continue
            if len(fields) != 4:
                raise ValueError(
                    f"{path}: line {lineno}: expected 4 fields, got {len(fields)}"
                )
            qid, _, docid, rel_s = fields
            try:
                rel = int(rel_s)
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from None
            if rel < 0:
                raise ValueError(
                    f"{path}: line {lineno}: negative relevance {rel} is not binary"
                )
            if rel > 1:
                coerced += 1
            sets.setdefault(qid, set())
            if rel >= 1:
                sets[qid].add(docid)
    if coerced:
        warnings.warn(
            f"{path}: {coerced} graded judgment(s) with rel > 1 coerced to relevant",
            stacklevel=2,
        )
    return JudgmentSet({qid: frozenset(docs) for qid, docs in sets.items()})


def _per_user_baseline(
    choice: BaselineChoice,
    norm: Normalization,
    k: int,
    vectors: dict[str, list[int]],
) -> tuple[dict[str, BaselineMoments], str]:
    """Baseline moments per user and a description of the model applied."""
    if isinstance(choice, (WorModel, WrModel)):
        if norm is not paired_normalization(choice):
            raise ValueError(
                f"no closed-form baseline for {choice.describe()} with "
                f"norm={norm.value!r}; WOR pairs with 'bymin', WR with 'byk'"
            )
        if isinstance(choice, WorModel) and k > choice.n:
            raise ValueError(f"cutoff k={k} exceeds the item count n={choice.n}")
        moments = baseline(choice, k)
        return {qid: moments for qid in vectors}, choice.describe()

    if isinstance(choice, AutoWor):
        if norm is not Normalization.BY_MIN_MK:
            raise ValueError(
                "the fixed-m baseline pairs with norm='bymin', got "
                f"{norm.value!r}"
            )
        if k > choice.n:
            raise ValueError(f"cutoff k={k} exceeds the item count n={choice.n}")
        per_user = {}
        for qid, vec in vectors.items():
            m = sum(vec)
            if m > choice.n:
                raise ValueError(
                    f"query {qid!r} has {m} relevant documents, more than n={choice.n}"
                )
            per_user[qid] = baseline(WorModel(choice.n, m), k)
        return per_user, f"WOR(n={choice.n}, per-user m)"

    if isinstance(choice, AutoWr):
        if norm is not Normalization.BY_K:
            raise ValueError(
                f"the Bernoulli baseline pairs with norm='byk', got {norm.value!r}"
            )
        top_k_relevant = sum(sum(vec[:k]) for vec in vectors.values())
        p_hat = top_k_relevant / (k * len(vectors))
        moments = baseline(WrModel(p_hat), k)
        label = f"WR(p={p_hat:.6g}, pooled from top-{k} prevalence)"
        return {qid: moments for qid in vectors}, label

    raise TypeError(f"unsupported baseline choice: {type(choice).__name__}")


def evaluate(
    run: RankedRun,
    judgments: JudgmentSet,
    k: int,
    norm: Normalization,
    baseline_model: BaselineChoice,
) -> EvaluationReport:
    """Score a run's MAP@k against the analytic chance baseline.

    Every query in the run must carry at least k ranked documents and appear
    in the judgments (an empty relevant set is fine and scores 0). Queries
    judged but absent from the run are skipped with a warning. The baseline
    variance of MAP@k treats users as independent: (1/U^2) * sum of per-user
    variances.
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if not run.rankings:
        raise ValueError("run contains no queries")

    ignored = sorted(set(judgments.relevant) - set(run.rankings))
    if ignored:
        warnings.warn(
            f"{len(ignored)} judged quer{'y' if len(ignored) == 1 else 'ies'} "
            f"absent from the run were ignored: {', '.join(ignored[:5])}"
            + ("..." if len(ignored) > 5 else ""),
            stacklevel=2,
        )

    vectors: dict[str, list[int]] = {}
    for qid in sorted(run.rankings):
        docs = run.rankings[qid]
        if len(docs) < k:
            raise ValueError(
                f"query {qid!r} has only {len(docs)} ranked documents, need >= {k}"
            )
        if qid not in judgments.relevant:
            raise ValueError(f"query {qid!r} has no relevance judgments")
        relset = judgments.relevant[qid]
        vectors[qid] = [1 if doc in relset else 0 for doc in docs]

    per_user_ap = {qid: ap_at_k(vec, k, norm) for qid, vec in vectors.items()}
    map_score = statistics.mean(per_user_ap.values())

    per_user_baseline, model_label = _per_user_baseline(
        baseline_model, norm, k, vectors
    )
    means = [per_user_baseline[qid].mean for qid in vectors]
    baseline_mean = statistics.mean(means)
    user_count = len(vectors)
    variance_of_map = (
        math.fsum(per_user_baseline[qid].variance for qid in vectors)
        / (user_count * user_count)
    )
    z_score = None
    if variance_of_map > 0:
        z_score = (map_score - baseline_mean) / math.sqrt(variance_of_map)

    return EvaluationReport(
        per_user_ap=per_user_ap,
        map_at_k=map_score,
        baseline_mean=baseline_mean,
        baseline_variance_of_map=variance_of_map,
        z_score=z_score,
        model_used=model_label,
        k=k,
        norm=norm,
        user_count=user_count,
    )
