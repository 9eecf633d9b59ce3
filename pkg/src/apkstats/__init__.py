"""AP@k and MAP@k with exact chance baselines under random rankings."""

from .closed_form import (
    BaselineMoments,
    Model,
    WorCoefficients,
    WorModel,
    WrModel,
    baseline,
    paired_normalization,
    wor_coefficients,
    wor_expectation,
    wor_variance,
    wr_expectation,
    wr_variance,
)
from .enumeration import (
    ExactDistribution,
    exact_wor,
    exact_wor_by_placements,
    exact_wr,
)
from .evaluation import (
    AutoWor,
    AutoWr,
    EvaluationReport,
    JudgmentSet,
    RankedRun,
    evaluate,
    parse_qrels,
    parse_run,
)
from .harmonics import (
    EULER_MASCHERONI,
    HarmonicPair,
    TriangularSums,
    harmonic_approx,
    harmonic_numbers,
    triangular_sums,
)
from .metrics import Normalization, ap_at_k, map_at_k, precision_at
from .sampling import (
    HistogramData,
    SampleMoments,
    histogram,
    monte_carlo,
    sample_wor,
    sample_wr,
)
from .scenarios import DEFAULT_GRID, REFERENCE_MOMENTS, Scenario

__version__ = "0.1.0"

__all__ = [
    "AutoWor",
    "AutoWr",
    "BaselineMoments",
    "DEFAULT_GRID",
    "EULER_MASCHERONI",
    "EvaluationReport",
    "ExactDistribution",
    "HarmonicPair",
    "HistogramData",
    "JudgmentSet",
    "Model",
    "Normalization",
    "RankedRun",
    "REFERENCE_MOMENTS",
    "SampleMoments",
    "Scenario",
    "TriangularSums",
    "WorCoefficients",
    "WorModel",
    "WrModel",
    "ap_at_k",
    "baseline",
    "evaluate",
    "exact_wor",
    "exact_wor_by_placements",
    "exact_wr",
    "harmonic_approx",
    "harmonic_numbers",
    "histogram",
    "map_at_k",
    "monte_carlo",
    "paired_normalization",
    "parse_qrels",
    "parse_run",
    "precision_at",
    "sample_wor",
    "sample_wr",
    "triangular_sums",
    "wor_coefficients",
    "wor_expectation",
    "wor_variance",
    "wr_expectation",
    "wr_variance",
    "__version__",
]
