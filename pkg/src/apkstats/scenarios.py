"""Default scenario grid and externally reported reference moments.

The grid pairs a fixed-m model (n, m) with the Bernoulli model at p = m/n so
the two randomization schemes can be compared at the same prevalence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from os import PathLike
from pathlib import Path

from .closed_form import BaselineMoments, WorModel, WrModel, baseline


@dataclass(frozen=True)
class Scenario:
    """One comparison row: fixed-m model (n, m) vs Bernoulli model p, at cutoff k."""

    label: str
    n: int
    m: int
    p: float
    k: int


DEFAULT_GRID: tuple[Scenario, ...] = (
    Scenario("A1", 50, 25, 0.50, 5),
    Scenario("A2", 50, 25, 0.50, 25),
    Scenario("A3", 50, 25, 0.50, 40),
    Scenario("B", 50, 10, 0.20, 20),
    Scenario("C", 50, 2, 0.04, 20),
    Scenario("D", 50, 35, 0.70, 20),
)

# Externally reported reference values for the default grid, printed to five
# decimals: (wor_mean, wr_mean, wor_variance, wr_variance) per label.
REFERENCE_MOMENTS: dict[str, tuple[float, float, float, float]] = {
    "A1": (0.36139, 0.36416, 0.05464, 0.05884),
    "A2": (0.28387, 0.28816, 0.00735, 0.01234),
    "A3": (0.43550, 0.27674, 0.00699, 0.00775),
    "B": (0.13221, 0.06878, 0.00786, 0.00294),
    "C": (0.07865, 0.00851, 0.01563, 0.00023),
    "D": (0.52426, 0.52778, 0.01502, 0.02195),
}

CHECK_TOLERANCE = 1e-5

_COLUMNS = ("wor_mean", "wr_mean", "wor_variance", "wr_variance")


@dataclass(frozen=True)
class Deviation:
    """A computed scenario value that strays from its reference."""

    label: str
    column: str
    computed: float
    reference: float

    @property
    def difference(self) -> float:
        return abs(self.computed - self.reference)


def scenario_moments(scenario: Scenario) -> tuple[BaselineMoments, BaselineMoments]:
    """Closed-form (fixed-m, Bernoulli) moment pairs for one scenario row."""
    wor = baseline(WorModel(scenario.n, scenario.m), scenario.k)
    wr = baseline(WrModel(scenario.p), scenario.k)
    return wor, wr


def check_grid(
    scenarios: tuple[Scenario, ...] = DEFAULT_GRID,
    reference: dict[str, tuple[float, float, float, float]] | None = None,
    tolerance: float = CHECK_TOLERANCE,
) -> list[Deviation]:
    """Compare computed moments against the reference values, per label.

    Scenario labels without a reference entry are skipped. Returns the list
    of deviations beyond ``tolerance`` (empty means the check passed).
    """
    if reference is None:
        reference = REFERENCE_MOMENTS
    deviations = []
    for scenario in scenarios:
        if scenario.label not in reference:
            continue
        wor, wr = scenario_moments(scenario)
        computed = (wor.mean, wr.mean, wor.variance, wr.variance)
        for column, value, ref in zip(_COLUMNS, computed, reference[scenario.label]):
            if abs(value - ref) > tolerance:
                deviations.append(Deviation(scenario.label, column, value, ref))
    return deviations


def load_grid(path: str | PathLike) -> tuple[Scenario, ...]:
    """Load a scenario grid from a JSON file.

    The file holds a list of objects with keys label, n, m, p, k.
    """
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, list) or not raw:
        raise ValueError(f"{path}: expected a non-empty JSON list of scenarios")
    scenarios = []
    for i, entry in enumerate(raw):
        try:
            scenarios.append(
                Scenario(
                    label=str(entry["label"]),
                    n=int(entry["n"]),
                    m=int(entry["m"]),
                    p=float(entry["p"]),
                    k=int(entry["k"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"{path}: scenario #{i}: {exc}") from None
    return tuple(scenarios)
