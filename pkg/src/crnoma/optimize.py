"""Optimal sensing time per objective: golden-section search bound to the
throughput objectives, with a brute-force grid oracle for cross-checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .statmath import (
    Bracket,
    OptimizationResult,
    SearchMethod,
    golden_section_max,
    grid_max,
)
from .throughput import ObjectiveKind, ScenarioConfig, objective_value

__all__ = [
    "BRACKET_INSET",
    "DEFAULT_GOLDEN_ITERATIONS",
    "DEFAULT_GRID_POINTS",
    "ObjectiveComparison",
    "scenario_bracket",
    "objective_fn",
    "unimodality_precheck",
    "optimal_sensing_time",
    "optimize_all",
]

#: The search bracket is [T*BRACKET_INSET, T - T*BRACKET_INSET]; objectives
#: are only defined on the open interval (0, T).
BRACKET_INSET = 1e-6
DEFAULT_GOLDEN_ITERATIONS = 20
DEFAULT_GRID_POINTS = 1_000_000

#: Agreement tolerances between golden-section and the grid oracle; a
#: larger disagreement flags a (possibly) non-unimodal objective.
TAU_AGREEMENT_FACTOR = 2e-3
VALUE_AGREEMENT_REL = 1e-6


def scenario_bracket(scenario: ScenarioConfig) -> Bracket:
    """Search interval [T*1e-6, T - T*1e-6] for a scenario's frame."""
    T = scenario.frame_duration
    eps = T * BRACKET_INSET
    return Bracket(eps, T - eps)


def objective_fn(scenario: ScenarioConfig, kind: ObjectiveKind):
    """Bind an objective kind to a scenario as a tau -> value callable.

    The callable accepts scalars or ndarrays (grid search exploits this).
    """

    def f(tau):
        return objective_value(kind, tau, scenario)

    return f


def unimodality_precheck(
    scenario: ScenarioConfig, kind: ObjectiveKind, points: int = 10_000
) -> bool:
    """Check that the objective rises then falls at most once on a grid.

    Computes discrete differences over an evenly spaced grid and counts
    sign changes, ignoring exact zeros; at most one change (or a monotone
    profile) passes. This is the precondition under which golden-section
    agreement with the grid oracle is guaranteed.
    """
    bracket = scenario_bracket(scenario)
    taus = np.linspace(bracket.low, bracket.high, points)
    values = np.asarray(objective_value(kind, taus, scenario))
    signs = np.sign(np.diff(values))
    signs = signs[signs != 0]
    if signs.size == 0:
        return True
    changes = int(np.count_nonzero(signs[1:] != signs[:-1]))
    return changes <= 1


def optimal_sensing_time(
    scenario: ScenarioConfig,
    kind: ObjectiveKind,
    method: SearchMethod = SearchMethod.GOLDEN_SECTION,
    iterations_or_points: Optional[int] = None,
) -> OptimizationResult:
    """Maximize one objective over the scenario's sensing-time bracket.

    ``iterations_or_points`` defaults to 20 iterations for golden-section
    and 1e6 points for the grid method.
    """
    bracket = scenario_bracket(scenario)
    f = objective_fn(scenario, kind)
    if method is SearchMethod.GOLDEN_SECTION:
        n = DEFAULT_GOLDEN_ITERATIONS if iterations_or_points is None else iterations_or_points
        return golden_section_max(f, bracket, n)
    if method is SearchMethod.GRID:
        n = DEFAULT_GRID_POINTS if iterations_or_points is None else iterations_or_points
        return grid_max(f, bracket, n)
    raise DomainError(f"unknown search method {method!r}")


@dataclass(frozen=True)
class ObjectiveComparison:
    """Golden-section result for one objective with its grid cross-check.

    ``warning`` is set (not raised) when the two methods disagree beyond
    the documented tolerances, which indicates the objective may not be
    unimodal on this scenario.
    """

    kind: ObjectiveKind
    golden: OptimizationResult
    grid: OptimizationResult
    delta_tau: float
    relative_gap: float
    warning: Optional[str] = None


def optimize_all(
    scenario: ScenarioConfig,
    golden_iterations: int = DEFAULT_GOLDEN_ITERATIONS,
    grid_points: int = DEFAULT_GRID_POINTS,
) -> tuple:
    """Optimize all four objectives with both methods.

    Returns one :class:`ObjectiveComparison` per objective kind, in the
    declaration order of :class:`ObjectiveKind`.
    """
    T = scenario.frame_duration
    rows = []
    for kind in ObjectiveKind:
        golden = optimal_sensing_time(
            scenario, kind, SearchMethod.GOLDEN_SECTION, golden_iterations
        )
        grid = optimal_sensing_time(scenario, kind, SearchMethod.GRID, grid_points)
        delta_tau = abs(golden.tau_opt - grid.tau_opt)
        scale = max(abs(grid.value_opt), np.finfo(float).tiny)
        relative_gap = abs(golden.value_opt - grid.value_opt) / scale
        warning = None
        if delta_tau > TAU_AGREEMENT_FACTOR * T or relative_gap > VALUE_AGREEMENT_REL:
            warning = (
                "golden-section and grid optima disagree beyond tolerance; "
                "objective may not be unimodal on this scenario"
            )
        rows.append(
            ObjectiveComparison(
                kind=kind,
                golden=golden,
                grid=grid,
                delta_tau=delta_tau,
                relative_gap=relative_gap,
                warning=warning,
            )
        )
    return tuple(rows)
