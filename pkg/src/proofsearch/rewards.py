"""Reward signals for candidate traces: correctness, step count, and the
exponentially decaying search-informed rewards.

The decay parameters are set adaptively per (program, goal): alpha is the
reference quantity of the engine's own trace and beta = ln 2 / alpha, so
doubling the candidate's score halves the reward and a candidate aligned
with the engine scores exactly 1. (A candidate more efficient than the
engine scores above 1.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .logic import DEPTH_COST, INF, Atom, CostFunction, Program
from .parsing import Verdict
from .search import astar, minimal_model
from .tracing import InvalidTraceError, SearchTrace, raw_score

REWARD_KINDS = ("correctness", "step-count", "astar-dependency", "astar-true")


@dataclass(frozen=True)
class RewardParams:
    kind: str
    alpha: float  # reference score of the engine trace (or shortest step count)
    beta: float  # decay rate, ln 2 / alpha


def _decay(alpha, x) -> float:
    """exp(beta * (alpha - x)) with beta = ln2/alpha; degenerate alpha = 0
    collapses to an indicator of a perfect (zero-cost) candidate."""
    if x == INF:
        return 0.0
    if alpha == 0:
        return 1.0 if x == 0 else 0.0
    beta = math.log(2) / alpha
    return math.exp(beta * (alpha - x))


def reward_correctness(verdict: Verdict) -> float:
    return 1.0 if verdict.correct else 0.0


def reward_step_count(
    trace: SearchTrace, shortest: SearchTrace, verdict: Verdict
) -> float:
    """Exponential decay over the candidate's step count, anchored at the
    shortest proof's step count."""
    if not verdict.correct:
        return 0.0
    return _decay(len(shortest.steps), len(trace.steps))


def reference_trace(
    program: Program,
    goal: Atom,
    heuristic,
    cost: CostFunction = DEPTH_COST,
) -> SearchTrace:
    """The engine's own trace for this (program, goal) under ``heuristic``."""
    return astar(program, goal, heuristic, cost).trace


def astar_reward_params(
    program: Program,
    goal: Atom,
    heuristic,
    cost: CostFunction = DEPTH_COST,
    h_cap=None,
) -> RewardParams:
    weights = minimal_model(program, cost)
    delta_star = reference_trace(program, goal, heuristic, cost)
    alpha = raw_score(delta_star, weights, heuristic, h_cap=h_cap)
    beta = math.log(2) / alpha if alpha not in (0, INF) else math.log(2)
    kind = "astar-dependency" if heuristic.kind == "dependency" else "astar-true"
    return RewardParams(kind, alpha, beta)


def reward_astar(
    trace: SearchTrace,
    program: Program,
    goal: Atom,
    heuristic,
    verdict: Verdict,
    cost: CostFunction = DEPTH_COST,
    h_cap=None,
) -> float:
    """Decay over the candidate's summed pop priorities, anchored at the
    engine trace's score under the same heuristic.

    A correct candidate popping an atom the heuristic prunes (h = infinity)
    scores 0 unless ``h_cap`` substitutes a finite value in the score
    computation only.
    """
    if not verdict.correct:
        return 0.0
    weights = minimal_model(program, cost)
    params = astar_reward_params(program, goal, heuristic, cost, h_cap=h_cap)
    try:
        x = raw_score(trace, weights, heuristic, h_cap=h_cap)
    except InvalidTraceError:
        # correct under goal-cone adjudication but with underivable pops
        # outside the cone; no finite efficiency score exists
        return 0.0
    return _decay(params.alpha, x)
