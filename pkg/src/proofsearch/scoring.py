"""Shared scoring pipeline behind the ``score`` command and the /score endpoint.

Both surfaces serialize the same report dict with the same canonical JSON
encoder, so responses are byte-identical for identical inputs.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence

from .logic import (
    DEPTH_COST,
    INF,
    Atom,
    CostFunction,
    Program,
    weight_to_json,
)
from .heuristics import get_heuristic
from .parsing import ParseOutcome, adjudicate, parse_trace
from .rewards import (
    REWARD_KINDS,
    astar_reward_params,
    reward_correctness,
    reward_step_count,
    reward_astar,
)
from .search import minimal_model, shortest_proof_trace
from .tracing import (
    InvalidTraceError,
    SearchTrace,
    efficiency,
    pops_set,
    raw_score,
)

SCHEMA_VERSION = 1


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def score_candidate(
    program: Program,
    goal: Optional[Atom] = None,
    candidate_text: Optional[str] = None,
    trace: Optional[SearchTrace] = None,
    reward_kinds: Sequence[str] = ("correctness",),
    mode: str = "strict",
    cost: CostFunction = DEPTH_COST,
    h_cap=None,
) -> dict:
    """Parse (if needed), adjudicate, and compute metrics plus rewards.

    Exactly one of ``candidate_text`` / ``trace`` must be given.
    """
    if (candidate_text is None) == (trace is None):
        raise ValueError("provide exactly one of candidate text or structured trace")
    goal = goal if goal is not None else program.goal
    if goal is None:
        raise ValueError("no goal given and the program declares none")
    for kind in reward_kinds:
        if kind not in REWARD_KINDS:
            raise ValueError(f"unknown reward kind: {kind!r}")

    if trace is None:
        outcome = parse_trace(candidate_text, program)
        diagnostics = outcome.diagnostics
        trace = SearchTrace(tuple(outcome.steps), goal, program.id)
    else:
        outcome = ParseOutcome(steps=list(trace.steps))
        diagnostics = []
    verdict = adjudicate(outcome, program, goal, mode)

    report = {
        "schema": SCHEMA_VERSION,
        "correct": verdict.correct,
        "verdict": verdict.to_json(),
        "diagnostics": diagnostics,
        "steps": len(trace.steps),
        "pops": len(pops_set(trace)),
        "efficiency_pushes": None,
        "efficiency_pops": None,
        "raw_score": None,
        "rewards": [],
    }

    shortest = None
    if verdict.correct:
        shortest = shortest_proof_trace(program, goal, cost)
        report["efficiency_pushes"] = efficiency(trace, shortest, "pushes")
        report["efficiency_pops"] = efficiency(trace, shortest, "pops")

    for kind in reward_kinds:
        entry = {"kind": kind, "alpha": None, "beta": None, "raw_score": None}
        if kind == "correctness":
            entry["value"] = reward_correctness(verdict)
        elif kind == "step-count":
            if shortest is None and verdict.correct:
                shortest = shortest_proof_trace(program, goal, cost)
            ref = shortest if shortest is not None else SearchTrace((), goal)
            entry["value"] = reward_step_count(trace, ref, verdict)
            entry["alpha"] = len(ref.steps)
        else:
            heuristic_kind = "dependency" if kind == "astar-dependency" else "true"
            heuristic = get_heuristic(program, goal, heuristic_kind, cost)
            if verdict.correct:
                params = astar_reward_params(program, goal, heuristic, cost, h_cap)
                entry["alpha"] = weight_to_json(params.alpha)
                entry["beta"] = params.beta
                weights = minimal_model(program, cost)
                try:
                    x = raw_score(trace, weights, heuristic, h_cap=h_cap)
                except InvalidTraceError:
                    x = INF
                entry["raw_score"] = weight_to_json(x)
                if report["raw_score"] is None:
                    report["raw_score"] = entry["raw_score"]
            entry["value"] = reward_astar(
                trace, program, goal, heuristic, verdict, cost, h_cap
            )
        report["rewards"].append(entry)
    return report


def verify_report(
    program: Program,
    goal: Optional[Atom],
    candidate_text: str,
    mode: str = "strict",
) -> dict:
    goal = goal if goal is not None else program.goal
    if goal is None:
        raise ValueError("no goal given and the program declares none")
    outcome = parse_trace(candidate_text, program)
    verdict = adjudicate(outcome, program, goal, mode)
    return {
        "schema": SCHEMA_VERSION,
        "correct": verdict.correct,
        "verdict": verdict.to_json(),
        "diagnostics": outcome.diagnostics,
        "steps": len(outcome.steps),
        "answer_seen": outcome.answer_seen,
    }
