"""Generalized A* over the implicit proof hypergraph.

The hypergraph is never materialized: popping an item triggers on-the-fly
enumeration of the rule instantiations it unlocks against the chart. The
agenda uses lazy deletion (re-push on weight improvement, discard stale
entries at pop), and ties are broken first by lower heuristic value, then
last-in-first-out.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Optional

from .logic import (
    DEPTH_COST,
    INF,
    Atom,
    CostFunction,
    Program,
    ProgramError,
    UnprovableGoalError,
    apply_substitution,
    join_premises,
    match,
)
from .tracing import ProofStep, SearchTrace


class _ZeroHeuristic:
    kind = "zero"

    def value(self, atom: Atom):
        return 0


@dataclass
class SearchResult:
    goal: Optional[Atom]
    weight: "int | float"  # weight of the goal's shortest proof, or INF
    trace: SearchTrace
    popped: list[Atom]
    chart: set[Atom]
    weights: dict  # Atom -> weight at the time it entered the chart
    backpointers: dict  # Atom -> ProofStep that set its final weight

    @property
    def provable(self) -> bool:
        return self.weight != INF


def astar(
    program: Program,
    goal: Optional[Atom] = None,
    heuristic=None,
    cost: CostFunction = DEPTH_COST,
    exhaustive: bool = False,
) -> SearchResult:
    """Run agenda-based forward chaining with priorities w + h.

    Terminates on popping the goal unless ``exhaustive`` is set (in which
    case the whole reachable, non-pruned space is charted). Items with
    h = infinity are never pushed.
    """
    if goal is not None and goal not in program.herbrand_base():
        raise ProgramError(f"goal {goal} is not in the Herbrand base")
    h = heuristic if heuristic is not None else _ZeroHeuristic()

    weights: dict[Atom, "int | float"] = {}
    chart: set[Atom] = set()
    chart_index: dict[str, list[Atom]] = {}
    popped: list[Atom] = []
    steps: list[ProofStep] = []
    backpointers: dict[Atom, ProofStep] = {}
    agenda: list = []
    counter = itertools.count()

    def push(atom: Atom, w) -> None:
        hv = h.value(atom)
        # -count: among equal (f, h) the most recent push pops first
        heappush(agenda, (w + hv, hv, -next(counter), id(atom), atom))

    # Axioms enter in declaration order; a goal that is itself an axiom is
    # pushed last so that LIFO tie-breaking pops it before any rule fires.
    init = [a for a in program.axioms if a != goal]
    if goal is not None and goal in program.axiom_set:
        init.append(goal)
    for axiom in init:
        if h.value(axiom) == INF:
            continue
        weights[axiom] = cost.axiom_weight
        push(axiom, weights[axiom])

    def result(weight) -> SearchResult:
        return SearchResult(
            goal=goal,
            weight=weight,
            trace=SearchTrace(tuple(steps), goal, program.id),
            popped=popped,
            chart=chart,
            weights=weights,
            backpointers=backpointers,
        )

    while agenda:
        _f, _h, _c, _i, atom = heappop(agenda)
        if atom in chart:
            continue  # stale lazy-deletion entry
        chart.add(atom)
        chart_index.setdefault(atom.predicate, []).append(atom)
        popped.append(atom)
        if not exhaustive and atom == goal:
            return result(weights[atom])
        for rule, slot in program.rules_for_premise(atom.predicate):
            fired = set()
            seed = match(rule.premises[slot], atom)
            if seed is None:
                continue
            rest = rule.premises[:slot] + rule.premises[slot + 1 :]
            for sub in join_premises(rest, chart_index, seed):
                prems = tuple(apply_substitution(p, sub) for p in rule.premises)
                conclusion = apply_substitution(rule.conclusion, sub)
                key = (prems, conclusion)
                if key in fired:
                    continue
                fired.add(key)
                new_w = cost.combine([weights[p] for p in prems])
                if conclusion in chart or new_w >= weights.get(conclusion, INF):
                    continue
                if h.value(conclusion) == INF:
                    continue  # pruned: can never reach the goal
                weights[conclusion] = new_w
                step = ProofStep(prems, rule.index, conclusion)
                backpointers[conclusion] = step
                steps.append(step)
                push(conclusion, new_w)

    return result(weights.get(goal, INF) if goal is not None else INF)


def extract_shortest_proof(result: SearchResult) -> list[ProofStep]:
    """Backward-traverse backpointers from the goal, premises first."""
    if result.goal is None or result.weight == INF:
        raise UnprovableGoalError("no finite-weight goal to extract a proof for")
    out: list[ProofStep] = []
    emitted: set[Atom] = set()

    def visit(atom: Atom) -> None:
        if atom in emitted:
            return
        emitted.add(atom)
        step = result.backpointers.get(atom)
        if step is None:
            return  # axiom
        for prem in step.premises:
            visit(prem)
        out.append(step)

    visit(result.goal)
    return out


def shortest_proof_trace(
    program: Program,
    goal: Atom,
    cost: CostFunction = DEPTH_COST,
) -> SearchTrace:
    """The shortest proof of ``goal`` in trace form (empty if goal is an axiom)."""
    result = astar(program, goal, cost=cost)
    steps = extract_shortest_proof(result)
    return SearchTrace(tuple(steps), goal, program.id)


def minimal_model(program: Program, cost: CostFunction = DEPTH_COST) -> dict:
    """Inside weights of every atom in the minimal Herbrand model.

    Computed by exhaustive agenda relaxation with the zero heuristic, which
    is consistent, so each weight is final when the atom enters the chart.
    """
    result = astar(program, goal=None, heuristic=None, cost=cost, exhaustive=True)
    return {atom: result.weights[atom] for atom in result.chart}
