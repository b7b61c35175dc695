"""Heuristic tables: zero, unary-dependency relaxation, and true cost-to-go."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .logic import (
    DEPTH_COST,
    INF,
    Atom,
    CostFunction,
    Program,
    ProgramError,
    all_rule_groundings,
    ground_instantiations,
    weight_to_json,
)
from .search import minimal_model


@dataclass
class HeuristicTable:
    """Per-atom cost-to-go estimates for a fixed goal.

    Atoms absent from ``values`` take ``default`` (0 for the zero heuristic,
    infinity for the informed ones).
    """

    kind: str  # "zero" | "dependency" | "true"
    goal: Optional[Atom]
    values: dict = field(default_factory=dict)
    default: "int | float" = INF
    provable: bool = True

    def value(self, atom: Atom):
        return self.values.get(atom, self.default)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "goal": str(self.goal) if self.goal is not None else None,
            "provable": self.provable,
            "values": {
                str(a): weight_to_json(v) for a, v in sorted(
                    self.values.items(), key=lambda kv: str(kv[0])
                )
            },
        }


def zero_heuristic(program: Program, goal: Optional[Atom] = None) -> HeuristicTable:
    """h = 0 everywhere: uninformed search."""
    return HeuristicTable("zero", goal, values={}, default=0)


def dependency_heuristic(program: Program, goal: Atom) -> HeuristicTable:
    """Cost-to-go in the unary relaxation of the program.

    Every ground instantiation over the full Herbrand base contributes one
    unit-cost edge per premise slot, from premise to conclusion; h is the
    shortest edge-path distance to the goal, found by backward BFS.
    """
    if goal not in program.herbrand_base():
        raise ProgramError(f"goal {goal} is not in the Herbrand base")
    predecessors: dict[Atom, set[Atom]] = {}
    for rule in program.rules:
        for prems, conclusion in all_rule_groundings(program, rule):
            bucket = predecessors.setdefault(conclusion, set())
            bucket.update(prems)
    dist = {goal: 0}
    queue = deque([goal])
    while queue:
        node = queue.popleft()
        for prev in predecessors.get(node, ()):
            if prev not in dist:
                dist[prev] = dist[node] + 1
                queue.append(prev)
    return HeuristicTable("dependency", goal, values=dist, default=INF)


def true_cost_to_go(
    program: Program, goal: Atom, cost: CostFunction = DEPTH_COST
) -> HeuristicTable:
    """h = w*_G - w on atoms in some shortest proof of the goal, infinity elsewhere.

    On-path atoms are found by backward traversal from the goal across tight
    instantiations (those whose combined premise weight equals the
    conclusion's weight). If the goal is unprovable the table is flagged and
    every atom gets infinity.
    """
    if goal not in program.herbrand_base():
        raise ProgramError(f"goal {goal} is not in the Herbrand base")
    weights = minimal_model(program, cost)
    if goal not in weights:
        return HeuristicTable("true", goal, values={}, default=INF, provable=False)
    goal_weight = weights[goal]

    # conclusion -> tight instantiations' premise tuples
    tight: dict[Atom, list[tuple[Atom, ...]]] = {}
    for _rule, prems, conclusion in ground_instantiations(program, weights):
        if cost.combine([weights[p] for p in prems]) == weights[conclusion]:
            tight.setdefault(conclusion, []).append(prems)

    marked = {goal}
    stack = [goal]
    while stack:
        node = stack.pop()
        for prems in tight.get(node, ()):
            for prem in prems:
                if prem not in marked:
                    marked.add(prem)
                    stack.append(prem)

    values = {atom: goal_weight - weights[atom] for atom in marked}
    return HeuristicTable("true", goal, values=values, default=INF)


# ---------------------------------------------------------------------------
# Admissibility / consistency reports


@dataclass
class HeuristicReport:
    passed: bool
    violations: list

    def to_json(self) -> dict:
        return {"passed": self.passed, "violations": self.violations}


def check_consistency(
    heuristic: HeuristicTable, program: Program, cost: CostFunction = DEPTH_COST
) -> HeuristicReport:
    """Check the triangle-style inequality on every finite-h instantiation in M.

    Uses true inside weights; an instantiation with any infinite heuristic
    value among its atoms is skipped (pruning handles those).
    """
    weights = minimal_model(program, cost)
    violations = []
    for rule, prems, conclusion in ground_instantiations(program, weights):
        hs = [heuristic.value(p) for p in prems]
        hc = heuristic.value(conclusion)
        if hc == INF or any(h == INF for h in hs):
            continue
        combined = cost.combine([weights[p] for p in prems])
        for prem, h in zip(prems, hs):
            if weights[prem] + h > combined + hc:
                violations.append(
                    {
                        "rule_index": rule.index,
                        "premise": str(prem),
                        "conclusion": str(conclusion),
                        "lhs": weights[prem] + h,
                        "rhs": combined + hc,
                    }
                )
    return HeuristicReport(not violations, violations)


def check_admissibility(
    heuristic: HeuristicTable,
    program: Program,
    goal: Atom,
    cost: CostFunction = DEPTH_COST,
) -> HeuristicReport:
    """Check h <= true cost-to-go pointwise over the minimal model."""
    reference = true_cost_to_go(program, goal, cost)
    if not reference.provable:
        raise ProgramError(f"goal {goal} is not provable")
    weights = minimal_model(program, cost)
    violations = []
    for atom in weights:
        true_h = reference.value(atom)
        if true_h == INF:
            continue  # infinity dominates every estimate
        h = heuristic.value(atom)
        if h > true_h:
            violations.append({"atom": str(atom), "h": h, "true": true_h})
    return HeuristicReport(not violations, violations)


# ---------------------------------------------------------------------------
# Memoized construction (reward scoring reuses tables across many candidates)

_TABLE_CACHE: dict = {}


def get_heuristic(
    program: Program,
    goal: Optional[Atom],
    kind: str,
    cost: CostFunction = DEPTH_COST,
) -> HeuristicTable:
    """Build-or-fetch a heuristic table keyed by (program, goal, kind, cost).

    Concurrent duplicate construction is idempotent; last writer wins.
    """
    key = (program.fingerprint(), goal, kind, cost.kind)
    table = _TABLE_CACHE.get(key)
    if table is None:
        if kind == "zero":
            table = zero_heuristic(program, goal)
        elif kind == "dependency":
            table = dependency_heuristic(program, goal)
        elif kind in ("true", "true-cost-to-go"):
            table = true_cost_to_go(program, goal, cost)
        else:
            raise ValueError(f"unknown heuristic kind: {kind!r}")
        _TABLE_CACHE[key] = table
    return table
