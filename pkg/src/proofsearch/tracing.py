"""Search traces, proof steps, and efficiency metrics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .logic import INF, Atom, atom_from_doc, atom_to_doc, weight_to_json


class InvalidTraceError(ValueError):
    """A trace references atoms outside the minimal model; verify it first."""


@dataclass(frozen=True)
class ProofStep:
    """One recorded push: the premises used, the rule applied, the conclusion."""

    premises: tuple[Atom, ...]
    rule_index: int
    conclusion: Atom

    def __str__(self) -> str:
        prems = ", ".join(str(p) for p in self.premises)
        return f"push(({prems}), r{self.rule_index}, {self.conclusion})"


@dataclass(frozen=True)
class SearchTrace:
    """Ordered pushes recorded during search. May be empty (goal is an axiom)."""

    steps: tuple[ProofStep, ...]
    goal: Optional[Atom] = None
    program_id: Optional[str] = None

    def __len__(self) -> int:
        return len(self.steps)

    def extended(self, *steps: ProofStep) -> "SearchTrace":
        return SearchTrace(self.steps + tuple(steps), self.goal, self.program_id)


def pops_set(trace: SearchTrace) -> frozenset[Atom]:
    """The unique premises across all steps: the minimal set of popped items."""
    out: set[Atom] = set()
    for step in trace.steps:
        out.update(step.premises)
    return frozenset(out)


def raw_score(trace: SearchTrace, weights, heuristic, h_cap=None):
    """Sum of priority values w + h over the trace's minimal pop set.

    Returns INF if any popped atom has infinite heuristic value (unless
    ``h_cap`` substitutes a finite cap). Popped atoms outside the weight
    table signal an unverified trace.
    """
    total = 0
    for atom in pops_set(trace):
        w = weights.get(atom)
        if w is None or w == INF:
            raise InvalidTraceError(f"popped atom {atom} is not derivable")
        h = heuristic.value(atom)
        if h == INF:
            if h_cap is None:
                return INF
            h = h_cap
        total += w + h
    return total


def efficiency(trace: SearchTrace, shortest: SearchTrace, mode: str = "pushes") -> float:
    """Shortest-to-candidate count ratio, clamped to [0, 1].

    ``pushes`` compares step counts, ``pops`` compares minimal pop sets.
    Only meaningful for verified-correct traces.
    """
    if mode == "pushes":
        ref, got = len(shortest.steps), len(trace.steps)
    elif mode == "pops":
        ref, got = len(pops_set(shortest)), len(pops_set(trace))
    else:
        raise ValueError(f"unknown efficiency mode: {mode!r}")
    if got == 0:
        if ref == 0:
            return 1.0
        raise ValueError("empty candidate trace with a nonempty shortest proof")
    return min(1.0, ref / got)


def verbalization_length(trace: SearchTrace) -> int:
    """Number of atom verbalizations in the rendered trace: 2K + 2 per step."""
    return sum(2 * len(step.premises) + 2 for step in trace.steps)


def final_pushes(trace: SearchTrace) -> SearchTrace:
    """Drop pushes superseded by a later re-push of the same conclusion."""
    keep = []
    seen: set[Atom] = set()
    for step in reversed(trace.steps):
        if step.conclusion in seen:
            continue
        seen.add(step.conclusion)
        keep.append(step)
    return SearchTrace(tuple(reversed(keep)), trace.goal, trace.program_id)


# ---------------------------------------------------------------------------
# JSON documents


def step_to_doc(step: ProofStep) -> dict:
    return {
        "premises": [atom_to_doc(p) for p in step.premises],
        "rule_index": step.rule_index,
        "conclusion": atom_to_doc(step.conclusion),
    }


def step_from_doc(doc) -> ProofStep:
    return ProofStep(
        tuple(atom_from_doc(a) for a in doc["premises"]),
        int(doc["rule_index"]),
        atom_from_doc(doc["conclusion"]),
    )


def trace_to_doc(trace: SearchTrace, weight=None) -> dict:
    doc = {
        "steps": [step_to_doc(s) for s in trace.steps],
        "goal": atom_to_doc(trace.goal) if trace.goal is not None else None,
    }
    if weight is not None:
        doc["weight"] = weight_to_json(weight)
    return doc


def trace_from_doc(doc, program_id=None) -> SearchTrace:
    goal = atom_from_doc(doc["goal"]) if doc.get("goal") else None
    return SearchTrace(
        tuple(step_from_doc(s) for s in doc["steps"]), goal, program_id
    )
