"""Parse verbalized candidate traces back into proof steps and adjudicate them.

Sentence inversion is table lookup: every Herbrand-base atom and every rule
is rendered once (injectivity is checked) and matched case-insensitively on
the leading letter, ignoring surrounding whitespace and the trailing period.
Arbitrary text between proof-step blocks is ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .logic import Atom, Program, apply_substitution, match
from .tracing import ProofStep
from .verbalize import check_injectivity, render_atom, render_rule

_BLOCK_RE = re.compile(
    r"Premises:[ \t]*(?P<prem>[^\n]*)\n\s*"
    r"Rule:[ \t]*(?P<rule>[^\n]*)\n\s*"
    r"Conclusion:[ \t]*(?P<conc>[^\n]*)"
)
_ANSWER_RE = re.compile(r"<answer>")
_WS_RE = re.compile(r"\s+")


@dataclass
class ParseOutcome:
    steps: list[ProofStep] = field(default_factory=list)
    diagnostics: list[dict] = field(default_factory=list)
    answer_seen: bool = False


@dataclass
class Verdict:
    correct: bool
    failure: Optional[str] = None  # e.g. "invalid-step:2", "goal-not-concluded"
    failure_index: Optional[int] = None
    mode: str = "strict"

    def to_json(self) -> dict:
        return {
            "correct": self.correct,
            "failure": self.failure,
            "failure_index": self.failure_index,
            "mode": self.mode,
        }


def _normalize(sentence: str) -> str:
    text = _WS_RE.sub(" ", sentence).strip()
    if text.endswith("."):
        text = text[:-1].rstrip()
    if text:
        text = text[0].lower() + text[1:]
    return text


_LOOKUP_CACHE: dict = {}


def _lookup_tables(program: Program):
    key = program.fingerprint()
    cached = _LOOKUP_CACHE.get(key)
    if cached is None:
        check_injectivity(program)
        atoms = {
            _normalize(render_atom(program, atom)): atom
            for atom in program.herbrand_base()
        }
        rules = {
            _normalize(render_rule(program, rule)): rule for rule in program.rules
        }
        cached = (atoms, rules)
        _LOOKUP_CACHE[key] = cached
    return cached


def parse_trace(text: str, program: Program) -> ParseOutcome:
    """Scan for Premises/Rule/Conclusion blocks up to the first answer tag."""
    atoms, rules = _lookup_tables(program)
    outcome = ParseOutcome()
    answer = _ANSWER_RE.search(text)
    if answer:
        outcome.answer_seen = True
        text = text[: answer.start()]

    matched_labels = 0
    for block_no, m in enumerate(_BLOCK_RE.finditer(text)):
        matched_labels += 1
        bad = False
        premises = []
        for sent in m.group("prem").split("."):
            sent = _normalize(sent)
            if not sent:
                continue
            atom = atoms.get(sent)
            if atom is None:
                outcome.diagnostics.append(
                    {"block": block_no, "kind": "unknown-atom", "text": sent}
                )
                bad = True
                continue
            premises.append(atom)
        rule = rules.get(_normalize(m.group("rule")))
        if rule is None:
            outcome.diagnostics.append(
                {
                    "block": block_no,
                    "kind": "unknown-rule",
                    "text": _normalize(m.group("rule")),
                }
            )
            bad = True
        conclusion = atoms.get(_normalize(m.group("conc")))
        if conclusion is None:
            outcome.diagnostics.append(
                {
                    "block": block_no,
                    "kind": "unknown-atom",
                    "text": _normalize(m.group("conc")),
                }
            )
            bad = True
        if not premises:
            outcome.diagnostics.append({"block": block_no, "kind": "empty-premises"})
            bad = True
        if not bad:
            outcome.steps.append(ProofStep(tuple(premises), rule.index, conclusion))

    stray = len(re.findall(r"Premises:", text)) - matched_labels
    for _ in range(max(0, stray)):
        outcome.diagnostics.append({"block": None, "kind": "malformed-block"})
    return outcome


def _valid_instantiation(program: Program, step: ProofStep) -> bool:
    """Does the step ground its rule under a single substitution?"""
    if not 0 <= step.rule_index < len(program.rules):
        return False
    rule = program.rules[step.rule_index]
    if len(rule.premises) != len(step.premises):
        return False
    sub: dict = {}
    for pattern, got in zip(rule.premises, step.premises):
        if not got.is_ground:
            return False
        sub = match(pattern, got, sub)
        if sub is None:
            return False
    return apply_substitution(rule.conclusion, sub) == step.conclusion


def _goal_cone(steps: list[ProofStep], goal_index: int, axioms) -> list[int]:
    """Indices of the steps the goal-concluding step transitively depends on."""
    needed = set(steps[goal_index].premises) - set(axioms)
    cone = [goal_index]
    for j in range(goal_index - 1, -1, -1):
        if steps[j].conclusion in needed:
            cone.append(j)
            needed.discard(steps[j].conclusion)
            needed.update(set(steps[j].premises) - set(axioms))
    return sorted(cone)


def adjudicate(
    outcome: ParseOutcome,
    program: Program,
    goal: Atom,
    mode: str = "strict",
) -> Verdict:
    """Decide whether the parsed steps constitute a valid proof of the goal.

    Strict mode requires a clean parse and validity of every step; goal-cone
    mode checks only the steps the goal conclusion depends on, tolerating
    noise elsewhere (which still degrades efficiency scores).
    """
    if mode not in ("strict", "goal-cone"):
        raise ValueError(f"unknown adjudication mode: {mode!r}")
    steps = outcome.steps
    goal_is_axiom = goal in program.axiom_set

    if mode == "strict":
        if outcome.diagnostics:
            return Verdict(False, "parse-failure", mode=mode)
        available = set(program.axiom_set)
        concluded_goal = goal_is_axiom
        for i, step in enumerate(steps):
            if not _valid_instantiation(program, step):
                return Verdict(False, f"invalid-step:{i}", failure_index=i, mode=mode)
            for prem in step.premises:
                if prem not in available:
                    return Verdict(
                        False, f"premise-unavailable:{i}", failure_index=i, mode=mode
                    )
            available.add(step.conclusion)
            if step.conclusion == goal:
                concluded_goal = True
        if not concluded_goal:
            return Verdict(False, "goal-not-concluded", mode=mode)
        return Verdict(True, mode=mode)

    # goal-cone
    goal_index = next(
        (i for i, s in enumerate(steps) if s.conclusion == goal), None
    )
    if goal_index is None:
        if goal_is_axiom:
            return Verdict(True, mode=mode)
        return Verdict(False, "goal-not-concluded", mode=mode)
    cone = _goal_cone(steps, goal_index, program.axiom_set)
    available = set(program.axiom_set)
    for i in cone:
        step = steps[i]
        if not _valid_instantiation(program, step):
            return Verdict(False, f"invalid-step:{i}", failure_index=i, mode=mode)
        for prem in step.premises:
            if prem not in available:
                return Verdict(
                    False, f"premise-unavailable:{i}", failure_index=i, mode=mode
                )
        available.add(step.conclusion)
    return Verdict(True, mode=mode)


def verify_text(
    text: str, program: Program, goal: Optional[Atom] = None, mode: str = "strict"
) -> tuple[ParseOutcome, Verdict]:
    """Parse a candidate and adjudicate it against the program's goal."""
    goal = goal if goal is not None else program.goal
    if goal is None:
        raise ValueError("no goal given and the program declares none")
    outcome = parse_trace(text, program)
    return outcome, adjudicate(outcome, program, goal, mode)
