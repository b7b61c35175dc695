"""Render programs and search traces as natural-language text.

Each predicate carries one positional sentence template; rule sentences are
composed as "If <p1> and <p2>, then <c>". Rendering is deterministic (one
sentence per atom) and injective over the Herbrand base, which makes exact
inverse parsing possible.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .logic import Atom, Program, Rule
from .tracing import SearchTrace

ANSWER_LINE = "<answer>Therefore, the goal is proven.</answer>"

INSTRUCTION = """\
You will be given a logic program verbalized in natural language, including \
a set of rules and a set of axioms. You will also be given a goal that is \
provable under this logic program. The formatting will be as follows:

Rules: <rule sentence 1>. <rule sentence 2>. ... <rule sentence n>.

Axioms: <axiom sentence 1>. <axiom sentence 2>. ... <axiom sentence m>.

Goal: Prove that <goal>.

Your task is to provide a correct proof of the goal. Each proof step must \
follow this format (one block per step) and be delimited by two new lines:

Premises: <premise sentence 1>. ... <premise sentence k>.

Rule: <rule sentence>.

Conclusion: <conclusion sentence>.

Terminate when the conclusion of a proof step is equal to the goal using \
the tags <answer></answer>."""

ICL_SUFFIX = (
    " Here are a few examples of programs, goals, and proofs separated by"
    " --- for you to learn from:"
)


class TemplateError(ValueError):
    """A predicate lacks a template, or two renderings collide."""


def render_atom(program: Program, atom: Atom, sentence: bool = False) -> str:
    """Fill the predicate's template; sentence casing uppercases the first letter."""
    decl = program.predicates.get(atom.predicate)
    if decl is None:
        raise TemplateError(f"no template for predicate {atom.predicate!r}")
    text = decl.template.format(*(t.name for t in atom.args))
    if sentence and text:
        text = text[0].upper() + text[1:]
    return text


def render_rule(program: Program, rule: Rule) -> str:
    """Compose "If <premises joined by and>, then <conclusion>"."""
    prems = " and ".join(render_atom(program, p) for p in rule.premises)
    return f"If {prems}, then {render_atom(program, rule.conclusion)}"


def check_injectivity(program: Program) -> None:
    """Fail if two Herbrand-base atoms or two rules share a rendering."""
    seen: dict[str, Atom] = {}
    for atom in program.herbrand_base():
        text = render_atom(program, atom)
        other = seen.get(text)
        if other is not None and other != atom:
            raise TemplateError(
                f"atoms {other} and {atom} both render as {text!r}"
            )
        seen[text] = atom
    rules_seen: dict[str, int] = {}
    for rule in program.rules:
        text = render_rule(program, rule)
        if text in rules_seen:
            raise TemplateError(
                f"rules {rules_seen[text]} and {rule.index} both render as {text!r}"
            )
        rules_seen[text] = rule.index


def verbalize_program(program: Program, goal: Optional[Atom] = None) -> str:
    """Emit the Rules / Axioms / Goal sections in declaration order."""
    goal = goal if goal is not None else program.goal
    rules = " ".join(f"{render_rule(program, r)}." for r in program.rules)
    axioms = " ".join(
        f"{render_atom(program, a, sentence=True)}." for a in program.axioms
    )
    lines = [f"Rules: {rules}".rstrip(), f"Axioms: {axioms}".rstrip()]
    if goal is not None:
        lines.append(f"Goal: Prove that {render_atom(program, goal)}.")
    return "\n\n".join(lines)


def verbalize_step(program: Program, step) -> str:
    premises = " ".join(
        f"{render_atom(program, p, sentence=True)}." for p in step.premises
    )
    rule = program.rules[step.rule_index]
    return (
        f"Premises: {premises}\n"
        f"Rule: {render_rule(program, rule)}.\n"
        f"Conclusion: {render_atom(program, step.conclusion, sentence=True)}."
    )


def verbalize_trace(trace: SearchTrace, program: Program) -> str:
    """One block per step, blank-line separated, with a closing answer tag
    when the trace proves its goal (an empty trace is a degenerate proof of
    an axiom goal)."""
    blocks = [verbalize_step(program, step) for step in trace.steps]
    concluded = not trace.steps or (
        trace.goal is not None and trace.steps[-1].conclusion == trace.goal
    )
    if concluded:
        blocks.append(ANSWER_LINE)
    return "\n\n".join(blocks)


def assemble_prompt(
    program: Program,
    goal: Optional[Atom] = None,
    examples: Sequence[tuple[Program, SearchTrace]] = (),
) -> str:
    """Instruction preamble, optional worked examples separated by ---, then
    the problem text."""
    instruction = INSTRUCTION + (ICL_SUFFIX if examples else "")
    parts = [instruction]
    for ex_program, ex_trace in examples:
        parts.append(
            verbalize_program(ex_program, ex_trace.goal)
            + "\n\n"
            + verbalize_trace(ex_trace, ex_program)
        )
        parts.append("---")
    parts.append(verbalize_program(program, goal))
    return "\n\n".join(parts)
