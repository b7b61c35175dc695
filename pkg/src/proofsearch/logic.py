"""Core representations for logic programs: terms, atoms, rules, programs.

Constants and variables live in disjoint namespaces. In the textual syntax,
identifiers starting with an uppercase letter are variables and everything
else is a constant (the usual logic-programming convention).

Weights are nonnegative integers plus the distinguished value ``INF``; both
cost functions in use produce integers, so comparisons are exact.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

INF = float("inf")

Weight = "int | float"


class ProgramError(ValueError):
    """Raised when a program document violates its declared vocabulary."""


class UnprovableGoalError(ValueError):
    """Raised when an operation requires a provable goal and the goal is not."""


# ---------------------------------------------------------------------------
# Terms and atoms


@dataclass(frozen=True)
class Term:
    kind: str  # "const" | "var"
    name: str

    def __post_init__(self):
        if self.kind not in ("const", "var"):
            raise ProgramError(f"bad term kind: {self.kind!r}")

    @property
    def is_var(self) -> bool:
        return self.kind == "var"

    def __str__(self) -> str:
        return self.name


def Const(name: str) -> Term:
    return Term("const", name)


def Var(name: str) -> Term:
    return Term("var", name)


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

    @property
    def is_ground(self) -> bool:
        return all(not t.is_var for t in self.args)

    def variables(self) -> set[str]:
        return {t.name for t in self.args if t.is_var}

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({', '.join(str(t) for t in self.args)})"


@dataclass(frozen=True)
class Rule:
    premises: tuple[Atom, ...]
    conclusion: Atom
    index: int = 0

    def __post_init__(self):
        if len(self.premises) < 1:
            raise ProgramError("a rule needs at least one premise; ground facts go in the axioms")
        premise_vars = set().union(*(p.variables() for p in self.premises))
        missing = self.conclusion.variables() - premise_vars
        if missing:
            raise ProgramError(
                f"rule {self.index} is not range restricted: {sorted(missing)} "
                "appear in the conclusion only"
            )

    def __str__(self) -> str:
        return f"{', '.join(str(p) for p in self.premises)} |- {self.conclusion}"


# ---------------------------------------------------------------------------
# Substitutions

# A substitution maps variable names to terms. Plain dicts keep this light;
# the helpers below enforce the usual discipline (no X -> X bindings, each
# variable bound at most once by construction).

Substitution = dict


def apply_substitution(atom: Atom, sub: Mapping[str, Term]) -> Atom:
    """Replace every bound variable in ``atom``; unbound variables pass through."""
    if not atom.args:
        return atom
    new_args = tuple(sub.get(t.name, t) if t.is_var else t for t in atom.args)
    return Atom(atom.predicate, new_args)


def match(pattern: Atom, ground: Atom, seed: Optional[Mapping[str, Term]] = None):
    """One-sided unification of ``pattern`` against a ground atom.

    Returns the minimal extension of ``seed`` under which the pattern equals
    ``ground``, or None if no such extension exists. No-match is a normal
    outcome, not an error.
    """
    if pattern.predicate != ground.predicate or len(pattern.args) != len(ground.args):
        return None
    out = dict(seed) if seed else {}
    for pat, got in zip(pattern.args, ground.args):
        if pat.is_var:
            bound = out.get(pat.name)
            if bound is None:
                if pat.name != got.name or got.is_var:
                    out[pat.name] = got
            elif bound != got:
                return None
        elif pat != got:
            return None
    return out


# ---------------------------------------------------------------------------
# Cost functions


@dataclass(frozen=True)
class CostFunction:
    """A superior per-rule aggregation: monotone and >= max of its arguments.

    ``depth`` measures proof depth (axioms cost 0); ``vertex`` counts proof
    vertices (axioms cost 1).
    """

    kind: str

    def __post_init__(self):
        if self.kind not in ("depth", "vertex"):
            raise ValueError(f"unknown cost function: {self.kind!r}")

    @property
    def axiom_weight(self) -> int:
        return 0 if self.kind == "depth" else 1

    def combine(self, weights: Sequence) -> "int | float":
        if self.kind == "depth":
            return 1 + max(weights)
        return 1 + sum(weights)


DEPTH_COST = CostFunction("depth")
VERTEX_COST = CostFunction("vertex")


def cost_function(kind: str) -> CostFunction:
    if kind in ("depth", "vertex"):
        return CostFunction(kind)
    if kind in ("vertex-count", "vertices"):
        return VERTEX_COST
    raise ValueError(f"unknown cost function: {kind!r}")


# ---------------------------------------------------------------------------
# Programs


@dataclass(frozen=True)
class Predicate:
    name: str
    arity: int
    template: str  # positional sentence template, e.g. "{0} is a parent of {1}"


class Program:
    """Rules + axioms + vocabulary + sentence templates.

    Immutable after construction (by convention); derived structures such as
    the Herbrand base are cached on first use.
    """

    def __init__(
        self,
        predicates: Sequence[Predicate],
        constants: Sequence[str],
        rules: Sequence[Rule],
        axioms: Sequence[Atom],
        goal: Optional[Atom] = None,
        program_id: Optional[str] = None,
        meta: Optional[dict] = None,
    ):
        self.predicates = {p.name: p for p in predicates}
        if len(self.predicates) != len(predicates):
            raise ProgramError("duplicate predicate declaration")
        self.constants = tuple(dict.fromkeys(constants))
        self.rules = tuple(
            Rule(r.premises, r.conclusion, i) for i, r in enumerate(rules)
        )
        self.axioms = tuple(dict.fromkeys(axioms))
        self.axiom_set = frozenset(self.axioms)
        self.goal = goal
        self.id = program_id
        self.meta = dict(meta or {})
        self._herbrand = None
        self._fingerprint = None
        self._validate()
        # rule index: predicate name -> [(rule, premise slot)]
        self._rules_by_premise: dict[str, list[tuple[Rule, int]]] = {}
        for rule in self.rules:
            for k, prem in enumerate(rule.premises):
                self._rules_by_premise.setdefault(prem.predicate, []).append((rule, k))

    # -- validation

    def _check_atom(self, atom: Atom, where: str) -> None:
        decl = self.predicates.get(atom.predicate)
        if decl is None:
            raise ProgramError(f"{where}: undeclared predicate {atom.predicate!r}")
        if decl.arity != len(atom.args):
            raise ProgramError(
                f"{where}: {atom.predicate!r} used with arity {len(atom.args)}, "
                f"declared {decl.arity}"
            )
        for t in atom.args:
            if not t.is_var and t.name not in self.constants:
                raise ProgramError(f"{where}: undeclared constant {t.name!r}")

    def _validate(self) -> None:
        for rule in self.rules:
            for prem in rule.premises:
                self._check_atom(prem, f"rule {rule.index}")
            self._check_atom(rule.conclusion, f"rule {rule.index}")
        for axiom in self.axioms:
            if not axiom.is_ground:
                raise ProgramError(f"axiom {axiom} is not ground")
            self._check_atom(axiom, "axiom")
        if self.goal is not None:
            if not self.goal.is_ground:
                raise ProgramError(f"goal {self.goal} is not ground")
            self._check_atom(self.goal, "goal")

    # -- derived structure

    def herbrand_base(self) -> frozenset[Atom]:
        """All ground atoms formable from the declared vocabulary."""
        if self._herbrand is None:
            atoms = []
            for pred in self.predicates.values():
                if pred.arity == 0:
                    atoms.append(Atom(pred.name))
                    continue
                for combo in itertools.product(self.constants, repeat=pred.arity):
                    atoms.append(Atom(pred.name, tuple(Const(c) for c in combo)))
            self._herbrand = frozenset(atoms)
        return self._herbrand

    def rules_for_premise(self, predicate: str) -> list[tuple[Rule, int]]:
        return self._rules_by_premise.get(predicate, [])

    def with_goal(self, goal: Atom) -> "Program":
        return Program(
            list(self.predicates.values()),
            self.constants,
            self.rules,
            self.axioms,
            goal=goal,
            program_id=self.id,
            meta=self.meta,
        )

    def fingerprint(self) -> str:
        if self._fingerprint is None:
            doc = program_to_doc(self)
            doc.pop("meta", None)
            blob = json.dumps(doc, sort_keys=True).encode()
            self._fingerprint = hashlib.sha256(blob).hexdigest()
        return self._fingerprint

    def __repr__(self) -> str:
        return (
            f"Program(id={self.id!r}, rules={len(self.rules)}, "
            f"axioms={len(self.axioms)}, goal={self.goal})"
        )


# ---------------------------------------------------------------------------
# Semantics: fixpoint operator and ground instantiation enumeration


def join_premises(
    premises: Sequence[Atom],
    by_predicate: Mapping[str, Sequence[Atom]],
    seed: Optional[Mapping[str, Term]] = None,
) -> Iterator[dict]:
    """Enumerate substitutions grounding all premises against an atom chart.

    ``by_predicate`` indexes available ground atoms by predicate name.
    """
    def rec(i: int, sub: dict) -> Iterator[dict]:
        if i == len(premises):
            yield sub
            return
        for cand in by_predicate.get(premises[i].predicate, ()):
            extended = match(premises[i], cand, sub)
            if extended is not None:
                yield from rec(i + 1, extended)

    yield from rec(0, dict(seed) if seed else {})


def index_by_predicate(atoms: Iterable[Atom]) -> dict[str, list[Atom]]:
    out: dict[str, list[Atom]] = {}
    for atom in atoms:
        out.setdefault(atom.predicate, []).append(atom)
    return out


def fixpoint_step(program: Program, interp: Iterable[Atom]) -> frozenset[Atom]:
    """One application of the immediate-consequence operator."""
    interp = frozenset(interp)
    index = index_by_predicate(interp)
    base = program.herbrand_base()
    out = set(interp)
    for rule in program.rules:
        for sub in join_premises(rule.premises, index):
            conclusion = apply_substitution(rule.conclusion, sub)
            if conclusion in base:
                out.add(conclusion)
    return frozenset(out)


def ground_instantiations(program: Program, atoms: Iterable[Atom]):
    """All ground rule instantiations whose atoms all lie within ``atoms``.

    Yields (rule, premise_tuple, conclusion) triples. The conclusion is
    required to be in ``atoms`` as well.
    """
    universe = frozenset(atoms)
    index = index_by_predicate(universe)
    for rule in program.rules:
        seen = set()
        for sub in join_premises(rule.premises, index):
            prems = tuple(apply_substitution(p, sub) for p in rule.premises)
            conclusion = apply_substitution(rule.conclusion, sub)
            if conclusion not in universe:
                continue
            key = (prems, conclusion)
            if key in seen:
                continue
            seen.add(key)
            yield rule, prems, conclusion


def all_rule_groundings(program: Program, rule: Rule):
    """Every ground instantiation of ``rule`` over the full Herbrand base.

    Unlike :func:`ground_instantiations` this ignores which atoms are
    derivable; used by the relaxed (unary) heuristic graph.
    """
    variables = sorted(
        set().union(*(p.variables() for p in rule.premises)) | rule.conclusion.variables()
    )
    if not variables:
        prems = tuple(rule.premises)
        yield prems, rule.conclusion
        return
    for combo in itertools.product(program.constants, repeat=len(variables)):
        sub = {v: Const(c) for v, c in zip(variables, combo)}
        prems = tuple(apply_substitution(p, sub) for p in rule.premises)
        yield prems, apply_substitution(rule.conclusion, sub)


# ---------------------------------------------------------------------------
# Canonical JSON documents


def atom_to_doc(atom: Atom) -> dict:
    return {
        "pred": atom.predicate,
        "args": [
            {"var": t.name} if t.is_var else {"const": t.name} for t in atom.args
        ],
    }


def atom_from_doc(doc: Mapping) -> Atom:
    args = []
    for arg in doc.get("args", []):
        if "var" in arg:
            args.append(Var(arg["var"]))
        elif "const" in arg:
            args.append(Const(arg["const"]))
        else:
            raise ProgramError(f"bad atom argument: {arg!r}")
    return Atom(doc["pred"], tuple(args))


def program_to_doc(program: Program) -> dict:
    doc = {
        "id": program.id,
        "predicates": [
            {"name": p.name, "arity": p.arity, "template": p.template}
            for p in program.predicates.values()
        ],
        "constants": list(program.constants),
        "rules": [
            {
                "premises": [atom_to_doc(p) for p in r.premises],
                "conclusion": atom_to_doc(r.conclusion),
            }
            for r in program.rules
        ],
        "axioms": [atom_to_doc(a) for a in program.axioms],
    }
    if program.goal is not None:
        doc["goal"] = atom_to_doc(program.goal)
    if program.meta:
        doc["meta"] = program.meta
    return doc


def program_from_doc(doc: Mapping) -> Program:
    try:
        predicates = [
            Predicate(p["name"], int(p["arity"]), p["template"])
            for p in doc["predicates"]
        ]
        rules = []
        for r in doc["rules"]:
            premises = tuple(atom_from_doc(a) for a in r["premises"])
            if not premises:
                raise ProgramError(
                    "premise-free rules are only accepted as ground axioms"
                )
            rules.append(Rule(premises, atom_from_doc(r["conclusion"])))
        axioms = [atom_from_doc(a) for a in doc["axioms"]]
        goal = atom_from_doc(doc["goal"]) if doc.get("goal") else None
    except (KeyError, TypeError) as exc:
        raise ProgramError(f"malformed program document: {exc}") from exc
    return Program(
        predicates,
        list(doc.get("constants", [])),
        rules,
        axioms,
        goal=goal,
        program_id=doc.get("id"),
        meta=doc.get("meta"),
    )


_ATOM_RE = re.compile(r"^\s*([A-Za-z_][\w]*)\s*(?:\(([^()]*)\))?\s*$")


def parse_atom_text(text: str) -> Atom:
    """Parse ``parent(X, isaac)`` style atom text.

    Uppercase-leading identifiers are variables, others constants.
    """
    m = _ATOM_RE.match(text)
    if not m:
        raise ProgramError(f"cannot parse atom: {text!r}")
    pred, argtext = m.group(1), m.group(2)
    args: tuple[Term, ...] = ()
    if argtext is not None and argtext.strip():
        parts = [a.strip() for a in argtext.split(",")]
        args = tuple(Var(a) if a[0].isupper() else Const(a) for a in parts)
    return Atom(pred, args)


def weight_to_json(w):
    return "inf" if w == INF else w


def weight_from_json(v):
    return INF if v == "inf" else v
