"""Small built-in programs used by the docs, demos, and tests."""

from __future__ import annotations

from .logic import Atom, Const, Predicate, Program, Rule, Var


def _a(pred: str, *names: str) -> Atom:
    return Atom(pred, tuple(Const(n) for n in names))


def ancestry_program() -> Program:
    """Four parent facts and two ancestry rules over five people.

    The default goal (an ancestry spanning three generations) has a unique
    shortest derivation of depth 3.
    """
    X, Y, Z = Var("X"), Var("Y"), Var("Z")
    parent, ancestor = "parent", "ancestor"
    return Program(
        predicates=[
            Predicate(parent, 2, "{0} is a parent of {1}"),
            Predicate(ancestor, 2, "{0} is an ancestor of {1}"),
        ],
        constants=["terah", "abraham", "ishmael", "isaac", "jacob"],
        rules=[
            Rule((Atom(parent, (X, Y)),), Atom(ancestor, (X, Y))),
            Rule(
                (Atom(parent, (X, Y)), Atom(ancestor, (Y, Z))),
                Atom(ancestor, (X, Z)),
            ),
        ],
        axioms=[
            _a(parent, "terah", "abraham"),
            _a(parent, "abraham", "ishmael"),
            _a(parent, "abraham", "isaac"),
            _a(parent, "isaac", "jacob"),
        ],
        goal=_a(ancestor, "terah", "jacob"),
        program_id="ancestry",
    )


def attributes_program() -> Program:
    """Unary attribute rules over four people, one of them mentioned by name
    in a ground rule. The default goal has a 3-step shortest proof."""
    X = Var("X")

    def u(pred: str, arg) -> Atom:
        return Atom(pred, (arg,))

    preds = ["blue", "furry", "nice", "big", "cold", "quiet", "smart"]
    gary = Const("gary")
    return Program(
        predicates=[Predicate(p, 1, "{0} is " + p) for p in preds],
        constants=["bob", "erin", "gary", "harry"],
        rules=[
            Rule((u("blue", X),), u("furry", X)),
            Rule((u("nice", X),), u("furry", X)),
            Rule((u("blue", X), u("big", X)), u("nice", X)),
            Rule((u("cold", X),), u("quiet", X)),
            Rule((u("nice", X), u("furry", X)), u("cold", X)),
            Rule((u("nice", gary),), u("smart", gary)),
            Rule((u("cold", X),), u("furry", X)),
            Rule((u("cold", X), u("furry", X)), u("quiet", X)),
        ],
        axioms=[
            _a("cold", "bob"),
            _a("nice", "erin"),
            _a("nice", "gary"),
            _a("blue", "harry"),
        ],
        goal=_a("quiet", "gary"),
        program_id="attributes",
    )
