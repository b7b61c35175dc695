"""Independent oracles and generators shared across tests.

The oracles deliberately avoid the package's search/join machinery: weights
come from naive iterated relaxation over explicitly enumerated rule
groundings, and on-path sets come from explicit proof-tree enumeration.
"""

from __future__ import annotations

import itertools
import random

from proofsearch.logic import Atom, Const, Predicate, Program, Rule, Var

INF = float("inf")


def _own_groundings(program):
    """Enumerate every ground rule instantiation by brute substitution."""
    out = []
    for rule in program.rules:
        variables = sorted(
            set().union(*(p.variables() for p in rule.premises))
            | rule.conclusion.variables()
        )

        def ground(atom, sub):
            args = tuple(
                Const(sub[t.name]) if t.is_var else t for t in atom.args
            )
            return Atom(atom.predicate, args)

        if not variables:
            out.append((tuple(rule.premises), rule.conclusion))
            continue
        for combo in itertools.product(program.constants, repeat=len(variables)):
            sub = dict(zip(variables, combo))
            prems = tuple(ground(p, sub) for p in rule.premises)
            out.append((prems, ground(rule.conclusion, sub)))
    return out


def oracle_weights(program, cost_kind="depth"):
    """Inside weights by repeated full relaxation until a fixed point."""
    axiom_w = 0 if cost_kind == "depth" else 1
    weights = {a: axiom_w for a in program.axioms}
    groundings = _own_groundings(program)
    changed = True
    while changed:
        changed = False
        for prems, conc in groundings:
            if any(p not in weights for p in prems):
                continue
            ws = [weights[p] for p in prems]
            new = 1 + (max(ws) if cost_kind == "depth" else sum(ws))
            if new < weights.get(conc, INF):
                weights[conc] = new
                changed = True
    return weights


def oracle_proof_trees(program, goal, cost_kind="depth", cap=10000):
    """All derivation trees of ``goal`` as (depth, atoms-used) pairs.

    Trees never repeat an atom along a root-to-leaf path (cycles only
    deepen a proof, so pruning them preserves all shortest trees).
    """
    groundings = _own_groundings(program)
    by_conclusion = {}
    for prems, conc in groundings:
        by_conclusion.setdefault(conc, []).append(prems)
    axioms = set(program.axioms)
    results = []

    def expand(atom, path):
        if atom in axioms:
            yield (0 if cost_kind == "depth" else 1), frozenset({atom})
            if atom not in by_conclusion:
                return
        for prems in by_conclusion.get(atom, ()):
            if any(p in path for p in prems):
                continue
            subtree_options = [
                list(expand(p, path | {atom})) for p in prems
            ]
            if any(not opts for opts in subtree_options):
                continue
            for combo in itertools.product(*subtree_options):
                depths = [d for d, _ in combo]
                cost = 1 + (max(depths) if cost_kind == "depth" else sum(depths))
                atoms = frozenset({atom}).union(*(a for _, a in combo))
                yield cost, atoms

    for tree in expand(goal, frozenset()):
        results.append(tree)
        if len(results) > cap:
            raise RuntimeError("proof enumeration blew the cap")
    return results


def oracle_on_path(program, goal, cost_kind="depth"):
    """Atoms that appear in at least one shortest proof of the goal."""
    trees = oracle_proof_trees(program, goal, cost_kind)
    if not trees:
        return frozenset()
    best = min(d for d, _ in trees)
    out = frozenset()
    for depth, atoms in trees:
        if depth == best:
            out |= atoms
    return out


def gen_var_chain(rng: random.Random, depth=3, distractors=2, binary=True):
    """A small variable-rule program: a chain of unary predicates over a few
    entities, optional two-premise steps, and dead-end distractor chains."""
    X = Var("X")
    entities = ["e1", "e2", "e3"]
    preds = [f"p{i}" for i in range(depth + 1)]
    dpreds = [f"d{i}" for i in range(distractors)]
    adjectives = [
        "red", "tall", "old", "wise", "glad", "shy", "neat", "spry",
        "fond", "deft", "hale", "apt", "keen2", "warm2", "calm2", "big2",
    ]
    rng.shuffle(adjectives)
    names = preds + dpreds
    aux_names = []
    predicates = []
    rules = []
    axioms = [Atom(preds[0], (Const("e1"),))]

    for i in range(depth):
        if binary and i > 0 and rng.random() < 0.4:
            aux = f"aux{i}"
            aux_names.append(aux)
            rules.append(
                Rule(
                    (Atom(preds[i], (X,)), Atom(aux, (X,))),
                    Atom(preds[i + 1], (X,)),
                )
            )
            axioms.append(Atom(aux, (Const("e1"),)))
        else:
            rules.append(Rule((Atom(preds[i], (X,)),), Atom(preds[i + 1], (X,))))
    prev = preds[0]
    for d in dpreds:
        rules.append(Rule((Atom(prev, (X,)),), Atom(d, (X,))))
        prev = d

    for j, name in enumerate(names + aux_names):
        predicates.append(Predicate(name, 1, "{0} is " + adjectives[j % len(adjectives)] + f"_{j}"))

    return Program(
        predicates,
        entities,
        rules,
        axioms,
        goal=Atom(preds[depth], (Const("e1"),)),
        program_id=f"varchain-{rng.random():.8f}",
    )
