"""Synthetic problem generation and training-file export.

Generated instances are single-axiom branching graphs: one main chain of
unary rules of the configured depth, plus distractor chains branching off
the axiom. Atoms are propositional (0-ary predicates) with person/adjective
sentence templates; variable-rule programs enter through the canonical JSON
loader instead.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, TextIO

from .logic import Atom, Predicate, Program, Rule, program_to_doc
from .search import astar, shortest_proof_trace
from .heuristics import get_heuristic
from .verbalize import assemble_prompt, verbalize_trace

NAME_POOL = (
    "alice", "bob", "carol", "dave", "erin", "frank", "grace", "heidi",
    "ivan", "judy", "kara", "liam", "mona", "nils", "olga", "pete",
    "quinn", "rosa", "sven", "tara", "ursa", "vera", "wade", "xena",
    "yuri", "zane", "amir", "bela", "cleo", "dina", "emil", "fay",
)

ADJECTIVE_POOL = (
    "happy", "quiet", "brave", "calm", "eager", "fast", "gentle", "honest",
    "kind", "lively", "merry", "nimble", "patient", "proud", "quick",
    "sturdy", "tidy", "warm", "witty", "young", "bold", "bright", "clever",
    "daring", "earnest", "fierce", "graceful", "humble", "jolly", "keen",
    "loyal", "modest", "noble", "polite", "serene", "shrewd", "steady",
    "subtle", "tender", "vivid",
)


def _as_range(value) -> tuple[int, int]:
    if isinstance(value, int):
        return value, value
    lo, hi = value
    return int(lo), int(hi)


@dataclass(frozen=True)
class GenConfig:
    """Parameters for chain-with-distractors generation.

    ``lookahead`` (proof depth) and ``branching`` (distractor count) may be
    single integers or inclusive (lo, hi) ranges sampled uniformly per
    instance. ``distractor_len`` defaults to the instance's lookahead so
    distractors are not trivially prunable by weight.
    """

    lookahead: "int | tuple[int, int]" = 5
    branching: "int | tuple[int, int]" = 4
    distractor_len: Optional[int] = None
    count: int = 1
    seed: int = 0
    names: Sequence[str] = NAME_POOL
    adjectives: Sequence[str] = ADJECTIVE_POOL

    def __post_init__(self):
        lo, _hi = _as_range(self.lookahead)
        if lo < 1:
            raise ValueError("lookahead must be positive")
        blo, _bhi = _as_range(self.branching)
        if blo < 0:
            raise ValueError("branching must be nonnegative")
        if self.distractor_len is not None and self.distractor_len < 1:
            raise ValueError("distractor chain length must be positive")


@dataclass
class ProblemInstance:
    program: Program
    meta: dict = field(default_factory=dict)


def _gen_one(config: GenConfig, index: int) -> ProblemInstance:
    rng = random.Random(f"{config.seed}:{index}")
    llo, lhi = _as_range(config.lookahead)
    blo, bhi = _as_range(config.branching)
    lookahead = rng.randint(llo, lhi)
    branching = rng.randint(blo, bhi)
    distractor_len = config.distractor_len or lookahead

    n_atoms = (lookahead + 1) + branching * distractor_len
    all_pairs = [(n, a) for n in config.names for a in config.adjectives]
    if n_atoms > len(all_pairs):
        raise ValueError(
            f"name pool exhausted: need {n_atoms} atoms, pool has {len(all_pairs)}"
        )
    pairs = rng.sample(all_pairs, n_atoms)

    predicates = [
        Predicate(f"{name}_{adj}", 0, f"{name} is {adj}") for name, adj in pairs
    ]
    atoms = [Atom(p.name) for p in predicates]
    main = atoms[: lookahead + 1]
    rest = atoms[lookahead + 1 :]

    rules = [Rule((main[i],), main[i + 1]) for i in range(lookahead)]
    for b in range(branching):
        chain = [main[0]] + list(
            rest[b * distractor_len : (b + 1) * distractor_len]
        )
        rules.extend(Rule((chain[i],), chain[i + 1]) for i in range(len(chain) - 1))

    program = Program(
        predicates,
        constants=[],
        rules=rules,
        axioms=[main[0]],
        goal=main[-1],
        program_id=f"deeprd-s{config.seed}-{index}",
    )
    meta = {
        "generator": "chain",
        "seed": config.seed,
        "index": index,
        "lookahead": lookahead,
        "branching": branching,
        "distractor_len": distractor_len,
    }
    return ProblemInstance(program, meta)


def gen_deeprd(config: GenConfig) -> list[ProblemInstance]:
    """Generate ``config.count`` instances; a fixed seed reproduces the
    corpus byte for byte."""
    return [_gen_one(config, i) for i in range(config.count)]


def instance_depth(instance: ProblemInstance):
    """Engine-computed depth of the instance's shortest proof (INF if none)."""
    return astar(instance.program, instance.program.goal).weight


def filter_corpus(
    instances: Iterable[ProblemInstance],
    min_depth: int = 0,
    provable_only: bool = False,
) -> list[ProblemInstance]:
    out = []
    for inst in instances:
        depth = instance_depth(inst)
        if provable_only and depth == float("inf"):
            continue
        if depth != float("inf") and depth < min_depth:
            continue
        if depth == float("inf") and min_depth > 0:
            continue
        out.append(inst)
    return out


def assign_splits(
    instances: Iterable[ProblemInstance],
    ratios: dict = None,
    seed: int = 0,
) -> None:
    """Tag each instance's meta with a split drawn from a seeded hash of its id."""
    ratios = ratios or {"train": 0.8, "validation": 0.1, "test": 0.1}
    names = list(ratios)
    bounds = []
    acc = 0.0
    for name in names:
        acc += ratios[name]
        bounds.append(acc)
    for inst in instances:
        digest = hashlib.sha256(f"{seed}:{inst.program.id}".encode()).hexdigest()
        u = int(digest[:12], 16) / 16**12
        for name, bound in zip(names, bounds):
            if u < bound or name == names[-1]:
                inst.meta["split"] = name
                break


def _engine_trace(instance: ProblemInstance, search_order: str):
    program, goal = instance.program, instance.program.goal
    heuristic = get_heuristic(program, goal, search_order)
    return astar(program, goal, heuristic).trace


def export_corpus(
    instances: Sequence[ProblemInstance],
    out: TextIO,
    search_order: str = "zero",
    fmt: str = "sft",
    icl_k: int = 0,
) -> int:
    """Write training files as JSONL; returns the number of lines written.

    ``sft`` lines carry prompt/completion pairs from engine traces. ``icl``
    lines carry a single assembled prompt: the first ``icl_k`` instances
    serve as worked examples for each remaining query instance.
    """
    written = 0
    if fmt == "sft":
        for inst in instances:
            program, goal = inst.program, inst.program.goal
            trace = _engine_trace(inst, search_order)
            if not trace.steps and goal not in program.axiom_set:
                raise ValueError(f"instance {program.id} is unprovable")
            shortest = shortest_proof_trace(program, goal)
            record = {
                "prompt": assemble_prompt(program, goal),
                "completion": verbalize_trace(trace, program),
                "metadata": {
                    **inst.meta,
                    "id": program.id,
                    "heuristic": search_order,
                    "depth": astar(program, goal).weight,
                    "steps": len(trace.steps),
                    "pops": len({p for s in trace.steps for p in s.premises}),
                    "shortest_steps": len(shortest.steps),
                },
            }
            out.write(json.dumps(record) + "\n")
            written += 1
    elif fmt == "icl":
        exemplars = [
            (inst.program, _engine_trace(inst, search_order))
            for inst in instances[:icl_k]
        ]
        for inst in instances[icl_k:]:
            record = {
                "prompt": assemble_prompt(
                    inst.program, inst.program.goal, examples=exemplars
                ),
                "metadata": {**inst.meta, "id": inst.program.id,
                             "heuristic": search_order, "icl_k": icl_k},
            }
            out.write(json.dumps(record) + "\n")
            written += 1
    else:
        raise ValueError(f"unknown export format: {fmt!r}")
    return written


def instances_to_jsonl(instances: Iterable[ProblemInstance], out: TextIO) -> int:
    n = 0
    for inst in instances:
        doc = program_to_doc(inst.program)
        doc["meta"] = {**doc.get("meta", {}), **inst.meta}
        out.write(json.dumps(doc) + "\n")
        n += 1
    return n
