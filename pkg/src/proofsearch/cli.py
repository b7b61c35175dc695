"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data error (bad files, unknown
atoms, unprovable goals).
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from pathlib import Path

from .logic import (
    ProgramError,
    UnprovableGoalError,
    cost_function,
    parse_atom_text,
    program_from_doc,
)
from .datagen import (
    GenConfig,
    filter_corpus,
    gen_deeprd,
    export_corpus,
    instances_to_jsonl,
    ProblemInstance,
)
from .heuristics import check_admissibility, check_consistency, get_heuristic
from .scoring import canonical_json, score_candidate, verify_report
from .search import astar
from .tracing import pops_set, trace_to_doc
from .verbalize import verbalize_trace

USAGE_ERROR, DATA_ERROR = 1, 2

HEURISTIC_CHOICES = ("zero", "dependency", "true")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _load_program(path: str, goal_text=None):
    doc = json.loads(Path(path).read_text())
    program = program_from_doc(doc)
    goal = parse_atom_text(goal_text) if goal_text else program.goal
    if goal is None:
        raise ProgramError("program declares no goal; pass --goal")
    return program, goal


def _read_candidate(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_instances(path: str) -> list[ProblemInstance]:
    out = []
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        doc = json.loads(line)
        program = program_from_doc(doc)
        out.append(ProblemInstance(program, dict(doc.get("meta", {}))))
    return out


def _int_or_range(text: str):
    if "-" in text:
        lo, hi = text.split("-", 1)
        return (int(lo), int(hi))
    return int(text)


def build_parser() -> _Parser:
    parser = _Parser(prog="proofsearch")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="run search and emit the trace")
    p.add_argument("--program", required=True)
    p.add_argument("--goal")
    p.add_argument("--heuristic", choices=HEURISTIC_CHOICES, default="zero")
    p.add_argument("--cost", choices=("depth", "vertex"), default="depth")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--pops", action="store_true", help="include the popped-atom order")
    p.add_argument("--verbalize", action="store_true")

    p = sub.add_parser("verify", help="adjudicate a candidate proof text")
    p.add_argument("--program", required=True)
    p.add_argument("--goal")
    p.add_argument("--candidate", required=True, help="file path or - for stdin")
    p.add_argument("--mode", choices=("strict", "goal-cone"), default="strict")

    p = sub.add_parser("score", help="metrics and rewards for a candidate")
    p.add_argument("--program", required=True)
    p.add_argument("--goal")
    p.add_argument("--candidate", required=True)
    p.add_argument("--mode", choices=("strict", "goal-cone"), default="strict")
    p.add_argument("--cost", choices=("depth", "vertex"), default="depth")
    p.add_argument(
        "--reward",
        action="append",
        default=None,
        choices=("correctness", "step-count", "astar-dependency", "astar-true"),
    )
    p.add_argument("--h-cap", type=int, default=None)

    p = sub.add_parser("gen-deeprd", help="generate synthetic chain instances")
    p.add_argument("--lookahead", type=_int_or_range, default=5, help="int or lo-hi")
    p.add_argument("--branching", type=_int_or_range, default=4, help="int or lo-hi")
    p.add_argument("--distractor-length", type=int, default=None)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("filter", help="filter a corpus by depth/provability")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--min-depth", type=int, default=0)
    p.add_argument("--provable-only", action="store_true")
    p.add_argument("--out", required=True)

    p = sub.add_parser("export", help="export SFT/ICL training files")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--heuristic", choices=HEURISTIC_CHOICES, default="zero")
    p.add_argument("--format", choices=("sft", "icl"), default="sft")
    p.add_argument("--icl-k", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("check-heuristic", help="consistency/admissibility reports")
    p.add_argument("--program", required=True)
    p.add_argument("--goal")
    p.add_argument("--heuristic", choices=HEURISTIC_CHOICES, required=True)
    p.add_argument("--cost", choices=("depth", "vertex"), default="depth")

    p = sub.add_parser("stats", help="push/pop counts per heuristic over a corpus")
    p.add_argument("--in", dest="inp", required=True)

    p = sub.add_parser("serve", help="run the HTTP scoring service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--corpus-dir", default=None)

    return parser


def _cmd_prove(args) -> int:
    program, goal = _load_program(args.program, args.goal)
    cost = cost_function(args.cost)
    heuristic = get_heuristic(program, goal, args.heuristic, cost)
    result = astar(program, goal, heuristic, cost, exhaustive=args.exhaustive)
    doc = trace_to_doc(result.trace, weight=result.weight)
    doc["schema"] = 1
    doc["heuristic"] = args.heuristic
    doc["popped_count"] = len(result.popped)
    doc["minimal_pops"] = len(pops_set(result.trace))
    if args.pops:
        doc["pops"] = [str(a) for a in result.popped]
    if args.verbalize:
        doc["text"] = verbalize_trace(result.trace, program)
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_verify(args) -> int:
    program, goal = _load_program(args.program, args.goal)
    report = verify_report(program, goal, _read_candidate(args.candidate), args.mode)
    print(canonical_json(report))
    return 0


def _cmd_score(args) -> int:
    program, goal = _load_program(args.program, args.goal)
    report = score_candidate(
        program,
        goal,
        candidate_text=_read_candidate(args.candidate),
        reward_kinds=args.reward or ["correctness"],
        mode=args.mode,
        cost=cost_function(args.cost),
        h_cap=args.h_cap,
    )
    print(canonical_json(report))
    return 0


def _cmd_gen(args) -> int:
    config = GenConfig(
        lookahead=args.lookahead,
        branching=args.branching,
        distractor_len=args.distractor_length,
        count=args.count,
        seed=args.seed,
    )
    instances = gen_deeprd(config)
    with open(args.out, "w") as fh:
        n = instances_to_jsonl(instances, fh)
    print(f"wrote {n} instances to {args.out}", file=sys.stderr)
    return 0


def _cmd_filter(args) -> int:
    kept = filter_corpus(
        _load_instances(args.inp),
        min_depth=args.min_depth,
        provable_only=args.provable_only,
    )
    with open(args.out, "w") as fh:
        n = instances_to_jsonl(kept, fh)
    print(f"kept {n} instances -> {args.out}", file=sys.stderr)
    return 0


def _cmd_export(args) -> int:
    instances = _load_instances(args.inp)
    with open(args.out, "w") as fh:
        n = export_corpus(
            instances, fh, search_order=args.heuristic, fmt=args.format,
            icl_k=args.icl_k,
        )
    print(f"wrote {n} records to {args.out}", file=sys.stderr)
    return 0


def _cmd_check(args) -> int:
    program, goal = _load_program(args.program, args.goal)
    cost = cost_function(args.cost)
    heuristic = get_heuristic(program, goal, args.heuristic, cost)
    consistency = check_consistency(heuristic, program, cost)
    try:
        admissibility = check_admissibility(heuristic, program, goal, cost)
        adm_json = admissibility.to_json()
    except ProgramError as exc:
        adm_json = {"passed": None, "error": str(exc)}
    print(
        json.dumps(
            {
                "schema": 1,
                "heuristic": args.heuristic,
                "consistency": consistency.to_json(),
                "admissibility": adm_json,
            },
            indent=2,
        )
    )
    return 0


def _cmd_stats(args) -> int:
    instances = _load_instances(args.inp)
    out = {"schema": 1, "instances": len(instances), "heuristics": {}}
    for kind in HEURISTIC_CHOICES:
        pushes, pops = [], []
        for inst in instances:
            goal = inst.program.goal
            heuristic = get_heuristic(inst.program, goal, kind)
            result = astar(inst.program, goal, heuristic)
            pushes.append(len(result.trace.steps))
            pops.append(len(result.popped))
        out["heuristics"][kind] = {
            "pushes": {
                "mean": statistics.mean(pushes) if pushes else None,
                "median": statistics.median(pushes) if pushes else None,
                "max": max(pushes, default=None),
            },
            "pops": {
                "mean": statistics.mean(pops) if pops else None,
                "median": statistics.median(pops) if pops else None,
                "max": max(pops, default=None),
            },
        }
    print(json.dumps(out, indent=2))
    return 0


def _cmd_serve(args) -> int:
    from .service import serve

    serve(port=args.port, corpus_dir=args.corpus_dir)
    return 0


_COMMANDS = {
    "prove": _cmd_prove,
    "verify": _cmd_verify,
    "score": _cmd_score,
    "gen-deeprd": _cmd_gen,
    "filter": _cmd_filter,
    "export": _cmd_export,
    "check-heuristic": _cmd_check,
    "stats": _cmd_stats,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_ERROR
    try:
        return _COMMANDS[args.command](args)
    except (ProgramError, UnprovableGoalError, ValueError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
