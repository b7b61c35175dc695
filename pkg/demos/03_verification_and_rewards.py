"""Verbalizing, parsing, verifying, and rewarding candidate proofs.

Renders an engine trace as natural language, parses it back, adjudicates
a few corrupted variants, and scores everything with the search-informed
exponential-decay rewards.
"""

from proofsearch import (
    SearchTrace,
    ancestry_program,
    astar,
    get_heuristic,
    score_candidate,
    shortest_proof_trace,
    verbalize_trace,
    verify_text,
)

program = ancestry_program()
goal = program.goal

trace = shortest_proof_trace(program, goal)
text = verbalize_trace(trace, program)
print("Verbalized shortest proof:")
print(text)
print()

outcome, verdict = verify_text(text, program)
print(f"Parsed steps: {len(outcome.steps)}  verdict: {verdict.to_json()}")
print()

# A truncated proof never concludes the goal.
partial = verbalize_trace(SearchTrace(trace.steps[:2], goal), program)
_, verdict = verify_text(partial, program)
print(f"Truncated proof verdict: {verdict.to_json()}")
print()

# Score candidates with all reward kinds. The engine's own trace under a
# heuristic earns exactly 1.0 on the matching reward.
rewards = ["correctness", "step-count", "astar-dependency", "astar-true"]

for label, candidate in [
    ("shortest proof", text),
    ("full uninformed search trace",
     verbalize_trace(astar(program, goal).trace, program)),
    ("informed search trace",
     verbalize_trace(
         astar(program, goal, get_heuristic(program, goal, "true")).trace,
         program,
     )),
]:
    report = score_candidate(program, goal, candidate_text=candidate, reward_kinds=rewards)
    values = {r["kind"]: round(r["value"], 4) for r in report["rewards"]}
    print(f"{label}:")
    print(f"  correct={report['correct']}  efficiency(pushes)={report['efficiency_pushes']}")
    print(f"  rewards={values}")
