"""Forward-chaining proof search over a small family-tree program.

Walks through the core loop: load a program, compute its minimal model,
run best-first search under different cost functions, and inspect the
recorded search trace.
"""

from proofsearch import (
    DEPTH_COST,
    VERTEX_COST,
    ancestry_program,
    astar,
    extract_shortest_proof,
    minimal_model,
    pops_set,
)

program = ancestry_program()
goal = program.goal

print("Program:", program)
print("Goal:", goal)
print()

# The minimal model is everything derivable from the axioms.
weights = minimal_model(program, DEPTH_COST)
print(f"Minimal model has {len(weights)} atoms (depth weights):")
for atom, w in sorted(weights.items(), key=lambda kv: (kv[1], str(kv[0]))):
    print(f"  {w}  {atom}")
print()

# Search to the goal. With no heuristic this is Dijkstra over the
# derivation hypergraph.
result = astar(program, goal)
print(f"Goal weight under depth cost: {result.weight}")
print(f"Atoms popped: {len(result.popped)}")
print(f"Pushes recorded in the trace: {len(result.trace.steps)}")
print(f"Minimal pop set of the trace: {len(pops_set(result.trace))}")
print()

print("Shortest proof, step by step:")
for step in extract_shortest_proof(result):
    print(f"  {step}")
print()

# Vertex cost counts the total size of the proof tree instead of its depth.
vertex = astar(program, goal, cost=VERTEX_COST)
print(f"Goal weight under vertex cost: {vertex.weight}")
