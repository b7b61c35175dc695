"""Generating a synthetic reasoning corpus and exporting training files.

Builds chain-with-distractor problems, filters and splits them, and
writes SFT-style JSONL records whose completions are machine-verified
proofs.
"""

import io
import json

from proofsearch import (
    GenConfig,
    assign_splits,
    export_corpus,
    filter_corpus,
    gen_deeprd,
    verbalize_program,
)

config = GenConfig(lookahead=(3, 7), branching=(1, 4), count=50, seed=2024)
instances = gen_deeprd(config)
print(f"Generated {len(instances)} instances.")
print()

print("One verbalized problem:")
print(verbalize_program(instances[0].program))
print()

kept = filter_corpus(instances, min_depth=5)
print(f"{len(kept)} instances with proof depth >= 5.")

assign_splits(kept, seed=1)
counts = {}
for inst in kept:
    counts[inst.meta["split"]] = counts.get(inst.meta["split"], 0) + 1
print(f"Split sizes: {counts}")
print()

buf = io.StringIO()
n = export_corpus(kept, buf, search_order="dependency", fmt="sft")
record = json.loads(buf.getvalue().splitlines()[0])
print(f"Exported {n} SFT records. First record metadata:")
print(json.dumps(record["metadata"], indent=2))
print()
print("First completion:")
print(record["completion"])
