"""Forward-chaining A* proof search over logic programs.

The package covers the full loop around a symbolic deduction engine:
programs and their semantics (`logic`), agenda-based search with heuristics
(`search`, `heuristics`), trace metrics (`tracing`), natural-language
rendering and inverse parsing (`verbalize`, `parsing`), process rewards
(`rewards`), synthetic corpus generation (`datagen`), and a CLI plus HTTP
scoring service (`cli`, `service`).
"""

from .logic import (
    DEPTH_COST,
    INF,
    VERTEX_COST,
    Atom,
    Const,
    CostFunction,
    Predicate,
    Program,
    ProgramError,
    Rule,
    Term,
    UnprovableGoalError,
    Var,
    apply_substitution,
    atom_from_doc,
    atom_to_doc,
    cost_function,
    fixpoint_step,
    ground_instantiations,
    match,
    parse_atom_text,
    program_from_doc,
    program_to_doc,
)
from .search import (
    SearchResult,
    astar,
    extract_shortest_proof,
    minimal_model,
    shortest_proof_trace,
)
from .heuristics import (
    HeuristicTable,
    check_admissibility,
    check_consistency,
    dependency_heuristic,
    get_heuristic,
    true_cost_to_go,
    zero_heuristic,
)
from .tracing import (
    InvalidTraceError,
    ProofStep,
    SearchTrace,
    efficiency,
    final_pushes,
    pops_set,
    raw_score,
    trace_from_doc,
    trace_to_doc,
    verbalization_length,
)
from .verbalize import (
    ANSWER_LINE,
    TemplateError,
    assemble_prompt,
    check_injectivity,
    verbalize_program,
    verbalize_trace,
)
from .parsing import ParseOutcome, Verdict, adjudicate, parse_trace, verify_text
from .rewards import (
    reward_astar,
    reward_correctness,
    reward_step_count,
    reference_trace,
)
from .datagen import (
    GenConfig,
    ProblemInstance,
    assign_splits,
    export_corpus,
    filter_corpus,
    gen_deeprd,
)
from .scoring import canonical_json, score_candidate, verify_report
from .fixtures import ancestry_program, attributes_program

__version__ = "0.1.0"
