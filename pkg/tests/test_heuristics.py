import random

import pytest

from proofsearch.datagen import GenConfig, gen_deeprd
from proofsearch.heuristics import (
    HeuristicTable,
    check_admissibility,
    check_consistency,
    dependency_heuristic,
    get_heuristic,
    true_cost_to_go,
    zero_heuristic,
)
from proofsearch.logic import INF, Atom, Const, ProgramError
from proofsearch.search import astar, minimal_model

from helpers import gen_var_chain, oracle_on_path


def a(pred, *names):
    return Atom(pred, tuple(Const(n) for n in names))


GOAL = ("ancestor", "terah", "jacob")


def corpus(n=30):
    rng = random.Random(4)
    programs = [
        inst.program
        for inst in gen_deeprd(
            GenConfig(lookahead=(2, 5), branching=(0, 3), count=n // 2, seed=11)
        )
    ]
    programs += [
        gen_var_chain(rng, depth=rng.randint(2, 4)) for _ in range(n - len(programs))
    ]
    return programs


class TestZero:
    def test_everywhere_zero(self, ancestry):
        table = zero_heuristic(ancestry, a(*GOAL))
        assert table.value(a(*GOAL)) == 0
        assert table.value(a("parent", "terah", "abraham")) == 0
        assert table.value(a("ancestor", "jacob", "terah")) == 0


class TestDependency:
    def test_goal_is_zero(self, ancestry):
        table = dependency_heuristic(ancestry, a(*GOAL))
        assert table.value(a(*GOAL)) == 0

    def test_one_edge_to_goal(self, ancestry):
        table = dependency_heuristic(ancestry, a(*GOAL))
        assert table.value(a("ancestor", "isaac", "jacob")) == 1

    def test_two_edges_to_goal(self, ancestry):
        table = dependency_heuristic(ancestry, a(*GOAL))
        assert table.value(a("parent", "isaac", "jacob")) == 2

    def test_goal_outside_base(self, ancestry):
        with pytest.raises(ProgramError):
            dependency_heuristic(ancestry, Atom("parent", (Const("x"),)))

    def test_infinite_means_in_no_proof(self):
        for program in corpus(10):
            table = dependency_heuristic(program, program.goal)
            used_somewhere = set().union(
                *(atoms for _, atoms in _all_proofs(program))
            ) if _all_proofs(program) else set()
            for atom in minimal_model(program):
                if table.value(atom) == INF:
                    assert atom not in used_somewhere


def _all_proofs(program):
    from helpers import oracle_proof_trees

    return oracle_proof_trees(program, program.goal)


class TestTrueCostToGo:
    def test_path_values(self, ancestry):
        table = true_cost_to_go(ancestry, a(*GOAL))
        assert table.value(a(*GOAL)) == 0
        assert table.value(a("ancestor", "abraham", "jacob")) == 1
        assert table.value(a("ancestor", "isaac", "jacob")) == 2
        assert table.value(a("parent", "isaac", "jacob")) == 3

    def test_off_path_is_infinite(self, ancestry):
        table = true_cost_to_go(ancestry, a(*GOAL))
        assert table.value(a("ancestor", "terah", "abraham")) == INF
        assert table.value(a("parent", "abraham", "ishmael")) == INF

    def test_axiom_goal(self, ancestry):
        goal = a("parent", "isaac", "jacob")
        table = true_cost_to_go(ancestry, goal)
        assert table.value(goal) == 0
        assert table.value(a("parent", "terah", "abraham")) == INF

    def test_unprovable_flagged(self, ancestry):
        table = true_cost_to_go(ancestry, a("ancestor", "jacob", "terah"))
        assert not table.provable
        assert table.value(a(*GOAL)) == INF

    def test_marked_set_matches_proof_enumeration(self, ancestry):
        table = true_cost_to_go(ancestry, a(*GOAL))
        marked = {atom for atom in minimal_model(ancestry) if table.value(atom) < INF}
        assert marked == set(oracle_on_path(ancestry, a(*GOAL)))


class TestConsistencyAdmissibility:
    def test_zero_consistent(self, ancestry):
        assert check_consistency(zero_heuristic(ancestry), ancestry).passed

    def test_dependency_consistent(self, ancestry):
        table = dependency_heuristic(ancestry, a(*GOAL))
        assert check_consistency(table, ancestry).passed

    def test_adversarial_table_fails_consistency(self, ancestry):
        bad = HeuristicTable(
            "dependency",
            a(*GOAL),
            values={
                a("parent", "isaac", "jacob"): 10,
                a("ancestor", "isaac", "jacob"): 0,
            },
            default=0,
        )
        report = check_consistency(bad, ancestry)
        assert not report.passed
        assert any(
            v["premise"] == "parent(isaac, jacob)" for v in report.violations
        )

    def test_zero_admissible(self, ancestry):
        report = check_admissibility(zero_heuristic(ancestry), ancestry, a(*GOAL))
        assert report.passed

    def test_dependency_admissible(self, ancestry):
        table = dependency_heuristic(ancestry, a(*GOAL))
        assert check_admissibility(table, ancestry, a(*GOAL)).passed

    def test_overestimate_fails(self, ancestry):
        bad = HeuristicTable(
            "dependency", a(*GOAL), values={a("parent", "isaac", "jacob"): 4}, default=0
        )
        report = check_admissibility(bad, ancestry, a(*GOAL))
        assert not report.passed
        assert report.violations[0]["true"] == 3

    def test_unprovable_goal_raises(self, ancestry):
        with pytest.raises(ProgramError, match="not provable"):
            check_admissibility(
                zero_heuristic(ancestry), ancestry, a("ancestor", "jacob", "terah")
            )


class TestCorpusProperties:
    def test_dependency_dominated_by_true(self):
        for program in corpus(20):
            dep = dependency_heuristic(program, program.goal)
            true = true_cost_to_go(program, program.goal)
            for atom in minimal_model(program):
                assert 0 <= dep.value(atom) <= true.value(atom)

    def test_both_consistent_on_corpus(self):
        for program in corpus(16):
            assert check_consistency(zero_heuristic(program), program).passed
            assert check_consistency(
                dependency_heuristic(program, program.goal), program
            ).passed

    def test_mean_pop_ordering(self):
        pops = {"zero": 0, "dependency": 0, "true": 0}
        for program in corpus(20):
            for kind in pops:
                heuristic = get_heuristic(program, program.goal, kind)
                pops[kind] += len(astar(program, program.goal, heuristic).popped)
        assert pops["true"] <= pops["dependency"] <= pops["zero"]


class TestCache:
    def test_memoized(self, ancestry):
        t1 = get_heuristic(ancestry, a(*GOAL), "dependency")
        t2 = get_heuristic(ancestry, a(*GOAL), "dependency")
        assert t1 is t2
