import io
import json
from contextlib import redirect_stdout

import pytest
from fastapi.testclient import TestClient

from proofsearch.cli import main
from proofsearch.logic import program_to_doc
from proofsearch.scoring import canonical_json, score_candidate
from proofsearch.search import shortest_proof_trace
from proofsearch.service import create_app
from proofsearch.tracing import trace_to_doc
from proofsearch.verbalize import verbalize_trace


@pytest.fixture(scope="module")
def program_file(tmp_path_factory, ancestry):
    path = tmp_path_factory.mktemp("programs") / "ancestry.json"
    path.write_text(json.dumps(program_to_doc(ancestry)))
    return str(path)


@pytest.fixture(scope="module")
def candidate_file(tmp_path_factory, ancestry):
    trace = shortest_proof_trace(ancestry, ancestry.goal)
    path = tmp_path_factory.mktemp("candidates") / "good.txt"
    path.write_text(verbalize_trace(trace, ancestry))
    return str(path)


@pytest.fixture(scope="module")
def corpus_dir(tmp_path_factory, ancestry, attributes):
    root = tmp_path_factory.mktemp("corpus")
    for program in (ancestry, attributes):
        (root / f"{program.id}.json").write_text(
            json.dumps(program_to_doc(program))
        )
    return str(root)


@pytest.fixture(scope="module")
def client(corpus_dir):
    return TestClient(create_app(corpus_dir))


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


class TestProve:
    def test_basic(self, program_file):
        code, out = run_cli("prove", "--program", program_file, "--heuristic", "true")
        assert code == 0
        doc = json.loads(out)
        assert doc["weight"] == 3
        assert len(doc["steps"]) == 3
        assert doc["minimal_pops"] == 5

    def test_goal_override_and_verbalize(self, program_file):
        code, out = run_cli(
            "prove",
            "--program", program_file,
            "--goal", "ancestor(isaac, jacob)",
            "--verbalize",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["weight"] == 1
        assert "Conclusion: Isaac is an ancestor of jacob." in doc["text"]

    def test_unprovable_goal_reports_inf(self, program_file):
        code, out = run_cli(
            "prove", "--program", program_file, "--goal", "ancestor(jacob, terah)"
        )
        assert code == 0
        assert json.loads(out)["weight"] == "inf"


class TestVerifyAndScore:
    def test_verify_correct(self, program_file, candidate_file):
        code, out = run_cli(
            "verify", "--program", program_file, "--candidate", candidate_file
        )
        assert code == 0
        report = json.loads(out)
        assert report["correct"] is True
        assert report["steps"] == 3

    def test_score_rewards(self, program_file, candidate_file):
        code, out = run_cli(
            "score",
            "--program", program_file,
            "--candidate", candidate_file,
            "--reward", "correctness",
            "--reward", "astar-true",
        )
        assert code == 0
        report = json.loads(out)
        assert report["correct"] is True
        assert report["efficiency_pushes"] == 1.0
        kinds = {r["kind"]: r for r in report["rewards"]}
        assert kinds["correctness"]["value"] == 1.0
        assert kinds["astar-true"]["alpha"] == 15
        assert kinds["astar-true"]["value"] == pytest.approx(1.0)

    def test_score_output_is_canonical(self, program_file, candidate_file):
        _, out = run_cli(
            "score", "--program", program_file, "--candidate", candidate_file
        )
        assert out.strip() == canonical_json(json.loads(out))


class TestExitCodes:
    def test_usage_error(self):
        code, _ = run_cli("prove")  # missing --program
        assert code == 1

    def test_unknown_subcommand(self):
        code, _ = run_cli("transmogrify")
        assert code == 1

    def test_missing_file(self):
        code, _ = run_cli("prove", "--program", "/nonexistent.json")
        assert code == 2

    def test_bad_goal_atom(self, program_file):
        code, _ = run_cli(
            "prove", "--program", program_file, "--goal", "sibling(a, b)"
        )
        assert code == 2

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _ = run_cli("prove", "--program", str(path))
        assert code == 2


class TestPipelineCommands:
    def test_gen_filter_export_stats(self, tmp_path):
        raw = tmp_path / "raw.jsonl"
        kept = tmp_path / "kept.jsonl"
        sft = tmp_path / "sft.jsonl"
        code, _ = run_cli(
            "gen-deeprd", "--lookahead", "2-4", "--branching", "1",
            "--count", "6", "--seed", "7", "--out", str(raw),
        )
        assert code == 0
        assert len(raw.read_text().splitlines()) == 6

        code, _ = run_cli(
            "filter", "--in", str(raw), "--min-depth", "3", "--out", str(kept)
        )
        assert code == 0
        kept_lines = kept.read_text().splitlines()
        assert 0 < len(kept_lines) <= 6
        for line in kept_lines:
            assert json.loads(line)["meta"]["lookahead"] >= 3

        code, _ = run_cli(
            "export", "--in", str(kept), "--heuristic", "dependency",
            "--out", str(sft),
        )
        assert code == 0
        record = json.loads(sft.read_text().splitlines()[0])
        assert {"prompt", "completion", "metadata"} <= set(record)

        code, out = run_cli("stats", "--in", str(kept))
        assert code == 0
        stats = json.loads(out)
        means = {
            kind: stats["heuristics"][kind]["pops"]["mean"]
            for kind in ("zero", "dependency", "true")
        }
        assert means["true"] <= means["dependency"] <= means["zero"]

    def test_check_heuristic(self, program_file):
        code, out = run_cli(
            "check-heuristic", "--program", program_file, "--heuristic", "dependency"
        )
        assert code == 0
        report = json.loads(out)
        assert report["consistency"]["passed"] is True
        assert report["admissibility"]["passed"] is True


class TestService:
    def test_health(self, client):
        assert client.get("/health").json() == {"status": "ok"}

    def test_get_program(self, client, ancestry):
        resp = client.get("/program/ancestry")
        assert resp.status_code == 200
        assert resp.text == resp.text.strip()
        doc = resp.json()
        assert doc["id"] == "ancestry"

    def test_get_program_404(self, client):
        assert client.get("/program/nope").status_code == 404

    def test_verify_endpoint(self, client, ancestry):
        trace = shortest_proof_trace(ancestry, ancestry.goal)
        resp = client.post(
            "/verify",
            json={
                "program_id": "ancestry",
                "candidate": verbalize_trace(trace, ancestry),
            },
        )
        assert resp.status_code == 200
        assert resp.json()["correct"] is True

    def test_score_with_inline_program(self, client, ancestry):
        trace = shortest_proof_trace(ancestry, ancestry.goal)
        resp = client.post(
            "/score",
            json={
                "program": program_to_doc(ancestry),
                "candidate": verbalize_trace(trace, ancestry),
                "rewards": ["correctness", "astar-dependency"],
            },
        )
        assert resp.status_code == 200
        report = resp.json()
        assert report["correct"] is True
        kinds = {r["kind"]: r for r in report["rewards"]}
        assert kinds["astar-dependency"]["alpha"] == 10

    def test_score_structured_trace(self, client, ancestry):
        trace = shortest_proof_trace(ancestry, ancestry.goal)
        resp = client.post(
            "/score",
            json={"program_id": "ancestry", "trace": trace_to_doc(trace)},
        )
        assert resp.status_code == 200
        assert resp.json()["correct"] is True

    def test_unknown_program_id_404(self, client):
        resp = client.post(
            "/score", json={"program_id": "nope", "candidate": "x"}
        )
        assert resp.status_code == 404

    def test_candidate_and_trace_both_given_400(self, client, ancestry):
        trace = shortest_proof_trace(ancestry, ancestry.goal)
        resp = client.post(
            "/score",
            json={
                "program_id": "ancestry",
                "candidate": "text",
                "trace": trace_to_doc(trace),
            },
        )
        assert resp.status_code == 400

    def test_unparseable_candidate_422(self, client):
        resp = client.post(
            "/score",
            json={
                "program_id": "ancestry",
                "candidate": "Premises: gibberish.\nRule: nope.\nConclusion: what.",
            },
        )
        assert resp.status_code == 422
        assert resp.json()["diagnostics"]

    def test_unrelated_text_scores_incorrect(self, client):
        resp = client.post(
            "/score", json={"program_id": "ancestry", "candidate": "I give up."}
        )
        assert resp.status_code == 200
        assert resp.json()["correct"] is False

    def test_bad_reward_kind_400(self, client):
        resp = client.post(
            "/score",
            json={
                "program_id": "ancestry",
                "candidate": "x",
                "rewards": ["karma"],
            },
        )
        assert resp.status_code == 400


class TestByteParity:
    def test_cli_and_service_agree(self, client, program_file, candidate_file, ancestry):
        _, cli_out = run_cli(
            "score",
            "--program", program_file,
            "--candidate", candidate_file,
            "--reward", "correctness",
            "--reward", "step-count",
            "--reward", "astar-dependency",
            "--reward", "astar-true",
        )
        trace = shortest_proof_trace(ancestry, ancestry.goal)
        resp = client.post(
            "/score",
            json={
                "program_id": "ancestry",
                "candidate": verbalize_trace(trace, ancestry),
                "rewards": [
                    "correctness", "step-count", "astar-dependency", "astar-true",
                ],
            },
        )
        assert resp.text == cli_out.strip()

    def test_matches_library_call(self, client, ancestry):
        trace = shortest_proof_trace(ancestry, ancestry.goal)
        text = verbalize_trace(trace, ancestry)
        report = score_candidate(
            ancestry, ancestry.goal, candidate_text=text,
            reward_kinds=["correctness"],
        )
        resp = client.post(
            "/score", json={"program_id": "ancestry", "candidate": text}
        )
        assert resp.text == canonical_json(report)
