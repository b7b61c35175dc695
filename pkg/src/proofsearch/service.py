"""HTTP verification and scoring service for external training loops.

Requests are deterministic functions of the body and the loaded corpus;
heuristic tables and reference traces are cached per program fingerprint by
the underlying modules, so concurrent identical requests return identical
bodies.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from .logic import (
    Program,
    ProgramError,
    atom_from_doc,
    cost_function,
    program_from_doc,
    program_to_doc,
)
from .scoring import SCHEMA_VERSION, canonical_json, score_candidate, verify_report
from .tracing import trace_from_doc

MAX_BODY_BYTES = int(os.environ.get("PROOFSEARCH_MAX_BODY", 1 << 20))


def load_corpus(corpus_dir) -> dict[str, Program]:
    """Read every canonical program document under ``corpus_dir``
    (*.json files and *.jsonl lines), keyed by program id."""
    programs: dict[str, Program] = {}

    def add(doc):
        program = program_from_doc(doc)
        if program.id:
            programs[program.id] = program

    root = Path(corpus_dir)
    for path in sorted(root.glob("*.json")):
        add(json.loads(path.read_text()))
    for path in sorted(root.glob("*.jsonl")):
        for line in path.read_text().splitlines():
            if line.strip():
                add(json.loads(line))
    return programs


def _bad_request(detail: str) -> JSONResponse:
    return JSONResponse({"error": detail, "schema": SCHEMA_VERSION}, status_code=400)


def _parse_request(body: dict, corpus: dict[str, Program]):
    """Resolve the program, goal, and candidate of a score/verify request."""
    if "program" in body:
        program = program_from_doc(body["program"])
    elif "program_id" in body:
        program = corpus.get(body["program_id"])
        if program is None:
            raise KeyError(body["program_id"])
    else:
        raise ProgramError("request needs 'program' or 'program_id'")
    goal = atom_from_doc(body["goal"]) if body.get("goal") else program.goal
    if goal is None:
        raise ProgramError("no goal in request and none declared by the program")
    text = body.get("candidate")
    trace_doc = body.get("trace")
    if (text is None) == (trace_doc is None):
        raise ProgramError("request needs exactly one of 'candidate' or 'trace'")
    trace = trace_from_doc(trace_doc, program.id) if trace_doc is not None else None
    return program, goal, text, trace


def create_app(corpus_dir: Optional[str] = None) -> FastAPI:
    corpus_dir = corpus_dir or os.environ.get("PROOFSEARCH_CORPUS_DIR")
    corpus = load_corpus(corpus_dir) if corpus_dir else {}
    app = FastAPI(title="proofsearch scoring service")

    async def read_body(request: Request) -> dict:
        raw = await request.body()
        if len(raw) > MAX_BODY_BYTES:
            raise ProgramError("request body too large")
        return json.loads(raw)

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/program/{program_id}")
    def get_program(program_id: str):
        program = corpus.get(program_id)
        if program is None:
            return JSONResponse(
                {"error": f"unknown program id {program_id!r}"}, status_code=404
            )
        doc = program_to_doc(program)
        doc["schema"] = SCHEMA_VERSION
        return Response(canonical_json(doc), media_type="application/json")

    @app.post("/verify")
    async def verify(request: Request):
        try:
            body = await read_body(request)
            program, goal, text, trace = _parse_request(body, corpus)
            if text is None:
                return _bad_request("/verify requires a 'candidate' text")
            report = verify_report(program, goal, text, body.get("mode", "strict"))
        except KeyError as exc:
            return JSONResponse({"error": f"unknown program id {exc}"}, status_code=404)
        except (ProgramError, ValueError, json.JSONDecodeError) as exc:
            return _bad_request(str(exc))
        return Response(canonical_json(report), media_type="application/json")

    @app.post("/score")
    async def score(request: Request):
        try:
            body = await read_body(request)
            program, goal, text, trace = _parse_request(body, corpus)
            report = score_candidate(
                program,
                goal,
                candidate_text=text,
                trace=trace,
                reward_kinds=body.get("rewards", ["correctness"]),
                mode=body.get("mode", "strict"),
                cost=cost_function(body.get("cost", "depth")),
                h_cap=body.get("h_cap"),
            )
        except KeyError as exc:
            return JSONResponse({"error": f"unknown program id {exc}"}, status_code=404)
        except (ProgramError, ValueError, json.JSONDecodeError) as exc:
            return _bad_request(str(exc))
        if text is not None and not report["steps"] and report["diagnostics"]:
            # nothing parseable at all: the candidate cannot be scored
            return JSONResponse(
                {
                    "error": "unverifiable candidate",
                    "diagnostics": report["diagnostics"],
                    "schema": SCHEMA_VERSION,
                },
                status_code=422,
            )
        return Response(canonical_json(report), media_type="application/json")

    return app


def serve(port: int = 8000, corpus_dir: Optional[str] = None) -> None:
    import uvicorn

    port = int(os.environ.get("PROOFSEARCH_PORT", port))
    uvicorn.run(create_app(corpus_dir), host="0.0.0.0", port=port)
