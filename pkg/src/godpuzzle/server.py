"""Local HTTP session service for interactive play.

Each session hides a concrete world (assignment and chi meaning) and serves
the raw answer words, so the player experiences the unknown-word constraint.
The knowledge endpoint is exactly the engine's update-fold over the
session's asks; hidden fields never appear in responses while the session
is active.
"""

from __future__ import annotations

import random
import uuid
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .model import (
    DomainError,
    GodType,
    PuzzleSpec,
    SpecError,
    assignment_from_string,
    assignment_to_string,
    enumerate_assignments,
)
from .formula import ParseError, balance, format_formula, formula_of_indices, parse
from .knowledge import KnowledgeState, full_state
from .simulator import (
    SeededCoins,
    Transcript,
    Word,
    WordSemantics,
    god_answer,
    self_templated,
)
from .strategy import builtin_names

HINT_MOVE_LIMIT = 1 << 12


@dataclass
class Session:
    id: str
    spec: PuzzleSpec
    mode: str  # escaping | reliable
    seed: int
    assignment: tuple  # hidden until declaration
    semantics: WordSemantics  # hidden until declaration
    coins: SeededCoins
    knowledge: KnowledgeState
    transcript: Transcript
    questions: int = 0
    status: str = "active"  # active | declared


class NewSession(BaseModel):
    n: int
    m: int
    k: int
    mode: str = "escaping"
    seed: Optional[int] = None


class AskBody(BaseModel):
    god: int
    formula: str


class DeclareBody(BaseModel):
    assignment: str


def _decoded_update(s: Session, god: int, q, bit: bool) -> KnowledgeState:
    enum = enumerate_assignments(s.spec)
    if s.mode == "reliable":
        # The template cancels a random god's persona, so the decoded bit
        # always equals the question's truth value.
        from .formula import eval_formula

        keep = frozenset(i for i in s.knowledge.possible
                         if eval_formula(q, enum[i]) == bit)
        return KnowledgeState(s.spec, keep)
    from .knowledge import update

    return update(s.knowledge, god, q, bit)


def _best_balanced_hint(s: Session):
    """The (god, question) minimizing the larger escaping-update side over
    the current possibility set; ties broken by god index then subset order."""
    enum = enumerate_assignments(s.spec)
    members = s.knowledge.possible
    best = None
    for god in range(1, s.spec.n + 1):
        non_random = sorted(
            i for i in members if enum[i][god - 1] is not GodType.RANDOM
        )
        free = non_random[1:]
        if 1 << len(free) > HINT_MOVE_LIMIT:
            continue
        for mask in range(1, 1 << len(free)):
            subset = frozenset(e for b, e in enumerate(free) if mask >> b & 1)
            f = formula_of_indices(subset, s.spec)
            t_side, f_side = balance(f, members, god, s.spec)
            score = (max(t_side, f_side), god, mask)
            if best is None or score < best[0]:
                best = (score, god, f, (t_side, f_side))
    return best


def create_app() -> FastAPI:
    app = FastAPI(title="godpuzzle session service")
    sessions: dict = {}

    def get_session(session_id: str) -> Session:
        s = sessions.get(session_id)
        if s is None:
            raise HTTPException(status_code=404,
                                detail=f"unknown session {session_id}")
        return s

    def require_active(s: Session):
        if s.status != "active":
            raise HTTPException(status_code=409,
                                detail="session already declared")

    @app.post("/session")
    def new_session(body: NewSession):
        try:
            spec = PuzzleSpec(body.n, body.m, body.k)
        except SpecError as e:
            raise HTTPException(status_code=400, detail=str(e))
        if body.mode not in ("escaping", "reliable"):
            raise HTTPException(status_code=400,
                                detail=f"unknown mode {body.mode!r}")
        seed = body.seed if body.seed is not None else random.getrandbits(62)
        rng = random.Random(seed)
        assignment = rng.choice(enumerate_assignments(spec))
        semantics = WordSemantics(bool(rng.getrandbits(1)))
        s = Session(
            id=uuid.uuid4().hex,
            spec=spec,
            mode=body.mode,
            seed=seed,
            assignment=assignment,
            semantics=semantics,
            coins=SeededCoins(rng.getrandbits(62)),
            knowledge=full_state(spec),
            transcript=Transcript(seed=seed),
        )
        sessions[s.id] = s
        return {"id": s.id, "n": spec.n, "m": spec.m, "k": spec.k,
                "mode": s.mode}

    @app.post("/session/{session_id}/ask")
    def ask(session_id: str, body: AskBody):
        s = get_session(session_id)
        require_active(s)
        try:
            q = parse(body.formula)
        except ParseError as e:
            raise HTTPException(
                status_code=400,
                detail={"message": e.message, "column": e.column},
            )
        if not 1 <= body.god <= s.spec.n:
            raise HTTPException(
                status_code=400,
                detail=f"god index {body.god} out of range 1..{s.spec.n}",
            )
        node = self_templated(body.god, q)
        word = god_answer(s.assignment, s.semantics, body.god, node, s.coins,
                          reliable=(s.mode == "reliable"))
        s.transcript.entries.append((body.god, node, word))
        s.questions += 1
        s.knowledge = _decoded_update(s, body.god, q, word is Word.CHI)
        return {"word": word.value, "question_number": s.questions}

    @app.get("/session/{session_id}/knowledge")
    def knowledge(session_id: str):
        s = get_session(session_id)
        enum = enumerate_assignments(s.spec)
        return {"possible": [assignment_to_string(enum[i])
                             for i in sorted(s.knowledge.possible)]}

    @app.post("/session/{session_id}/hint")
    def hint(session_id: str):
        s = get_session(session_id)
        require_active(s)
        best = _best_balanced_hint(s)
        if best is None:
            raise HTTPException(
                status_code=409,
                detail="no informative question available",
            )
        _, god, f, (t_side, f_side) = best
        return {
            "god": god,
            "formula": format_formula(f),
            "balance": [t_side, f_side],
            "source": "balance-heuristic",
        }

    @app.post("/session/{session_id}/declare")
    def declare(session_id: str, body: DeclareBody):
        s = get_session(session_id)
        require_active(s)
        try:
            declared = assignment_from_string(body.assignment)
        except (DomainError, ValueError) as e:
            raise HTTPException(status_code=400, detail=str(e))
        if len(declared) != s.spec.n:
            raise HTTPException(
                status_code=400,
                detail=f"declaration names {len(declared)} gods, spec has {s.spec.n}",
            )
        s.status = "declared"
        s.transcript.declared = declared
        return {
            "correct": declared == s.assignment,
            "true_assignment": assignment_to_string(s.assignment),
            "chi_meaning": "yes" if s.semantics.chi_means_yes else "no",
            "transcript": s.transcript.serialize(),
        }

    @app.get("/catalog/strategies")
    def catalog_strategies():
        return {"names": list(builtin_names())}

    return app
