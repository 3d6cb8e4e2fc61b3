"""
SKEWAID - Pencil Routes
Invariants, AID, formula, canonical forms, congruence and cross-checks over HTTP.
Bodies use the same JSON formats as the command line files.
"""

from typing import Optional

from fastapi import APIRouter, Body
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ValidationError

from algebra.aid_solver import cross_check, formula_dimension, solve_aid
from algebra.canonical_forms import build_spec, spec_from_invariants
from algebra.errors import SkewAidError
from algebra.genus2_lie import algebra_from_pencil
from algebra.pencil_invariants import invariants, random_congruence, random_mix, strictly_congruent
from config import DEFAULT_SEED, FIELD_MODES
from diagnostics import log
from formats.codec import (
    aid_result_to_model,
    algebra_from_model,
    cross_check_to_model,
    invariants_from_model,
    invariants_to_model,
    parse_input,
    pencil_from_model,
    pencil_to_model,
    pencils_of,
    spec_from_model,
    to_pencil,
)
from formats.schemas import CongruentModel, FormulaModel

router = APIRouter(prefix="/api", tags=["pencils"])


# --- Request Schemas ---

class CongruentRequest(BaseModel):
    first: dict
    second: dict


# --- Helpers ---

def _error(e: Exception) -> JSONResponse:
    if isinstance(e, ValidationError):
        return JSONResponse({"error": str(e)}, status_code=400)
    if isinstance(e, SkewAidError):
        return JSONResponse({"error": str(e)}, status_code=422)
    # unrecognized input kinds and bad modes
    return JSONResponse({"error": str(e)}, status_code=400)


def _ok(model: BaseModel) -> JSONResponse:
    return JSONResponse(model.model_dump(mode="json"))


# --- Endpoints ---

@router.get("/status")
async def status():
    return JSONResponse({"status": "ok", "field_modes": FIELD_MODES})


@router.post("/invariants")
def compute_invariants(payload: dict = Body(...)):
    """Elementary divisor pairs and minimal indices of a pencil, algebra or spec."""
    try:
        return _ok(invariants_to_model(invariants(to_pencil(*parse_input(payload)))))
    except ValueError as e:
        return _error(e)


@router.post("/aid")
def compute_aid(payload: dict = Body(...), field: str = "real", allow_degenerate: bool = False):
    try:
        kind, model = parse_input(payload)
        if kind == "pencil":
            g = algebra_from_pencil(pencil_from_model(model), allow_degenerate)
        elif kind == "algebra":
            g = algebra_from_model(model, allow_degenerate)
        else:
            raise ValueError(f"expected a pencil or algebra, got {kind}")
        return _ok(aid_result_to_model(solve_aid(g, field)))
    except ValueError as e:
        return _error(e)


@router.post("/formula")
def compute_formula(payload: dict = Body(...), field: str = "real"):
    try:
        kind, model = parse_input(payload)
        if kind != "invariants":
            raise ValueError(f"expected invariants, got {kind}")
        dim_inn, dim_aid = formula_dimension(invariants_from_model(model), field)
        return _ok(FormulaModel(mode=field, dim_inn=dim_inn, dim_aid=dim_aid))
    except ValueError as e:
        return _error(e)


@router.post("/canonical")
def compute_canonical(payload: dict = Body(...), companion: bool = False):
    """Canonical pencil for a block spec or an invariants object."""
    try:
        kind, model = parse_input(payload)
        if kind == "spec":
            spec = spec_from_model(model)
        elif kind == "invariants":
            spec = spec_from_invariants(invariants_from_model(model), allow_companion=companion)
        else:
            raise ValueError(f"expected a spec or invariants, got {kind}")
        return _ok(pencil_to_model(build_spec(spec)))
    except ValueError as e:
        return _error(e)


@router.post("/congruent")
def compute_congruent(req: CongruentRequest):
    try:
        p = to_pencil(*parse_input(req.first))
        q = to_pencil(*parse_input(req.second))
        return _ok(CongruentModel(congruent=strictly_congruent(p, q), n=[p.n, q.n]))
    except ValueError as e:
        return _error(e)


@router.post("/randomize")
def randomize(payload: dict = Body(...), seed: int = DEFAULT_SEED, mix: bool = False):
    try:
        p = to_pencil(*parse_input(payload))
        return _ok(pencil_to_model(random_mix(p, seed) if mix else random_congruence(p, seed)))
    except ValueError as e:
        return _error(e)


@router.post("/check")
def check(payload: dict = Body(...), field: str = "real", seeds: int = 0,
                allow_degenerate: bool = False, label: Optional[str] = None):
    """Formula vs solver for each pencil in the body and `seeds` random congruences of it."""
    try:
        results = []
        for name, p in pencils_of(*parse_input(payload)):
            name = label or name
            results.append(cross_check_to_model(cross_check(p, field, allow_degenerate), name))
            for seed in range(1, seeds + 1):
                q = random_congruence(p, seed)
                results.append(cross_check_to_model(cross_check(q, field, allow_degenerate), f"{name} @seed {seed}"))
        agree = all(r.agree for r in results)
        if not agree:
            log(f"Disagreement in {sum(not r.agree for r in results)} check(s)", "CHECK")
        return JSONResponse({
            "agree": agree,
            "results": [r.model_dump(mode="json") for r in results],
        })
    except ValueError as e:
        return _error(e)
