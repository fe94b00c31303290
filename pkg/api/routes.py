"""
FastAPI REST routes.

Solve runs return a token (run_id) that callers poll; recognition and
branching-number analysis answer synchronously.
"""

from fastapi import APIRouter, HTTPException

from api import run_manager
from api.models import (
    BranchingNumberRequest,
    BranchingNumberResponse,
    RecognizeRequest,
    RecognizeResponse,
    ResultsResponse,
    RunHistoryResponse,
    RunResponse,
    RunStatus,
    RunStatusResponse,
    SolveRequest,
    VectorTableResponse,
)
from cli.edge_list import parse_edge_list
from solver.analysis import branching_number, rule_vector_table
from solver.common import ParseError, NotSplit
from solver.graph import find_induced_diamond, find_induced_p4, split_partition

router = APIRouter(prefix="/api")

# ── Run routes ────────────────────────────────────────────────────────────


@router.post("/runs/solve", response_model=RunResponse)
def run_solve(body: SolveRequest):
    """Start a solve run and return its run_id."""
    try:
        run_id = run_manager.start_solve(
            problem=body.problem.value,
            k=body.k,
            edge_list=body.edge_list,
            verify=body.verify,
        )
    except run_manager.RunLimitExceeded as e:
        raise HTTPException(status_code=429, detail=str(e))
    info = run_manager.get_run_status(run_id)
    return {
        "run_id": run_id,
        "problem": info["problem"],
        "status": info["status"],
        "created_at": info["created_at"],
    }


@router.get("/runs/{run_id}/status", response_model=RunStatusResponse)
def run_status(run_id: str):
    """Poll the status of a run."""
    info = run_manager.get_run_status(run_id)
    if not info:
        raise HTTPException(status_code=404, detail="Run not found")
    return {
        "run_id": run_id,
        "problem": info["problem"],
        "status": info["status"],
        "k": info["k"],
        "created_at": info["created_at"],
        "completed_at": info.get("completed_at"),
        "error": info.get("error"),
    }


@router.get("/runs/{run_id}/results", response_model=ResultsResponse)
def run_results(run_id: str):
    """Get the decision, witness and recursion statistics of a run."""
    info = run_manager.get_run_status(run_id)
    if not info:
        raise HTTPException(status_code=404, detail="Run not found")
    if info["status"] != RunStatus.COMPLETED:
        return {"run_id": run_id, "status": info["status"], "result": None}
    return {"run_id": run_id, "status": info["status"], "result": info["result"]}


@router.get("/runs/history", response_model=RunHistoryResponse)
def run_history():
    """Get run history."""
    all_runs = run_manager.get_all_runs()
    return {
        "runs": [
            {
                "run_id": r["run_id"],
                "problem": r["problem"],
                "status": r["status"],
                "k": r["k"],
                "created_at": r["created_at"],
                "completed_at": r.get("completed_at"),
                "decision": r["result"]["decision"] if r.get("result") else None,
            }
            for r in all_runs
        ],
        "total": len(all_runs),
    }


# ── Synchronous routes ────────────────────────────────────────────────────


@router.post("/recognize", response_model=RecognizeResponse)
def recognize(body: RecognizeRequest):
    """Split partition plus threshold/block status with forbidden-subgraph witnesses."""
    try:
        g = parse_edge_list(body.edge_list)
        partition = split_partition(g)
    except (ParseError, NotSplit) as e:
        raise HTTPException(status_code=422, detail=str(e))

    p4 = find_induced_p4(g, partition)
    diamond = find_induced_diamond(g)
    return {
        "clique": sorted(partition.clique),
        "independent": sorted(partition.independent),
        "threshold": p4 is None,
        "block": diamond is None,
        "p4": list(p4) if p4 else None,
        "diamond": list(diamond) if diamond else None,
    }


@router.get("/analysis/vectors", response_model=VectorTableResponse)
def analysis_vectors():
    """Branching numbers of the minimum rule vectors."""
    return {
        "entries": [
            {"rule": e.rule, "vector": list(e.vector.entries), "branching_number": e.number}
            for e in rule_vector_table()
        ]
    }


@router.post("/analysis/branching-number", response_model=BranchingNumberResponse)
def analysis_branching_number(body: BranchingNumberRequest):
    """Branching number of an arbitrary vector."""
    try:
        number = branching_number(body.vector)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))
    return {"vector": body.vector, "branching_number": number}
