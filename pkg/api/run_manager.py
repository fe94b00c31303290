"""
Background run / job manager.

Each "run" is identified by a UUID token and executed on a background thread.
Status and results are stored in an in-memory dict that the status
and results endpoints can query.
"""

import threading
import uuid
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from api.models import ProblemType, RunStatus
from cli.edge_list import parse_edge_list
from cli.split_deletion import Problem, run_solver, verify_solution
from solver.common import SplitDeletionError

MAX_STORED_RUNS = 200
MAX_ACTIVE_RUNS = 8


class RunLimitExceeded(SplitDeletionError):
    """Too many runs are pending or running."""


# ── In-memory store ───────────────────────────────────────────────────────

_lock = threading.Lock()
_runs: Dict[str, Dict[str, Any]] = {}
_ACTIVE = (RunStatus.PENDING, RunStatus.RUNNING)


def _update(run_id: str, **kwargs: Any) -> None:
    with _lock:
        if run_id in _runs:
            _runs[run_id].update(kwargs)


def _evict_finished() -> None:
    """Drop the oldest finished runs until there is room for one more. Caller holds _lock."""
    finished = [rid for rid, r in _runs.items() if r["status"] not in _ACTIVE]
    while len(_runs) >= MAX_STORED_RUNS and finished:
        del _runs[finished.pop(0)]


def _get(run_id: str) -> Optional[Dict[str, Any]]:
    with _lock:
        return dict(_runs.get(run_id, {})) if run_id in _runs else None


# ── Public helpers ────────────────────────────────────────────────────────

def get_run_status(run_id: str) -> Optional[Dict[str, Any]]:
    return _get(run_id)


def get_all_runs() -> List[Dict[str, Any]]:
    with _lock:
        return [
            {
                "run_id": rid,
                "problem": r["problem"],
                "status": r["status"],
                "k": r["k"],
                "created_at": r["created_at"],
                "completed_at": r.get("completed_at"),
                "result": r.get("result"),
                "error": r.get("error"),
            }
            for rid, r in sorted(_runs.items(), key=lambda x: x[1]["created_at"], reverse=True)
        ]


def clear_runs() -> None:
    with _lock:
        _runs.clear()


# ── Solve ─────────────────────────────────────────────────────────────────

def start_solve(problem: str, k: int, edge_list: str, verify: bool = False) -> str:
    """
    Register a solve run and start it on a daemon thread.

    Raises:
        RunLimitExceeded: If MAX_ACTIVE_RUNS runs are still pending or running
    """
    run_id = uuid.uuid4().hex
    with _lock:
        active = sum(1 for r in _runs.values() if r["status"] in _ACTIVE)
        if active >= MAX_ACTIVE_RUNS:
            raise RunLimitExceeded(f"{active} runs already in progress (limit {MAX_ACTIVE_RUNS})")
        _evict_finished()
        _runs[run_id] = {
            "problem": ProblemType(problem),
            "status": RunStatus.PENDING,
            "k": k,
            "created_at": datetime.now(timezone.utc).isoformat(),
            "params": {
                "edge_list": edge_list,
                "verify": verify,
            },
        }
    t = threading.Thread(target=_run_solve, args=(run_id,), daemon=True)
    t.start()
    return run_id


def _run_solve(run_id: str) -> None:
    try:
        _update(run_id, status=RunStatus.RUNNING)
        info = _get(run_id)
        params = info["params"]

        g = parse_edge_list(params["edge_list"])
        outcome = run_solver(g, Problem(info["problem"].value), info["k"])
        verified = verify_solution(g, outcome) if params["verify"] else None

        witness = sorted(outcome.witness) if outcome.witness is not None else None
        result = {
            "decision": outcome.decision,
            "size": len(witness) if witness is not None else None,
            "witness": witness,
            "verified": verified,
            "stats": outcome.stats.to_dict() if outcome.stats is not None else None,
        }
        _update(
            run_id,
            status=RunStatus.COMPLETED,
            completed_at=datetime.now(timezone.utc).isoformat(),
            result=result,
        )

    except SplitDeletionError as e:
        _update(
            run_id,
            status=RunStatus.FAILED,
            completed_at=datetime.now(timezone.utc).isoformat(),
            error=str(e),
        )
    except Exception as e:
        _update(
            run_id,
            status=RunStatus.FAILED,
            completed_at=datetime.now(timezone.utc).isoformat(),
            error=f"Unexpected error: {e}",
        )
