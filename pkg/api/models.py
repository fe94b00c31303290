"""
Pydantic models for API request/response schemas.
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field


# ── Enums ─────────────────────────────────────────────────────────────────

class RunStatus(str, Enum):
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


class ProblemType(str, Enum):
    SBVD = "sbvd"
    STVD = "stvd"


# ── Run / Job ─────────────────────────────────────────────────────────────

class SolveRequest(BaseModel):
    problem: ProblemType
    k: int = Field(ge=0)
    edge_list: str = Field(description="Edge-list file contents: header 'n m', then 'u v' lines")
    verify: bool = False


class RunResponse(BaseModel):
    run_id: str
    problem: ProblemType
    status: RunStatus
    created_at: str


class SolveStats(BaseModel):
    leaves: int
    nodes: int
    max_depth: int
    rule_counts: Dict[str, int]


class SolveResult(BaseModel):
    decision: bool
    size: Optional[int] = None
    witness: Optional[List[int]] = None
    verified: Optional[bool] = None  # True when the oracle cross-check ran
    stats: Optional[SolveStats] = None


class RunStatusResponse(BaseModel):
    run_id: str
    problem: ProblemType
    status: RunStatus
    k: int
    created_at: str
    completed_at: Optional[str] = None
    error: Optional[str] = None


class RunHistoryItem(BaseModel):
    run_id: str
    problem: ProblemType
    status: RunStatus
    k: int
    created_at: str
    completed_at: Optional[str] = None
    decision: Optional[bool] = None


class RunHistoryResponse(BaseModel):
    runs: List[RunHistoryItem]
    total: int


class ResultsResponse(BaseModel):
    run_id: str
    status: RunStatus
    result: Optional[SolveResult] = None


# ── Recognition / analysis ────────────────────────────────────────────────

class RecognizeRequest(BaseModel):
    edge_list: str


class RecognizeResponse(BaseModel):
    clique: List[int]
    independent: List[int]
    threshold: bool
    block: bool
    p4: Optional[List[int]] = None
    diamond: Optional[List[int]] = None


class VectorEntry(BaseModel):
    rule: str
    vector: List[int]
    branching_number: float


class VectorTableResponse(BaseModel):
    entries: List[VectorEntry]


class BranchingNumberRequest(BaseModel):
    vector: List[int] = Field(min_length=2)


class BranchingNumberResponse(BaseModel):
    vector: List[int]
    branching_number: float
