"""Request and response schemas for the verification service.

Rays travel on the wire as arrays of three [a, b] integer pairs meaning
a + b*sqrt(2); ray sets must be in canonical form already (the loaders
reject non-canonical input rather than silently normalizing).
"""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field

RayWire = list[list[int]]  # three [a, b] pairs


class Census(BaseModel):
    rays: int
    edges: int
    triples: int
    lone_pairs: int


class RaySetResponse(BaseModel):
    label: str
    rays: list[RayWire]
    census: Census


class GraphRequest(BaseModel):
    rays: list[RayWire] | None = Field(
        default=None, description="canonical rays; omit for the built-in 33-ray set"
    )
    label: str = ""


class GraphResponse(BaseModel):
    label: str
    rays: list[RayWire]
    census: Census
    edges: list[list[int]]
    triples: list[list[int]]
    lone_pairs: list[list[int]]


class ExtendResponse(BaseModel):
    label: str
    rays: list[RayWire]
    n_original: int
    n_completions: int
    triples: list[list[int]]


class SearchRequest(BaseModel):
    rays: list[RayWire] | None = None
    label: str = ""
    use_symmetry: bool = False


class SearchResponse(BaseModel):
    verdict: str
    witness: list[int] | None
    stats: dict[str, int]
    refutation: dict[str, Any] | None


class LemmaRequest(BaseModel):
    rays: list[RayWire] | None = None
    label: str = ""


class LemmaResponse(BaseModel):
    verdict: str
    stats: dict[str, int]
    refutation_replayed: bool
    skeleton_found: bool
    trace: dict[str, Any] | None
    trace_text: str | None
    trace_replayed: bool
    consistent: bool
    witness: list[int] | None = None


class MinViolationsRequest(BaseModel):
    rays: list[RayWire] | None = Field(
        default=None,
        description="configuration carrying the triples; omit for the built-in "
        "extended set with its 40 triples",
    )
    triples: list[list[int]] | None = None


class MinViolationsResponse(BaseModel):
    minimum: int
    witness: list[int]
    n_triples: int
    recount: int


class BoundsRequest(BaseModel):
    delta_radians: float = Field(ge=0)


class BoundsResponse(BaseModel):
    delta: float
    eps_s_bound: float
    eps_t_bound: float
    combined: float
    contradiction_threshold: float
    contradicts_functional_hypothesis: bool


class TwinSimRequest(BaseModel):
    n: int = Field(ge=1)
    seed: int
    exhaustive: bool = False
    plans: list[dict] | None = Field(
        default=None,
        description="optional session-plan batch; sessions cycle through it "
        "instead of sampling the built-in family",
    )


class HexSimRequest(BaseModel):
    n: int = Field(ge=1)
    seed: int


class MonteCarloRequest(BaseModel):
    n: int = Field(ge=1)
    seed: int
    delta_radians: float = Field(ge=0)


class SimulationResponse(BaseModel):
    kind: str
    report: dict[str, Any]
    checks_passed: bool


class ExportRequest(BaseModel):
    rays: list[RayWire] | None = None
    label: str = ""


class HealthResponse(BaseModel):
    status: str
    version: str
