"""HTTP surface of the verification toolkit.

Every endpoint is a pure function of its request body, seeds included, so
responses are deterministic and cacheable. The CLI is a thin client of this
app (in-process by default); `spin101 serve` runs it standalone.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse

from .. import __version__, harness
from ..builtins import extended_configuration, peres33, peres33_automorphisms, peres33_graph
from ..coloring import (
    SkeletonNotFound,
    export_cnf,
    min_violations,
    naive_violations,
    replay_refutation,
    replay_report,
    search_101,
    verify_lemma_trace,
)
from ..exactgeom import (
    InvalidRaySet,
    OrthGraph,
    RaySet,
    automorphisms,
    complete_lone_pairs,
    orthogonality_graph,
)
from ..janus import SessionPlan
from ..quantum import threshold_bound
from .models import (
    BoundsRequest,
    BoundsResponse,
    Census,
    ExportRequest,
    ExtendResponse,
    GraphRequest,
    GraphResponse,
    HealthResponse,
    HexSimRequest,
    LemmaRequest,
    LemmaResponse,
    MinViolationsRequest,
    MinViolationsResponse,
    MonteCarloRequest,
    RaySetResponse,
    SearchRequest,
    SearchResponse,
    SimulationResponse,
    TwinSimRequest,
)


def _load_rayset(rays, label: str) -> RaySet:
    if rays is None:
        return peres33()
    try:
        return RaySet.from_json_obj(rays, label=label or "custom")
    except InvalidRaySet as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def _graph_for(rays, label: str) -> OrthGraph:
    rayset = _load_rayset(rays, label)
    if rayset is peres33():
        return peres33_graph()
    return orthogonality_graph(rayset)


def _witness_list(witness: dict[int, int] | None, n: int) -> list[int] | None:
    if witness is None:
        return None
    return [witness[i] for i in range(n)]


def create_app() -> FastAPI:
    app = FastAPI(
        title="spin101",
        version=__version__,
        description="Exact 101-coloring verification, spin-1 measurement "
        "bounds, and consistency-model simulators.",
    )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.get("/configurations/peres33", response_model=RaySetResponse)
    def builtin_rays() -> RaySetResponse:
        g = peres33_graph()
        return RaySetResponse(
            label=g.rayset.label, rays=g.rayset.to_json_obj(), census=Census(**g.census())
        )

    @app.post("/graph", response_model=GraphResponse)
    def graph(req: GraphRequest) -> GraphResponse:
        g = _graph_for(req.rays, req.label)
        obj = g.to_json_obj()
        return GraphResponse(
            label=g.rayset.label,
            rays=obj["rays"],
            census=Census(**g.census()),
            edges=obj["edges"],
            triples=obj["triples"],
            lone_pairs=obj["lone_pairs"],
        )

    @app.post("/graph/extend", response_model=ExtendResponse)
    def extend(req: GraphRequest) -> ExtendResponse:
        g = _graph_for(req.rays, req.label)
        if g is peres33_graph():
            ext, triples = extended_configuration()
        else:
            ext, triples = complete_lone_pairs(g)
        return ExtendResponse(
            label=ext.label,
            rays=ext.to_json_obj(),
            n_original=g.n,
            n_completions=len(ext) - g.n,
            triples=[list(t) for t in triples],
        )

    @app.post("/coloring/search", response_model=SearchResponse)
    def coloring_search(req: SearchRequest) -> SearchResponse:
        g = _graph_for(req.rays, req.label)
        syms = None
        if req.use_symmetry:
            syms = (
                list(peres33_automorphisms())
                if g is peres33_graph()
                else automorphisms(g)
            )
        result = search_101(g, symmetries=syms)
        return SearchResponse(
            verdict=result.verdict,
            witness=_witness_list(result.witness, g.n),
            stats=result.stats,
            refutation=result.refutation.to_json_obj() if result.refutation else None,
        )

    @app.post("/coloring/lemma", response_model=LemmaResponse)
    def lemma(req: LemmaRequest) -> LemmaResponse:
        g = _graph_for(req.rays, req.label)
        result = search_101(g, symmetries=list(peres33_automorphisms())
                            if g is peres33_graph() else None)
        refutation_ok = (
            replay_refutation(result.refutation, g) if result.refutation else False
        )
        trace = trace_text = None
        skeleton_found = trace_ok = False
        try:
            report = verify_lemma_trace(g)
            skeleton_found = True
            trace = report.to_json_obj()
            trace_text = report.to_text()
            trace_ok = replay_report(report, g)
        except SkeletonNotFound:
            pass
        # Solver and trace verifier must agree: a verified refutation chain
        # exists only if the search also says UNSAT.
        consistent = (result.verdict == "UNSAT") == (skeleton_found and trace_ok)
        if result.verdict == "UNSAT":
            consistent = consistent and refutation_ok
        return LemmaResponse(
            verdict=result.verdict,
            stats=result.stats,
            refutation_replayed=refutation_ok,
            skeleton_found=skeleton_found,
            trace=trace,
            trace_text=trace_text,
            trace_replayed=trace_ok,
            consistent=consistent,
            witness=_witness_list(result.witness, g.n),
        )

    @app.post("/coloring/min-violations", response_model=MinViolationsResponse)
    def min_viol(req: MinViolationsRequest) -> MinViolationsResponse:
        if req.rays is None and req.triples is None:
            ext, triples = extended_configuration()
            n = len(ext)
        else:
            rayset = _load_rayset(req.rays, "custom")
            n = len(rayset)
            if req.triples is not None:
                triples = [tuple(t) for t in req.triples]
                if any(len(t) != 3 or not all(0 <= i < n for i in t) for t in triples):
                    raise HTTPException(422, "triples must be index triples into rays")
            else:
                triples = orthogonality_graph(rayset).triples
        vc = min_violations(n, triples)
        return MinViolationsResponse(
            minimum=vc.minimum,
            witness=list(vc.witness),
            n_triples=len(vc.triples),
            recount=len(naive_violations(vc.witness, vc.triples)),
        )

    @app.post("/export/cnf", response_class=PlainTextResponse)
    def cnf(req: ExportRequest) -> str:
        return export_cnf(_graph_for(req.rays, req.label))

    @app.post("/export/dot", response_class=PlainTextResponse)
    def dot(req: ExportRequest) -> str:
        return _graph_for(req.rays, req.label).to_dot()

    @app.post("/bounds", response_model=BoundsResponse)
    def bounds(req: BoundsRequest) -> BoundsResponse:
        return BoundsResponse(**threshold_bound(req.delta_radians).to_json_obj())

    @app.post("/simulate/twin", response_model=SimulationResponse)
    def simulate_twin(req: TwinSimRequest) -> SimulationResponse:
        plans = None
        if req.plans is not None:
            try:
                plans = [SessionPlan.from_json_obj(p) for p in req.plans]
            except (KeyError, TypeError, ValueError) as exc:
                raise HTTPException(422, f"invalid plan batch: {exc}") from exc
        report = harness.twin_batch(
            req.n, req.seed, exhaustive=req.exhaustive, plans=plans
        )
        return SimulationResponse(
            kind="twin", report=report, checks_passed=report["checks_passed"]
        )

    @app.post("/simulate/hex", response_model=SimulationResponse)
    def simulate_hex(req: HexSimRequest) -> SimulationResponse:
        report = harness.hex_batch(req.n, req.seed)
        return SimulationResponse(
            kind="hex", report=report, checks_passed=report["checks_passed"]
        )

    @app.post("/simulate/montecarlo", response_model=SimulationResponse)
    def simulate_mc(req: MonteCarloRequest) -> SimulationResponse:
        report = harness.montecarlo_batch(req.n, req.seed, req.delta_radians)
        return SimulationResponse(
            kind="montecarlo", report=report, checks_passed=report["checks_passed"]
        )

    return app


app = create_app()
