"""Read-only HTTP JSON service over a snapshot directory.

Everything except drilldowns is precomputed; a drill executes one
rank-difference pass over the immutable in-memory corpus, so concurrent
requests share no mutable state. Field names match the CLI export formats
byte for byte.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .ird import DegenerateSplitError, IRDError, drill_terms
from .snapshot import Snapshot


class DrillRequest(BaseModel):
    terms: list[str] = Field(min_length=1)
    n: int = Field(default=200, ge=1)
    m: int = Field(default=5, ge=1)


def create_app(snapshot: Snapshot, allow_cors: bool = False, ui_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="viewscope", docs_url=None, redoc_url=None)

    if allow_cors:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
        )

    selection = snapshot.selection
    viewpoints = set(selection.viewpoint_clusters)
    degrees = {u: snapshot.graph.degree(u) for u in snapshot.graph.nodes}

    @app.get("/api/meta")
    def meta():
        return {
            "config": snapshot.manifest.get("config", {}),
            "stats": snapshot.stats,
            "chosen_k": selection.chosen_k,
            "delta": selection.delta,
            "verdict": selection.verdict,
            "k_values": snapshot.profile.k_values,
        }

    @app.get("/api/sweep")
    def sweep():
        return {"rows": [q.to_dict() for q in snapshot.profile.rows()]}

    @app.get("/api/partition/{k}")
    def partition(k: int):
        if k not in snapshot.partitions:
            raise HTTPException(status_code=404, detail=f"no partition for k={k}")
        return snapshot.partitions[k]

    @app.get("/api/selection")
    def get_selection():
        return selection.to_dict()

    @app.get("/api/viewpoints/{i}/terms")
    def viewpoint_terms(i: int, m: Optional[int] = None):
        if i not in viewpoints:
            raise HTTPException(status_code=404, detail=f"unknown viewpoint {i}")
        payload = dict(snapshot.terms[i])
        if m is not None and m >= 1:
            payload["terms"] = payload["terms"][:m]
            payload["m"] = min(m, len(snapshot.terms[i]["terms"]))
        return payload

    @app.post("/api/viewpoints/{i}/drill")
    def drill(i: int, request: DrillRequest):
        if i not in viewpoints:
            raise HTTPException(status_code=404, detail=f"unknown viewpoint {i}")
        try:
            result = drill_terms(
                snapshot.corpus, selection, i, request.terms, n=request.n, m=request.m
            )
        except DegenerateSplitError as exc:
            return JSONResponse(
                status_code=409, content={"detail": str(exc), "reason": exc.reason}
            )
        except IRDError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return result.to_dict()

    @app.get("/api/graph/sample")
    def graph_sample(max_nodes: int = 2000):
        if max_nodes < 1:
            raise HTTPException(status_code=422, detail="max_nodes must be >= 1")
        assignment = snapshot.chosen_assignment
        keep = sorted(degrees, key=lambda u: (-degrees[u], u))[:max_nodes]
        keep_set = set(keep)
        nodes = [
            {"id": u, "cluster": assignment.get(u), "degree": degrees[u]}
            for u in sorted(keep_set)
        ]
        edges = [
            {"u": u, "v": v, "w": w}
            for u, v, w in snapshot.graph.edges()
            if u in keep_set and v in keep_set
        ]
        return {"nodes": nodes, "edges": edges, "total_nodes": snapshot.graph.n_nodes}

    bundle = Path(ui_dir) if ui_dir else snapshot.directory / "ui"
    if bundle.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(bundle), html=True), name="ui")

    return app
