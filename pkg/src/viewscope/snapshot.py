"""Snapshot directory: everything one analysis run produces.

Layout::

    out/
      manifest.json          config echo + timestamps (the only timestamps)
      graph.json             {"nodes", "edges", "tau"}
      stats.json             graph stats + ingestion counters
      graph.graphml          written by `export`
      sweep.csv              k, cluster, size, volume, cut_weight, conductance
      partitions/k{K}.json   {"k", "assignment", "edge_cut", "balance_achieved"}
      selection.json         chosen k, viewpoint/noisy clusters, verdict
      tokenizer.json         normalizer name + stopword list (self-contained)
      terms/viewpoint_{i}.json
      corpus/viewpoint_{i}.jsonl   one {"author", "tokens"} object per line

All JSON is written with sorted keys and a trailing newline so identical runs
produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from .graph import InteractionGraph, graph_from_dict
from .ird import ViewpointCorpus
from .partition import Partition
from .selection import ConductanceProfile, ViewpointSelection, sweep_from_csv
from .text import Tokenizer, load_stopwords

SNAPSHOT_VERSION = 1


class SnapshotError(ValueError):
    pass


def write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def read_json(path: Path):
    if not path.exists():
        raise SnapshotError(f"missing snapshot file: {path}")
    return json.loads(path.read_text(encoding="utf-8"))


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def update_manifest(out_dir: Path, stage: str, config: Optional[dict] = None) -> dict:
    """Merge config values into the manifest and stamp the stage time."""
    path = out_dir / "manifest.json"
    if path.exists():
        manifest = read_json(path)
        if manifest.get("version") != SNAPSHOT_VERSION:
            raise SnapshotError(f"snapshot version {manifest.get('version')} != {SNAPSHOT_VERSION}")
    else:
        manifest = {"version": SNAPSHOT_VERSION, "created_at": _now(), "config": {}, "stages": {}}
    if config:
        manifest["config"].update(config)
    manifest["stages"][stage] = _now()
    manifest["updated_at"] = _now()
    write_json(path, manifest)
    return manifest


def partition_record(partition: Partition, cut: int) -> dict:
    rec = partition.to_dict()
    rec["edge_cut"] = cut
    return rec


def write_tokenizer(out_dir: Path, tokenizer: Tokenizer) -> None:
    write_json(
        out_dir / "tokenizer.json",
        {"normalizer": tokenizer.normalizer_name, "stopwords": sorted(tokenizer.stopwords)},
    )


def load_tokenizer(out_dir: Path) -> Tokenizer:
    data = read_json(out_dir / "tokenizer.json")
    return Tokenizer(stopwords=frozenset(data["stopwords"]), normalizer=data["normalizer"])


def write_corpus(out_dir: Path, cluster: int, records: list[dict]) -> None:
    path = out_dir / "corpus" / f"viewpoint_{cluster}.jsonl"
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [json.dumps(rec, sort_keys=True) for rec in records]
    path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def read_corpus_tokens(out_dir: Path, cluster: int) -> list[list[str]]:
    path = out_dir / "corpus" / f"viewpoint_{cluster}.jsonl"
    if not path.exists():
        raise SnapshotError(f"missing snapshot file: {path}")
    tokens = []
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                tokens.append(json.loads(line)["tokens"])
    return tokens


@dataclass
class Snapshot:
    """An immutable, fully loaded bundle ready to serve."""

    directory: Path
    manifest: dict
    graph: InteractionGraph
    stats: dict
    profile: ConductanceProfile
    partitions: dict[int, dict]
    selection: ViewpointSelection
    terms: dict[int, dict]
    corpus: ViewpointCorpus

    @property
    def chosen_assignment(self) -> dict[str, int]:
        return self.partitions[self.selection.chosen_k]["assignment"]


def load_snapshot(directory) -> Snapshot:
    """Load and validate a complete snapshot; raises on missing pieces."""
    out_dir = Path(directory)
    if not out_dir.is_dir():
        raise SnapshotError(f"snapshot directory not found: {out_dir}")
    manifest = read_json(out_dir / "manifest.json")
    if manifest.get("version") != SNAPSHOT_VERSION:
        raise SnapshotError(f"snapshot version {manifest.get('version')} != {SNAPSHOT_VERSION}")
    graph = graph_from_dict(read_json(out_dir / "graph.json"))
    stats = read_json(out_dir / "stats.json")
    sweep_path = out_dir / "sweep.csv"
    if not sweep_path.exists():
        raise SnapshotError(f"missing snapshot file: {sweep_path}")
    profile = sweep_from_csv(sweep_path.read_text(encoding="utf-8"))
    selection = ViewpointSelection.from_dict(read_json(out_dir / "selection.json"))
    partitions: dict[int, dict] = {}
    for k in profile.k_values:
        rec = read_json(out_dir / "partitions" / f"k{k}.json")
        rec["assignment"] = {u: int(c) for u, c in rec["assignment"].items()}
        partitions[k] = rec
    tokenizer = load_tokenizer(out_dir)
    cluster_tokens = {
        vp: read_corpus_tokens(out_dir, vp) for vp in selection.viewpoint_clusters
    }
    terms = {
        vp: read_json(out_dir / "terms" / f"viewpoint_{vp}.json")
        for vp in selection.viewpoint_clusters
    }
    return Snapshot(
        directory=out_dir,
        manifest=manifest,
        graph=graph,
        stats=stats,
        profile=profile,
        partitions=partitions,
        selection=selection,
        terms=terms,
        corpus=ViewpointCorpus(cluster_tokens, tokenizer),
    )


REQUIRED_FOR_SERVE = (
    "manifest.json",
    "graph.json",
    "stats.json",
    "sweep.csv",
    "selection.json",
    "tokenizer.json",
)


def missing_files(directory) -> list[str]:
    out_dir = Path(directory)
    missing = [name for name in REQUIRED_FOR_SERVE if not (out_dir / name).exists()]
    sel_path = out_dir / "selection.json"
    if sel_path.exists():
        selection = ViewpointSelection.from_dict(read_json(sel_path))
        for k_dir, prefix in (("terms", "viewpoint"), ("corpus", "viewpoint")):
            for vp in selection.viewpoint_clusters:
                ext = "jsonl" if k_dir == "corpus" else "json"
                rel = f"{k_dir}/{prefix}_{vp}.{ext}"
                if not (out_dir / rel).exists():
                    missing.append(rel)
        chosen = selection.chosen_k
        if not (out_dir / "partitions" / f"k{chosen}.json").exists():
            missing.append(f"partitions/k{chosen}.json")
    return missing
