"""Conductance-based selection of viewpoint clusters.

The quality of a cluster is its conductance: the weight of edges leaving it
divided by the smaller of its volume and its complement's volume, where a
cluster's volume is the weighted-degree sum of its nodes (internal edges
count once per endpoint). Profiling a graph runs the k-way partitioner for
every k in [2, k_max] and records per-cluster quality; the selection rule
picks the k with the most clusters at or below the conductance threshold
delta (smaller k on ties), labels those clusters viewpoints and the rest
noise.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from .graph import InteractionGraph
from .partition import Partition, PartitionParams, kway_partition

DEFAULT_DELTA = 0.10
DEFAULT_K_MAX = 6


class SelectionError(ValueError):
    pass


def volume(graph: InteractionGraph, cluster: Iterable[str]) -> int:
    """Weighted-degree sum of the cluster's nodes."""
    return sum(graph.degree(u) for u in cluster)


def cut_weight(graph: InteractionGraph, cluster: Iterable[str]) -> int:
    """Total weight of edges with exactly one endpoint in the cluster."""
    members = set(cluster)
    total = 0
    for u in members:
        for v, w in graph.neighbors(u).items():
            if v not in members:
                total += w
    return total


def conductance(graph: InteractionGraph, cluster: Iterable[str]) -> float:
    """Cut weight over the smaller of cluster and complement volume.

    Errors on an empty cluster or empty complement; the (unreachable after
    isolated-node pruning) case of both volumes zero is defined as 0.
    """
    members = set(cluster)
    if not members:
        raise SelectionError("conductance of an empty cluster is undefined")
    if not members < set(graph.nodes):
        if members == set(graph.nodes):
            raise SelectionError("conductance of the whole node set is undefined")
        raise SelectionError("cluster contains nodes outside the graph")
    vol = volume(graph, members)
    co_vol = graph.total_volume() - vol
    denom = min(vol, co_vol)
    if denom == 0:
        return 0.0
    return cut_weight(graph, members) / denom


@dataclass
class ClusterQuality:
    k: int
    cluster: int
    size: int
    volume: int
    cut_weight: int
    conductance: float

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "cluster": self.cluster,
            "size": self.size,
            "volume": self.volume,
            "cut_weight": self.cut_weight,
            "conductance": self.conductance,
        }


def cluster_qualities(graph: InteractionGraph, partition: Partition) -> list[ClusterQuality]:
    total = graph.total_volume()
    out = []
    for idx, members in enumerate(partition.clusters()):
        vol = volume(graph, members)
        cw = cut_weight(graph, members)
        denom = min(vol, total - vol)
        cond = cw / denom if denom > 0 else 0.0
        out.append(
            ClusterQuality(
                k=partition.k,
                cluster=idx,
                size=len(members),
                volume=vol,
                cut_weight=cw,
                conductance=cond,
            )
        )
    return out


@dataclass
class ConductanceProfile:
    """Per-cluster quality for each partitioning in [2, k_max]."""

    per_k: dict[int, list[ClusterQuality]]
    partitions: dict[int, Partition] = field(default_factory=dict)

    @property
    def k_values(self) -> list[int]:
        return sorted(self.per_k)

    def rows(self) -> list[ClusterQuality]:
        out = []
        for k in self.k_values:
            out.extend(self.per_k[k])
        return out


def profile(graph: InteractionGraph, k_max: int, params: PartitionParams) -> ConductanceProfile:
    """Partition at every k in [2, k_max] (same seed policy) and score clusters."""
    if k_max < 2:
        raise SelectionError(f"k_max must be >= 2, got {k_max}")
    if graph.n_nodes < k_max:
        raise SelectionError(f"graph has {graph.n_nodes} nodes, fewer than k_max={k_max}")
    per_k: dict[int, list[ClusterQuality]] = {}
    partitions: dict[int, Partition] = {}
    for k in range(2, k_max + 1):
        part = kway_partition(graph, replace(params, k=k, coarsen_stop_size=None))
        per_k[k] = cluster_qualities(graph, part)
        partitions[k] = part
    return ConductanceProfile(per_k=per_k, partitions=partitions)


@dataclass
class ViewpointSelection:
    chosen_k: int
    delta: float
    viewpoint_clusters: list[int]
    noisy_clusters: list[int]
    verdict: str  # "viewpoints_found" | "no_clear_viewpoints"
    forced: bool = False

    def to_dict(self) -> dict:
        return {
            "chosen_k": self.chosen_k,
            "delta": self.delta,
            "viewpoints": self.viewpoint_clusters,
            "noisy": self.noisy_clusters,
            "verdict": self.verdict,
            "forced": self.forced,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ViewpointSelection":
        return cls(
            chosen_k=int(data["chosen_k"]),
            delta=float(data["delta"]),
            viewpoint_clusters=[int(c) for c in data["viewpoints"]],
            noisy_clusters=[int(c) for c in data["noisy"]],
            verdict=data["verdict"],
            forced=bool(data.get("forced", False)),
        )


def select_viewpoints(
    prof: ConductanceProfile,
    delta: float = DEFAULT_DELTA,
    force_k: Optional[int] = None,
) -> ViewpointSelection:
    """Pick the k maximizing the count of sub-delta clusters (smaller k wins
    ties); clusters above delta at that k are noise. ``force_k`` overrides
    the choice for operator judgment while keeping the labeling rule.
    """
    if not prof.per_k:
        raise SelectionError("empty conductance profile")
    if not 0 < delta < 1:
        raise SelectionError(f"delta must be in (0, 1), got {delta}")
    if force_k is not None:
        if force_k not in prof.per_k:
            raise SelectionError(f"forced k={force_k} not in profile")
        chosen_k = force_k
    else:
        counts = {
            k: sum(1 for q in qualities if q.conductance <= delta)
            for k, qualities in prof.per_k.items()
        }
        chosen_k = min(counts, key=lambda k: (-counts[k], k))
    viewpoints = [q.cluster for q in prof.per_k[chosen_k] if q.conductance <= delta]
    noisy = [q.cluster for q in prof.per_k[chosen_k] if q.conductance > delta]
    verdict = "viewpoints_found" if len(viewpoints) >= 2 else "no_clear_viewpoints"
    return ViewpointSelection(
        chosen_k=chosen_k,
        delta=delta,
        viewpoint_clusters=viewpoints,
        noisy_clusters=noisy,
        verdict=verdict,
        forced=force_k is not None,
    )


SWEEP_FIELDS = ("k", "cluster", "size", "volume", "cut_weight", "conductance")


def sweep_to_csv(prof: ConductanceProfile) -> str:
    """One row per (k, cluster): the data behind conductance-vs-k plots."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_FIELDS)
    for q in prof.rows():
        writer.writerow([q.k, q.cluster, q.size, q.volume, q.cut_weight, repr(q.conductance)])
    return buf.getvalue()


def sweep_from_csv(text: str) -> ConductanceProfile:
    reader = csv.DictReader(io.StringIO(text))
    per_k: dict[int, list[ClusterQuality]] = {}
    for row in reader:
        q = ClusterQuality(
            k=int(row["k"]),
            cluster=int(row["cluster"]),
            size=int(row["size"]),
            volume=int(row["volume"]),
            cut_weight=int(row["cut_weight"]),
            conductance=float(row["conductance"]),
        )
        per_k.setdefault(q.k, []).append(q)
    for k in per_k:
        per_k[k].sort(key=lambda q: q.cluster)
    return ConductanceProfile(per_k=per_k)
