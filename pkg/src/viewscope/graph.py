"""Endorsement ingestion and interaction-graph construction.

Input data arrives as JSONL streams: one post or one interaction per line.
Users who endorse each other's posts at least ``tau`` times (in either
direction, any interaction kind) get an undirected weighted edge; everyone
else is pruned. The resulting :class:`InteractionGraph` is immutable by
convention and safe to share across threads.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

INTERACTION_KINDS = ("retweet", "like", "reply", "other")


class IngestError(ValueError):
    """A malformed input line, carrying its 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Post:
    post_id: str
    author: str
    text: str


@dataclass(frozen=True)
class InteractionRecord:
    sender: str
    post_id: str
    receiver: str
    kind: str = "other"


@dataclass
class IngestReport:
    """Counters for one ingestion run."""

    accepted: int = 0
    duplicates: int = 0
    self_interactions_dropped: int = 0
    malformed_skipped: int = 0
    unknown_post_ids: int = 0

    def to_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "duplicates": self.duplicates,
            "self_interactions_dropped": self.self_interactions_dropped,
            "malformed_skipped": self.malformed_skipped,
            "unknown_post_ids": self.unknown_post_ids,
        }


@dataclass
class DatasetMeta:
    """Free-text provenance for a dataset: the discussed topic plus counts."""

    topic: str = ""
    source: str = ""
    ingested_at: str = ""
    post_count: int = 0
    interaction_count: int = 0

    def to_dict(self) -> dict:
        return {
            "topic": self.topic,
            "source": self.source,
            "ingested_at": self.ingested_at,
            "post_count": self.post_count,
            "interaction_count": self.interaction_count,
        }


def _parse_json_line(line: str, line_no: int) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise IngestError(line_no, f"invalid JSON ({exc.msg})") from exc
    if not isinstance(obj, dict):
        raise IngestError(line_no, "expected a JSON object")
    return obj


def ingest_posts(
    lines: Iterable[str],
    on_error: str = "abort",
    report: Optional[IngestReport] = None,
) -> dict[str, Post]:
    """Parse a posts.jsonl stream into posts keyed by post_id.

    Repeating a post_id with identical content is idempotent; repeating it
    with different content is treated as a malformed line. ``on_error`` is
    either "abort" (raise :class:`IngestError`) or "skip" (count and move on).
    """
    if on_error not in ("abort", "skip"):
        raise ValueError(f"on_error must be 'abort' or 'skip', got {on_error!r}")
    report = report if report is not None else IngestReport()
    posts: dict[str, Post] = {}
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = _parse_json_line(line, line_no)
            post_id = obj.get("post_id")
            if not isinstance(post_id, str) or not post_id:
                raise IngestError(line_no, "missing or empty post_id")
            author = obj.get("author")
            if not isinstance(author, str) or not author:
                raise IngestError(line_no, "missing or empty author")
            text = obj.get("text")
            if text is None:
                raise IngestError(line_no, "missing text field")
            if not isinstance(text, str):
                raise IngestError(line_no, "text must be a string")
            post = Post(post_id=post_id, author=author, text=text)
            if post_id in posts:
                if posts[post_id] != post:
                    raise IngestError(line_no, f"post_id {post_id!r} repeated with different content")
                report.duplicates += 1
                continue
        except IngestError:
            if on_error == "abort":
                raise
            report.malformed_skipped += 1
            continue
        posts[post_id] = post
        report.accepted += 1
    return posts


def ingest_interactions(
    lines: Iterable[str],
    on_error: str = "abort",
    known_posts: Optional[dict[str, Post]] = None,
    report: Optional[IngestReport] = None,
) -> list[InteractionRecord]:
    """Parse an interactions.jsonl stream into endorsement triples.

    Self-interactions (sender == receiver) carry no between-user signal and
    are dropped and counted. Records referencing a post_id not present in
    ``known_posts`` are kept (the edge needs only the user pair) but counted
    as unknown, since text lookups will miss them later. A missing kind
    defaults to "other"; unrecognized kinds are coerced to "other".
    """
    if on_error not in ("abort", "skip"):
        raise ValueError(f"on_error must be 'abort' or 'skip', got {on_error!r}")
    report = report if report is not None else IngestReport()
    records: list[InteractionRecord] = []
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = _parse_json_line(line, line_no)
            sender = obj.get("sender")
            receiver = obj.get("receiver")
            post_id = obj.get("post_id")
            if not isinstance(sender, str) or not sender:
                raise IngestError(line_no, "missing or empty sender")
            if not isinstance(receiver, str) or not receiver:
                raise IngestError(line_no, "missing or empty receiver")
            if not isinstance(post_id, str) or not post_id:
                raise IngestError(line_no, "missing or empty post_id")
        except IngestError:
            if on_error == "abort":
                raise
            report.malformed_skipped += 1
            continue
        if sender == receiver:
            report.self_interactions_dropped += 1
            continue
        kind = obj.get("kind", "other")
        if kind not in INTERACTION_KINDS:
            kind = "other"
        if known_posts is not None and post_id not in known_posts:
            report.unknown_post_ids += 1
        records.append(InteractionRecord(sender=sender, post_id=post_id, receiver=receiver, kind=kind))
        report.accepted += 1
    return records


class InteractionGraph:
    """Undirected user graph weighted by endorsement counts.

    Every stored edge has weight >= tau and every node has degree >= 1;
    construction enforces both. Instances are value objects: nothing mutates
    a built graph, so concurrent reads are safe.
    """

    def __init__(self, adj: dict[str, dict[str, int]], tau: int):
        self._adj = adj
        self.tau = tau

    @property
    def nodes(self) -> list[str]:
        return sorted(self._adj)

    def has_node(self, u: str) -> bool:
        return u in self._adj

    def neighbors(self, u: str) -> dict[str, int]:
        return self._adj[u]

    def weight(self, u: str, v: str) -> int:
        return self._adj.get(u, {}).get(v, 0)

    def degree(self, u: str) -> int:
        """Weighted degree: the node's share of Eq.-style volume."""
        return sum(self._adj[u].values())

    def edges(self) -> Iterator[tuple[str, str, int]]:
        """Each undirected edge once, as (u, v, w) with u < v, sorted."""
        for u in sorted(self._adj):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield u, v, self._adj[u][v]

    @property
    def n_nodes(self) -> int:
        return len(self._adj)

    @property
    def n_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self._adj.values()) // 2

    def total_volume(self) -> int:
        """Twice the sum of edge weights (handshake identity)."""
        return sum(self.degree(u) for u in self._adj)


def build_graph(
    interactions: Sequence[InteractionRecord],
    tau: int = 2,
    kinds: Optional[Sequence[str]] = None,
) -> InteractionGraph:
    """Build the interaction graph from endorsement triples.

    An edge (u, v) exists iff the number of interactions between u and v --
    either direction, any kind passing the ``kinds`` filter -- is at least
    ``tau``; its weight is that count. Nodes left with no qualifying edge are
    excluded. An empty interaction set yields an empty graph.
    """
    if tau < 1:
        raise ValueError(f"tau must be >= 1, got {tau}")
    allowed = set(kinds) if kinds is not None else None
    pair_counts: Counter[tuple[str, str]] = Counter()
    for rec in interactions:
        if rec.sender == rec.receiver:
            continue
        if allowed is not None and rec.kind not in allowed:
            continue
        u, v = sorted((rec.sender, rec.receiver))
        pair_counts[(u, v)] += 1
    adj: dict[str, dict[str, int]] = {}
    for (u, v), count in pair_counts.items():
        if count < tau:
            continue
        adj.setdefault(u, {})[v] = count
        adj.setdefault(v, {})[u] = count
    return InteractionGraph(adj, tau)


@dataclass
class GraphStats:
    n_nodes: int
    n_edges: int
    total_volume: int
    component_sizes: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n_nodes": self.n_nodes,
            "n_edges": self.n_edges,
            "total_volume": self.total_volume,
            "component_sizes": self.component_sizes,
        }


def connected_components(graph: InteractionGraph) -> list[set[str]]:
    """Connected components, largest first (ties by smallest member id)."""
    seen: set[str] = set()
    comps: list[set[str]] = []
    for start in graph.nodes:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            u = queue.popleft()
            for v in graph.neighbors(u):
                if v not in seen:
                    seen.add(v)
                    comp.add(v)
                    queue.append(v)
        comps.append(comp)
    comps.sort(key=lambda c: (-len(c), min(c)))
    return comps


def graph_stats(graph: InteractionGraph) -> GraphStats:
    return GraphStats(
        n_nodes=graph.n_nodes,
        n_edges=graph.n_edges,
        total_volume=graph.total_volume(),
        component_sizes=[len(c) for c in connected_components(graph)],
    )


def graph_to_dict(graph: InteractionGraph) -> dict:
    return {
        "nodes": graph.nodes,
        "edges": [{"u": u, "v": v, "w": w} for u, v, w in graph.edges()],
        "tau": graph.tau,
    }


def graph_from_dict(data: dict) -> InteractionGraph:
    adj: dict[str, dict[str, int]] = {node: {} for node in data["nodes"]}
    for edge in data["edges"]:
        u, v, w = edge["u"], edge["v"], edge["w"]
        adj.setdefault(u, {})[v] = w
        adj.setdefault(v, {})[u] = w
    return InteractionGraph(adj, int(data.get("tau", 1)))


def write_graphml(graph: InteractionGraph, path) -> None:
    """GraphML export for external tools (Gephi, yEd, networkx)."""
    ns = "http://graphml.graphdrawing.org/xmlns"
    ET.register_namespace("", ns)
    root = ET.Element(f"{{{ns}}}graphml")
    key = ET.SubElement(root, f"{{{ns}}}key")
    key.set("id", "w")
    key.set("for", "edge")
    key.set("attr.name", "weight")
    key.set("attr.type", "int")
    gel = ET.SubElement(root, f"{{{ns}}}graph")
    gel.set("id", "G")
    gel.set("edgedefault", "undirected")
    for node in graph.nodes:
        nel = ET.SubElement(gel, f"{{{ns}}}node")
        nel.set("id", node)
    for i, (u, v, w) in enumerate(graph.edges()):
        eel = ET.SubElement(gel, f"{{{ns}}}edge")
        eel.set("id", f"e{i}")
        eel.set("source", u)
        eel.set("target", v)
        data = ET.SubElement(eel, f"{{{ns}}}data")
        data.set("key", "w")
        data.text = str(w)
    tree = ET.ElementTree(root)
    ET.indent(tree)
    tree.write(path, encoding="unicode", xml_declaration=True)
