"""Multilevel k-way graph partitioning.

Minimizes edge cut under a degree-volume balance constraint via the classic
coarsen / partition / uncoarsen-with-refinement scheme: heavy-edge matching
contracts the graph to a manageable size, greedy region growing produces an
initial bisection, and a boundary Fiduccia-Mattheyses pass (tentative moves,
best-prefix rollback) refines the projection at every level. k > 2 is handled
by recursive bisection with volume targets proportional to ceil(k/2):floor(k/2).

Everything is deterministic for a fixed seed: node visit orders are shuffled
with a seeded RNG and all remaining ties break by ascending node id.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Union

from .graph import InteractionGraph


class PartitionError(ValueError):
    pass


@dataclass
class PartitionParams:
    k: int = 2
    balance_epsilon: float = 0.10
    seed: int = 0
    refinement_passes: int = 10
    coarsen_stop_size: Optional[int] = None
    restarts: int = 8

    def __post_init__(self):
        if self.k < 2:
            raise PartitionError(f"k must be >= 2, got {self.k}")
        if self.balance_epsilon < 0:
            raise PartitionError("balance_epsilon must be >= 0")
        if self.coarsen_stop_size is not None and self.coarsen_stop_size < self.k:
            raise PartitionError("coarsen_stop_size must be >= k")

    @property
    def stop_size(self) -> int:
        if self.coarsen_stop_size is not None:
            return self.coarsen_stop_size
        return max(50, 20 * self.k)


@dataclass
class Partition:
    """Assignment of every node to one of k clusters, indices in [0, k)."""

    assignment: dict[str, int]
    k: int
    balance_achieved: float = 0.0

    def clusters(self) -> list[set[str]]:
        groups: list[set[str]] = [set() for _ in range(self.k)]
        for node, c in self.assignment.items():
            groups[c].add(node)
        return groups

    def cluster_sets(self) -> list[frozenset[str]]:
        return [frozenset(c) for c in self.clusters()]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "assignment": dict(sorted(self.assignment.items())),
            "balance_achieved": self.balance_achieved,
        }


@dataclass
class WorkGraph:
    """Internal graph with explicit node volumes.

    ``nvol`` carries each node's weighted degree in the *original* graph, so
    balance keeps meaning endorsement volume even on induced subgraphs and
    coarse graphs where local degrees differ.
    """

    adj: dict[str, dict[str, int]]
    nvol: dict[str, int]

    @property
    def n_nodes(self) -> int:
        return len(self.adj)

    def nodes(self) -> list[str]:
        return sorted(self.adj)

    def total_volume(self) -> int:
        return sum(self.nvol.values())

    def wdeg(self, u: str) -> int:
        return sum(self.adj[u].values())

    def edges(self):
        for u in sorted(self.adj):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield u, v, self.adj[u][v]

    def total_edge_weight(self) -> int:
        return sum(w for _, _, w in self.edges())

    def subgraph(self, keep: set[str]) -> "WorkGraph":
        adj = {
            u: {v: w for v, w in self.adj[u].items() if v in keep}
            for u in self.adj
            if u in keep
        }
        return WorkGraph(adj, {u: self.nvol[u] for u in adj})


GraphLike = Union[InteractionGraph, WorkGraph]


def as_work_graph(graph: GraphLike) -> WorkGraph:
    if isinstance(graph, WorkGraph):
        return graph
    adj = {u: dict(graph.neighbors(u)) for u in graph.nodes}
    nvol = {u: graph.degree(u) for u in graph.nodes}
    return WorkGraph(adj, nvol)


@dataclass
class CoarseGraph:
    """One coarsening level: the contracted graph plus its projection.

    ``projection`` maps each coarse node to the set of fine nodes it absorbs;
    the sets partition the fine node set. Weight of edges contracted away is
    tracked in ``collapsed_weight`` so that
    coarse edge weight + collapsed weight == fine edge weight.
    """

    graph: WorkGraph
    projection: dict[str, frozenset[str]]
    fine: WorkGraph
    collapsed_weight: int


def coarsen_level(graph: GraphLike, seed: int = 0) -> CoarseGraph:
    """Contract one maximal matching chosen by heavy-edge preference.

    Nodes are visited in a seed-shuffled order; each unmatched node pairs
    with its unmatched neighbor along the heaviest incident edge (ties break
    toward the lower node id). Unmatchable nodes survive as singletons, so
    the coarse graph is strictly smaller whenever the graph has any edge.
    """
    wg = as_work_graph(graph)
    if wg.n_nodes < 2:
        raise PartitionError("coarsening needs at least 2 nodes")
    rng = random.Random(seed)
    order = wg.nodes()
    rng.shuffle(order)
    mate: dict[str, str] = {}
    for u in order:
        if u in mate:
            continue
        best_v = None
        best_w = 0
        for v in sorted(wg.adj[u]):
            if v in mate:
                continue
            w = wg.adj[u][v]
            if w > best_w:
                best_w = w
                best_v = v
        if best_v is not None:
            mate[u] = best_v
            mate[best_v] = u

    rep: dict[str, str] = {}
    projection: dict[str, frozenset[str]] = {}
    for u in wg.nodes():
        if u in rep:
            continue
        if u in mate:
            group = (u, mate[u])
        else:
            group = (u,)
        coarse_id = min(group)
        for member in group:
            rep[member] = coarse_id
        projection[coarse_id] = frozenset(group)

    coarse_adj: dict[str, dict[str, int]] = {c: {} for c in projection}
    coarse_vol: dict[str, int] = {c: sum(wg.nvol[f] for f in members) for c, members in projection.items()}
    collapsed = 0
    for u, v, w in wg.edges():
        cu, cv = rep[u], rep[v]
        if cu == cv:
            collapsed += w
            continue
        coarse_adj[cu][cv] = coarse_adj[cu].get(cv, 0) + w
        coarse_adj[cv][cu] = coarse_adj[cv].get(cu, 0) + w
    return CoarseGraph(graph=WorkGraph(coarse_adj, coarse_vol), projection=projection, fine=wg, collapsed_weight=collapsed)


def project_partition(coarse: CoarseGraph, partition: Partition) -> Partition:
    """Push a coarse assignment down to the fine graph it came from."""
    assignment = {}
    for coarse_node, members in coarse.projection.items():
        c = partition.assignment[coarse_node]
        for fine_node in members:
            assignment[fine_node] = c
    return Partition(assignment, partition.k)


def edge_cut(graph: GraphLike, partition: Partition) -> int:
    wg = as_work_graph(graph)
    assign = partition.assignment
    return sum(w for u, v, w in wg.edges() if assign[u] != assign[v])


def _grow_region(wg: WorkGraph, start: str, target: float) -> set[str]:
    """Absorb boundary nodes by internal-to-external weight ratio until the
    region's volume reaches ``target`` (never engulfing the whole graph)."""
    n = wg.n_nodes
    side = {start}
    vol = wg.nvol[start]
    conn: Counter[str] = Counter()
    for v, w in wg.adj[start].items():
        conn[v] += w
    while vol < target and len(side) < n - 1:
        if conn:
            best_v = None
            best_ratio = -1.0
            for v in sorted(conn):
                internal = conn[v]
                external = wg.wdeg(v) - internal
                ratio = internal / external if external > 0 else math.inf
                if ratio > best_ratio:
                    best_ratio = ratio
                    best_v = v
            pick = best_v
        else:
            # disconnected remainder: pack greedily by volume
            pick = min((v for v in wg.adj if v not in side), key=lambda v: (-wg.nvol[v], v))
        side.add(pick)
        vol += wg.nvol[pick]
        conn.pop(pick, None)
        for v, w in wg.adj[pick].items():
            if v not in side:
                conn[v] += w
    return side


def initial_bisection(graph: GraphLike, params: PartitionParams, target_frac: float = 0.5) -> Partition:
    """Greedy region-growing bisection; best cut over ``params.restarts`` runs.

    Cluster 0 is the grown side (targeting ``target_frac`` of total volume).
    """
    wg = as_work_graph(graph)
    nodes = wg.nodes()
    if len(nodes) < 2:
        raise PartitionError("bisection needs at least 2 nodes")
    rng = random.Random(params.seed)
    total = wg.total_volume()
    target = target_frac * total
    best_side: Optional[set[str]] = None
    best_cut = math.inf
    for _ in range(max(1, params.restarts)):
        start = nodes[rng.randrange(len(nodes))]
        side = _grow_region(wg, start, target)
        cut = sum(w for u, v, w in wg.edges() if (u in side) != (v in side))
        if cut < best_cut:
            best_cut = cut
            best_side = side
    assignment = {u: (0 if u in best_side else 1) for u in nodes}
    return Partition(assignment, 2)


def _imbalance(vols: list[int], total: int, fracs: Sequence[float]) -> float:
    if total <= 0:
        return 0.0
    return max(v / (f * total) if f > 0 else math.inf for v, f in zip(vols, fracs))


def refine(
    graph: GraphLike,
    partition: Partition,
    params: PartitionParams,
    target_fracs: Optional[Sequence[float]] = None,
) -> Partition:
    """Boundary FM refinement: never increases the cut.

    Each pass tentatively moves unlocked boundary nodes one at a time, always
    taking the highest-gain admissible move (a move is admissible when the
    destination volume stays within the relaxed balance limit and the source
    cluster is not emptied). The pass then rolls back to the prefix with the
    best (cut, imbalance); passes stop when one brings no improvement.
    """
    wg = as_work_graph(graph)
    k = partition.k
    nodes = wg.nodes()
    total = wg.total_volume()
    fracs = list(target_fracs) if target_fracs is not None else [1.0 / k] * k
    max_nvol = max(wg.nvol.values(), default=0)
    strict_limits = [(1.0 + params.balance_epsilon) * f * total for f in fracs]
    # tentative moves get one node-volume of slack so tight instances can
    # climb through imbalance; the rollback below restores feasibility
    move_limits = [max(lim, f * total + max_nvol) for lim, f in zip(strict_limits, fracs)]

    assign = dict(partition.assignment)
    vols = [0] * k
    sizes = [0] * k
    for u in nodes:
        vols[assign[u]] += wg.nvol[u]
        sizes[assign[u]] += 1
    cut = edge_cut(wg, Partition(assign, k))

    def state() -> tuple[int, int, float]:
        over = 0 if all(v <= lim for v, lim in zip(vols, strict_limits)) else 1
        return (over, cut, _imbalance(vols, total, fracs))

    for _ in range(max(1, params.refinement_passes)):
        start_state = state()
        locked: set[str] = set()
        history: list[tuple[str, int, int]] = []  # (node, from, to)
        states: list[tuple[int, int, float]] = [start_state]
        while True:
            best = None  # (-gain, node, to)
            for u in nodes:
                if u in locked:
                    continue
                a = assign[u]
                if sizes[a] <= 1:
                    continue
                w_to: Counter[int] = Counter()
                for v, w in wg.adj[u].items():
                    w_to[assign[v]] += w
                if len(w_to) == 1 and a in w_to:
                    continue  # interior node
                for b in sorted(w_to):
                    if b == a:
                        continue
                    if vols[b] + wg.nvol[u] > move_limits[b]:
                        continue
                    gain = w_to[b] - w_to.get(a, 0)
                    cand = (-gain, u, b)
                    if best is None or cand < best:
                        best = cand
            if best is None:
                break
            neg_gain, u, b = best
            a = assign[u]
            assign[u] = b
            vols[a] -= wg.nvol[u]
            vols[b] += wg.nvol[u]
            sizes[a] -= 1
            sizes[b] += 1
            cut += neg_gain  # -gain
            locked.add(u)
            history.append((u, a, b))
            states.append(state())

        # among prefixes that do not increase the cut, prefer balanced
        # (within the strict limit), then lowest cut, then least imbalance
        candidates = [i for i in range(len(states)) if states[i][1] <= states[0][1]]
        best_idx = min(candidates, key=lambda i: states[i])
        for u, a, b in reversed(history[best_idx:]):
            assign[u] = a
            vols[a] += wg.nvol[u]
            vols[b] -= wg.nvol[u]
            sizes[a] += 1
            sizes[b] -= 1
        cut = states[best_idx][1]
        if states[best_idx] >= start_state:
            break
    return Partition(assign, k, balance_achieved=_imbalance(vols, total, fracs) - 1.0)


def multilevel_bisect(graph: GraphLike, params: PartitionParams, target_frac: float = 0.5) -> Partition:
    """Coarsen to the stop size, bisect, then uncoarsen with refinement.

    Deterministic for a fixed seed. Raises on graphs with fewer than 2 nodes.
    """
    wg = as_work_graph(graph)
    if wg.n_nodes < 2:
        raise PartitionError("multilevel_bisect needs at least 2 nodes")
    fracs = (target_frac, 1.0 - target_frac)
    rng = random.Random(params.seed)
    levels: list[CoarseGraph] = []
    cur = wg
    while cur.n_nodes > params.stop_size:
        cg = coarsen_level(cur, seed=rng.randrange(2**32))
        if cg.graph.n_nodes == cur.n_nodes:
            break
        levels.append(cg)
        cur = cg.graph
    part = initial_bisection(cur, params, target_frac)
    part = refine(cur, part, params, target_fracs=fracs)
    for cg in reversed(levels):
        part = project_partition(cg, part)
        part = refine(cg.fine, part, params, target_fracs=fracs)
    return part


def _move_damage(wg: WorkGraph, u: str, source: set[str], dest: set[str]) -> float:
    """Cut increase per unit volume if u leaves ``source`` for ``dest``."""
    internal = sum(w for v, w in wg.adj[u].items() if v in source)
    toward = sum(w for v, w in wg.adj[u].items() if v in dest)
    return (internal - toward) / max(wg.nvol[u], 1)


def _rebalance_counts(wg: WorkGraph, side_a: set[str], side_b: set[str], need_a: int, need_b: int) -> None:
    """Move lowest-damage nodes so each side can host its share of clusters."""
    while len(side_a) < need_a and len(side_b) > need_b:
        u = min(side_b, key=lambda v: (_move_damage(wg, v, side_b, side_a), v))
        side_b.discard(u)
        side_a.add(u)
    while len(side_b) < need_b and len(side_a) > need_a:
        u = min(side_a, key=lambda v: (_move_damage(wg, v, side_a, side_b), v))
        side_a.discard(u)
        side_b.add(u)


def repair_empty_clusters(wg: WorkGraph, partition: Partition) -> Partition:
    """Seed each empty cluster with the boundary node whose move damages the
    cut least per unit volume (defensive; recursion normally prevents this)."""
    assign = dict(partition.assignment)
    k = partition.k
    groups = [set() for _ in range(k)]
    for u, c in assign.items():
        groups[c].add(u)
    for c in range(k):
        if groups[c]:
            continue
        donors = [u for u in sorted(assign) if len(groups[assign[u]]) > 1]
        if not donors:
            raise PartitionError("cannot repair empty cluster: no donor nodes")
        u = min(donors, key=lambda v: (_move_damage(wg, v, groups[assign[v]], set()), v))
        groups[assign[u]].discard(u)
        groups[c].add(u)
        assign[u] = c
    return Partition(assign, k, balance_achieved=partition.balance_achieved)


def _recursive_kway(wg: WorkGraph, params: PartitionParams, k: int, offset: int, out: dict[str, int]) -> None:
    nodes = wg.nodes()
    if k == 1:
        for u in nodes:
            out[u] = offset
        return
    if len(nodes) == k:
        for i, u in enumerate(nodes):
            out[u] = offset + i
        return
    k1 = (k + 1) // 2
    k2 = k // 2
    part = multilevel_bisect(wg, params, target_frac=k1 / k)
    side_a = {u for u in nodes if part.assignment[u] == 0}
    side_b = {u for u in nodes if part.assignment[u] == 1}
    _rebalance_counts(wg, side_a, side_b, k1, k2)
    _recursive_kway(wg.subgraph(side_a), params, k1, offset, out)
    _recursive_kway(wg.subgraph(side_b), params, k2, offset + k1, out)


def kway_partition(graph: GraphLike, params: PartitionParams) -> Partition:
    """Recursive-bisection k-way partition under the volume balance target.

    The achieved balance (which may exceed the requested epsilon, since each
    recursion level relaxes it) is reported on the returned partition.
    """
    wg = as_work_graph(graph)
    k = params.k
    if k > wg.n_nodes:
        raise PartitionError(f"k={k} exceeds node count {wg.n_nodes}")
    if k == 2:
        part = multilevel_bisect(wg, params)
    else:
        assignment: dict[str, int] = {}
        _recursive_kway(wg, params, k, 0, assignment)
        part = Partition(assignment, k)
    part = repair_empty_clusters(wg, part)
    total = wg.total_volume()
    vols = [0] * k
    for u, c in part.assignment.items():
        vols[c] += wg.nvol[u]
    balance = max(vols) * k / total - 1.0 if total > 0 else 0.0
    return Partition(part.assignment, k, balance_achieved=balance)
