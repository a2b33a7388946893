#!/usr/bin/env python3
"""Build an interaction graph from endorsement triples and bisect it.

Two groups of users retweet within their own group; a single weak pair of
endorsements bridges the groups. The minimum cut is the bridge.
"""

from viewscope import (
    InteractionRecord,
    PartitionParams,
    build_graph,
    edge_cut,
    graph_stats,
    multilevel_bisect,
)

# Fabricate endorsements: everyone endorses everyone in their own camp twice.
records = []
pid = 0
camps = {"left": [f"L{i}" for i in range(6)], "right": [f"R{i}" for i in range(6)]}
for users in camps.values():
    for i in range(len(users)):
        for j in range(i + 1, len(users)):
            for _ in range(2):
                records.append(InteractionRecord(users[i], f"p{pid}", users[j], "retweet"))
                pid += 1

# One cross-camp pair with exactly two endorsements (so it survives tau=2).
records.append(InteractionRecord("L0", f"p{pid}", "R0", "retweet"))
records.append(InteractionRecord("R0", f"p{pid + 1}", "L0", "reply"))

graph = build_graph(records, tau=2)
stats = graph_stats(graph)
print(f"graph: {stats.n_nodes} nodes, {stats.n_edges} edges, volume {stats.total_volume}")
print(f"components: {stats.component_sizes}")

# The multilevel bisection should rediscover the camps.
partition = multilevel_bisect(graph, PartitionParams(k=2, seed=42))
for idx, members in enumerate(partition.clusters()):
    print(f"cluster {idx}: {sorted(members)}")
print(f"edge cut: {edge_cut(graph, partition)} (the single bridge edge, weight 2)")
