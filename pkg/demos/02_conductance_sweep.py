#!/usr/bin/env python3
"""Sweep conductance across k and let the selection rule pick the viewpoints.

Three equally tight camps of 10 users each (every within-camp pair endorses
twice), joined by single unit edges. A bisection is forced to chop one camp
in half to stay volume-balanced, so both k=2 clusters score badly; at k=3
each camp stands alone with a tiny cut. The selector should choose k=3 with
all three clusters as viewpoints.
"""

import itertools

from viewscope import InteractionRecord, PartitionParams, build_graph, select_viewpoints
from viewscope.selection import profile, sweep_to_csv

records = []
pid = 0
communities = [[f"{camp}{i}" for i in range(10)] for camp in "abc"]
for users in communities:
    for u, v in itertools.combinations(users, 2):
        for _ in range(2):
            records.append(InteractionRecord(u, f"p{pid}", v))
            pid += 1
for x, y in [("a0", "b0"), ("b1", "c0"), ("a1", "c1")]:
    records.append(InteractionRecord(x, f"p{pid}", y))
    pid += 1

graph = build_graph(records, tau=1)
prof = profile(graph, k_max=5, params=PartitionParams(k=2, seed=3))

print("k  cluster  size  volume  cut  conductance")
for q in prof.rows():
    print(f"{q.k}  {q.cluster:>7}  {q.size:>4}  {q.volume:>6}  {q.cut_weight:>3}  {q.conductance:.4f}")

selection = select_viewpoints(prof, delta=0.10)
print(f"\nchosen k = {selection.chosen_k} ({selection.verdict})")
print(f"viewpoint clusters: {selection.viewpoint_clusters}")
print(f"noisy clusters:     {selection.noisy_clusters}")

# The same table the CLI writes for external plotting:
print("\nsweep.csv preview:")
print("\n".join(sweep_to_csv(prof).splitlines()[:5]))
