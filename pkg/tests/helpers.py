"""Shared graph builders and independent oracles for the test suite.

Oracles deliberately avoid the library's own code paths: conductance is
recomputed by enumerating edges, rank-difference scores by per-term rational
substitution, and optimal balanced cuts by exhaustive bipartition search.
"""

import itertools
import random
from collections import Counter
from fractions import Fraction

from viewscope.graph import InteractionGraph


def make_graph(edges, tau=1):
    adj = {}
    for u, v, w in edges:
        adj.setdefault(u, {})[v] = w
        adj.setdefault(v, {})[u] = w
    return InteractionGraph(adj, tau)


def path_graph(names="abcd"):
    return make_graph([(names[i], names[i + 1], 1) for i in range(len(names) - 1)])


def clique(names, w=1):
    return [(u, v, w) for u, v in itertools.combinations(names, 2)]


def two_cliques(size=5, bridge_w=1):
    """Two equal cliques joined by one bridge edge."""
    a = [f"a{i}" for i in range(size)]
    b = [f"b{i}" for i in range(size)]
    edges = clique(a) + clique(b) + [(a[0], b[0], bridge_w)]
    return make_graph(edges), set(a), set(b)


def random_weighted_graph(rng, n, p=0.4, wmax=5):
    names = [f"n{i:02d}" for i in range(n)]
    edges = []
    for u, v in itertools.combinations(names, 2):
        if rng.random() < p:
            edges.append((u, v, rng.randint(1, wmax)))
    adj = {}
    for u, v, w in edges:
        adj.setdefault(u, {})[v] = w
        adj.setdefault(v, {})[u] = w
    # drop isolated nodes: built graphs never contain them
    return InteractionGraph({u: nbrs for u, nbrs in adj.items() if nbrs}, 1)


def random_connected_graph(rng, n, extra_p=0.3, wmax=4):
    """Random spanning tree plus extra edges: always connected."""
    names = [f"n{i:02d}" for i in range(n)]
    edges = {}
    order = names[:]
    rng.shuffle(order)
    for i in range(1, n):
        u = order[i]
        v = order[rng.randrange(i)]
        edges[tuple(sorted((u, v)))] = rng.randint(1, wmax)
    for u, v in itertools.combinations(names, 2):
        key = tuple(sorted((u, v)))
        if key not in edges and rng.random() < extra_p:
            edges[key] = rng.randint(1, wmax)
    return make_graph([(u, v, w) for (u, v), w in sorted(edges.items())])


def oracle_conductance(graph, cluster):
    """Direct edge enumeration: no reuse of the library's volume/cut code."""
    members = set(cluster)
    cut = 0
    vol_in = 0
    vol_out = 0
    for u, v, w in graph.edges():
        in_u, in_v = u in members, v in members
        if in_u != in_v:
            cut += w
        vol_in += w * (int(in_u) + int(in_v))
        vol_out += w * (int(not in_u) + int(not in_v))
    denom = min(vol_in, vol_out)
    if denom == 0:
        return 0.0
    return cut / denom


def oracle_best_balanced_cut(graph, epsilon=0.10):
    """Exhaustive minimum balanced bipartition cut.

    Feasible splits keep the larger side's volume within (1+epsilon)/2 of the
    total; when volume granularity makes that impossible, the splits with the
    smallest achievable max-side volume count as feasible instead.
    """
    nodes = sorted(graph.nodes)
    n = len(nodes)
    vols = [graph.degree(u) for u in nodes]
    total = sum(vols)
    edge_list = [(nodes.index(u), nodes.index(v), w) for u, v, w in graph.edges()]
    limit = (1 + epsilon) * total / 2
    best_feasible = None
    best_maxvol = None
    best_at_maxvol = None
    for mask in range(1, 2 ** (n - 1)):
        vol_a = sum(vols[i] for i in range(n) if mask >> i & 1)
        maxvol = max(vol_a, total - vol_a)
        cut = sum(w for i, j, w in edge_list if (mask >> i & 1) != (mask >> j & 1))
        if maxvol <= limit:
            if best_feasible is None or cut < best_feasible:
                best_feasible = cut
        if best_maxvol is None or maxvol < best_maxvol or (maxvol == best_maxvol and cut < best_at_maxvol):
            best_maxvol = maxvol
            best_at_maxvol = cut
    return best_feasible if best_feasible is not None else best_at_maxvol


def oracle_rank_diff(subject_entries, contrast_entries):
    """Naive per-term Eq.-style substitution in exact rational arithmetic."""
    subject_terms = [t for t, _ in subject_entries]
    contrast_terms = [t for t, _ in contrast_entries]
    n_s, n_c = len(subject_terms), len(contrast_terms)
    scores = {}
    for term in subject_terms:
        r_s = subject_terms.index(term) + 1
        r_c = contrast_terms.index(term) + 1 if term in contrast_terms else n_c + 1
        scores[term] = float(Fraction(r_c, n_c) - Fraction(r_s, n_s))
    return scores


def oracle_purity(cluster_labels, class_labels):
    by_cluster = {}
    for c, t in zip(cluster_labels, class_labels):
        by_cluster.setdefault(c, []).append(t)
    return sum(Counter(members).most_common(1)[0][1] for members in by_cluster.values()) / len(
        cluster_labels
    )


def oracle_nmi(cluster_labels, class_labels):
    """Contingency-table NMI with arithmetic-mean normalization."""
    import math

    n = len(cluster_labels)
    table = Counter(zip(cluster_labels, class_labels))
    pc = Counter(cluster_labels)
    pt = Counter(class_labels)
    h_c = -sum(c / n * math.log(c / n) for c in pc.values())
    h_t = -sum(c / n * math.log(c / n) for c in pt.values())
    if h_c == 0.0 and h_t == 0.0:
        return 1.0
    mi = 0.0
    for (c, t), count in table.items():
        mi += count / n * math.log((count / n) / ((pc[c] / n) * (pt[t] / n)))
    return 2 * max(mi, 0.0) / (h_c + h_t)


def random_interactions(rng, n_users, n_records):
    from viewscope.graph import InteractionRecord

    users = [f"u{i:02d}" for i in range(n_users)]
    kinds = ["retweet", "like", "reply", "other"]
    records = []
    for i in range(n_records):
        sender, receiver = rng.sample(users, 2)
        records.append(
            InteractionRecord(sender=sender, post_id=f"p{i}", receiver=receiver, kind=rng.choice(kinds))
        )
    return records
