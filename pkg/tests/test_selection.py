import random

import pytest

from helpers import (
    clique,
    make_graph,
    oracle_conductance,
    path_graph,
    random_weighted_graph,
    two_cliques,
)
from viewscope.partition import Partition, PartitionParams
from viewscope.selection import (
    ClusterQuality,
    ConductanceProfile,
    SelectionError,
    cluster_qualities,
    conductance,
    profile,
    select_viewpoints,
    sweep_from_csv,
    sweep_to_csv,
    volume,
)


class TestVolume:
    def test_path_prefix(self):
        g = path_graph("abcd")
        assert volume(g, {"a", "b"}) == 3

    def test_whole_node_set_is_handshake(self):
        g = make_graph(clique(["a", "b", "c"], w=2))
        assert volume(g, set(g.nodes)) == 2 * sum(w for _, _, w in g.edges())

    def test_empty_cluster(self):
        assert volume(path_graph("abc"), set()) == 0


class TestConductance:
    def test_disjoint_triangle_is_zero(self):
        g = make_graph(clique(["a", "b", "c"]) + clique(["x", "y", "z"]))
        assert conductance(g, {"a", "b", "c"}) == 0.0

    def test_path_prefix(self):
        assert conductance(path_graph("abcd"), {"a", "b"}) == pytest.approx(1 / 3)

    def test_star_leaf(self):
        g = make_graph([("hub", "l1", 1), ("hub", "l2", 1), ("hub", "l3", 1)])
        assert conductance(g, {"l1"}) == 1.0

    def test_empty_and_full_clusters_error(self):
        g = path_graph("abc")
        with pytest.raises(SelectionError):
            conductance(g, set())
        with pytest.raises(SelectionError):
            conductance(g, set(g.nodes))

    def test_equal_conductance_for_any_bipartition(self):
        rng = random.Random(3)
        for trial in range(30):
            g = random_weighted_graph(rng, rng.randint(4, 10))
            nodes = g.nodes
            if len(nodes) < 3:
                continue
            size = rng.randint(1, len(nodes) - 1)
            side = set(rng.sample(nodes, size))
            other = set(nodes) - side
            assert conductance(g, side) == pytest.approx(conductance(g, other), abs=1e-12)

    def test_matches_edge_enumeration_oracle(self):
        rng = random.Random(11)
        for trial in range(20):
            g = random_weighted_graph(rng, rng.randint(4, 9))
            nodes = g.nodes
            if len(nodes) < 3:
                continue
            for mask in range(1, 2 ** len(nodes) - 1):
                cluster = {nodes[i] for i in range(len(nodes)) if mask >> i & 1}
                assert conductance(g, cluster) == pytest.approx(
                    oracle_conductance(g, cluster), abs=1e-12
                )

    def test_range_bounds(self):
        rng = random.Random(29)
        for trial in range(20):
            g = random_weighted_graph(rng, 8)
            nodes = g.nodes
            if len(nodes) < 3:
                continue
            side = set(rng.sample(nodes, rng.randint(1, len(nodes) - 1)))
            assert 0.0 <= conductance(g, side) <= 1.0


class TestProfile:
    def test_two_cliques_conductance(self):
        g, _, _ = two_cliques(size=5)
        prof = profile(g, 2, PartitionParams(k=2, seed=7))
        conds = [q.conductance for q in prof.per_k[2]]
        assert conds == pytest.approx([1 / 21, 1 / 21])

    def test_k2_clusters_share_conductance(self):
        rng = random.Random(19)
        g = random_weighted_graph(rng, 12)
        prof = profile(g, 2, PartitionParams(k=2, seed=1))
        a, b = [q.conductance for q in prof.per_k[2]]
        assert a == pytest.approx(b, abs=1e-12)

    def test_complete_graph_k6(self):
        g = make_graph(clique([f"n{i}" for i in range(6)]))
        prof = profile(g, 2, PartitionParams(k=2, seed=5))
        for q in prof.per_k[2]:
            assert q.conductance == pytest.approx(0.6)

    def test_deterministic(self):
        g, _, _ = two_cliques(size=4)
        params = PartitionParams(k=2, seed=77)
        p1 = profile(g, 3, params)
        p2 = profile(g, 3, params)
        assert [q.to_dict() for q in p1.rows()] == [q.to_dict() for q in p2.rows()]

    def test_k_max_larger_than_graph_errors(self):
        g = make_graph([("a", "b", 1)])
        with pytest.raises(SelectionError):
            profile(g, 3, PartitionParams(k=2, seed=0))


def fabricated_profile(conds_by_k):
    per_k = {}
    for k, conds in conds_by_k.items():
        per_k[k] = [
            ClusterQuality(k=k, cluster=i, size=10, volume=100, cut_weight=5, conductance=c)
            for i, c in enumerate(conds)
        ]
    return ConductanceProfile(per_k=per_k)


class TestSelectViewpoints:
    def test_low_k2_beats_high_k3(self):
        prof = fabricated_profile({2: [0.04, 0.04], 3: [0.25, 0.45, 0.80]})
        sel = select_viewpoints(prof, delta=0.10)
        assert sel.chosen_k == 2
        assert sel.viewpoint_clusters == [0, 1]
        assert sel.noisy_clusters == []
        assert sel.verdict == "viewpoints_found"

    def test_count_tie_prefers_smaller_k_with_override(self):
        prof = fabricated_profile({2: [0.05, 0.05], 3: [0.06, 0.07, 0.60]})
        sel = select_viewpoints(prof, delta=0.10)
        assert sel.chosen_k == 2
        forced = select_viewpoints(prof, delta=0.10, force_k=3)
        assert forced.chosen_k == 3
        assert forced.viewpoint_clusters == [0, 1]
        assert forced.noisy_clusters == [2]
        assert forced.verdict == "viewpoints_found"
        assert forced.forced

    def test_everything_noisy_gives_no_clear_viewpoints(self):
        prof = fabricated_profile({2: [0.4, 0.4], 3: [0.5, 0.6, 0.7]})
        sel = select_viewpoints(prof, delta=0.10)
        assert sel.verdict == "no_clear_viewpoints"
        assert sel.viewpoint_clusters == []
        assert set(sel.noisy_clusters) == set(range(sel.chosen_k))

    def test_single_sub_delta_cluster_is_still_no_verdict(self):
        prof = fabricated_profile({2: [0.05, 0.4]})
        sel = select_viewpoints(prof, delta=0.10)
        assert sel.viewpoint_clusters == [0]
        assert sel.verdict == "no_clear_viewpoints"

    def test_pure_function(self):
        prof = fabricated_profile({2: [0.04, 0.04], 3: [0.02, 0.03, 0.04]})
        first = select_viewpoints(prof, delta=0.10)
        second = select_viewpoints(prof, delta=0.10)
        assert first.to_dict() == second.to_dict()
        assert first.chosen_k == 3  # three clusters beat two

    def test_delta_bounds_checked(self):
        prof = fabricated_profile({2: [0.04, 0.04]})
        with pytest.raises(SelectionError):
            select_viewpoints(prof, delta=0.0)
        with pytest.raises(SelectionError):
            select_viewpoints(prof, delta=1.0)


class TestSweepCsv:
    def test_round_trip(self):
        g, _, _ = two_cliques(size=4)
        prof = profile(g, 3, PartitionParams(k=2, seed=3))
        text = sweep_to_csv(prof)
        back = sweep_from_csv(text)
        assert [q.to_dict() for q in back.rows()] == [q.to_dict() for q in prof.rows()]

    def test_header_and_shape(self):
        g, _, _ = two_cliques(size=4)
        prof = profile(g, 2, PartitionParams(k=2, seed=3))
        lines = sweep_to_csv(prof).splitlines()
        assert lines[0] == "k,cluster,size,volume,cut_weight,conductance"
        assert len(lines) == 1 + 2


class TestClusterQualities:
    def test_partition_of_path(self):
        g = path_graph("abcd")
        part = Partition({"a": 0, "b": 0, "c": 1, "d": 1}, 2)
        rows = cluster_qualities(g, part)
        assert [q.size for q in rows] == [2, 2]
        assert [q.volume for q in rows] == [3, 3]
        assert [q.cut_weight for q in rows] == [1, 1]
        assert rows[0].conductance == pytest.approx(1 / 3)
