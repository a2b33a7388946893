import json
import random
import xml.etree.ElementTree as ET

import pytest

from helpers import make_graph, path_graph, random_interactions
from viewscope.graph import (
    IngestError,
    IngestReport,
    InteractionRecord,
    build_graph,
    connected_components,
    graph_from_dict,
    graph_stats,
    graph_to_dict,
    ingest_interactions,
    ingest_posts,
    write_graphml,
)


def lines(*objs):
    return [json.dumps(o) for o in objs]


class TestIngestPosts:
    def test_three_wellformed_lines(self):
        posts = ingest_posts(lines(
            {"post_id": "p1", "author": "u1", "text": "one"},
            {"post_id": "p2", "author": "u1", "text": "two"},
            {"post_id": "p3", "author": "u2", "text": ""},
        ))
        assert len(posts) == 3
        assert posts["p3"].text == ""

    def test_duplicate_identical_is_idempotent(self):
        rec = {"post_id": "p1", "author": "u1", "text": "same"}
        report = IngestReport()
        posts = ingest_posts(lines(rec, rec), report=report)
        assert len(posts) == 1
        assert report.duplicates == 1

    def test_duplicate_conflicting_content_errors(self):
        with pytest.raises(IngestError, match="line 2"):
            ingest_posts(lines(
                {"post_id": "p1", "author": "u1", "text": "a"},
                {"post_id": "p1", "author": "u1", "text": "b"},
            ))

    def test_missing_post_id_references_line(self):
        with pytest.raises(IngestError, match="line 2"):
            ingest_posts(lines(
                {"post_id": "p1", "author": "u1", "text": "x"},
                {"author": "u2", "text": "y"},
            ))

    def test_skip_mode_counts_malformed(self):
        report = IngestReport()
        posts = ingest_posts(
            ["not json", json.dumps({"post_id": "p1", "author": "u1", "text": "x"})],
            on_error="skip",
            report=report,
        )
        assert len(posts) == 1
        assert report.malformed_skipped == 1


class TestIngestInteractions:
    def test_accepts_triple(self):
        recs = ingest_interactions(lines({"sender": "u1", "post_id": "p1", "receiver": "u2"}))
        assert recs == [InteractionRecord("u1", "p1", "u2", "other")]

    def test_self_interaction_dropped_and_counted(self):
        report = IngestReport()
        recs = ingest_interactions(
            lines({"sender": "u1", "post_id": "p1", "receiver": "u1", "kind": "like"}),
            report=report,
        )
        assert recs == []
        assert report.self_interactions_dropped == 1

    def test_unknown_post_id_kept_but_flagged(self):
        report = IngestReport()
        posts = {"p1": None}
        recs = ingest_interactions(
            lines({"sender": "u1", "post_id": "p9", "receiver": "u2"}),
            known_posts=posts,
            report=report,
        )
        assert len(recs) == 1
        assert report.unknown_post_ids == 1

    def test_unknown_kind_coerced_to_other(self):
        recs = ingest_interactions(
            lines({"sender": "u1", "post_id": "p1", "receiver": "u2", "kind": "quote"})
        )
        assert recs[0].kind == "other"


class TestBuildGraph:
    def test_threshold_definition(self):
        records = [
            InteractionRecord("u1", "p1", "u2"),
            InteractionRecord("u1", "p2", "u2"),
            InteractionRecord("u3", "p3", "u4"),
        ]
        g = build_graph(records, tau=2)
        assert g.nodes == ["u1", "u2"]
        assert g.weight("u1", "u2") == 2
        assert g.weight("u3", "u4") == 0

    def test_directions_merge(self):
        records = [InteractionRecord("u1", "p1", "u2"), InteractionRecord("u2", "p2", "u1")]
        g = build_graph(records, tau=2)
        assert g.weight("u1", "u2") == 2

    def test_tau_one_keeps_every_pair(self):
        rng = random.Random(5)
        records = random_interactions(rng, 8, 30)
        g = build_graph(records, tau=1)
        pairs = {tuple(sorted((r.sender, r.receiver))) for r in records}
        assert {(u, v) for u, v, _ in g.edges()} == pairs

    def test_tau_below_one_rejected(self):
        with pytest.raises(ValueError):
            build_graph([], tau=0)

    def test_empty_interactions_empty_graph(self):
        g = build_graph([], tau=2)
        assert g.n_nodes == 0 and g.n_edges == 0

    def test_kinds_filter(self):
        records = [
            InteractionRecord("u1", "p1", "u2", kind="retweet"),
            InteractionRecord("u1", "p2", "u2", kind="like"),
        ]
        assert build_graph(records, tau=2).weight("u1", "u2") == 2
        assert build_graph(records, tau=2, kinds=["retweet"]).n_edges == 0

    def test_invariants_on_random_inputs(self):
        rng = random.Random(99)
        for trial in range(25):
            tau = rng.randint(1, 3)
            g = build_graph(random_interactions(rng, 10, 60), tau=tau)
            weights = [w for _, _, w in g.edges()]
            if weights:
                assert min(weights) >= tau
            for u in g.nodes:
                assert g.degree(u) >= 1
                for v in g.neighbors(u):
                    assert g.weight(u, v) == g.weight(v, u)
            assert sum(g.degree(u) for u in g.nodes) == 2 * sum(weights)


class TestGraphStats:
    def test_path_of_four(self):
        stats = graph_stats(path_graph("abcd"))
        assert (stats.n_nodes, stats.n_edges, stats.total_volume) == (4, 3, 6)

    def test_empty_graph_all_zeros(self):
        stats = graph_stats(build_graph([], tau=1))
        assert (stats.n_nodes, stats.n_edges, stats.total_volume) == (0, 0, 0)
        assert stats.component_sizes == []

    def test_two_disjoint_triangles(self):
        g = make_graph([("a", "b", 1), ("b", "c", 1), ("a", "c", 1),
                        ("x", "y", 1), ("y", "z", 1), ("x", "z", 1)])
        assert graph_stats(g).component_sizes == [3, 3]
        assert len(connected_components(g)) == 2


class TestExport:
    def test_json_round_trip(self):
        g = path_graph("abcd")
        g2 = graph_from_dict(graph_to_dict(g))
        assert graph_to_dict(g2) == graph_to_dict(g)

    def test_graphml_parses(self, tmp_path):
        g = path_graph("abcd")
        out = tmp_path / "g.graphml"
        write_graphml(g, out)
        root = ET.parse(out).getroot()
        ns = "{http://graphml.graphdrawing.org/xmlns}"
        nodes = root.findall(f"{ns}graph/{ns}node")
        edges = root.findall(f"{ns}graph/{ns}edge")
        assert len(nodes) == 4 and len(edges) == 3
