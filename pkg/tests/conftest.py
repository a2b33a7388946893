import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import two_cliques  # noqa: E402


@pytest.fixture
def two_cliques_graph():
    graph, side_a, side_b = two_cliques(size=5)
    return graph, side_a, side_b


def synthetic_dataset():
    """Two endorsement communities with planted vocabularies.

    Group A (users a0..a7) talks about "#alpha" (in 80% of its texts, with
    "cohort" co-occurring in most of those); group B (users b0..b7) talks
    about "#beta". The two groups share filler vocabulary. Each group is an
    endorsement clique (2 interactions per pair); a single cross pair has one
    interaction, pruned at tau=2.
    """
    a_users = [f"a{i}" for i in range(8)]
    b_users = [f"b{i}" for i in range(8)]
    posts = []
    fillers = ["debate", "question", "tonight", "country", "people"]
    pid = 0
    for gi, (users, marker, extra) in enumerate(
        [(a_users, "#alpha", "cohort"), (b_users, "#beta", "banner")]
    ):
        for ui, user in enumerate(users):
            for t in range(10):
                words = [fillers[(ui + t) % len(fillers)], fillers[(ui + t + 1) % len(fillers)]]
                if t < 8:  # 80% of texts carry the group marker
                    words.append(marker)
                    if t < 6:  # the planted co-occurring token
                        words.append(extra)
                posts.append({"post_id": f"p{pid}", "author": user, "text": " ".join(words)})
                pid += 1
    interactions = []
    for users in (a_users, b_users):
        for i in range(len(users)):
            for j in range(i + 1, len(users)):
                for r in range(2):
                    interactions.append(
                        {
                            "sender": users[i],
                            "post_id": f"p{(i * 31 + j * 7 + r) % pid}",
                            "receiver": users[j],
                            "kind": "retweet",
                        }
                    )
    # one weak bridge that survives tau=2, keeping the graph connected
    interactions.append({"sender": "a0", "post_id": "p0", "receiver": "b0", "kind": "retweet"})
    interactions.append({"sender": "b0", "post_id": "p1", "receiver": "a0", "kind": "reply"})
    truth = [(u, "ALPHA") for u in a_users] + [(u, "BETA") for u in b_users]
    return posts, interactions, truth


@pytest.fixture(scope="session")
def dataset_files(tmp_path_factory):
    """The synthetic dataset written as the CLI's JSONL/CSV inputs."""
    root = tmp_path_factory.mktemp("dataset")
    posts, interactions, truth = synthetic_dataset()
    posts_path = root / "posts.jsonl"
    posts_path.write_text("\n".join(json.dumps(p) for p in posts) + "\n", encoding="utf-8")
    inter_path = root / "interactions.jsonl"
    inter_path.write_text("\n".join(json.dumps(i) for i in interactions) + "\n", encoding="utf-8")
    truth_path = root / "truth.csv"
    truth_path.write_text("user,label\n" + "\n".join(f"{u},{c}" for u, c in truth) + "\n", encoding="utf-8")
    return {"posts": posts_path, "interactions": inter_path, "truth": truth_path}


@pytest.fixture(scope="session")
def built_snapshot(tmp_path_factory, dataset_files):
    """A complete snapshot produced by driving the real CLI."""
    from viewscope.cli import main

    out = tmp_path_factory.mktemp("snapshot")
    assert main([
        "build",
        "--posts", str(dataset_files["posts"]),
        "--interactions", str(dataset_files["interactions"]),
        "--tau", "2",
        "--topic", "synthetic",
        "--out", str(out),
    ]) == 0
    assert main(["sweep", "--out", str(out), "--k-max", "4", "--seed", "11"]) == 0
    assert main(["select", "--out", str(out), "--delta", "0.10"]) == 0
    assert main(["describe", "--out", str(out), "--n", "200", "--m", "10"]) == 0
    assert main(["export", "--out", str(out)]) == 0
    return out
