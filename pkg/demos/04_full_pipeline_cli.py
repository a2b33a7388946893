#!/usr/bin/env python3
"""Drive the whole pipeline through the CLI, the way an analyst would.

Writes a synthetic dataset to a temp directory, then runs:
build -> sweep -> select -> describe -> drill -> eval -> export.
The resulting snapshot directory is exactly what `viewscope serve` and the
browser explorer consume.
"""

import itertools
import json
import random
import tempfile
from pathlib import Path

from viewscope.cli import main

workdir = Path(tempfile.mkdtemp(prefix="viewscope_demo_"))
out = workdir / "snapshot"
rng = random.Random(99)

groups = {
    "remain": ([f"re{i}" for i in range(9)], "#remain", "markets"),
    "leave": ([f"le{i}" for i in range(9)], "#leave", "borders"),
}
posts, interactions, truth_rows = [], [], []
pid = 0
for label, (users, tag, theme) in groups.items():
    for u in users:
        truth_rows.append(f"{u},{label}")
        for t in range(6):
            text = f"{tag} {theme} debate tonight" if t % 3 else f"{theme} question for the country"
            posts.append({"post_id": f"p{pid}", "author": u, "text": text})
            pid += 1
    for u, v in itertools.combinations(users, 2):
        if rng.random() < 0.7:
            for _ in range(2):
                interactions.append({"sender": u, "post_id": f"p{rng.randrange(pid)}", "receiver": v})
interactions.append({"sender": "re0", "post_id": "p0", "receiver": "le0"})

(workdir / "posts.jsonl").write_text("\n".join(json.dumps(p) for p in posts) + "\n")
(workdir / "interactions.jsonl").write_text("\n".join(json.dumps(i) for i in interactions) + "\n")
(workdir / "truth.csv").write_text("user,label\n" + "\n".join(truth_rows) + "\n")

steps = [
    ["build", "--posts", str(workdir / "posts.jsonl"),
     "--interactions", str(workdir / "interactions.jsonl"),
     "--tau", "2", "--topic", "referendum demo", "--out", str(out)],
    ["sweep", "--out", str(out), "--k-max", "4", "--seed", "1"],
    ["select", "--out", str(out), "--delta", "0.10"],
    ["describe", "--out", str(out), "--n", "200", "--m", "8"],
    ["drill", "--out", str(out), "--viewpoint", "0", "--terms", "#remain,#leave", "--m", "5"],
    ["eval", "--out", str(out), "--truth", str(workdir / "truth.csv")],
    ["export", "--out", str(out)],
]
for argv in steps:
    print(f"\n$ viewscope {' '.join(argv)}")
    code = main(argv)
    if code not in (0,):
        # drill on the wrong side's tag can split degenerately; that's data-dependent
        print(f"  (exit code {code})")

print(f"\nsnapshot written to {out}")
print("serve it with:  viewscope serve --out", out)
