#!/usr/bin/env python3
"""The iterative rank-difference workflow on a tiny two-viewpoint corpus.

First iteration: what is each viewpoint about? Next iteration: drill into a
descriptive term to see what the viewpoint says about it. Note how drilling
the pro-side slogan surfaces the terms it co-occurs with.
"""

from viewscope import (
    Post,
    Tokenizer,
    ViewpointSelection,
    build_viewpoint_corpus,
    describe_viewpoint,
    drill_terms,
)

texts_yes = [
    "#voteyes for an independent future",
    "#voteyes an independent country can decide its own taxes",
    "rally tonight #voteyes bring your friends",
    "the campaign for independence grows every day",
    "polling day soon, the country decides",
]
texts_no = [
    "#nothanks keep the union strong",
    "#nothanks the currency question has no answer",
    "union means stability for pensions and currency",
    "the campaign against separation grows every day",
    "polling day soon, the country decides",
]

posts = []
for i, text in enumerate(texts_yes):
    posts.append(Post(f"y{i}", "user_yes", text))
for i, text in enumerate(texts_no):
    posts.append(Post(f"n{i}", "user_no", text))

assignment = {"user_yes": 0, "user_no": 1}
corpus = build_viewpoint_corpus(posts, assignment, Tokenizer())
selection = ViewpointSelection(
    chosen_k=2, delta=0.10, viewpoint_clusters=[0, 1], noisy_clusters=[],
    verdict="viewpoints_found",
)

for vp, label in [(0, "YES side"), (1, "NO side")]:
    desc = describe_viewpoint(corpus, selection, vp, n=50, m=5)
    terms = ", ".join(f"{e.term} ({e.score:+.2f})" for e in desc.entries)
    print(f"viewpoint {vp} ({label}): {terms}")

print("\ndrilling '#voteyes' inside the YES side:")
drill = drill_terms(corpus, selection, 0, ["#voteyes"], n=50, m=5)
for e in drill.entries:
    contrast = e.contrast_rank if e.contrast_rank is not None else "absent"
    print(f"  {e.term:<12} score {e.score:+.2f}  subject rank {e.subject_rank}, contrast {contrast}")
