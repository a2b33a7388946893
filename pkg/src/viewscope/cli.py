"""Command-line front door.

Subcommands cover the whole pipeline: ``build`` the interaction graph from
JSONL inputs, ``sweep`` conductance across k, ``select`` the viewpoint
clusters, ``describe`` them, ``drill`` into terms, ``eval`` against ground
truth, ``export`` GraphML plus the UI bundle, and ``serve`` the HTTP API over
a snapshot directory.

Every flag can also be set through an environment variable with the
``VIEWSCOPE_`` prefix (e.g. ``VIEWSCOPE_TAU=3``); explicit flags win.

Exit codes: 0 success, 2 input error, 3 parameter error,
4 no clear viewpoints found.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import evaluation, graph as graph_mod, ird, selection as sel_mod, snapshot as snap
from .partition import PartitionError, PartitionParams, edge_cut
from .text import NORMALIZERS, Tokenizer, load_stopwords

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PARAM = 3
EXIT_NO_VIEWPOINTS = 4

ENV_PREFIX = "VIEWSCOPE_"


def _env(name: str, cast, fallback):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except (TypeError, ValueError):
        raise SystemExit(f"invalid value for {ENV_PREFIX}{name}: {raw!r}")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _read_lines(path: Path):
    if not path.exists():
        raise CliError(f"input file not found: {path}", EXIT_INPUT)
    with path.open(encoding="utf-8") as fh:
        yield from fh


def _manifest_config(out_dir: Path) -> dict:
    path = out_dir / "manifest.json"
    if not path.exists():
        raise CliError(f"no manifest in {out_dir}; run `build` first", EXIT_INPUT)
    return snap.read_json(path).get("config", {})


def cmd_build(args) -> int:
    out_dir = Path(args.out)
    posts_path = Path(args.posts)
    inter_path = Path(args.interactions)
    report = graph_mod.IngestReport()
    try:
        posts = graph_mod.ingest_posts(_read_lines(posts_path), on_error=args.on_error, report=report)
        interactions = graph_mod.ingest_interactions(
            _read_lines(inter_path), on_error=args.on_error, known_posts=posts, report=report
        )
    except graph_mod.IngestError as exc:
        raise CliError(f"ingestion failed: {exc}", EXIT_INPUT)
    kinds = [k.strip() for k in args.kinds.split(",")] if args.kinds else None
    g = graph_mod.build_graph(interactions, tau=args.tau, kinds=kinds)
    stats = graph_mod.graph_stats(g)
    snap.write_json(out_dir / "graph.json", graph_mod.graph_to_dict(g))
    snap.write_json(
        out_dir / "stats.json",
        {"graph": stats.to_dict(), "ingest": report.to_dict()},
    )
    meta = graph_mod.DatasetMeta(
        topic=args.topic,
        source=f"posts={posts_path.name} interactions={inter_path.name}",
        ingested_at=snap._now(),
        post_count=len(posts),
        interaction_count=len(interactions),
    )
    snap.update_manifest(
        out_dir,
        "build",
        {
            "posts_path": str(posts_path),
            "interactions_path": str(inter_path),
            "tau": args.tau,
            "kinds": kinds,
            "on_error": args.on_error,
            "topic": args.topic,
            "dataset": meta.to_dict(),
        },
    )
    _emit(
        args,
        {"graph": stats.to_dict(), "ingest": report.to_dict()},
        f"built graph: {stats.n_nodes} nodes, {stats.n_edges} edges, volume {stats.total_volume}",
    )
    return EXIT_OK


def _load_graph(out_dir: Path) -> graph_mod.InteractionGraph:
    path = out_dir / "graph.json"
    if not path.exists():
        raise CliError(f"no graph.json in {out_dir}; run `build` first", EXIT_INPUT)
    return graph_mod.graph_from_dict(snap.read_json(path))


def cmd_sweep(args) -> int:
    out_dir = Path(args.out)
    g = _load_graph(out_dir)
    params = PartitionParams(
        k=2,
        balance_epsilon=args.epsilon,
        seed=args.seed,
        refinement_passes=args.refinement_passes,
        restarts=args.restarts,
    )
    prof = sel_mod.profile(g, args.k_max, params)
    (out_dir / "sweep.csv").write_text(sel_mod.sweep_to_csv(prof), encoding="utf-8")
    for k, part in sorted(prof.partitions.items()):
        snap.write_json(
            out_dir / "partitions" / f"k{k}.json",
            snap.partition_record(part, edge_cut(g, part)),
        )
    snap.update_manifest(
        out_dir,
        "sweep",
        {"k_max": args.k_max, "seed": args.seed, "epsilon": args.epsilon,
         "refinement_passes": args.refinement_passes, "restarts": args.restarts},
    )
    _emit(
        args,
        {"rows": [q.to_dict() for q in prof.rows()]},
        "\n".join(
            f"k={q.k} cluster={q.cluster} size={q.size} conductance={q.conductance:.4f}"
            for q in prof.rows()
        ),
    )
    return EXIT_OK


def cmd_select(args) -> int:
    out_dir = Path(args.out)
    sweep_path = out_dir / "sweep.csv"
    if not sweep_path.exists():
        raise CliError(f"no sweep.csv in {out_dir}; run `sweep` first", EXIT_INPUT)
    prof = sel_mod.sweep_from_csv(sweep_path.read_text(encoding="utf-8"))
    result = sel_mod.select_viewpoints(prof, delta=args.delta, force_k=args.force_k)
    snap.write_json(out_dir / "selection.json", result.to_dict())
    snap.update_manifest(out_dir, "select", {"delta": args.delta, "force_k": args.force_k})
    _emit(
        args,
        result.to_dict(),
        f"chosen k={result.chosen_k}: viewpoints {result.viewpoint_clusters}, "
        f"noisy {result.noisy_clusters} ({result.verdict})",
    )
    if result.verdict == "no_clear_viewpoints":
        return EXIT_NO_VIEWPOINTS
    return EXIT_OK


def _load_selection(out_dir: Path) -> sel_mod.ViewpointSelection:
    path = out_dir / "selection.json"
    if not path.exists():
        raise CliError(f"no selection.json in {out_dir}; run `select` first", EXIT_INPUT)
    return sel_mod.ViewpointSelection.from_dict(snap.read_json(path))


def _build_corpus(args, out_dir: Path, selection) -> tuple[ird.ViewpointCorpus, dict[str, graph_mod.Post]]:
    config = _manifest_config(out_dir)
    posts_path = Path(args.posts) if args.posts else Path(config.get("posts_path", ""))
    if not posts_path or not posts_path.exists():
        raise CliError("posts file not found; pass --posts or run `build` in this directory", EXIT_INPUT)
    posts = graph_mod.ingest_posts(_read_lines(posts_path), on_error=config.get("on_error", "abort"))
    stopwords = load_stopwords(args.stopwords) if args.stopwords else None
    tokenizer = Tokenizer(stopwords=stopwords, normalizer=args.normalizer)
    part_path = out_dir / "partitions" / f"k{selection.chosen_k}.json"
    if not part_path.exists():
        raise CliError(f"missing {part_path}; run `sweep` first", EXIT_INPUT)
    assignment = {u: int(c) for u, c in snap.read_json(part_path)["assignment"].items()}
    corpus = ird.build_viewpoint_corpus(posts.values(), assignment, tokenizer)
    return corpus, posts


def cmd_describe(args) -> int:
    out_dir = Path(args.out)
    selection = _load_selection(out_dir)
    corpus, posts = _build_corpus(args, out_dir, selection)
    targets = [args.viewpoint] if args.viewpoint is not None else list(selection.viewpoint_clusters)
    descriptions = {}
    for vp in targets:
        desc = ird.describe_viewpoint(corpus, selection, vp, n=args.n, m=args.m)
        descriptions[vp] = desc.to_dict()
        snap.write_json(out_dir / "terms" / f"viewpoint_{vp}.json", desc.to_dict())
    # persist the normalized corpus (and tokenizer) for live drilldowns
    snap.write_tokenizer(out_dir, corpus.tokenizer)
    config = _manifest_config(out_dir)
    part_path = out_dir / "partitions" / f"k{selection.chosen_k}.json"
    assignment = {u: int(c) for u, c in snap.read_json(part_path)["assignment"].items()}
    for vp in selection.viewpoint_clusters:
        records = [
            {"author": post.author, "post_id": post.post_id, "tokens": corpus.tokenizer(post.text)}
            for post in sorted(posts.values(), key=lambda p: p.post_id)
            if assignment.get(post.author) == vp
        ]
        snap.write_corpus(out_dir, vp, records)
    snap.update_manifest(
        out_dir,
        "describe",
        {"n_terms": args.n, "m_terms": args.m, "normalizer": args.normalizer,
         "stopwords_path": args.stopwords},
    )
    human = []
    for vp, desc in sorted(descriptions.items()):
        top = ", ".join(t["term"] for t in desc["terms"])
        human.append(f"viewpoint {vp}: {top}")
    _emit(args, {"descriptions": descriptions}, "\n".join(human))
    return EXIT_OK


def cmd_drill(args) -> int:
    out_dir = Path(args.out)
    try:
        snapshot = snap.load_snapshot(out_dir)
    except snap.SnapshotError as exc:
        raise CliError(str(exc), EXIT_INPUT)
    terms = [t.strip() for t in args.terms.split(",") if t.strip()]
    result = ird.drill_terms(
        snapshot.corpus, snapshot.selection, args.viewpoint, terms, n=args.n, m=args.m
    )
    payload = result.to_dict()
    print(json.dumps(payload, sort_keys=True) if args.json else json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_eval(args) -> int:
    out_dir = Path(args.out)
    selection = _load_selection(out_dir)
    part_path = out_dir / "partitions" / f"k{selection.chosen_k}.json"
    if not part_path.exists():
        raise CliError(f"missing {part_path}", EXIT_INPUT)
    assignment = {u: int(c) for u, c in snap.read_json(part_path)["assignment"].items()}
    truth_path = Path(args.truth)
    if not truth_path.exists():
        raise CliError(f"truth file not found: {truth_path}", EXIT_INPUT)
    truth = evaluation.load_truth(truth_path)
    exclude = set(selection.noisy_clusters) if args.exclude_noisy else None
    report = evaluation.evaluate(assignment, truth, exclude_clusters=exclude)
    snap.write_json(out_dir / "eval.json", report.to_dict())
    snap.update_manifest(out_dir, "eval", {"truth_path": str(truth_path), "exclude_noisy": args.exclude_noisy})
    _emit(
        args,
        report.to_dict(),
        f"purity={report.purity:.4f} nmi={report.nmi:.4f} "
        f"(evaluated {report.n_evaluated}, unlabeled {report.n_unlabeled})",
    )
    return EXIT_OK


def cmd_export(args) -> int:
    out_dir = Path(args.out)
    g = _load_graph(out_dir)
    graph_mod.write_graphml(g, out_dir / "graph.graphml")
    missing = snap.missing_files(out_dir)
    if missing:
        raise CliError("snapshot incomplete, missing: " + ", ".join(sorted(missing)), EXIT_INPUT)
    files = sorted(
        str(p.relative_to(out_dir))
        for p in out_dir.rglob("*")
        if p.is_file() and p.name != "bundle.json"
    )
    snap.write_json(out_dir / "bundle.json", {"files": files, "version": snap.SNAPSHOT_VERSION})
    snap.update_manifest(out_dir, "export", {})
    _emit(args, {"files": files}, f"exported bundle with {len(files)} files")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    try:
        snapshot = snap.load_snapshot(Path(args.out))
    except snap.SnapshotError as exc:
        raise CliError(str(exc), EXIT_INPUT)
    host, _, port = args.bind.partition(":")
    app = create_app(snapshot, allow_cors=args.allow_cors, ui_dir=args.ui_dir)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="viewscope",
        description="Discover and explain viewpoint communities in an endorsement network.",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="ingest JSONL inputs and build the interaction graph")
    p.add_argument("--posts", required=True, help="posts.jsonl path")
    p.add_argument("--interactions", required=True, help="interactions.jsonl path")
    p.add_argument("--tau", type=int, default=_env("TAU", int, 2), help="min endorsements per edge (default 2)")
    p.add_argument("--kinds", default=_env("KINDS", str, None), help="comma-separated kinds to count (default: all)")
    p.add_argument("--topic", default=_env("TOPIC", str, ""), help="free-text topic label")
    p.add_argument("--on-error", choices=["abort", "skip"], default=_env("ON_ERROR", str, "abort"))
    p.add_argument("--out", required=True, help="snapshot output directory")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("sweep", help="profile conductance for k in [2, k-max]")
    p.add_argument("--out", required=True)
    p.add_argument("--k-max", type=int, default=_env("K_MAX", int, sel_mod.DEFAULT_K_MAX))
    p.add_argument("--seed", type=int, default=_env("SEED", int, 0))
    p.add_argument("--epsilon", type=float, default=_env("EPSILON", float, 0.10), help="volume balance slack")
    p.add_argument("--refinement-passes", type=int, default=_env("REFINEMENT_PASSES", int, 10))
    p.add_argument("--restarts", type=int, default=_env("RESTARTS", int, 8))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("select", help="choose k and the viewpoint clusters")
    p.add_argument("--out", required=True)
    p.add_argument("--delta", type=float, default=_env("DELTA", float, sel_mod.DEFAULT_DELTA))
    p.add_argument("--force-k", type=int, default=_env("FORCE_K", int, None), help="override the chosen k")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("describe", help="descriptive terms per viewpoint")
    p.add_argument("--out", required=True)
    p.add_argument("--viewpoint", type=int, default=None, help="one viewpoint (default: all)")
    p.add_argument("--posts", default=None, help="posts.jsonl (default: path recorded at build)")
    p.add_argument("--n", "--n-terms", dest="n", type=int, default=_env("N_TERMS", int, 200),
                   help="term list cutoff")
    p.add_argument("--m", "--m-terms", dest="m", type=int, default=_env("M_TERMS", int, 10),
                   help="terms to report")
    p.add_argument("--normalizer", choices=sorted(NORMALIZERS), default=_env("NORMALIZER", str, "stem"))
    p.add_argument("--stopwords", default=_env("STOPWORDS", str, None), help="stopword file, one word per line")
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("drill", help="descriptive terms for a term set within a viewpoint")
    p.add_argument("--out", required=True)
    p.add_argument("--viewpoint", type=int, required=True)
    p.add_argument("--terms", required=True, help='comma-separated, e.g. "#voteyes,#yes"')
    p.add_argument("--n", "--n-terms", dest="n", type=int, default=_env("N_TERMS", int, 200))
    p.add_argument("--m", "--m-terms", dest="m", type=int, default=_env("M_TERMS", int, 5))
    p.set_defaults(func=cmd_drill)

    p = sub.add_parser("eval", help="purity and NMI against a user,label CSV")
    p.add_argument("--out", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--exclude-noisy", action="store_true", help="drop noisy clusters before scoring")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("export", help="write GraphML and the UI snapshot bundle index")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="serve the read-only HTTP API over a snapshot")
    p.add_argument("--out", "--snapshot", dest="out", required=True)
    p.add_argument("--bind", default=_env("BIND", str, "127.0.0.1:8000"))
    p.add_argument("--allow-cors", action="store_true", help="permissive CORS for local UI development")
    p.add_argument("--ui-dir", default=_env("UI_DIR", str, None), help="built UI bundle to serve under /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (graph_mod.IngestError, snap.SnapshotError, evaluation.MetricsError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PartitionError, sel_mod.SelectionError, ird.IRDError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
