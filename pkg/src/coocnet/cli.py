"""Command-line entry point for the co-occurrence network pipelines.

Data goes to stdout (or ``--out``); progress and warnings go to stderr.
Every output starts with a comment line recording the tool version, the
subcommand, its semantically relevant flags, and the seed where one is used,
so runs are self-describing. Outputs are byte-identical for identical
inputs, flags, and seed, regardless of the thread count.

Exit codes: 0 on success, 1 on data errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from . import centrality as centrality_mod
from . import evaluation, nullmodel, qap, similarity
from .corpus import MODE_SENTENCE, MODES, CoocCounts, count_cooccurrences, merge_counts, split_contexts
from .graph import build_graph, graph_lines, read_graph, stats, write_graph
from .lexicon import KIND_CITIES, KIND_NAMES, load_lexicon
from .reference import load_categories, load_geo_table

logger = logging.getLogger("coocnet")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _header(subcommand: str, detail: str) -> str:
    return f"coocnet {__version__} {subcommand} {detail}".rstrip()


def _emit(out_path: str | None, header: str, lines: list[str]) -> None:
    payload = "\n".join([f"# {header}", *lines]) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)


def _emit_graph(out_path: str | None, g, provenance: str) -> None:
    if out_path:
        write_graph(g, out_path, provenance=provenance)
    else:
        sys.stdout.write("\n".join(graph_lines(g, provenance)) + "\n")


def _collect_input_files(paths: list[str]) -> list[Path]:
    files: list[Path] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            files.extend(sorted(p for p in path.rglob("*") if p.is_file()))
        elif path.is_file():
            files.append(path)
        else:
            raise ValueError(f"{raw}: no such file or directory")
    if not files:
        raise ValueError("no input files")
    return files


def _resolve_threads(args) -> int:
    if args.threads is not None:
        threads = args.threads
    else:
        threads = int(os.environ.get("COOCNET_THREADS", "1"))
    if threads < 1:
        raise ValueError("threads must be >= 1")
    return threads


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ValueError(f"{path}: not valid UTF-8 ({exc.reason} near byte {exc.start})") from None


def _load_reference(path: str):
    """Sniff the reference type by column count: 3 columns make a geo table,
    2 columns a category assignment file. Returns (kind, oracle)."""
    with open(path, encoding="utf-8") as handle:
        columns = 0
        for raw in handle:
            line = raw.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            columns = len(line.split("\t"))
            break
    if columns == 3:
        table = load_geo_table(path)
        return "geo", lambda u, v: table.distance(u, v) if u in table and v in table else None
    if columns == 2:
        matrix = load_categories(path)
        return "categories", lambda u, v: matrix.cosine(u, v) if u in matrix and v in matrix else None
    raise ValueError(f"{path}: cannot sniff reference type (expected 2 or 3 columns)")


# -- subcommands ---------------------------------------------------------


def _cmd_build_graph(args) -> int:
    lexicon = load_lexicon(args.lexicon, kind=args.kind)
    if lexicon.dropped:
        logger.info("lexicon: %d lines dropped", lexicon.dropped)
    threads = _resolve_threads(args)
    contexts = []
    next_id = 0
    for path in _collect_input_files(args.inputs):
        for record in split_contexts(_read_text(path), mode=args.mode, start_id=next_id):
            contexts.append(record)
            next_id = record.context_id + 1
    logger.info("ingested %d contexts from %d inputs", len(contexts), len(args.inputs))

    if threads > 1 and len(contexts) > 1:
        size = math.ceil(len(contexts) / threads)
        chunks = [contexts[k:k + size] for k in range(0, len(contexts), size)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(lambda chunk: count_cooccurrences(chunk, lexicon, args.max_mentions), chunks)
            )
        counts = merge_counts(parts)
    else:
        counts = count_cooccurrences(contexts, lexicon, args.max_mentions)

    g = build_graph(counts, lexicon, min_freq=args.min_freq)
    logger.info("graph: %d vertices, %d edges", g.n, g.m)
    max_mentions = "none" if args.max_mentions is None else args.max_mentions
    detail = (
        f"mode={args.mode} kind={args.kind} lexicon={args.lexicon} "
        f"max-mentions={max_mentions} min-freq={args.min_freq} "
        f"inputs={','.join(args.inputs)}"
    )
    header = _header("build-graph", detail)
    _emit_graph(args.out, g, header)
    if args.freq_out:
        freq_lines = [f"{entity}\t{count}" for entity, count in sorted(counts.entity_freq.items())]
        _emit(args.freq_out, header + " table=entity-frequency", freq_lines)
    return 0


def _cmd_graph_stats(args) -> int:
    g = read_graph(args.graph)
    s = stats(g)
    header = _header("graph-stats", f"graph={args.graph}")
    lines = [
        "# n\tm\tdensity\twcc_count\tlargest_wcc",
        f"{s.n}\t{s.m}\t{_fmt(s.density)}\t{s.wcc_count}\t{s.largest_wcc}",
    ]
    _emit(args.out, header, lines)
    return 0


def _read_freq_table(path: str) -> CoocCounts:
    counts = CoocCounts()
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected entity<TAB>count")
            try:
                counts.entity_freq[parts[0]] = int(parts[1])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: bad count {parts[1]!r}") from None
    if not counts.entity_freq:
        raise ValueError(f"{path}: empty frequency table")
    return counts


def _cmd_centrality(args) -> int:
    detail = f"metric={args.metric} input={args.input}"
    if args.metric == "popularity":
        vector = centrality_mod.popularity(_read_freq_table(args.input))
        lines = [f"{v}\t{score}" for v, score in sorted(vector.scores.items())]
        _emit(args.out, _header("centrality", detail), lines)
        return 0
    g = read_graph(args.input)
    if args.metric == "degree":
        vector = centrality_mod.degree_centrality(g)
        lines = [f"{v}\t{vector.scores[v]}" for v in sorted(vector.scores)]
        _emit(args.out, _header("centrality", detail), lines)
        return 0
    vector = centrality_mod.eigenvector_centrality(g, tol=args.tol, max_iter=args.max_iter)
    detail += f" tol={_fmt(args.tol)} max-iter={args.max_iter} converged={str(vector.converged).lower()}"
    if not vector.converged:
        logger.warning(
            "power iteration did not converge after %d iterations (residual %.3e)",
            vector.iterations, vector.residual,
        )
    if args.weighted:
        weighted_vector = centrality_mod.eigenvector_centrality(
            g, tol=args.tol, max_iter=args.max_iter, weighted=True
        )
        detail += f" weighted-converged={str(weighted_vector.converged).lower()}"
        lines = [
            f"{v}\t{_fmt(vector.scores[v])}\t{_fmt(weighted_vector.scores[v])}"
            for v in sorted(vector.scores)
        ]
    else:
        lines = [f"{v}\t{_fmt(vector.scores[v])}" for v in sorted(vector.scores)]
    _emit(args.out, _header("centrality", detail), lines)
    return 0


def _cmd_compare_degree(args) -> int:
    g1 = read_graph(args.graph1)
    g2 = read_graph(args.graph2)
    profile = centrality_mod.degree_pair_profile(g1, g2)
    detail = f"g1={args.graph1} g2={args.graph2}"
    if args.null:
        null_means = centrality_mod.degree_pair_profile_null(
            g1, g2, replicas=args.replicas, seed=args.seed
        )
        detail += f" null={args.null} replicas={args.replicas} seed={args.seed}"
        lines = [
            f"{k}\t{_fmt(mean)}\t{count}\t{_fmt(null_means[k])}"
            for k, mean, count in profile
        ]
    else:
        lines = [f"{k}\t{_fmt(mean)}\t{count}" for k, mean, count in profile]
    _emit(args.out, _header("compare-degree", detail), lines)
    return 0


def _cmd_similarity(args) -> int:
    modes = [args.pair is not None, args.vertex is not None, args.all]
    if sum(modes) != 1:
        raise ValueError("choose exactly one of --pair, --vertex/--top-k, --all")
    g = read_graph(args.graph)
    detail = f"metric={args.metric} weighted={str(args.weighted).lower()} graph={args.graph}"
    if args.pair is not None:
        u, v = args.pair
        value = similarity.score(g, args.metric, u, v, weighted=args.weighted)
        lines = [f"{u}\t{v}\t{_fmt(value)}"]
        detail += f" pair={u},{v}"
    elif args.vertex is not None:
        scored = similarity.top_k(g, args.metric, args.vertex, args.top_k, weighted=args.weighted)
        lines = [f"{s.u}\t{s.v}\t{_fmt(s.value)}" for s in scored]
        detail += f" vertex={args.vertex} top-k={args.top_k}"
    else:
        scored_iter = similarity.all_pairs_scores(
            g, args.metric, weighted=args.weighted, threshold=args.threshold
        )
        lines = [f"{s.u}\t{s.v}\t{_fmt(s.value)}" for s in scored_iter]
        detail += f" all threshold={_fmt(args.threshold)}"
    _emit(args.out, _header("similarity", detail), lines)
    return 0


def _cmd_qap(args) -> int:
    g1 = read_graph(args.graph1)
    g2 = read_graph(args.graph2)
    result = qap.qap_test(
        g1, g2, permutations=args.permutations, seed=args.seed, binarize=not args.weighted
    )
    detail = (
        f"g1={args.graph1} g2={args.graph2} permutations={args.permutations} "
        f"seed={args.seed} weighted={str(args.weighted).lower()}"
    )
    lines = [
        "# rho\tpermutations\tcount_ge\tp_fraction\tcommon_vertices",
        f"{_fmt(result.rho_observed)}\t{result.permutations}\t{result.count_ge}"
        f"\t{_fmt(result.p_fraction)}\t{result.common_vertices}",
    ]
    _emit(args.out, _header("qap", detail), lines)
    return 0


def _cmd_null_model(args) -> int:
    g = read_graph(args.input)
    if args.kind == "rewire":
        result = nullmodel.rewire(g, iterations=args.iterations, seed=args.seed)
        iterations = args.iterations if args.iterations is not None else 10 * g.m
        detail = f"kind=rewire seed={args.seed} iterations={iterations} input={args.input}"
    else:
        result = nullmodel.shuffle_labels(g, seed=args.seed)
        detail = f"kind=shuffle seed={args.seed} input={args.input}"
    write_graph(result, args.output, provenance=_header("null-model", detail))
    return 0


def _cmd_eval_bins(args) -> int:
    g = read_graph(args.graph)
    ref_kind, oracle = _load_reference(args.reference)
    curve = evaluation.binned_curve(
        g,
        args.metric,
        oracle,
        args.bins,
        weighted=args.weighted,
        include_zeros=args.include_zeros,
        seed=args.seed,
    )
    detail = (
        f"graph={args.graph} metric={args.metric} weighted={str(args.weighted).lower()} "
        f"reference={args.reference} reference-kind={ref_kind} bins={args.bins} "
        f"include-zeros={_fmt(args.include_zeros)} seed={args.seed} "
        f"lo={_fmt(curve.lo)} hi={_fmt(curve.hi)}"
    )
    lines = ["# bin_index\tbin_center\tmean_ref\tcount"]
    for row in curve.rows:
        mean = "NA" if math.isnan(row.mean) else _fmt(row.mean)
        lines.append(f"{row.index}\t{_fmt(row.center)}\t{mean}\t{row.count}")
    _emit(args.out, _header("eval-bins", detail), lines)
    return 0


def _cmd_eval_distance(args) -> int:
    g = read_graph(args.graph)
    ref_kind, oracle = _load_reference(args.reference)
    profile = evaluation.distance_profile(
        g,
        oracle,
        args.max_distance,
        null_replicas=args.null_replicas,
        seed=args.seed,
        source_sample=args.sample_sources,
        min_count=args.min_count,
    )
    null_means = {row.distance: row.mean for row in profile.null_rows}
    detail = (
        f"graph={args.graph} reference={args.reference} reference-kind={ref_kind} "
        f"max-distance={args.max_distance} null-replicas={args.null_replicas} "
        f"seed={args.seed} min-count={args.min_count}"
    )
    if args.sample_sources is not None:
        detail += f" sample-sources={args.sample_sources}"
    lines = ["# d\tmean\tcount\tnull_mean\tlow_confidence"]
    for row in profile.rows:
        null_mean = null_means.get(row.distance)
        null_text = "NA" if null_mean is None else _fmt(null_mean)
        lines.append(
            f"{row.distance}\t{_fmt(row.mean)}\t{row.count}\t{null_text}\t{int(row.low_confidence)}"
        )
    _emit(args.out, _header("eval-distance", detail), lines)
    return 0


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coocnet",
        description="Co-occurrence networks of named entities: build and analyze.",
    )
    parser.add_argument("--version", action="version", version=f"coocnet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    p = sub.add_parser("build-graph", help="build a co-occurrence graph from a text corpus")
    p.add_argument("inputs", nargs="+", help="text files or directories")
    p.add_argument("--mode", choices=MODES, default=MODE_SENTENCE)
    p.add_argument("--lexicon", required=True, help="lexicon file (one surface form per line)")
    p.add_argument("--kind", choices=(KIND_NAMES, KIND_CITIES), default=KIND_NAMES)
    p.add_argument("--max-mentions", type=int, default=None,
                   help="skip contexts matching more than this many entities")
    p.add_argument("--min-freq", type=int, default=1,
                   help="minimum corpus frequency for a vertex (default 1)")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: COOCNET_THREADS or 1)")
    p.add_argument("--freq-out", default=None, help="also write the entity frequency table")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_build_graph)

    p = sub.add_parser("graph-stats", help="vertex/edge counts, density, components")
    p.add_argument("graph")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_graph_stats)

    p = sub.add_parser("centrality", help="vertex centrality scores")
    p.add_argument("input", help="graph file; frequency table for --metric popularity")
    p.add_argument("--metric", choices=("degree", "eigenvector", "popularity"), required=True)
    p.add_argument("--weighted", action="store_true",
                   help="eigenvector only: also emit the weighted-adjacency variant")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_centrality)

    p = sub.add_parser("compare-degree", help="mean degree in g2 per degree class of g1")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("--null", choices=("shuffle",), default=None)
    p.add_argument("--replicas", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_compare_degree)

    p = sub.add_parser("similarity", help="vertex similarity scores")
    p.add_argument("graph")
    p.add_argument("--metric", choices=similarity.METRICS, required=True)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--pair", nargs=2, metavar=("U", "V"), default=None)
    p.add_argument("--vertex", default=None, help="score partners of this vertex (with --top-k)")
    p.add_argument("--top-k", type=int, default=10)
    p.add_argument("--all", action="store_true", help="all pairs with a common neighbor")
    p.add_argument("--threshold", type=float, default=0.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_similarity)

    p = sub.add_parser("qap", help="graph correlation with permutation significance test")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("--permutations", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weighted", action="store_true", help="correlate weights instead of 0/1")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_qap)

    p = sub.add_parser("null-model", help="degree-preserving rewiring or label shuffling")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--kind", choices=("rewire", "shuffle"), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=None,
                   help="attempted swaps for rewire (default: 10x edge count)")
    p.set_defaults(func=_cmd_null_model)

    p = sub.add_parser("eval-bins", help="mean reference value per similarity bin")
    p.add_argument("graph")
    p.add_argument("--metric", choices=similarity.METRICS, required=True)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--reference", required=True,
                   help="categories TSV (entity,category) or geo TSV (entity,lat,lon)")
    p.add_argument("--bins", type=int, default=1000)
    p.add_argument("--include-zeros", type=float, default=0.0, metavar="P",
                   help="also sample this fraction of zero-similarity pairs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_eval_bins)

    p = sub.add_parser("eval-distance", help="mean reference value per shortest-path distance")
    p.add_argument("graph")
    p.add_argument("--reference", required=True)
    p.add_argument("--max-distance", type=int, default=8)
    p.add_argument("--null-replicas", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-count", type=int, default=evaluation.LOW_CONFIDENCE_COUNT,
                   help="pair count below which a row is flagged low-confidence")
    p.add_argument("--sample-sources", type=int, default=None,
                   help="BFS from a uniform sample of sources instead of all vertices")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_eval_distance)

    return parser


def run(argv=None) -> int:
    """Parse and execute; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BrokenPipeError:
        return 1
    except (ValueError, KeyError, OSError, UnicodeDecodeError) as exc:
        message = exc.args[0] if exc.args else exc
        logger.error("%s", message)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
