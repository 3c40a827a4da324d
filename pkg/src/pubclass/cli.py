"""Command line front end staging the pipeline.

Stages write plain TSV artifacts plus a hash registry into the output
directory; each stage verifies the recorded hashes of its inputs before
running, so a run can be resumed, inspected, or partially replaced without
silently mixing incompatible artifacts. All randomness fans out from one
top-level seed.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import analytics
from .baseline import BaselineClassification, BaselineConfig, run_filter_chain
from .cluster import ClusterConfig, Partition, slm_cluster
from .corpus import Corpus, IngestionManifest, build_citation_network, filter_articles, load_corpus
from .errors import DataError, PubclassError, UsageError
from .evaluation import SweepConfig, run_sweep
from .hierarchy import aggregate_to_class_graph
from .synth import PlantSpec, generate
from .tsvio import atomic_open, read_tsv_rows, sha256_file, write_tsv
from .util import derive_seed

logger = logging.getLogger(__name__)

REGISTRY_NAME = "artifacts.tsv"
RUN_LOG_NAME = "run_log.jsonl"
LOCK_NAME = ".lock"

# desk-scale defaults for synthetic corpora; corpus-scale runs pass their own
# resolutions
DEFAULT_TOPIC_RESOLUTION = 2e-3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pubclass", description="Two-level publication classification pipeline")
    parser.add_argument("--manifest", type=Path, help="ingestion manifest (default: <out>/manifest.txt)")
    parser.add_argument("--out", type=Path, required=True, help="output directory for stage artifacts")
    parser.add_argument("--seed", type=int, default=0, help="top-level seed for the whole run")
    parser.add_argument("--threads", type=int, default=1, help="worker processes for sweep runs")
    parser.add_argument("--verbose", "-v", action="count", default=0, help="-v info, -vv debug")
    parser.add_argument("--force", action="store_true", help="ignore artifact hash mismatches")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("synth", help="generate a synthetic corpus with planted structure")
    p.add_argument("--specialties", type=int, default=4)
    p.add_argument("--topics-per-specialty", type=_int_range, default=(5, 5), metavar="LO:HI")
    p.add_argument("--articles-per-topic", type=_int_range, default=(60, 60), metavar="LO:HI")
    p.add_argument("--p-intra-topic", type=float, default=0.15)
    p.add_argument("--p-intra-specialty", type=float, default=0.02)
    p.add_argument("--p-background", type=float, default=0.001)
    p.add_argument("--journals", type=int, default=20)
    p.add_argument("--purity", type=float, default=0.8)
    p.add_argument("--years", type=_int_range, default=(2010, 2010), metavar="LO:HI")

    sub.add_parser("ingest", help="load and validate the corpus, report counts")

    p = sub.add_parser("cluster-topics", help="cluster the citation network into topics")
    p.add_argument("--resolution", type=float, default=DEFAULT_TOPIC_RESOLUTION)
    p.add_argument("--max-iterations", type=int, default=100)
    p.add_argument("--tolerance", type=float, default=1e-12)

    p = sub.add_parser("baseline", help="build the journal-derived baseline classification")
    p.add_argument("--year", type=int, default=2010)
    p.add_argument("--exclude-category", action="append", default=None, metavar="NAME")
    p.add_argument("--size-percentiles", type=_float_range, default=(5.0, 50.0), metavar="LO:HI")
    p.add_argument("--min-self-citation", type=_fraction, default=0.10,
                   help="fraction or percent notation, e.g. 0.1 or 10%%")
    p.add_argument("--overlap-threshold", type=_fraction, default=0.08,
                   help="fraction or percent notation, e.g. 0.08 or 8%%")

    p = sub.add_parser("sweep", help="sweep specialty resolutions and select by ARI")
    p.add_argument("--resolutions", type=_float_list,
                   default=tuple(5e-7 * i for i in range(1, 7)), metavar="R1,R2,...")
    p.add_argument("--large-class-threshold", type=int, default=500)
    p.add_argument("--adaptive", action="store_true", help="extend the ladder past a winning endpoint")

    p = sub.add_parser("analyze", help="class size distributions, profile, alluvial export")
    p.add_argument("--years", type=_int_range, default=None, metavar="LO:HI")
    p.add_argument("--small-class-threshold", type=int, default=500)
    p.add_argument("--specialty-min", type=int, default=500)
    p.add_argument("--topic-min", type=int, default=50)

    p = sub.add_parser("label", help="keyword labels for topics and specialties")
    p.add_argument("--top-k", type=int, default=3)

    p = sub.add_parser("case-study", help="distribution of a subject category over specialties")
    p.add_argument("--category", required=True)
    p.add_argument("--years", type=_int_range, required=True, metavar="LO:HI")
    p.add_argument("--top-n", type=int, default=10)
    return parser


def _int_range(text):
    lo, _, hi = text.partition(":")
    try:
        return (int(lo), int(hi or lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI integers, got {text!r}") from None


def _float_range(text):
    lo, _, hi = text.partition(":")
    try:
        return (float(lo), float(hi or lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI numbers, got {text!r}") from None


def _fraction(text):
    """Accept 0.08 or 8% style thresholds, normalized to a fraction."""
    text = text.strip()
    try:
        if text.endswith("%"):
            return float(text[:-1]) / 100.0
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a fraction or percentage, got {text!r}") from None


def _float_list(text):
    try:
        values = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("resolution list must not be empty")
    return values


class Workspace:
    """Output directory with artifact registry, run log, and lock."""

    def __init__(self, out_dir: Path, force: bool = False):
        self.out = Path(out_dir)
        self.force = force
        self.out.mkdir(parents=True, exist_ok=True)
        self._lock_fd = None

    def __enter__(self):
        lock = self.out / LOCK_NAME
        try:
            self._lock_fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
            os.write(self._lock_fd, str(os.getpid()).encode())
        except FileExistsError:
            raise DataError(
                f"output directory is locked by another run ({lock}); remove the lock if stale"
            ) from None
        return self

    def __exit__(self, *exc):
        if self._lock_fd is not None:
            os.close(self._lock_fd)
            (self.out / LOCK_NAME).unlink(missing_ok=True)
        return False

    # -- artifact registry ------------------------------------------------

    def _read_registry(self) -> dict[str, tuple[str, str]]:
        path = self.out / REGISTRY_NAME
        if not path.exists():
            return {}
        return {
            name: (stage, digest)
            for _, (name, stage, digest) in read_tsv_rows(path, ("artifact", "stage", "sha256"))
        }

    def _write_registry(self, registry) -> None:
        write_tsv(
            self.out / REGISTRY_NAME,
            ("artifact", "stage", "sha256"),
            [(name, stage, digest) for name, (stage, digest) in sorted(registry.items())],
        )

    def record(self, stage: str, *paths: Path) -> None:
        registry = self._read_registry()
        for path in paths:
            registry[self._key(path)] = (stage, sha256_file(path))
        self._write_registry(registry)

    def require(self, stage: str, *paths: Path) -> None:
        """Check recorded hashes of prerequisite artifacts before running."""
        registry = self._read_registry()
        for path in paths:
            key = self._key(path)
            if not Path(path).exists():
                raise DataError(
                    f"stage '{stage}' needs {key}, which does not exist; run the producing stage first"
                )
            if key not in registry:
                if self.force:
                    logger.warning("no recorded hash for %s; --force accepted it", key)
                    continue
                raise DataError(
                    f"stage '{stage}' needs {key}, but no earlier stage recorded it; "
                    "run the producing stage first or pass --force"
                )
            recorded_stage, digest = registry[key]
            if sha256_file(path) != digest:
                if self.force:
                    logger.warning("hash mismatch on %s; --force accepted it", key)
                    continue
                raise DataError(
                    f"{key} changed since stage '{recorded_stage}' recorded it; "
                    "re-run the upstream stages or pass --force"
                )

    def _key(self, path: Path) -> str:
        path = Path(path)
        try:
            return str(path.relative_to(self.out))
        except ValueError:
            return str(path)

    def log_stage(self, stage: str, params: dict, inputs: list[Path], outputs: list[Path], elapsed: float):
        entry = {
            "stage": stage,
            "params": {k: _jsonable(v) for k, v in params.items()},
            "input_hashes": {self._key(p): sha256_file(p) for p in inputs if Path(p).exists()},
            "outputs": [self._key(p) for p in outputs],
            "elapsed_s": round(elapsed, 3),
            "finished_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        }
        with open(self.out / RUN_LOG_NAME, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, sort_keys=True) + "\n")


def _jsonable(value):
    if isinstance(value, (Path, frozenset)):
        return sorted(str(v) for v in value) if isinstance(value, frozenset) else str(value)
    if isinstance(value, tuple):
        return list(value)
    return value


def _validated(factory, **kwargs):
    """Build a config object, turning validation failures into usage errors."""
    try:
        return factory(**kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- shared loading helpers ---------------------------------------------


def _manifest_path(args) -> Path:
    if args.manifest is not None:
        return args.manifest
    candidate = args.out / "manifest.txt"
    if candidate.exists():
        return candidate
    raise UsageError("no --manifest given and no manifest.txt in the output directory")


def _corpus_files(manifest: IngestionManifest) -> list[Path]:
    return [manifest.publications, manifest.citations, manifest.journal_categories, manifest.keywords]


def _load_topics(ws: Workspace, corpus: Corpus) -> np.ndarray:
    labels_by_pub = np.full(corpus.n_publications, -1, dtype=np.int64)
    for lineno, (pid, cid) in read_tsv_rows(ws.out / "topics.tsv", ("node_id", "class_id")):
        idx = corpus.pub_index.get(pid)
        if idx is None:
            raise DataError(f"unknown publication {pid!r}", path=str(ws.out / "topics.tsv"), line=lineno)
        labels_by_pub[idx] = int(cid)
    return labels_by_pub


def _load_hierarchy(ws: Workspace, corpus: Corpus) -> tuple[np.ndarray, np.ndarray]:
    topics = np.full(corpus.n_publications, -1, dtype=np.int64)
    specs = np.full(corpus.n_publications, -1, dtype=np.int64)
    path = ws.out / "hierarchy.tsv"
    for lineno, (pid, t, s) in read_tsv_rows(path, ("pub_id", "topic_id", "specialty_id")):
        idx = corpus.pub_index.get(pid)
        if idx is None:
            raise DataError(f"unknown publication {pid!r}", path=str(path), line=lineno)
        topics[idx] = int(t)
        specs[idx] = int(s)
    return topics, specs


def _load_baseline_classes(ws: Workspace, corpus: Corpus) -> dict[str, np.ndarray]:
    classes: dict[str, list[int]] = {}
    path = ws.out / "baseline.tsv"
    for lineno, (jid, pid) in read_tsv_rows(path, ("journal_id", "pub_id")):
        idx = corpus.pub_index.get(pid)
        if idx is None:
            raise DataError(f"unknown publication {pid!r}", path=str(path), line=lineno)
        classes.setdefault(jid, []).append(idx)
    return {j: np.asarray(sorted(v), dtype=np.int64) for j, v in classes.items()}


# -- stages ---------------------------------------------------------------


def cmd_synth(args, ws: Workspace):
    spec = _validated(
        PlantSpec,
        n_specialties=args.specialties,
        topics_per_specialty=args.topics_per_specialty,
        articles_per_topic=args.articles_per_topic,
        p_intra_topic=args.p_intra_topic,
        p_intra_specialty=args.p_intra_specialty,
        p_background=args.p_background,
        n_journals=args.journals,
        journal_purity=args.purity,
        years=args.years,
        seed=derive_seed(args.seed, "synth"),
    )
    manifest, truth = generate(spec, ws.out)
    outputs = _corpus_files(manifest) + [ws.out / "ground_truth.tsv", ws.out / "manifest.txt"]
    ws.record("synth", *outputs)
    print(f"synth: {len(truth.pub_ids)} articles, {len(np.unique(truth.topics))} topics, "
          f"{len(np.unique(truth.specialties))} specialties -> {ws.out}")
    return {"spec": str(spec)}, outputs


def cmd_ingest(args, ws: Workspace):
    manifest = IngestionManifest.load(_manifest_path(args))
    corpus = load_corpus(manifest)
    report = ws.out / "ingest_report.tsv"
    write_tsv(report, ("metric", "value"), sorted(corpus.counts.items()))
    ws.record("ingest", *_corpus_files(manifest), report)
    for metric, value in sorted(corpus.counts.items()):
        print(f"ingest: {metric} = {value}")
    return {"manifest": str(_manifest_path(args))}, [report]


def cmd_cluster_topics(args, ws: Workspace):
    manifest = IngestionManifest.load(_manifest_path(args))
    ws.require("cluster-topics", *_corpus_files(manifest))
    corpus = load_corpus(manifest)
    view = filter_articles(corpus)
    graph = build_citation_network(view)
    config = _validated(
        ClusterConfig,
        resolution=args.resolution,
        seed=derive_seed(args.seed, "cluster-topics"),
        max_outer_iterations=args.max_iterations,
        quality_tolerance=args.tolerance,
    )
    partition = slm_cluster(graph, config)
    out = ws.out / "topics.tsv"
    write_tsv(
        out,
        ("node_id", "class_id"),
        ((corpus.pub_ids[int(p)], int(c)) for p, c in zip(view.members, partition.labels)),
    )
    ws.record("cluster-topics", out)
    print(f"cluster-topics: {partition.n_classes} topic classes over {view.size} articles")
    return {"resolution": args.resolution}, [out]


def cmd_baseline(args, ws: Workspace):
    manifest = IngestionManifest.load(_manifest_path(args))
    ws.require("baseline", *_corpus_files(manifest), ws.out / "topics.tsv")
    corpus = load_corpus(manifest)
    topic_labels = _load_topics(ws, corpus)
    config = _validated(
        BaselineConfig,
        year=args.year,
        excluded_categories=frozenset(
            args.exclude_category if args.exclude_category is not None else ["Multidisciplinary Sciences"]
        ),
        size_percentile_low=args.size_percentiles[0],
        size_percentile_high=args.size_percentiles[1],
        self_citation_min=args.min_self_citation,
        overlap_threshold=args.overlap_threshold,
        seed=derive_seed(args.seed, "baseline"),
    )
    universe = np.flatnonzero(topic_labels >= 0)
    baseline, audit = run_filter_chain(corpus, config, universe)
    baseline_out = ws.out / "baseline.tsv"
    write_tsv(
        baseline_out,
        ("journal_id", "pub_id"),
        (
            (corpus.journal_ids[j], corpus.pub_ids[int(p)])
            for j in sorted(baseline.classes)
            for p in baseline.classes[j]
        ),
    )
    audit_out = ws.out / "baseline_audit.tsv"
    write_tsv(audit_out, ("stage", "count"), audit)
    ws.record("baseline", baseline_out, audit_out)
    for stage, count in audit:
        print(f"baseline: {stage} = {count}")
    return {"config": str(config)}, [baseline_out, audit_out]


def cmd_sweep(args, ws: Workspace):
    manifest = IngestionManifest.load(_manifest_path(args))
    ws.require("sweep", *_corpus_files(manifest), ws.out / "topics.tsv", ws.out / "baseline.tsv")
    corpus = load_corpus(manifest)
    view = filter_articles(corpus)
    graph = build_citation_network(view)
    raw_topics = _load_topics(ws, corpus)
    uncovered = int((raw_topics[view.members] < 0).sum())
    if uncovered:
        raise DataError(f"topics.tsv misses {uncovered} articles of the corpus view")
    # renumber once and lift back so partition and per-publication ids agree
    topic_partition = Partition.from_labels(raw_topics[view.members])
    topic_labels_by_pub = np.full(corpus.n_publications, -1, dtype=np.int64)
    topic_labels_by_pub[view.members] = topic_partition.labels
    class_graph = aggregate_to_class_graph(graph, topic_partition)

    from .baseline import BaselineClassification

    classes = _load_baseline_classes(ws, corpus)
    arrays = {i: v for i, (_, v) in enumerate(sorted(classes.items()))}
    baseline = BaselineClassification(
        classes=arrays, universe=np.unique(np.concatenate(list(arrays.values())))
    )
    config = _validated(
        SweepConfig,
        resolutions=tuple(sorted(args.resolutions)),
        seed=derive_seed(args.seed, "sweep"),
        large_class_threshold=args.large_class_threshold,
        adaptive=args.adaptive,
    )
    result = run_sweep(
        class_graph, baseline, config, topic_partition, topic_labels_by_pub, threads=args.threads
    )
    report = ws.out / "sweep_report.tsv"
    write_tsv(
        report,
        ("resolution", "ari", "n_classes", "n_classes_ge_500", "mean", "median", "p10", "p90", "selected"),
        (
            (r.resolution, r.ari, r.n_classes, r.n_classes_large,
             r.mean, r.median, r.p10, r.p90, 1 if i == result.selected_index else 0)
            for i, r in enumerate(result.rows)
        ),
    )
    hier = result.selected_hierarchy
    spec_of_topic = hier.specialty_of_topic
    hierarchy_out = ws.out / "hierarchy.tsv"
    write_tsv(
        hierarchy_out,
        ("pub_id", "topic_id", "specialty_id"),
        (
            (corpus.pub_ids[int(p)], int(t), int(spec_of_topic[t]))
            for p, t in zip(view.members, topic_partition.labels)
        ),
    )
    ws.record("sweep", report, hierarchy_out)
    print(f"sweep: selected resolution {result.selected.resolution:g} "
          f"(ARI {result.selected.ari:.4f}, {result.selected.n_classes} specialties)")
    return {"resolutions": list(config.resolutions), "adaptive": config.adaptive}, [report, hierarchy_out]


def cmd_analyze(args, ws: Workspace):
    manifest = IngestionManifest.load(_manifest_path(args))
    ws.require("analyze", ws.out / "hierarchy.tsv", ws.out / "baseline.tsv")
    corpus = load_corpus(manifest)
    topic_labels, spec_labels = _load_hierarchy(ws, corpus)
    outputs = []

    stats_rows = []
    for level, labels in (("topic", topic_labels), ("specialty", spec_labels)):
        part = Partition.from_labels(labels[labels >= 0])
        for weighting in ("by_class", "by_article"):
            s = analytics.class_size_stats(part, weighting=weighting)
            stats_rows.append((level, weighting, s.n_classes, s.mean, s.median, s.p10, s.p90))
    path = ws.out / "class_size_stats.tsv"
    write_tsv(path, ("level", "weighting", "n_classes", "mean", "median", "p10", "p90"), stats_rows)
    outputs.append(path)

    spec_part = Partition.from_labels(spec_labels[spec_labels >= 0])
    share = analytics.small_class_share(spec_part, args.small_class_threshold)
    path = ws.out / "small_class_share.tsv"
    write_tsv(path, ("threshold", "share"), [(args.small_class_threshold, share)])
    outputs.append(path)

    try:
        tps = analytics.topics_per_specialty(
            topic_labels, spec_labels, specialty_min=args.specialty_min, topic_min=args.topic_min
        )
        path = ws.out / "topics_per_specialty.tsv"
        write_tsv(
            path,
            ("n_specialties", "mean", "median", "mode", "p10", "p90"),
            [(tps["n_specialties"], tps["mean"], tps["median"], tps["mode"], tps["p10"], tps["p90"])],
        )
        outputs.append(path)
    except ValueError as exc:
        logger.warning("topics-per-specialty skipped: %s", exc)

    years = args.years
    if years is None:
        classified_years = corpus.years[spec_labels >= 0]
        years = (int(classified_years.min()), int(classified_years.max()))
    rows = analytics.yearly_class_stats(spec_labels, corpus, list(range(years[0], years[1] + 1)))
    path = ws.out / "yearly_class_stats.tsv"
    write_tsv(
        path,
        ("year", "n_articles", "mean", "median", "p10", "p90"),
        ((r["year"], r["n_articles"], r["mean"], r["median"], r["p10"], r["p90"]) for r in rows),
    )
    outputs.append(path)

    baseline_classes = _load_baseline_classes(ws, corpus)
    try:
        profile = analytics.average_class_profile(baseline_classes, spec_labels)
    except ValueError as exc:
        raise DataError(str(exc)) from None
    path = ws.out / "average_class_profile.tsv"
    write_tsv(
        path,
        ("rank", "mean_articles"),
        ((rank, avg) for rank, avg in enumerate(profile.rank_averages, start=1)),
    )
    outputs.append(path)

    flows = analytics.profile_flows(profile)
    path = ws.out / "alluvial_flows.tsv"
    write_tsv(path, ("source", "amount", "target"), flows)
    outputs.append(path)
    path = ws.out / "alluvial.txt"
    with atomic_open(path) as fh:
        fh.write(analytics.export_alluvial(flows))
    outputs.append(path)

    ws.record("analyze", *outputs)
    print(f"analyze: profile spread {profile.spread} over {profile.selected_class_count} baseline classes; "
          f"small-class share {share:.4f}")
    return {"years": list(years), "small_class_threshold": args.small_class_threshold}, outputs


def cmd_label(args, ws: Workspace):
    manifest = IngestionManifest.load(_manifest_path(args))
    ws.require("label", ws.out / "hierarchy.tsv")
    corpus = load_corpus(manifest)
    topic_labels, spec_labels = _load_hierarchy(ws, corpus)
    rows = []
    for level, labels in (("topic", topic_labels), ("specialty", spec_labels)):
        for cl in analytics.label_all_classes(labels, corpus, k=args.top_k):
            rows.append((level, cl.class_id, cl.label))
    out = ws.out / "labels.tsv"
    write_tsv(out, ("level", "class_id", "label"), rows)
    ws.record("label", out)
    print(f"label: wrote {len(rows)} labels")
    return {"top_k": args.top_k}, [out]


def cmd_case_study(args, ws: Workspace):
    manifest = IngestionManifest.load(_manifest_path(args))
    ws.require("case-study", ws.out / "hierarchy.tsv")
    corpus = load_corpus(manifest)
    topic_labels, spec_labels = _load_hierarchy(ws, corpus)
    try:
        rows, topic_rows = analytics.category_case_study(
            args.category, args.years, topic_labels, spec_labels, corpus, top_n=args.top_n
        )
    except ValueError as exc:
        raise DataError(str(exc)) from None
    labels = {}
    for cl in analytics.label_all_classes(spec_labels, corpus, k=3):
        labels[("specialty", cl.class_id)] = cl.label
    for cl in analytics.label_all_classes(topic_labels, corpus, k=3):
        labels[("topic", cl.class_id)] = cl.label
    out = ws.out / "case_study.tsv"
    write_tsv(
        out,
        ("rank", "specialty_id", "label", "in_category", "total", "share"),
        (
            (r.rank, r.specialty, labels.get(("specialty", r.specialty), ""), r.in_category, r.total, r.share)
            for r in rows
        ),
    )
    topics_out = ws.out / "case_study_topics.tsv"
    write_tsv(
        topics_out,
        ("specialty_id", "topic_id", "label", "in_category", "total", "share"),
        (
            (t.specialty, t.topic, labels.get(("topic", t.topic), ""), t.in_category, t.total, t.share)
            for t in topic_rows
        ),
    )
    ws.record("case-study", out, topics_out)
    print(f"case-study: {len(rows)} specialties for category {args.category!r}")
    return {"category": args.category, "years": list(args.years)}, [out, topics_out]


COMMANDS = {
    "synth": cmd_synth,
    "ingest": cmd_ingest,
    "cluster-topics": cmd_cluster_topics,
    "baseline": cmd_baseline,
    "sweep": cmd_sweep,
    "analyze": cmd_analyze,
    "label": cmd_label,
    "case-study": cmd_case_study,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required (see --help)")
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        _setup_logging(args.verbose)
        started = time.time()
        with Workspace(args.out, force=args.force) as ws:
            params, outputs = COMMANDS[args.command](args, ws)
            inputs = []
            if args.command != "synth":
                try:
                    inputs = _corpus_files(IngestionManifest.load(_manifest_path(args)))
                except PubclassError:
                    inputs = []
            ws.log_stage(args.command, params, inputs, outputs, time.time() - started)
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except PubclassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports and exits
        logging.getLogger(__name__).exception("internal error")
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


def _setup_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


if __name__ == "__main__":
    sys.exit(main())
