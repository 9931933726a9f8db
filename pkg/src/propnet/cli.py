"""Command-line entry point.

Subcommands map 1:1 to the library operations: ingest, stats, simnet,
conceptnet, align, translate, search, compare, serve.  Logs go to stderr,
data to files or stdout.  Exit codes: 0 success, 1 usage error, 2 data
error.  Identical inputs and flags produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import align as alignmod
from . import concepts as conceptsmod
from . import export as exportmod
from . import search as searchmod
from . import serve as servemod
from . import simnet as simnetmod
from .corpus import CorpusFormatError, NumberParseError, Version, align_corpus, corpus_stats, load_version
from .export import DocumentError
from .textproc import default_resource_root, load_resources

RESOURCES_ENV = "PROPNET_RESOURCES"
LOCK_NAME = ".propnet.lock"


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass(frozen=True)
class ManifestEntry:
    language: str
    translator: str
    path: Path


def load_manifest(path: Path) -> list[ManifestEntry]:
    """TSV: lang<TAB>translator<TAB>path, paths relative to the manifest file."""
    if not path.exists():
        raise DataError(f"manifest not found: {path}")
    entries = []
    seen = set()
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cells = line.split("\t")
        if len(cells) != 3:
            raise DataError(f"{path}:{lineno}: expected lang<TAB>translator<TAB>path")
        language, translator, relpath = (c.strip() for c in cells)
        key = (language, translator)
        if key in seen:
            raise DataError(f"{path}:{lineno}: duplicate version {key}")
        seen.add(key)
        entries.append(ManifestEntry(language, translator, (path.parent / relpath)))
    if not entries:
        raise DataError(f"{path}: empty manifest")
    return entries


def bundled_manifest() -> Path:
    return default_resource_root() / "manifest.tsv"


def _resource_root(args) -> Optional[Path]:
    if getattr(args, "resources", None):
        return Path(args.resources)
    env = os.environ.get(RESOURCES_ENV)
    if env:
        return Path(env)
    return None


def _load_version(entry: ManifestEntry) -> Version:
    if not entry.path.exists():
        raise DataError(f"text file not found: {entry.path}")
    with open(entry.path, encoding="utf-8") as handle:
        return load_version(handle, entry.language, entry.translator)


def _pick(entries: list[ManifestEntry], language: str, translator: Optional[str]) -> ManifestEntry:
    matches = [
        e
        for e in entries
        if e.language == language and (translator is None or e.translator == translator)
    ]
    if not matches:
        raise DataError(f"manifest has no version for language {language!r}")
    if len(matches) > 1:
        names = ", ".join(repr(e.translator) for e in matches)
        raise DataError(f"language {language!r} is ambiguous; pass --translator ({names})")
    return matches[0]


@contextmanager
def _output_lock(outdir: Path):
    outdir.mkdir(parents=True, exist_ok=True)
    lock = outdir / LOCK_NAME
    try:
        fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError:
        raise DataError(f"output directory is locked by another run: {lock}")
    try:
        os.write(fd, str(os.getpid()).encode())
        os.close(fd)
        yield
    finally:
        try:
            lock.unlink()
        except OSError:
            pass


def _refresh_index(outdir: Path) -> None:
    docs = []
    for path in sorted(outdir.glob("*.json")):
        if path.name == exportmod.INDEX_FILE:
            continue
        docs.append(exportmod.parse_document(path.read_bytes()))
    exportmod.write_bundle(docs, outdir)


def _log(message: str) -> None:
    sys.stderr.write(message + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_ingest(args) -> int:
    entries = load_manifest(Path(args.manifest))
    versions = [_load_version(e) for e in entries]
    corpus = align_corpus(versions)
    report = corpus.absence_report()
    outdir = Path(args.out)
    with _output_lock(outdir):
        keys = sorted(v.key for v in versions)
        lines = ["number\t" + "\t".join(f"{lang}:{tr}" if tr else lang for lang, tr in keys)]
        for number, row in corpus.rows.items():
            cells = ["1" if row[key] is not None else "0" for key in keys]
            lines.append(f"{number}\t" + "\t".join(cells))
        (outdir / "coverage.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    _log(f"aligned {len(corpus.rows)} rows over {len(versions)} version(s); "
         f"{len(report)} number(s) with absences")
    return 0


def cmd_stats(args) -> int:
    entries = load_manifest(Path(args.manifest))
    print("language\ttranslator\ttokens\ttypes")
    for entry in entries:
        version = _load_version(entry)
        report = corpus_stats(version)
        translator = entry.translator or "-"
        print(f"{entry.language}\t{translator}\t{report.tokens}\t{report.types}")
    return 0


def _network_config(args) -> simnetmod.NetworkConfig:
    return simnetmod.NetworkConfig(
        threshold=simnetmod.as_fraction(args.threshold),
        edge_length_base=args.edge_length_base,
        edge_length_span=args.edge_length_span,
        intersection="set" if args.set_intersection else "multiset",
    )


def cmd_simnet(args) -> int:
    entries = load_manifest(Path(args.manifest))
    entry = _pick(entries, args.lang, args.translator)
    version = _load_version(entry)
    resources = load_resources(entry.language, _resource_root(args))
    config = _network_config(args)
    graph = simnetmod.build_network(version, resources, config)
    doc = exportmod.proposition_document(simnetmod.style(graph))
    outdir = Path(args.out)
    with _output_lock(outdir):
        path = exportmod.write_document(doc, outdir)
        _refresh_index(outdir)
    _log(f"{len(graph.nodes)} nodes, {len(graph.edges)} edges -> {path}")
    return 0


def cmd_conceptnet(args) -> int:
    entries = load_manifest(Path(args.manifest))
    entry = _pick(entries, args.lang, args.translator)
    version = _load_version(entry)
    root = _resource_root(args)
    resources = load_resources(entry.language, root)
    config = conceptsmod.ConceptConfig(
        single_window=args.single_window,
        multi_window=args.multi_window,
        min_propositions=args.min_props,
        min_frequency=args.min_freq,
    )
    exclusions = frozenset()
    if args.exclude:
        with open(args.exclude, encoding="utf-8") as handle:
            exclusions = conceptsmod.load_exclusions(handle)
    concept_file = Path(args.concepts) if args.concepts else None
    if concept_file is None and not args.chunker:
        default = (root or default_resource_root()) / "concepts" / f"{entry.language}.txt"
        if default.exists():
            concept_file = default
    if concept_file is not None:
        if not concept_file.exists():
            raise DataError(f"concept annotation file not found: {concept_file}")
        with open(concept_file, encoding="utf-8") as handle:
            lexicon = conceptsmod.load_lexicon(handle, config, version, resources, exclusions)
    else:
        lexicon = conceptsmod.derive_lexicon(version, resources, config, exclusions)
    graph = conceptsmod.build_concept_network(version, lexicon, resources, config)
    doc = exportmod.concept_document(graph)
    outdir = Path(args.out)
    with _output_lock(outdir):
        path = exportmod.write_document(doc, outdir)
        _refresh_index(outdir)
    _log(f"{len(lexicon)} concepts, {len(graph.edges)} edges -> {path}")
    return 0


def _train(args, entries):
    src = _pick(entries, args.src, args.src_translator)
    tgt = _pick(entries, args.tgt, args.tgt_translator)
    corpus = align_corpus([_load_version(src), _load_version(tgt)])
    model = alignmod.train_ibm1(
        corpus,
        (src.language, src.translator),
        (tgt.language, tgt.translator),
        iterations=args.iterations,
    )
    return corpus, model


def cmd_align(args) -> int:
    entries = load_manifest(Path(args.manifest))
    corpus, model = _train(args, entries)
    outdir = Path(args.out)
    with _output_lock(outdir):
        name = f"alignments-{model.src_language}-{model.tgt_language}.txt"
        with open(outdir / name, "w", encoding="utf-8") as handle:
            rows = alignmod.dump_alignments(corpus, model, handle)
        if args.dump_table:
            table_name = f"table-{model.src_language}-{model.tgt_language}.tsv"
            with open(outdir / table_name, "w", encoding="utf-8") as handle:
                for source in sorted(model.table, key=lambda e: (e is not None, e)):
                    row = model.table[source]
                    for target in sorted(row):
                        handle.write(f"{source or '<NULL>'}\t{target}\t{row[target]:.10g}\n")
    if model.log_likelihoods:
        _log("log-likelihood per iteration: "
             + " ".join(f"{ll:.4f}" for ll in model.log_likelihoods))
    _log(f"aligned {rows} proposition pairs -> {outdir / name}")
    return 0


def cmd_translate(args) -> int:
    entries = load_manifest(Path(args.manifest))
    corpus, model = _train(args, entries)
    ranked = alignmod.concept_translations(corpus, model, args.concept)
    for phrase, score in ranked[: args.k]:
        print(f"{phrase}\t{score:.6g}")
    if not ranked:
        _log(f"concept {args.concept!r} not found in the source corpus")
    return 0


def cmd_search(args) -> int:
    path = Path(args.doc)
    if not path.exists():
        raise DataError(f"document not found: {path}")
    doc = exportmod.parse_document(path.read_bytes())
    labels = {n["id"]: n["label"] for n in doc["nodes"]}
    if not labels:
        raise DataError(f"{path}: document has no nodes")
    index = searchmod.build_index(labels)
    for node_id, score in searchmod.query(index, args.query, args.k):
        print(f"{node_id}\t{score:.6g}")
    return 0


def cmd_compare(args) -> int:
    entries = load_manifest(Path(args.manifest))
    first = _pick(entries, args.lang, args.translator)
    second = _pick(entries, args.lang2, args.translator2)
    config = _network_config(args)
    graphs = []
    for entry in (first, second):
        version = _load_version(entry)
        resources = load_resources(entry.language, _resource_root(args))
        graphs.append(simnetmod.build_network(version, resources, config))
    report = simnetmod.compare(graphs[0], graphs[1])
    print(f"node_jaccard\t{report.node_jaccard:.6f}")
    print(f"edge_jaccard\t{report.edge_jaccard:.6f}")
    print(f"nodes_only_in_1\t{len(report.nodes_only_in_1)}\t"
          + " ".join(str(n) for n in report.nodes_only_in_1))
    print(f"nodes_only_in_2\t{len(report.nodes_only_in_2)}\t"
          + " ".join(str(n) for n in report.nodes_only_in_2))
    for density in simnetmod.group_compactness(graphs[0]):
        print(f"compactness_1\tgroup={density.group}\tdensity={density.density:.6f}")
    return 0


def cmd_serve(args) -> int:
    bundle = Path(args.bundle)
    if not bundle.is_dir():
        raise DataError(f"bundle directory not found: {bundle}")
    ui_dir = Path(args.ui) if args.ui else None
    servemod.serve(bundle, host=args.host, port=args.port, ui_dir=ui_dir)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_manifest(p):
    p.add_argument("--manifest", required=True, help="version manifest TSV (lang, translator, path)")


def _add_network_flags(p):
    p.add_argument("--threshold", default="0.3", help="similarity threshold, exact rational (default 0.3)")
    p.add_argument("--edge-length-base", type=int, default=20)
    p.add_argument("--edge-length-span", type=int, default=180)
    p.add_argument("--set-intersection", action="store_true",
                   help="score with set (not multiset) intersection")


def build_parser() -> _Parser:
    parser = _Parser(prog="propnet", description=__doc__.splitlines()[0] if __doc__ else None)
    parser.add_argument("--resources", help=f"resource directory (or ${RESOURCES_ENV})")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("ingest", help="align versions by proposition number, write coverage report")
    _add_manifest(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("stats", help="token/type counts per version")
    _add_manifest(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("simnet", help="build a proposition similarity network document")
    _add_manifest(p)
    p.add_argument("--lang", required=True)
    p.add_argument("--translator")
    _add_network_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simnet)

    p = sub.add_parser("conceptnet", help="build a concept co-occurrence network document")
    _add_manifest(p)
    p.add_argument("--lang", required=True)
    p.add_argument("--translator")
    p.add_argument("--concepts", help="concept annotation file (default: shipped list, else chunker)")
    p.add_argument("--exclude", help="exclusion list file")
    p.add_argument("--chunker", action="store_true", help="force the fallback chunker")
    p.add_argument("--single-window", type=int, default=3)
    p.add_argument("--multi-window", type=int, default=10)
    p.add_argument("--min-props", type=int, default=2)
    p.add_argument("--min-freq", type=int, default=2)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_conceptnet)

    p = sub.add_parser("align", help="train the word aligner, dump i-j links per row")
    _add_manifest(p)
    p.add_argument("--src", required=True)
    p.add_argument("--tgt", required=True)
    p.add_argument("--src-translator")
    p.add_argument("--tgt-translator")
    p.add_argument("--iterations", type=int, default=alignmod.DEFAULT_ITERATIONS)
    p.add_argument("--dump-table", action="store_true", help="also write the t(f|e) table")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("translate", help="rank target renderings of a source concept")
    _add_manifest(p)
    p.add_argument("--src", required=True)
    p.add_argument("--tgt", required=True)
    p.add_argument("--src-translator")
    p.add_argument("--tgt-translator")
    p.add_argument("--iterations", type=int, default=alignmod.DEFAULT_ITERATIONS)
    p.add_argument("--concept", required=True)
    p.add_argument("-k", type=int, default=10)
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("search", help="fuzzy-search node labels of a graph document")
    p.add_argument("--doc", required=True, help="graph document JSON")
    p.add_argument("--query", required=True)
    p.add_argument("-k", type=int, default=5)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("compare", help="topology overlap of two versions' networks")
    _add_manifest(p)
    p.add_argument("--lang", required=True)
    p.add_argument("--translator")
    p.add_argument("--lang2", required=True)
    p.add_argument("--translator2")
    _add_network_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("serve", help="serve bundle + search over HTTP")
    p.add_argument("--bundle", required=True)
    p.add_argument("--port", type=int, default=8137)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui", help="static UI asset directory")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as err:
        sys.stderr.write(f"propnet: {err}\n")
        return 1
    try:
        return args.func(args)
    except (DataError, CorpusFormatError, NumberParseError, DocumentError) as err:
        sys.stderr.write(f"propnet: {err}\n")
        return 2
    except FileNotFoundError as err:
        sys.stderr.write(f"propnet: file not found: {err.filename}\n")
        return 2
    except (KeyError, ValueError) as err:
        sys.stderr.write(f"propnet: {err}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
