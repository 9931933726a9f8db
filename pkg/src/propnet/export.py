"""Graph document interchange format.

One UTF-8 JSON document per (network kind x language version), shaped for
direct consumption by browser network renderers: nodes carry ``color`` and
``group``, proposition edges carry ``value`` (the similarity score) and
``length`` (the rendered rest length in px), concept edges carry ``weight``
(supporting propositions).  Serialization is canonical: nodes sorted by id,
edges by (from, to), stable key order, so identical inputs give identical
bytes.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .concepts import ConceptGraph
from .simnet import DEFAULT_PALETTE, StyledGraph

SCHEMA_VERSION = "1"
INDEX_FILE = "index.json"


class DocumentError(ValueError):
    """A document that does not satisfy the schema."""


def _slug(text: str) -> str:
    out = re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-")
    return out


def network_id(kind: str, language: str, translator: str = "") -> str:
    parts = [kind, _slug(language)]
    if translator:
        parts.append(_slug(translator))
    return "-".join(parts)


def proposition_document(graph: StyledGraph) -> dict:
    nodes = [
        {"id": n.id, "label": n.label, "group": n.group, "color": n.color}
        for n in graph.nodes
    ]
    edges = [
        {"from": e.a, "to": e.b, "value": e.score, "length": e.length}
        for e in graph.edges
    ]
    return _document("propositions", graph.language, graph.translator, graph.config_echo, nodes, edges)


def concept_document(graph: ConceptGraph, palette: Sequence[str] = DEFAULT_PALETTE) -> dict:
    nodes = [
        {
            "id": n.id,
            "label": n.label,
            "group": n.first_group,
            "color": palette[n.first_group - 1],
        }
        for n in graph.nodes
    ]
    edges = [{"from": e.a, "to": e.b, "weight": e.weight} for e in graph.edges]
    echo = {
        "single_window": graph.config.single_window,
        "multi_window": graph.config.multi_window,
        "min_propositions": graph.config.min_propositions,
        "min_frequency": graph.config.min_frequency,
    }
    return _document("concepts", graph.language, graph.translator, echo, nodes, edges)


def _document(kind, language, translator, config_echo, nodes, edges) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "meta": {
            "kind": kind,
            "language": language,
            "translator": translator,
            "config": dict(config_echo),
        },
        "nodes": sorted(nodes, key=lambda n: n["id"]),
        "edges": sorted(edges, key=lambda e: (e["from"], e["to"])),
    }
    validate_document(doc)
    return doc


def document_bytes(doc: dict) -> bytes:
    """Canonical serialization: sorted keys, compact separators, one trailing newline."""
    return (json.dumps(doc, ensure_ascii=False, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def parse_document(data: Union[bytes, str]) -> dict:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as err:
        raise DocumentError(f"not valid JSON: {err}") from err
    validate_document(doc)
    # Re-impose canonical ordering so parse/export round-trips byte-stably.
    doc["nodes"] = sorted(doc["nodes"], key=lambda n: n["id"])
    doc["edges"] = sorted(doc["edges"], key=lambda e: (e["from"], e["to"]))
    return doc


def validate_document(doc: object) -> None:
    """Raise DocumentError unless doc satisfies the schema."""
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise DocumentError(f"schema_version must be {SCHEMA_VERSION!r}")
    meta = doc.get("meta")
    if not isinstance(meta, dict):
        raise DocumentError("meta must be an object")
    kind = meta.get("kind")
    if kind not in ("propositions", "concepts"):
        raise DocumentError(f"meta.kind must be 'propositions' or 'concepts', got {kind!r}")
    for field in ("language", "translator"):
        if not isinstance(meta.get(field), str):
            raise DocumentError(f"meta.{field} must be a string")
    if not isinstance(meta.get("config"), dict):
        raise DocumentError("meta.config must be an object")
    nodes = doc.get("nodes")
    edges = doc.get("edges")
    if not isinstance(nodes, list) or not isinstance(edges, list):
        raise DocumentError("nodes and edges must be arrays")
    ids = set()
    for node in nodes:
        if not isinstance(node, dict):
            raise DocumentError("node must be an object")
        node_id = node.get("id")
        if not isinstance(node_id, str) or not node_id:
            raise DocumentError(f"node id must be a non-empty string, got {node_id!r}")
        if node_id in ids:
            raise DocumentError(f"duplicate node id {node_id!r}")
        ids.add(node_id)
        if not isinstance(node.get("label"), str):
            raise DocumentError(f"node {node_id!r}: label must be a string")
        group = node.get("group")
        if not isinstance(group, int) or not 1 <= group <= 7:
            raise DocumentError(f"node {node_id!r}: group must be an integer in 1..7")
        if not isinstance(node.get("color"), str):
            raise DocumentError(f"node {node_id!r}: color must be a string")
    for edge in edges:
        if not isinstance(edge, dict):
            raise DocumentError("edge must be an object")
        for endpoint in ("from", "to"):
            ref = edge.get(endpoint)
            if ref not in ids:
                raise DocumentError(f"edge {endpoint} {ref!r} does not reference a node")
        if edge["from"] == edge["to"]:
            raise DocumentError(f"self-edge on {edge['from']!r}")
        if kind == "propositions":
            value = edge.get("value")
            if not isinstance(value, (int, float)) or isinstance(value, bool) or not 0 < value <= 1:
                raise DocumentError(f"edge {edge['from']}-{edge['to']}: value must be in (0, 1]")
            length = edge.get("length")
            if not isinstance(length, int) or isinstance(length, bool) or length < 0:
                raise DocumentError(f"edge {edge['from']}-{edge['to']}: length must be a non-negative integer")
        else:
            weight = edge.get("weight")
            if not isinstance(weight, int) or isinstance(weight, bool) or weight < 1:
                raise DocumentError(f"edge {edge['from']}-{edge['to']}: weight must be a positive integer")


# ---------------------------------------------------------------------------
# Bundles: a directory of documents plus an index manifest.
# ---------------------------------------------------------------------------

def doc_network_id(doc: dict) -> str:
    meta = doc["meta"]
    return network_id(meta["kind"], meta["language"], meta["translator"])


def write_document(doc: dict, directory: Path, name: Optional[str] = None) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    doc_id = name or doc_network_id(doc)
    path = directory / f"{doc_id}.json"
    path.write_bytes(document_bytes(doc))
    return path


def write_bundle(docs: Iterable[dict], directory: Path) -> Path:
    """Write documents plus the index manifest; returns the index path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for doc in docs:
        doc_id = doc_network_id(doc)
        write_document(doc, directory, doc_id)
        meta = doc["meta"]
        entries.append(
            {
                "id": doc_id,
                "file": f"{doc_id}.json",
                "kind": meta["kind"],
                "language": meta["language"],
                "translator": meta["translator"],
            }
        )
    entries.sort(key=lambda e: e["id"])
    index = {"schema_version": SCHEMA_VERSION, "networks": entries}
    index_path = directory / INDEX_FILE
    index_path.write_bytes(
        (json.dumps(index, ensure_ascii=False, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")
    )
    return index_path


def load_bundle(directory: Path) -> dict[str, dict]:
    """Load and validate every document in a bundle; id -> document."""
    directory = Path(directory)
    index_path = directory / INDEX_FILE
    docs: dict[str, dict] = {}
    if index_path.exists():
        index = json.loads(index_path.read_text(encoding="utf-8"))
        files = [(e["id"], directory / e["file"]) for e in index.get("networks", [])]
    else:
        files = [(p.stem, p) for p in sorted(directory.glob("*.json"))]
    if not files:
        raise DocumentError(f"no graph documents found in {directory}")
    for doc_id, path in files:
        try:
            doc = parse_document(path.read_bytes())
        except (OSError, DocumentError) as err:
            raise DocumentError(f"{path.name}: {err}") from err
        docs[doc_id] = doc
    return docs
