"""Proposition similarity networks.

The score between two normalized propositions is the multiset overlap
normalized by the longer bag: |p1 & p2| / max(|p1|, |p2|).  Two
propositions are connected when the score strictly exceeds the threshold
(default 3/10); the threshold test runs in exact integer arithmetic so
borderline pairs never depend on float rounding.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from . import _core
from .corpus import PropNumber, Version
from .textproc import LangResources, TokenBag, normalize

# Color-blind-safe qualitative palette, one color per proposition group 1..7.
DEFAULT_PALETTE = (
    "#332288",
    "#88ccee",
    "#44aa99",
    "#117733",
    "#ddcc77",
    "#cc6677",
    "#aa4499",
)

Threshold = Union[Fraction, float, int, str]


def as_fraction(value: Threshold) -> Fraction:
    """Exact rational from a config value; floats go through their repr."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class NetworkConfig:
    threshold: Fraction = Fraction(3, 10)
    edge_length_base: int = 20
    edge_length_span: int = 180
    palette: tuple[str, ...] = DEFAULT_PALETTE
    intersection: str = "multiset"

    def __post_init__(self):
        object.__setattr__(self, "threshold", as_fraction(self.threshold))
        if not 0 <= self.threshold <= 1:
            raise ValueError(f"threshold must be in [0, 1], got {self.threshold}")
        if len(self.palette) != 7:
            raise ValueError(f"palette needs exactly 7 colors, got {len(self.palette)}")
        if self.intersection not in ("multiset", "set"):
            raise ValueError(f"intersection must be 'multiset' or 'set', got {self.intersection!r}")


def intersection_size(b1: TokenBag, b2: TokenBag, mode: str = "multiset") -> int:
    """Common-token count; per-token min of multiplicities in multiset mode."""
    t1, t2 = b1.tokens, b2.tokens
    if len(t2) < len(t1):
        t1, t2 = t2, t1
    if mode == "set":
        return sum(1 for token in t1 if token in t2)
    return sum(min(count, t2.get(token, 0)) for token, count in t1.items())


def similarity(b1: TokenBag, b2: TokenBag, mode: str = "multiset") -> float:
    """Overlap normalized by the longer bag; 0.0 when both bags are empty."""
    if mode == "set":
        len1, len2 = len(b1.tokens), len(b2.tokens)
    else:
        len1, len2 = b1.size, b2.size
    longest = max(len1, len2)
    if longest == 0:
        return 0.0
    return intersection_size(b1, b2, mode) / longest


@dataclass(frozen=True)
class GraphNode:
    number: PropNumber
    label: str
    group: int


@dataclass(frozen=True)
class GraphEdge:
    a: PropNumber
    b: PropNumber
    score: float


@dataclass(frozen=True)
class SimilarityGraph:
    """Thresholded proposition network of one version."""

    language: str
    translator: str
    nodes: tuple[GraphNode, ...]
    edges: tuple[GraphEdge, ...]
    config: NetworkConfig

    def node_numbers(self) -> set[PropNumber]:
        return {node.number for node in self.nodes}

    def edge_keys(self) -> set[tuple[PropNumber, PropNumber]]:
        return {(edge.a, edge.b) for edge in self.edges}

    def neighbors(self, number: PropNumber) -> set[PropNumber]:
        out = set()
        for edge in self.edges:
            if edge.a == number:
                out.add(edge.b)
            elif edge.b == number:
                out.add(edge.a)
        return out


def _encode_bags(bags: Sequence[TokenBag], mode: str):
    """Flatten bags into the sorted-id arrays the kernels consume."""
    vocab: dict[str, int] = {}
    offsets = array("i", [0])
    flat_ids = array("i")
    flat_cnts = array("i")
    sizes = array("i")
    for bag in bags:
        items = []
        for token, count in bag.tokens.items():
            token_id = vocab.setdefault(token, len(vocab))
            items.append((token_id, 1 if mode == "set" else count))
        items.sort()
        for token_id, count in items:
            flat_ids.append(token_id)
            flat_cnts.append(count)
        offsets.append(len(flat_ids))
        sizes.append(len(bag.tokens) if mode == "set" else bag.size)
    return offsets, flat_ids, flat_cnts, sizes


def build_network(
    version: Version,
    resources: LangResources,
    config: Optional[NetworkConfig] = None,
    backend: Optional[str] = None,
) -> SimilarityGraph:
    """Evaluate all proposition pairs and keep edges strictly above threshold."""
    if len(version) == 0:
        raise ValueError("cannot build a network from an empty version")
    config = config or NetworkConfig()
    props = list(version)
    bags = [normalize(prop, resources) for prop in props]
    offsets, flat_ids, flat_cnts, sizes = _encode_bags(bags, config.intersection)
    tnum, tden = config.threshold.numerator, config.threshold.denominator
    kernels = _core.get_backend(backend)
    if tden >= 2**31 or tnum >= 2**31:
        # The C kernel multiplies in int64; arbitrary-precision thresholds
        # stay on the Python path.
        kernels = _core.get_backend("python")
    raw_edges = kernels.pairwise_edges(offsets, flat_ids, flat_cnts, sizes, tnum, tden)
    nodes = tuple(GraphNode(number=p.number, label=p.text, group=p.group) for p in props)
    edges = []
    for i, j, inter, maxlen in raw_edges:
        a, b = props[i].number, props[j].number
        if b.sort_key < a.sort_key:
            a, b = b, a
        edges.append(GraphEdge(a=a, b=b, score=inter / maxlen))
    edges.sort(key=lambda e: (e.a.sort_key, e.b.sort_key))
    return SimilarityGraph(
        language=version.language,
        translator=version.translator,
        nodes=nodes,
        edges=tuple(edges),
        config=config,
    )


def edge_length(score: float, config: NetworkConfig) -> int:
    """Rendered rest length in px: higher similarity, shorter edge."""
    return round(config.edge_length_base + config.edge_length_span * (1.0 - score))


@dataclass(frozen=True)
class StyledNode:
    id: str
    label: str
    group: int
    color: str


@dataclass(frozen=True)
class StyledEdge:
    a: str
    b: str
    score: float
    length: int


@dataclass(frozen=True)
class StyledGraph:
    kind: str
    language: str
    translator: str
    nodes: tuple[StyledNode, ...]
    edges: tuple[StyledEdge, ...]
    config_echo: dict[str, object]


def style(graph: SimilarityGraph, config: Optional[NetworkConfig] = None) -> StyledGraph:
    """Pure relabeling: group color per node, similarity-derived edge length."""
    config = config or graph.config
    nodes = tuple(
        StyledNode(
            id=str(node.number),
            label=node.label,
            group=node.group,
            color=config.palette[node.group - 1],
        )
        for node in graph.nodes
    )
    edges = tuple(
        StyledEdge(a=str(edge.a), b=str(edge.b), score=edge.score, length=edge_length(edge.score, config))
        for edge in graph.edges
    )
    echo: dict[str, object] = {
        "threshold": str(config.threshold),
        "edge_length_base": config.edge_length_base,
        "edge_length_span": config.edge_length_span,
        "intersection": config.intersection,
    }
    return StyledGraph(
        kind="propositions",
        language=graph.language,
        translator=graph.translator,
        nodes=nodes,
        edges=edges,
        config_echo=echo,
    )


@dataclass(frozen=True)
class TopologyReport:
    node_jaccard: float
    edge_jaccard: float
    nodes_only_in_1: tuple[PropNumber, ...]
    nodes_only_in_2: tuple[PropNumber, ...]


def _jaccard(a: set, b: set) -> float:
    union = a | b
    if not union:
        return 1.0
    return len(a & b) / len(union)


def compare(g1: SimilarityGraph, g2: SimilarityGraph) -> TopologyReport:
    """Topology overlap by proposition number; edge scores are ignored."""
    n1, n2 = g1.node_numbers(), g2.node_numbers()
    return TopologyReport(
        node_jaccard=_jaccard(n1, n2),
        edge_jaccard=_jaccard(g1.edge_keys(), g2.edge_keys()),
        nodes_only_in_1=tuple(sorted(n1 - n2, key=lambda n: n.sort_key)),
        nodes_only_in_2=tuple(sorted(n2 - n1, key=lambda n: n.sort_key)),
    )


@dataclass(frozen=True)
class GroupDensity:
    group: int
    nodes: int
    intra_edges: int
    density: float


def group_compactness(graph: SimilarityGraph) -> list[GroupDensity]:
    """Intra-group edge density per group, densest first."""
    node_count = {g: 0 for g in range(1, 8)}
    for node in graph.nodes:
        node_count[node.group] += 1
    intra = {g: 0 for g in range(1, 8)}
    for edge in graph.edges:
        if edge.a.major == edge.b.major:
            intra[edge.a.major] += 1
    out = []
    for group in range(1, 8):
        n = node_count[group]
        possible = n * (n - 1) // 2
        density = intra[group] / possible if possible else 0.0
        out.append(GroupDensity(group=group, nodes=n, intra_edges=intra[group], density=density))
    out.sort(key=lambda d: (-d.density, d.group))
    return out
