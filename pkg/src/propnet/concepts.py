"""Concept inventory and concept co-occurrence network.

Concepts come from an annotation file (or the fallback chunker for
unannotated corpora), get pruned by corpus frequency and an exclusion
list, and are connected when they co-occur within a token window in at
least ``min_propositions`` propositions.  The window is 3 tokens between
single-token concepts and stretches to 10 when either matched span is
multi-word.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import IO, Iterable, Optional, Sequence, Union

from .corpus import Proposition, Version
from .textproc import LangResources, stem, tokenize


class LexiconFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class ConceptConfig:
    single_window: int = 3
    multi_window: int = 10
    min_propositions: int = 2
    min_frequency: int = 2

    def __post_init__(self):
        for name in ("single_window", "multi_window", "min_propositions", "min_frequency"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


@dataclass(frozen=True)
class ConceptEntry:
    id: str
    forms: tuple[tuple[str, ...], ...]           # surface token sequences
    stemmed_forms: tuple[tuple[str, ...], ...]   # what matching runs on
    token_count: int                             # length of the longest form
    frequency: int                               # occurrence spans in the corpus
    first_group: int                             # group of earliest containing proposition


@dataclass(frozen=True)
class ConceptLexicon:
    entries: tuple[ConceptEntry, ...]
    excluded: frozenset[str]

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, concept_id: str) -> ConceptEntry:
        for e in self.entries:
            if e.id == concept_id:
                return e
        raise KeyError(concept_id)

    def form_map(self) -> dict[tuple[str, ...], str]:
        """Stemmed form -> concept id; first concept wins on collisions."""
        mapping: dict[tuple[str, ...], str] = {}
        for e in self.entries:
            for form in e.stemmed_forms:
                mapping.setdefault(form, e.id)
        return mapping


@dataclass(frozen=True)
class Occurrence:
    concept_id: str
    start: int
    end: int  # inclusive token index

    @property
    def span_tokens(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class _Draft:
    id: str
    forms: tuple[tuple[str, ...], ...]
    stemmed_forms: tuple[tuple[str, ...], ...]


def _parse_annotation(stream: Union[IO[str], Iterable[str]], resources: LangResources) -> list[_Draft]:
    drafts = []
    seen_ids = set()
    for lineno, rawline in enumerate(stream, 1):
        line = rawline.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        forms = []
        for cell in line.split("\t"):
            toks = tuple(tokenize(cell))
            if not toks:
                raise LexiconFormatError(f"empty concept form in {line!r}", lineno)
            forms.append(toks)
        concept_id = " ".join(forms[0])
        if concept_id in seen_ids:
            raise LexiconFormatError(f"duplicate concept {concept_id!r}", lineno)
        seen_ids.add(concept_id)
        stemmed = tuple(tuple(stem(t, resources) for t in form) for form in forms)
        drafts.append(_Draft(id=concept_id, forms=tuple(forms), stemmed_forms=stemmed))
    return drafts


def load_exclusions(stream: Union[IO[str], Iterable[str]]) -> frozenset[str]:
    out = set()
    for rawline in stream:
        line = rawline.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        out.add(" ".join(tokenize(line)))
    return frozenset(out)


def _scan(
    drafts: Sequence[_Draft], version: Version, resources: LangResources
) -> tuple[dict[str, int], dict[str, int]]:
    """Corpus frequency and first group per draft concept (longest-match scan)."""
    form_map: dict[tuple[str, ...], str] = {}
    max_len = 1
    for draft in drafts:
        for form in draft.stemmed_forms:
            form_map.setdefault(form, draft.id)
            max_len = max(max_len, len(form))
    freq: dict[str, int] = defaultdict(int)
    first_group: dict[str, int] = {}
    for prop in version:
        for occ in _match_spans(prop, form_map, max_len, resources):
            freq[occ.concept_id] += 1
            first_group.setdefault(occ.concept_id, prop.group)
    return dict(freq), first_group


def _match_spans(
    prop: Proposition,
    form_map: dict[tuple[str, ...], str],
    max_len: int,
    resources: LangResources,
) -> list[Occurrence]:
    tokens = tokenize(prop.text, prop.language)
    stems = [stem(t, resources) for t in tokens]
    spans = []
    i = 0
    n = len(stems)
    while i < n:
        matched = False
        for length in range(min(max_len, n - i), 0, -1):
            concept_id = form_map.get(tuple(stems[i : i + length]))
            if concept_id is not None:
                spans.append(Occurrence(concept_id=concept_id, start=i, end=i + length - 1))
                i += length
                matched = True
                break
        if not matched:
            i += 1
    return spans


def _prune(
    drafts: Sequence[_Draft],
    version: Version,
    resources: LangResources,
    config: ConceptConfig,
    excluded: frozenset[str],
) -> ConceptLexicon:
    freq, first_group = _scan(drafts, version, resources)
    entries = []
    for draft in drafts:
        if draft.id in excluded:
            continue
        count = freq.get(draft.id, 0)
        if count < config.min_frequency:
            continue
        entries.append(
            ConceptEntry(
                id=draft.id,
                forms=draft.forms,
                stemmed_forms=draft.stemmed_forms,
                token_count=max(len(f) for f in draft.forms),
                frequency=count,
                first_group=first_group[draft.id],
            )
        )
    return ConceptLexicon(entries=tuple(entries), excluded=excluded)


def load_lexicon(
    stream: Union[IO[str], Iterable[str]],
    config: ConceptConfig,
    version: Version,
    resources: LangResources,
    exclusions: frozenset[str] = frozenset(),
) -> ConceptLexicon:
    """Parse the annotation file, count corpus occurrences, prune."""
    drafts = _parse_annotation(stream, resources)
    return _prune(drafts, version, resources, config, exclusions)


def derive_lexicon(
    version: Version,
    resources: LangResources,
    config: ConceptConfig,
    exclusions: frozenset[str] = frozenset(),
    max_run: int = 4,
) -> ConceptLexicon:
    """Fallback chunker for unannotated corpora.

    Candidates are maximal runs of non-stopword tokens of length <= max_run;
    runs with the same stemmed shape merge into one concept.
    """
    drafts: list[_Draft] = []
    by_stem: dict[tuple[str, ...], int] = {}
    for prop in version:
        tokens = tokenize(prop.text, prop.language)
        run: list[str] = []
        runs = []
        for tok in tokens:
            if tok in resources.stopwords:
                if run:
                    runs.append(run)
                run = []
            else:
                run.append(tok)
        if run:
            runs.append(run)
        for run in runs:
            if len(run) > max_run:
                continue
            stemmed = tuple(stem(t, resources) for t in run)
            idx = by_stem.get(stemmed)
            if idx is None:
                by_stem[stemmed] = len(drafts)
                drafts.append(
                    _Draft(id=" ".join(run), forms=(tuple(run),), stemmed_forms=(stemmed,))
                )
            else:
                old = drafts[idx]
                if tuple(run) not in old.forms:
                    drafts[idx] = _Draft(
                        id=old.id,
                        forms=old.forms + (tuple(run),),
                        stemmed_forms=old.stemmed_forms + (stemmed,),
                    )
    return _prune(drafts, version, resources, config, exclusions)


def find_occurrences(
    prop: Proposition, lexicon: ConceptLexicon, resources: LangResources
) -> list[Occurrence]:
    """Longest-match, left-to-right, non-overlapping concept spans.

    Matching runs on stemmed token sequences over the raw tokenization
    (stopwords are NOT removed here).
    """
    form_map = lexicon.form_map()
    if not form_map:
        return []
    max_len = max(len(form) for form in form_map)
    return _match_spans(prop, form_map, max_len, resources)


@dataclass(frozen=True)
class ConceptNode:
    id: str
    label: str
    first_group: int
    frequency: int


@dataclass(frozen=True)
class ConceptEdge:
    a: str
    b: str
    weight: int  # supporting propositions


@dataclass(frozen=True)
class ConceptGraph:
    language: str
    translator: str
    nodes: tuple[ConceptNode, ...]
    edges: tuple[ConceptEdge, ...]
    config: ConceptConfig


def _window_for(a: Occurrence, b: Occurrence, config: ConceptConfig) -> int:
    if a.span_tokens >= 2 or b.span_tokens >= 2:
        return config.multi_window
    return config.single_window


def build_concept_network(
    version: Version,
    lexicon: ConceptLexicon,
    resources: LangResources,
    config: Optional[ConceptConfig] = None,
) -> ConceptGraph:
    """Count, per concept pair, the propositions where they fall in-window.

    The gap is the tokens strictly between the two matched spans (adjacent
    spans gap 0); an edge needs at least ``min_propositions`` supporting
    propositions and carries that count as weight.
    """
    config = config or ConceptConfig()
    support: dict[tuple[str, str], int] = defaultdict(int)
    for prop in version:
        spans = find_occurrences(prop, lexicon, resources)
        hit: set[tuple[str, str]] = set()
        for x in range(len(spans)):
            for y in range(x + 1, len(spans)):
                a, b = spans[x], spans[y]
                if a.concept_id == b.concept_id:
                    continue
                gap = b.start - a.end - 1
                if gap <= _window_for(a, b, config):
                    key = (a.concept_id, b.concept_id)
                    if key[0] > key[1]:
                        key = (key[1], key[0])
                    hit.add(key)
        for key in hit:
            support[key] += 1
    edges = [
        ConceptEdge(a=a, b=b, weight=count)
        for (a, b), count in support.items()
        if count >= config.min_propositions
    ]
    edges.sort(key=lambda e: (e.a, e.b))
    nodes = tuple(
        ConceptNode(id=e.id, label=e.id, first_group=e.first_group, frequency=e.frequency)
        for e in lexicon.entries
    )
    return ConceptGraph(
        language=version.language,
        translator=version.translator,
        nodes=nodes,
        edges=tuple(edges),
        config=config,
    )
