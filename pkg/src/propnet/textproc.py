"""Text normalization: tokenize, drop stopwords, stem.

The pipeline turns a proposition into the token multiset that the
similarity score operates on.  Stopwords are matched on surface forms
before stemming (stopword lists are surface-form lists; stemming first
would cause misses), then each survivor is stemmed or looked up in the
lemma dictionary.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Mapping, Optional

if TYPE_CHECKING:
    from .corpus import PropNumber, Proposition

# Letters of any script and digits; internal hyphens/apostrophes stay inside
# a token ("truth-function", "dass's").  Underscore is excluded from \w.
_TOKEN_RE = re.compile(r"[^\W_]+(?:['’ʼ-][^\W_]+)*")

# Shortest stem a suffix rule may produce; blocks punctuation-sized residue.
_MIN_STEM = 3


def tokenize(text: str, language: str = "") -> list[str]:
    """Lowercased tokens; splits on whitespace and punctuation.

    Single-character tokens that are not letters are dropped (punctuation
    residue); digit runs of length >= 2 are kept as tokens.
    """
    if not text:
        return []
    out = []
    for match in _TOKEN_RE.finditer(text.lower()):
        token = match.group(0)
        if len(token) == 1 and not token.isalpha():
            continue
        out.append(token)
    return out


@dataclass(frozen=True)
class LangResources:
    """Per-language normalization data, immutable and shareable.

    ``stem_rules`` is an ordered suffix-rewrite table, longest suffix first;
    ``lemma_dict`` (when present) wins over the rules.
    """

    language: str
    stopwords: frozenset[str]
    stem_rules: tuple[tuple[str, str], ...] = ()
    lemma_dict: Optional[Mapping[str, str]] = None

    def __post_init__(self):
        lengths = [len(suffix) for suffix, _ in self.stem_rules]
        if lengths != sorted(lengths, reverse=True):
            raise ValueError("stemmer rules must be ordered longest-suffix-first")


@dataclass(frozen=True)
class TokenBag:
    """Normalized token multiset of one proposition."""

    owner: "PropNumber"
    language: str
    tokens: Mapping[str, int]

    @property
    def size(self) -> int:
        return sum(self.tokens.values())


def stem(token: str, resources: LangResources) -> str:
    """Lemma lookup first, else the first applicable suffix rule, else identity."""
    if resources.lemma_dict:
        lemma = resources.lemma_dict.get(token)
        if lemma is not None:
            return lemma
    for suffix, replacement in resources.stem_rules:
        if token.endswith(suffix) and len(token) > len(suffix):
            if len(token) - len(suffix) + len(replacement) >= _MIN_STEM:
                return token[: len(token) - len(suffix)] + replacement
    return token


def normalize(prop: "Proposition", resources: LangResources) -> TokenBag:
    """tokenize -> drop stopwords (surface form) -> stem -> multiset."""
    counts: Counter[str] = Counter()
    for token in tokenize(prop.text, prop.language):
        if token in resources.stopwords:
            continue
        counts[stem(token, resources)] += 1
    return TokenBag(owner=prop.number, language=prop.language, tokens=dict(counts))


# ---------------------------------------------------------------------------
# Resource files.  stopwords: one token per line; stemmer rules:
# suffix<TAB>replacement, ordered; lemma dictionary: token<TAB>lemma.
# All UTF-8 with # comments.
# ---------------------------------------------------------------------------

def _data_lines(path: Path) -> list[str]:
    lines = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        lines.append(raw)
    return lines


def default_resource_root() -> Path:
    return Path(__file__).resolve().parent / "resources"


def load_stopwords(path: Path) -> frozenset[str]:
    return frozenset(line.strip().lower() for line in _data_lines(path))


def load_stem_rules(path: Path) -> tuple[tuple[str, str], ...]:
    rules = []
    for line in _data_lines(path):
        suffix, _, replacement = line.partition("\t")
        suffix = suffix.strip()
        if not suffix:
            raise ValueError(f"{path}: empty suffix in rule {line!r}")
        rules.append((suffix, replacement.strip()))
    # Stable sort keeps file order among equal-length suffixes.
    rules.sort(key=lambda r: -len(r[0]))
    return tuple(rules)


def load_lemma_dict(path: Path) -> dict[str, str]:
    mapping = {}
    for line in _data_lines(path):
        token, tab, lemma = line.partition("\t")
        token, lemma = token.strip().lower(), lemma.strip().lower()
        if not tab or not token or not lemma:
            raise ValueError(f"{path}: expected token<TAB>lemma, got {line!r}")
        mapping[token] = lemma
    return mapping


def load_resources(language: str, root: Optional[Path] = None) -> LangResources:
    """Load the shipped (or user-supplied) resource files for a language.

    Missing stemmer/lemma files degrade to identity behaviour; a missing
    stopword list degrades to an empty one.
    """
    root = root or default_resource_root()
    stopword_path = root / "stopwords" / f"{language}.txt"
    rules_path = root / "stem" / f"{language}.rules"
    lemma_path = root / "lemma" / f"{language}.tsv"
    stopwords = load_stopwords(stopword_path) if stopword_path.exists() else frozenset()
    rules = load_stem_rules(rules_path) if rules_path.exists() else ()
    lemma = load_lemma_dict(lemma_path) if lemma_path.exists() else None
    return LangResources(language=language, stopwords=stopwords, stem_rules=rules, lemma_dict=lemma)
