"""Character n-gram fuzzy search over node labels.

Labels and queries are case-folded, padded with n-1 boundary markers per
side, and decomposed into overlapping n-grams; candidates are ranked by the
Dice coefficient over n-gram multisets.  Queries shorter than n still match
thanks to the padding.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping

PAD = "#"
DEFAULT_N = 3


def ngram_profile(text: str, n: int) -> Counter:
    """Multiset of overlapping n-grams of the padded, case-folded text."""
    padded = PAD * (n - 1) + text.casefold() + PAD * (n - 1)
    return Counter(padded[i : i + n] for i in range(len(padded) - n + 1))


@dataclass(frozen=True)
class NGramIndex:
    n: int
    postings: dict[str, frozenset[str]]
    profiles: dict[str, Counter]
    profile_sizes: dict[str, int]


def build_index(labels: Mapping[str, str], n: int = DEFAULT_N) -> NGramIndex:
    """Index node labels for fuzzy lookup; n must be >= 1, labels non-empty."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not labels:
        raise ValueError("cannot index an empty label set")
    postings: dict[str, set[str]] = {}
    profiles: dict[str, Counter] = {}
    sizes: dict[str, int] = {}
    for node_id, label in labels.items():
        profile = ngram_profile(label, n)
        profiles[node_id] = profile
        sizes[node_id] = sum(profile.values())
        for gram in profile:
            postings.setdefault(gram, set()).add(node_id)
    return NGramIndex(
        n=n,
        postings={gram: frozenset(ids) for gram, ids in postings.items()},
        profiles=profiles,
        profile_sizes=sizes,
    )


def query(index: NGramIndex, text: str, k: int = 10) -> list[tuple[str, float]]:
    """Top-k nodes by Dice score, ties broken by node id; zero scores omitted."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    q = ngram_profile(text, index.n)
    q_size = sum(q.values())
    candidates: set[str] = set()
    for gram in q:
        candidates.update(index.postings.get(gram, ()))
    scored = []
    for node_id in candidates:
        profile = index.profiles[node_id]
        inter = sum(min(count, profile.get(gram, 0)) for gram, count in q.items())
        if inter == 0:
            continue
        score = 2.0 * inter / (q_size + index.profile_sizes[node_id])
        scored.append((node_id, score))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored[:k]
