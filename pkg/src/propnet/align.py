"""Statistical word alignment over the proposition-aligned corpus.

A lexical translation table t(f|e) is trained by expectation maximization
with a NULL source token, position-independent (the classic Model 1
formulation): the E-step distributes each target token's count over the
source tokens in proportion to the current t, the M-step renormalizes per
source token.  Desk-scale stand-in for the heavyweight aligner toolchains;
deterministic by construction (fixed iteration order, no randomization).

Alignment uses raw tokenization only: no stopword removal, no stemming
(function words carry alignment signal).
"""

from __future__ import annotations

import math
from array import array
from collections import defaultdict
from dataclasses import dataclass
from typing import IO, Iterable, Optional, Sequence, Union

from . import _core
from .corpus import ParallelCorpus, PropNumber
from .textproc import tokenize

NULL = None  # the empty source word every target token may align to
DEFAULT_ITERATIONS = 20
PROB_FLOOR = 1e-12

VersionRef = Union[str, tuple[str, str]]


def _resolve(corpus: ParallelCorpus, ref: VersionRef):
    if isinstance(ref, tuple):
        return corpus.version(*ref)
    return corpus.version(ref)


@dataclass(frozen=True)
class AlignmentModel:
    """Translation table t(target | source) plus training metadata."""

    src_language: str
    tgt_language: str
    src_key: tuple[str, str]
    tgt_key: tuple[str, str]
    table: dict[Optional[str], dict[str, float]]
    log_likelihoods: tuple[float, ...]

    def t(self, target: str, source: Optional[str]) -> float:
        row = self.table.get(source)
        if row is None:
            return 0.0
        return row.get(target, 0.0)

    @property
    def src_vocab(self) -> set[str]:
        return {e for e in self.table if e is not None}

    @property
    def tgt_vocab(self) -> set[str]:
        seen: set[str] = set()
        for row in self.table.values():
            seen.update(row)
        return seen


@dataclass(frozen=True)
class AlignmentLinks:
    """Chosen (source index, target index) pairs for one proposition pair."""

    pair_id: Optional[PropNumber]
    links: tuple[tuple[int, int], ...]


def _sentence_pairs(corpus: ParallelCorpus, src_key, tgt_key):
    pairs = []
    for number, row in corpus.rows.items():
        sp = row.get(src_key)
        tp = row.get(tgt_key)
        if sp is None or tp is None:
            continue
        src_toks = tokenize(sp.text)
        tgt_toks = tokenize(tp.text)
        if not src_toks or not tgt_toks:
            continue
        pairs.append((number, src_toks, tgt_toks))
    return pairs


def train_ibm1(
    corpus: ParallelCorpus,
    src: VersionRef,
    tgt: VersionRef,
    iterations: int = DEFAULT_ITERATIONS,
    backend: Optional[str] = None,
    floor: float = PROB_FLOOR,
) -> AlignmentModel:
    """EM-train t(f|e) on all rows where both versions are present.

    Starts uniform over co-occurring pairs, so ``iterations=0`` returns the
    bare co-occurrence model.  Every M-step leaves each source row summing
    to one; per-iteration corpus log-likelihoods are kept on the model.
    """
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    src_version = _resolve(corpus, src)
    tgt_version = _resolve(corpus, tgt)
    pairs = _sentence_pairs(corpus, src_version.key, tgt_version.key)
    if not pairs:
        raise ValueError(
            f"no overlapping rows between {src_version.key} and {tgt_version.key}"
        )

    src_ids: dict[Optional[str], int] = {NULL: 0}
    tgt_ids: dict[str, int] = {}
    encoded = []
    for _, src_toks, tgt_toks in pairs:
        e_ids = [0] + [src_ids.setdefault(tok, len(src_ids)) for tok in src_toks]
        f_ids = [tgt_ids.setdefault(tok, len(tgt_ids)) for tok in tgt_toks]
        encoded.append((e_ids, f_ids))

    # Table support: per source type, the co-occurring target types in
    # first-seen order.  Flat layout groups rows contiguously for the M-step.
    support: list[dict[int, int]] = [dict() for _ in range(len(src_ids))]
    for e_ids, f_ids in encoded:
        for e in e_ids:
            row = support[e]
            for f in f_ids:
                if f not in row:
                    row[f] = len(row)
    row_offsets = array("i", [0])
    base = 0
    for row in support:
        base += len(row)
        row_offsets.append(base)

    def flat_index(e: int, f: int) -> int:
        return row_offsets[e] + support[e][f]

    ops = array("i")
    seg_starts = array("i", [0])
    seg_srclen = array("i")
    for e_ids, f_ids in encoded:
        for f in f_ids:
            for e in e_ids:
                ops.append(flat_index(e, f))
            seg_starts.append(len(ops))
            seg_srclen.append(len(e_ids))

    probs = array("d")
    for row in support:
        if row:
            uniform = 1.0 / len(row)
            probs.extend([uniform] * len(row))

    kernels = _core.get_backend(backend)
    out_probs, lls = kernels.ibm1_iterate(
        ops, seg_starts, seg_srclen, row_offsets, probs, iterations, floor
    )

    src_by_id = {i: tok for tok, i in src_ids.items()}
    tgt_by_id = {i: tok for tok, i in tgt_ids.items()}
    table: dict[Optional[str], dict[str, float]] = {}
    for e, row in enumerate(support):
        table[src_by_id[e]] = {
            tgt_by_id[f]: out_probs[row_offsets[e] + pos] for f, pos in row.items()
        }
    return AlignmentModel(
        src_language=src_version.language,
        tgt_language=tgt_version.language,
        src_key=src_version.key,
        tgt_key=tgt_version.key,
        table=table,
        log_likelihoods=tuple(lls),
    )


def best_alignment(
    model: AlignmentModel,
    src_tokens: Sequence[str],
    tgt_tokens: Sequence[str],
    pair_id: Optional[PropNumber] = None,
) -> AlignmentLinks:
    """Per target token, the argmax source under t; NULL links are omitted.

    NULL starts as the incumbent, so a source token must strictly beat it;
    ties among source tokens go to the lowest index.
    """
    links = []
    for j, f in enumerate(tgt_tokens):
        best_i = -1
        best_p = model.t(f, NULL)
        for i, e in enumerate(src_tokens):
            p = model.t(f, e)
            if p > best_p:
                best_p = p
                best_i = i
        if best_i >= 0:
            links.append((best_i, j))
    return AlignmentLinks(pair_id=pair_id, links=tuple(links))


def dump_alignments(corpus: ParallelCorpus, model: AlignmentModel, out: IO[str]) -> int:
    """Write one `NUMBER<TAB>i-j i-j ...` line per aligned row; returns rows written."""
    pairs = _sentence_pairs(corpus, model.src_key, model.tgt_key)
    written = 0
    for number, src_toks, tgt_toks in pairs:
        links = best_alignment(model, src_toks, tgt_toks, pair_id=number)
        cells = " ".join(f"{i}-{j}" for i, j in links.links)
        out.write(f"{number}\t{cells}\n")
        written += 1
    return written


def _occurrences(haystack: Sequence[str], needle: Sequence[str]) -> list[int]:
    n, m = len(haystack), len(needle)
    return [i for i in range(n - m + 1) if list(haystack[i : i + m]) == list(needle)]


def concept_translations(
    corpus: ParallelCorpus,
    model: AlignmentModel,
    concept: str,
    max_extra: int = 2,
) -> list[tuple[str, float]]:
    """Ranked target renderings of a source phrase, via the trained links.

    For every row containing the phrase, the contiguous target span (at most
    phrase length + ``max_extra`` tokens) maximizing the link-supported
    probability mass is collected; candidates are ranked by
    frequency x mean span score.
    """
    concept_tokens = tokenize(concept, model.src_language)
    if not concept_tokens:
        return []
    vocab = model.src_vocab
    if any(tok not in vocab for tok in concept_tokens):
        return []
    max_span = len(concept_tokens) + max_extra
    freq: dict[str, int] = defaultdict(int)
    score_sum: dict[str, float] = defaultdict(float)
    for number, src_toks, tgt_toks in _sentence_pairs(corpus, model.src_key, model.tgt_key):
        starts = _occurrences(src_toks, concept_tokens)
        if not starts:
            continue
        covered = {i for s in starts for i in range(s, s + len(concept_tokens))}
        links = best_alignment(model, src_toks, tgt_toks, pair_id=number).links
        value = [0.0] * len(tgt_toks)
        for i, j in links:
            if i in covered:
                value[j] = model.t(tgt_toks[j], src_toks[i])
        best: Optional[tuple[float, int, int]] = None  # (score, length, start)
        for start in range(len(tgt_toks)):
            running = 0.0
            for length in range(1, max_span + 1):
                end = start + length
                if end > len(tgt_toks):
                    break
                running += value[end - 1]
                cand = (running, length, start)
                if best is None or cand[0] > best[0] or (
                    cand[0] == best[0] and (cand[1], cand[2]) < (best[1], best[2])
                ):
                    best = cand
        if best is None or best[0] <= 0.0:
            continue
        span_score, length, start = best
        phrase = " ".join(tgt_toks[start : start + length])
        freq[phrase] += 1
        score_sum[phrase] += span_score / len(concept_tokens)
    ranked = [
        (phrase, freq[phrase] * (score_sum[phrase] / freq[phrase]))
        for phrase in freq
    ]
    ranked.sort(key=lambda item: (-item[1], item[0]))
    return ranked
