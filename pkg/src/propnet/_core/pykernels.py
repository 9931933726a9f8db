"""Pure-Python kernels: the fallback when the compiled extension is absent.

Both backends implement the same flat-array contracts; the integer edge
test and the fixed summation orders make their outputs interchangeable.
"""

from __future__ import annotations

import math
from typing import Sequence

BACKEND = "python"


def pairwise_edges(
    bag_offsets: Sequence[int],
    flat_ids: Sequence[int],
    flat_cnts: Sequence[int],
    sizes: Sequence[int],
    tnum: int,
    tden: int,
) -> list[tuple[int, int, int, int]]:
    """All unordered bag pairs whose overlap strictly exceeds the threshold.

    Bags are flattened runs of (sorted unique token id, multiplicity).  A
    pair (i, j) is emitted when inter * tden > tnum * max(size_i, size_j),
    an exact-integer rendering of |a & b| / max(|a|, |b|) > tnum/tden.
    Returns (i, j, intersection, max_size) tuples with i < j.
    """
    n = len(sizes)
    bags = []
    for i in range(n):
        lo, hi = bag_offsets[i], bag_offsets[i + 1]
        bags.append(dict(zip(flat_ids[lo:hi], flat_cnts[lo:hi])))
    edges = []
    for i in range(n):
        a = bags[i]
        size_a = sizes[i]
        for j in range(i + 1, n):
            b = bags[j]
            if len(b) < len(a):
                small, large = b, a
            else:
                small, large = a, b
            inter = 0
            for token, count in small.items():
                other = large.get(token)
                if other is not None:
                    inter += count if count < other else other
            maxlen = size_a if size_a > sizes[j] else sizes[j]
            if maxlen and inter * tden > tnum * maxlen:
                edges.append((i, j, inter, maxlen))
    return edges


def ibm1_iterate(
    ops: Sequence[int],
    seg_starts: Sequence[int],
    seg_srclen: Sequence[int],
    row_offsets: Sequence[int],
    probs: Sequence[float],
    iterations: int,
    floor: float,
) -> tuple[list[float], list[float]]:
    """Run EM sweeps over a pre-indexed sentence-aligned corpus.

    ``ops`` holds, for every (pair, target-token) segment, the flat table
    indices of the co-occurring (source, target) entries; segment k spans
    ops[seg_starts[k]:seg_starts[k+1]] and has seg_srclen[k] source slots
    including NULL.  ``row_offsets`` groups the table by source type for
    the M-step.  Returns the updated table and one log-likelihood per
    iteration, each computed with that iteration's incoming parameters.
    """
    probs = list(probs)
    n_entries = len(probs)
    n_segments = len(seg_starts) - 1
    n_rows = len(row_offsets) - 1
    lls: list[float] = []
    for _ in range(iterations):
        counts = [0.0] * n_entries
        ll = 0.0
        for seg in range(n_segments):
            lo, hi = seg_starts[seg], seg_starts[seg + 1]
            denom = 0.0
            for k in range(lo, hi):
                denom += probs[ops[k]]
            ll += math.log(denom) - math.log(seg_srclen[seg])
            for k in range(lo, hi):
                idx = ops[k]
                counts[idx] += probs[idx] / denom
        lls.append(ll)
        for row in range(n_rows):
            lo, hi = row_offsets[row], row_offsets[row + 1]
            total = 0.0
            for k in range(lo, hi):
                total += counts[k]
            if total <= 0.0:
                continue
            z = 0.0
            for k in range(lo, hi):
                p = counts[k] / total
                if p < floor:
                    p = floor
                counts[k] = p
                z += p
            for k in range(lo, hi):
                probs[k] = counts[k] / z
    return probs, lls
