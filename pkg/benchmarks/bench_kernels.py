#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Times the two hot paths on the bundled German/English texts: the all-pairs
similarity scan and the EM training sweep.  Usage:

    python3 benchmarks/bench_kernels.py [--iterations 20] [--repeat 3]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from propnet._core import get_backend
from propnet.align import train_ibm1
from propnet.corpus import align_corpus, load_version
from propnet.simnet import build_network
from propnet.textproc import default_resource_root, load_resources


def load_bundled():
    root = default_resource_root() / "texts"
    with open(root / "tractatus_de.txt", encoding="utf-8") as handle:
        de = load_version(handle, "de", "")
    with open(root / "tractatus_en_ogden.txt", encoding="utf-8") as handle:
        en = load_version(handle, "en", "Ogden and Ramsey")
    return de, en


def best_of(repeat, fn):
    times = []
    result = None
    for _ in range(repeat):
        started = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - started)
    return min(times), result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--iterations", type=int, default=20, help="EM iterations")
    parser.add_argument("--repeat", type=int, default=3, help="runs per measurement")
    args = parser.parse_args(argv)

    backends = ["python"]
    try:
        get_backend("cython")
        backends.append("cython")
    except ImportError:
        print("note: compiled kernels not built, benchmarking the fallback only")

    de, en = load_bundled()
    resources = load_resources("de")
    corpus = align_corpus([de, en])

    rows = []
    for backend in backends:
        pair_time, graph = best_of(
            args.repeat, lambda: build_network(de, resources, backend=backend)
        )
        em_time, model = best_of(
            args.repeat,
            lambda: train_ibm1(corpus, "de", "en", iterations=args.iterations, backend=backend),
        )
        rows.append((backend, pair_time, len(graph.edges), em_time, model.log_likelihoods[-1]))

    print(f"{'backend':<8} {'all-pairs (s)':>14} {'edges':>6} {'EM train (s)':>13} {'final LL':>14}")
    for backend, pair_time, edges, em_time, ll in rows:
        print(f"{backend:<8} {pair_time:>14.4f} {edges:>6} {em_time:>13.4f} {ll:>14.2f}")
    if len(rows) == 2:
        print(
            f"speedup: all-pairs x{rows[0][1] / rows[1][1]:.1f}, "
            f"EM x{rows[0][3] / rows[1][3]:.1f}"
        )
        if rows[0][2] != rows[1][2]:
            print("WARNING: backends disagree on the edge count", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
