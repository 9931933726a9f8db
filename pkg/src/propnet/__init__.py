"""propnet: semantic networks from numbered, proposition-aligned texts.

Pipeline: parse numbered proposition files, align versions by number,
normalize text per language, build a thresholded proposition-similarity
network and a concept co-occurrence network, train a word aligner for
cross-language concept tracing, and serve the styled graph documents to a
browser explorer.
"""

from ._core import BACKEND as KERNEL_BACKEND
from .corpus import (
    CountReport,
    ParallelCorpus,
    PropNumber,
    Proposition,
    Version,
    align_corpus,
    corpus_stats,
    load_version,
    parse_prop_number,
)
from .simnet import NetworkConfig, SimilarityGraph, build_network, compare, similarity, style
from .textproc import LangResources, TokenBag, load_resources, normalize, stem, tokenize

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "CountReport",
    "ParallelCorpus",
    "PropNumber",
    "Proposition",
    "Version",
    "align_corpus",
    "corpus_stats",
    "load_version",
    "parse_prop_number",
    "NetworkConfig",
    "SimilarityGraph",
    "build_network",
    "compare",
    "similarity",
    "style",
    "LangResources",
    "TokenBag",
    "load_resources",
    "normalize",
    "stem",
    "tokenize",
    "__version__",
]
