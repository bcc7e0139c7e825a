"""Co-occurrence networks of named entities.

Builds weighted co-occurrence graphs from text corpora and provides the
analysis stack around them: graph statistics, centralities, null models,
inter-network correlation, vertex-similarity metrics, and evaluation against
external reference relations (category vectors, geographic distance).
"""

__version__ = "0.1.0"

from .corpus import CoocCounts, ContextRecord, count_cooccurrences, match_entities, split_contexts
from .graph import CoocGraph, GraphStats, build_graph, read_graph, stats, write_graph
from .lexicon import EntityLexicon, drop_ambiguous, load_lexicon

__all__ = [
    "CoocCounts",
    "CoocGraph",
    "ContextRecord",
    "EntityLexicon",
    "GraphStats",
    "build_graph",
    "count_cooccurrences",
    "drop_ambiguous",
    "load_lexicon",
    "match_entities",
    "read_graph",
    "split_contexts",
    "stats",
    "write_graph",
]
