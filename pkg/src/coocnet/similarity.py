"""Neighborhood-based vertex similarity.

Jaccard, resource allocation, Adamic-Adar, cosine, and the
Leicht-Holme-Newman index; all but LHN come in an unweighted and a weighted
variant. Every score only depends on shared neighbors, so two vertices
without a common neighbor always score 0, and any formula whose denominator
vanishes (isolated vertices) returns 0 rather than failing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .graph import CoocGraph

JACCARD = "jaccard"
RESOURCE_ALLOCATION = "ra"
ADAMIC_ADAR = "aa"
COSINE = "cosine"
LHN = "lhn"
METRICS = (JACCARD, RESOURCE_ALLOCATION, ADAMIC_ADAR, COSINE, LHN)

PAIRS_COMMON_NEIGHBORS = "common-neighbors"
PAIRS_ALL = "all"


@dataclass(frozen=True)
class SimScore:
    u: str
    v: str
    value: float


def _check_pair(g: CoocGraph, x: str, y: str) -> None:
    if x == y:
        raise ValueError(f"similarity needs two distinct vertices, got {x!r} twice")
    g.neighbors(x)  # raises KeyError for unknown vertices
    g.neighbors(y)


def _common_neighbors(g: CoocGraph, x: str, y: str) -> list[str]:
    gx = g.neighbors(x)
    gy = g.neighbors(y)
    if len(gy) < len(gx):
        gx, gy = gy, gx
    # sorted so that float accumulation order is deterministic
    return sorted(z for z in gx if z in gy)


def jaccard(g: CoocGraph, x: str, y: str, weighted: bool = False) -> float:
    """Fraction of common neighbors; the weighted form relates the weights
    into common neighbors to the two vertices' combined strength."""
    _check_pair(g, x, y)
    common = _common_neighbors(g, x, y)
    if weighted:
        denom = g.strength(x) + g.strength(y)
        if denom == 0:
            return 0.0
        return sum((g.weight(x, z) + g.weight(y, z)) / denom for z in common)
    union = g.degree(x) + g.degree(y) - len(common)
    if union == 0:
        return 0.0
    return len(common) / union


def resource_allocation(g: CoocGraph, x: str, y: str, weighted: bool = False) -> float:
    """Common neighbors weighted by how exclusively they connect the pair:
    each contributes the inverse of its degree (strength when weighted)."""
    _check_pair(g, x, y)
    common = _common_neighbors(g, x, y)
    if weighted:
        return sum((g.weight(x, z) + g.weight(y, z)) / g.strength(z) for z in common)
    return sum(1.0 / g.degree(z) for z in common)


def adamic_adar(g: CoocGraph, x: str, y: str, weighted: bool = False) -> float:
    """Like resource allocation but with logarithmic damping, so hub
    neighbors are discounted more gently. Natural logarithm throughout;
    the weighted denominator is log(1 + strength)."""
    _check_pair(g, x, y)
    common = _common_neighbors(g, x, y)
    if weighted:
        return sum(
            (g.weight(x, z) + g.weight(y, z)) / math.log(1 + g.strength(z)) for z in common
        )
    # a common neighbor of two distinct vertices has degree >= 2, so the
    # logarithm never hits zero
    return sum(1.0 / math.log(g.degree(z)) for z in common)


def cosine(g: CoocGraph, x: str, y: str, weighted: bool = False) -> float:
    """Cosine of the angle between the two adjacency rows."""
    _check_pair(g, x, y)
    common = _common_neighbors(g, x, y)
    if weighted:
        denom = math.sqrt(g.sq_strength(x)) * math.sqrt(g.sq_strength(y))
        if denom == 0:
            return 0.0
        return sum(g.weight(x, z) * g.weight(y, z) for z in common) / denom
    dx = g.degree(x)
    dy = g.degree(y)
    if dx == 0 or dy == 0:
        return 0.0
    return len(common) / (math.sqrt(dx) * math.sqrt(dy))


def lhn(g: CoocGraph, x: str, y: str) -> float:
    """Common-neighbor count relative to the overlap expected in a random
    graph with the same degrees."""
    _check_pair(g, x, y)
    dx = g.degree(x)
    dy = g.degree(y)
    if dx == 0 or dy == 0:
        return 0.0
    return len(_common_neighbors(g, x, y)) / (dx * dy)


_METRIC_FUNCS = {
    JACCARD: jaccard,
    RESOURCE_ALLOCATION: resource_allocation,
    ADAMIC_ADAR: adamic_adar,
    COSINE: cosine,
}


def score(g: CoocGraph, metric: str, x: str, y: str, weighted: bool = False) -> float:
    if metric == LHN:
        if weighted:
            raise ValueError("the LHN index has no weighted variant")
        return lhn(g, x, y)
    try:
        func = _METRIC_FUNCS[metric]
    except KeyError:
        raise ValueError(f"unknown similarity metric {metric!r}") from None
    return func(g, x, y, weighted=weighted)


def two_hop_candidates(g: CoocGraph, x: str) -> list[str]:
    """Vertices sharing at least one neighbor with x, sorted. These are the
    only partners any metric can score above zero."""
    seen: set[str] = set()
    for z in g.neighbors(x):
        seen.update(g.neighbors(z))
    seen.discard(x)
    return sorted(seen)


def all_pairs_scores(
    g: CoocGraph,
    metric: str,
    weighted: bool = False,
    threshold: float = 0.0,
    pair_universe: str = PAIRS_COMMON_NEIGHBORS,
) -> Iterator[SimScore]:
    """Stream unordered pairs scoring at least ``threshold``, sorted by pair.

    The default universe enumerates only pairs with a common neighbor;
    ``PAIRS_ALL`` scores every vertex pair (the rest are all zero).
    """
    vertices = g.vertex_list()
    if pair_universe == PAIRS_ALL:
        for i, u in enumerate(vertices):
            for v in vertices[i + 1:]:
                s = score(g, metric, u, v, weighted)
                if s >= threshold:
                    yield SimScore(u, v, s)
    elif pair_universe == PAIRS_COMMON_NEIGHBORS:
        for u in vertices:
            for v in two_hop_candidates(g, u):
                if v <= u:
                    continue
                s = score(g, metric, u, v, weighted)
                if s >= threshold:
                    yield SimScore(u, v, s)
    else:
        raise ValueError(f"unknown pair universe {pair_universe!r}")


def top_k(g: CoocGraph, metric: str, vertex: str, k: int, weighted: bool = False) -> list[SimScore]:
    """The k most similar partners of ``vertex``: score descending, ties
    broken by partner label for determinism."""
    if k < 1:
        raise ValueError("k must be >= 1")
    scored = [
        SimScore(vertex, v, score(g, metric, vertex, v, weighted))
        for v in two_hop_candidates(g, vertex)
    ]
    scored.sort(key=lambda s: (-s.value, s.v))
    return scored[:k]
