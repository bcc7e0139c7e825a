"""Null models: degree-preserving edge swaps and vertex-label permutation."""

from __future__ import annotations

import random

from .graph import CoocGraph, relabel_vertices


def rewire(g: CoocGraph, iterations: int | None = None, seed: int = 0) -> CoocGraph:
    """Randomize a graph by repeated degree-preserving edge swaps.

    Each attempt draws two distinct edges (x1, y1) and (x2, y2), orients them
    randomly, and replaces them with (x1, y2) and (x2, y1) unless that would
    create a self-loop or an edge that already exists. Rejected attempts
    still count toward ``iterations``, which defaults to ten times the edge
    count. Each edge keeps its weight while it moves, so the exact degree
    sequence, the edge count, and the weight multiset are all preserved.
    """
    if iterations is None:
        iterations = 10 * g.m
    if iterations < 0:
        raise ValueError("iterations must be nonnegative")
    if g.m < 2:
        raise ValueError("rewiring needs at least 2 edges")
    rng = random.Random(seed)
    edges: list[tuple[str, str]] = []
    weights: dict[tuple[str, str], int] = {}
    for u, v, w in g.edges():
        edges.append((u, v))
        weights[(u, v)] = w
    edge_set = set(edges)

    for _ in range(iterations):
        i = rng.randrange(len(edges))
        j = rng.randrange(len(edges))
        if i == j:
            continue
        x1, y1 = edges[i]
        x2, y2 = edges[j]
        if rng.random() < 0.5:
            x1, y1 = y1, x1
        if rng.random() < 0.5:
            x2, y2 = y2, x2
        if x1 == y2 or x2 == y1:
            continue
        new_i = (x1, y2) if x1 < y2 else (y2, x1)
        new_j = (x2, y1) if x2 < y1 else (y1, x2)
        if new_i in edge_set or new_j in edge_set:
            continue
        old_i, old_j = edges[i], edges[j]
        edge_set.discard(old_i)
        edge_set.discard(old_j)
        edge_set.add(new_i)
        edge_set.add(new_j)
        edges[i] = new_i
        edges[j] = new_j
        weights[new_i] = weights.pop(old_i)
        weights[new_j] = weights.pop(old_j)

    out = CoocGraph(kind=g.kind, source=g.source)
    for v in g.vertex_list():
        out.add_vertex(v)
    for u, v in edges:
        out.add_edge(u, v, weights[(u, v)])
    return out


def shuffle_labels(g: CoocGraph, seed: int = 0) -> CoocGraph:
    """Relabel vertices by a uniformly random permutation.

    The structure is untouched, so every isomorphism invariant (degree
    sequence, density, components, spectrum, weight multiset) is preserved;
    only the alignment between labels and structural positions is destroyed.
    """
    vertices = list(g.vertex_list())
    permuted = vertices[:]
    random.Random(seed).shuffle(permuted)
    return relabel_vertices(g, dict(zip(vertices, permuted)))
