"""Shared construction helpers for the test suite."""

from __future__ import annotations

from coocnet.graph import CoocGraph


def make_graph(edges, vertices=(), kind="names") -> CoocGraph:
    g = CoocGraph(kind=kind)
    for v in vertices:
        g.add_vertex(v)
    for u, v, w in edges:
        g.add_edge(u, v, w)
    return g


# Shared fixture: triangle 1-2-3 with pendant 4 attached to 3.
TRIANGLE_PENDANT = [("1", "2", 1), ("2", "3", 1), ("1", "3", 1), ("3", "4", 1)]

# Same topology with the weighted edges used by the hand-computed values.
WEIGHTED_FIXTURE = [("1", "2", 2), ("2", "3", 1), ("1", "3", 3), ("3", "4", 4)]
