"""Weighted undirected graph core.

Construction from co-occurrence counts, high-level statistics, connected
components, induced subgraphs, breadth-first distances, and a deterministic
TSV interchange format.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .corpus import CoocCounts
from .lexicon import KIND_NAMES, KINDS, EntityLexicon

logger = logging.getLogger(__name__)

FORMAT_PREFIX = "# cooc-graph v1 kind="


class CoocGraph:
    """Symmetric integer-weighted graph over entity surface forms.

    Instances are treated as immutable once built: every read path is safe
    for concurrent use, and vertices and edges iterate in sorted order so
    downstream output is deterministic.
    """

    def __init__(self, kind: str = KIND_NAMES, source: str = ""):
        if kind not in KINDS:
            raise ValueError(f"unknown graph kind {kind!r}")
        self.kind = kind
        self.source = source
        self._adj: dict[str, dict[str, int]] = {}
        self._edge_count = 0
        self._vertex_cache: tuple[str, ...] | None = None
        self._sorted_cache: dict[str, tuple[str, ...]] = {}
        self._strength_cache: dict[str, int] = {}
        self._sq_strength_cache: dict[str, float] = {}

    # -- construction --------------------------------------------------

    def add_vertex(self, v: str) -> None:
        # leading '#' would serialize as a comment line; tabs/newlines would
        # corrupt the TSV format
        if not v or "\t" in v or "\n" in v or v.startswith("#"):
            raise ValueError(f"invalid vertex label {v!r}")
        if v not in self._adj:
            self._adj[v] = {}
            self._vertex_cache = None

    def add_edge(self, u: str, v: str, weight: int) -> None:
        if u == v:
            raise ValueError(f"self-loop on {u!r}")
        if not isinstance(weight, int) or isinstance(weight, bool) or weight < 1:
            raise ValueError(f"edge weight must be a positive integer, got {weight!r}")
        self.add_vertex(u)
        self.add_vertex(v)
        if v in self._adj[u]:
            raise ValueError(f"duplicate edge ({u!r}, {v!r})")
        self._adj[u][v] = weight
        self._adj[v][u] = weight
        self._edge_count += 1
        for w in (u, v):
            self._sorted_cache.pop(w, None)
            self._strength_cache.pop(w, None)
            self._sq_strength_cache.pop(w, None)

    # -- reads -----------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._edge_count

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __eq__(self, other: object):
        if not isinstance(other, CoocGraph):
            return NotImplemented
        return self.kind == other.kind and self._adj == other._adj

    def __repr__(self) -> str:
        return f"CoocGraph(kind={self.kind!r}, n={self.n}, m={self.m})"

    def vertex_list(self) -> tuple[str, ...]:
        if self._vertex_cache is None:
            self._vertex_cache = tuple(sorted(self._adj))
        return self._vertex_cache

    def neighbors(self, v: str) -> Mapping[str, int]:
        try:
            return self._adj[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def sorted_neighbors(self, v: str) -> tuple[str, ...]:
        cached = self._sorted_cache.get(v)
        if cached is None:
            cached = tuple(sorted(self.neighbors(v)))
            self._sorted_cache[v] = cached
        return cached

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def strength(self, v: str) -> int:
        """Sum of incident edge weights (weighted degree)."""
        cached = self._strength_cache.get(v)
        if cached is None:
            cached = sum(self.neighbors(v).values())
            self._strength_cache[v] = cached
        return cached

    def sq_strength(self, v: str) -> float:
        """Sum of squared incident edge weights (cosine normalizer)."""
        cached = self._sq_strength_cache.get(v)
        if cached is None:
            cached = float(sum(w * w for w in self.neighbors(v).values()))
            self._sq_strength_cache[v] = cached
        return cached

    def weight(self, u: str, v: str) -> int:
        """Weight of edge (u, v), 0 when absent."""
        return self.neighbors(u).get(v, 0)

    def has_edge(self, u: str, v: str) -> bool:
        return v in self._adj.get(u, ())

    def edges(self) -> Iterator[tuple[str, str, int]]:
        """All edges as (u, v, weight) with u < v, in sorted order."""
        for u in self.vertex_list():
            adj = self._adj[u]
            for v in self.sorted_neighbors(u):
                if u < v:
                    yield u, v, adj[v]

    def isolated_vertices(self) -> Iterator[str]:
        for v in self.vertex_list():
            if not self._adj[v]:
                yield v

    def copy(self) -> "CoocGraph":
        out = CoocGraph(kind=self.kind, source=self.source)
        for v in self._adj:
            out.add_vertex(v)
        for u, v, w in self.edges():
            out.add_edge(u, v, w)
        return out


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    density: float
    wcc_count: int
    largest_wcc: int


def density(n: int, m: int) -> float:
    """Fraction of realized links in an undirected simple graph; 0 for n < 2."""
    if n < 2:
        return 0.0
    return 2.0 * m / (n * (n - 1))


def weakly_connected_components(g: CoocGraph) -> list[set[str]]:
    seen: set[str] = set()
    components: list[set[str]] = []
    for start in g.vertex_list():
        if start in seen:
            continue
        component = {start}
        seen.add(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if v not in seen:
                    seen.add(v)
                    component.add(v)
                    queue.append(v)
        components.append(component)
    return components


def stats(g: CoocGraph) -> GraphStats:
    components = weakly_connected_components(g)
    return GraphStats(
        n=g.n,
        m=g.m,
        density=density(g.n, g.m),
        wcc_count=len(components),
        largest_wcc=max((len(c) for c in components), default=0),
    )


def build_graph(
    counts: CoocCounts,
    lexicon: EntityLexicon | None = None,
    *,
    min_freq: int = 1,
    kind: str | None = None,
    source: str = "",
) -> CoocGraph:
    """Turn co-occurrence counts into a graph.

    Vertices are all entities observed at least ``min_freq`` times (entities
    without any co-occurrence partner stay as isolated vertices); one edge
    per counted pair, its weight the number of shared contexts.
    """
    if kind is None:
        kind = lexicon.kind if lexicon is not None else KIND_NAMES
    g = CoocGraph(kind=kind, source=source)
    for entity, freq in counts.entity_freq.items():
        if freq >= min_freq:
            g.add_vertex(entity)
    for (u, v), weight in counts.pair_count.items():
        if u in g and v in g:
            g.add_edge(u, v, weight)
    return g


def induced_subgraph(g: CoocGraph, vertices: Iterable[str]) -> CoocGraph:
    """Subgraph on ``vertices``: requested vertices missing from g are
    silently dropped (logged), edge weights are preserved."""
    wanted = set(vertices)
    kept = wanted & set(g.vertex_list())
    missing = len(wanted) - len(kept)
    if missing:
        logger.info("induced subgraph: %d requested vertices not in graph", missing)
    sub = CoocGraph(kind=g.kind, source=g.source)
    for v in sorted(kept):
        sub.add_vertex(v)
    for u, v, w in g.edges():
        if u in kept and v in kept:
            sub.add_edge(u, v, w)
    return sub


def shortest_path_lengths(g: CoocGraph, source: str, max_distance: int | None = None) -> dict[str, int]:
    """Unweighted breadth-first distances from ``source``.

    Unreachable vertices are absent from the result. ``max_distance``
    truncates the search.
    """
    if source not in g:
        raise KeyError(f"unknown vertex {source!r}")
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if max_distance is not None and du >= max_distance:
            continue
        for v in g.neighbors(u):
            if v not in dist:
                dist[v] = du + 1
                queue.append(v)
    return dist


def relabel_vertices(g: CoocGraph, mapping: Mapping[str, str]) -> CoocGraph:
    """Rename vertices through a bijection, keeping structure and weights."""
    vertices = g.vertex_list()
    try:
        images = [mapping[v] for v in vertices]
    except KeyError as exc:
        raise ValueError(f"mapping misses vertex {exc.args[0]!r}") from None
    if len(set(images)) != len(images):
        raise ValueError("mapping is not injective on the vertex set")
    out = CoocGraph(kind=g.kind, source=g.source)
    for image in images:
        out.add_vertex(image)
    for u, v, w in g.edges():
        out.add_edge(mapping[u], mapping[v], w)
    return out


def strongly_connected_components(adjacency: Mapping[str, Iterable[str]]) -> list[set[str]]:
    """Tarjan's algorithm (iterative) over a directed adjacency map.

    Undirected co-occurrence graphs only ever need weak components; this
    covers the directed general case.
    """
    index_of: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[set[str]] = []
    counter = 0

    for root in adjacency:
        if root in index_of:
            continue
        work: list[tuple[str, Iterator[str]]] = [(root, iter(adjacency.get(root, ())))]
        index_of[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, successors = work[-1]
            advanced = False
            for succ in successors:
                if succ not in index_of:
                    index_of[succ] = lowlink[succ] = counter
                    counter += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(adjacency.get(succ, ()))))
                    advanced = True
                    break
                if succ in on_stack:
                    lowlink[node] = min(lowlink[node], index_of[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
            if lowlink[node] == index_of[node]:
                component: set[str] = set()
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.add(member)
                    if member == node:
                        break
                components.append(component)
    return components


def graph_lines(g: CoocGraph, provenance: str | None = None) -> list[str]:
    """Serialize to the interchange format: a format-tag comment, an optional
    provenance comment, sorted edge lines ``u<TAB>v<TAB>weight`` with u < v,
    then isolated vertices as ``u<TAB><TAB>0``."""
    lines = [FORMAT_PREFIX + g.kind]
    if provenance:
        lines.append("# " + provenance)
    lines.extend(sorted(f"{u}\t{v}\t{w}" for u, v, w in g.edges()))
    lines.extend(sorted(f"{v}\t\t0" for v in g.isolated_vertices()))
    return lines


def write_graph(g: CoocGraph, path, provenance: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(graph_lines(g, provenance)) + "\n")


def read_graph(path) -> CoocGraph:
    """Parse a graph file; extra '#' comment lines after the first are allowed."""
    g: CoocGraph | None = None
    try:
        with open(path, encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, 1):
                line = raw.rstrip("\n")
                if g is None:
                    if not line.startswith(FORMAT_PREFIX):
                        raise ValueError(f"{path}:1: not a cooc-graph v1 file")
                    kind = line[len(FORMAT_PREFIX):].strip()
                    try:
                        g = CoocGraph(kind=kind)
                    except ValueError as exc:
                        raise ValueError(f"{path}:1: {exc}") from None
                    continue
                if not line or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 3:
                    raise ValueError(f"{path}:{lineno}: expected 3 tab-separated fields")
                u, v, w = parts
                if v == "" and w == "0":
                    g.add_vertex(u)
                    continue
                if not u < v:
                    raise ValueError(f"{path}:{lineno}: edge endpoints not in sorted order")
                try:
                    weight = int(w)
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: bad weight {w!r}") from None
                try:
                    g.add_edge(u, v, weight)
                except ValueError as exc:
                    raise ValueError(f"{path}:{lineno}: {exc}") from None
    except UnicodeDecodeError as exc:
        raise ValueError(f"{path}: not valid UTF-8 ({exc.reason} near byte {exc.start})") from None
    if g is None:
        raise ValueError(f"{path}: empty file")
    return g
