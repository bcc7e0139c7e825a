"""Evaluation protocols against a reference relation.

Binned curves (mean reference value per equidistant similarity-score bin)
and shortest-path-distance profiles with a label-shuffle null baseline.

Reference oracles are callables ``(u, v) -> float | None``; ``None`` means
the oracle cannot judge the pair, which then drops out of the evaluation
universe.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

from . import similarity
from .graph import CoocGraph, shortest_path_lengths
from .nullmodel import shuffle_labels

ValueOracle = Callable[[str, str], "float | None"]

LOW_CONFIDENCE_COUNT = 1000


@dataclass(frozen=True)
class BinRow:
    index: int
    center: float
    mean: float  # nan when the bin is empty
    count: int


@dataclass(frozen=True)
class BinnedCurve:
    bin_count: int
    lo: float
    hi: float
    rows: tuple[BinRow, ...]


def binned_curve(
    g: CoocGraph,
    metric: str,
    reference: ValueOracle,
    bin_count: int,
    *,
    weighted: bool = False,
    include_zeros: float = 0.0,
    seed: int = 0,
) -> BinnedCurve:
    """Group pair similarity scores into equidistant bins and average the
    reference value per bin.

    The pair universe is every pair with at least one common neighbor (the
    only pairs any metric scores above zero) for which the reference yields a
    value; ``include_zeros`` additionally samples that fraction of the
    remaining zero-score pairs. Bins span the observed score range; only the
    last bin includes its right edge, so every pair lands in exactly one bin.
    """
    if bin_count < 1:
        raise ValueError("bin_count must be >= 1")
    if not 0.0 <= include_zeros <= 1.0:
        raise ValueError("include_zeros must be within [0, 1]")
    points: list[tuple[float, float]] = []
    scored_pairs: set[tuple[str, str]] = set()
    for s in similarity.all_pairs_scores(g, metric, weighted=weighted):
        scored_pairs.add((s.u, s.v))
        ref = reference(s.u, s.v)
        if ref is not None:
            points.append((s.value, ref))
    if include_zeros > 0.0:
        rng = random.Random(seed)
        vertices = g.vertex_list()
        for i, u in enumerate(vertices):
            for v in vertices[i + 1:]:
                if (u, v) in scored_pairs:
                    continue
                if rng.random() >= include_zeros:
                    continue
                ref = reference(u, v)
                if ref is not None:
                    points.append((0.0, ref))
    if not points:
        raise ValueError("no evaluable pairs")

    lo = min(p[0] for p in points)
    hi = max(p[0] for p in points)
    width = (hi - lo) / bin_count
    sums = [0.0] * bin_count
    counts = [0] * bin_count
    for value, ref in points:
        if width == 0.0:
            idx = 0
        elif value == hi:
            idx = bin_count - 1
        else:
            idx = min(int((value - lo) / width), bin_count - 1)
        sums[idx] += ref
        counts[idx] += 1
    rows = tuple(
        BinRow(
            index=i,
            center=lo if width == 0.0 else lo + (i + 0.5) * width,
            mean=sums[i] / counts[i] if counts[i] else math.nan,
            count=counts[i],
        )
        for i in range(bin_count)
    )
    return BinnedCurve(bin_count=bin_count, lo=lo, hi=hi, rows=rows)


@dataclass(frozen=True)
class DistanceRow:
    distance: int
    mean: float
    count: int
    low_confidence: bool


@dataclass(frozen=True)
class DistanceProfile:
    rows: tuple[DistanceRow, ...]
    null_rows: tuple[DistanceRow, ...]


def _accumulate(g, value, max_distance, sources, dedupe, sums, counts) -> None:
    for s in sources:
        for t, d in shortest_path_lengths(g, s, max_distance=max_distance).items():
            if d == 0:
                continue
            if dedupe and t <= s:
                continue
            ref = value(s, t)
            if ref is None:
                continue
            sums[d] = sums.get(d, 0.0) + ref
            counts[d] = counts.get(d, 0) + 1


def distance_profile(
    g: CoocGraph,
    value: ValueOracle,
    max_distance: int,
    *,
    null_replicas: int = 0,
    seed: int = 0,
    source_sample: int | None = None,
    min_count: int = LOW_CONFIDENCE_COUNT,
) -> DistanceProfile:
    """Mean oracle value over vertex pairs at each shortest-path distance up
    to ``max_distance``.

    Rows whose pair count falls below ``min_count`` are flagged
    low-confidence. With ``null_replicas`` > 0 the same computation runs on
    label-shuffled copies of the graph, pooled into a null baseline.
    ``source_sample`` limits the BFS to a uniform sample of source vertices;
    pairs then count once per sampled source instead of once per unordered
    pair.
    """
    if max_distance < 1:
        raise ValueError("max_distance must be >= 1")
    if null_replicas < 0:
        raise ValueError("null_replicas must be nonnegative")
    rng = random.Random(seed)

    def pick_sources(graph: CoocGraph) -> list[str]:
        vs = list(graph.vertex_list())
        if source_sample is None or source_sample >= len(vs):
            return vs
        return sorted(rng.sample(vs, source_sample))

    dedupe = source_sample is None
    sums: dict[int, float] = {}
    counts: dict[int, int] = {}
    _accumulate(g, value, max_distance, pick_sources(g), dedupe, sums, counts)

    null_sums: dict[int, float] = {}
    null_counts: dict[int, int] = {}
    for _ in range(null_replicas):
        shuffled = shuffle_labels(g, seed=rng.randrange(2**63))
        _accumulate(shuffled, value, max_distance, pick_sources(shuffled), dedupe, null_sums, null_counts)

    rows = tuple(
        DistanceRow(d, sums[d] / counts[d], counts[d], counts[d] < min_count)
        for d in sorted(counts)
    )
    null_rows = tuple(
        DistanceRow(d, null_sums[d] / null_counts[d], null_counts[d], null_counts[d] < min_count)
        for d in sorted(null_counts)
    )
    return DistanceProfile(rows=rows, null_rows=null_rows)
