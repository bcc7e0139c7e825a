"""Corpus ingestion: context splitting, entity matching, co-occurrence counts."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .lexicon import EntityLexicon

MODE_SENTENCE = "sentence"
MODE_LINE = "line"
MODES = (MODE_SENTENCE, MODE_LINE)

# Maximal runs of unicode alphanumerics, allowing internal hyphens and
# apostrophes ("Jean-Pierre", "O'Brien"); surrounding punctuation drops out.
_TOKEN_RE = re.compile(r"[^\W_]+(?:['\-][^\W_]+)*")
_TERMINAL_RE = re.compile(r"[.!?]")


@dataclass(frozen=True)
class ContextRecord:
    """One atomic co-occurrence context: a sentence or a line."""

    context_id: int
    tokens: tuple[str, ...]


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text)


def split_sentences(text: str) -> Iterator[str]:
    """Naive sentence splitter.

    A boundary is '.', '!' or '?' followed by whitespace and an uppercase
    letter (or the end of input). Abbreviations like "Dr." therefore
    mis-split; accepted as a documented limitation.
    """
    start = 0
    for match in _TERMINAL_RE.finditer(text):
        end = match.end()
        cursor = end
        while cursor < len(text) and text[cursor].isspace():
            cursor += 1
        if cursor > end and cursor < len(text) and text[cursor].isupper():
            yield text[start:end]
            start = cursor
    if start < len(text):
        yield text[start:]


def split_contexts(text, mode: str = MODE_SENTENCE, start_id: int = 0) -> Iterator[ContextRecord]:
    """Split a document into contexts and tokenize them.

    ``text`` is a string, or an iterable of lines in line mode. Contexts with
    no token at all are not emitted; ids increase strictly from ``start_id``.
    """
    if mode == MODE_LINE:
        units: Iterable[str] = text.splitlines() if isinstance(text, str) else text
    elif mode == MODE_SENTENCE:
        if not isinstance(text, str):
            text = "".join(text)
        units = split_sentences(text)
    else:
        raise ValueError(f"unknown context mode {mode!r}")
    context_id = start_id
    for unit in units:
        tokens = _TOKEN_RE.findall(unit)
        if tokens:
            yield ContextRecord(context_id, tuple(tokens))
            context_id += 1


class EntityMatcher:
    """Greedy longest-match, left-to-right recognizer for lexicon surfaces.

    Matching is case-sensitive exact token equality; a multi-token surface
    consumes its tokens, so overlapping shorter surfaces are skipped.
    """

    def __init__(self, lexicon: EntityLexicon):
        self._by_first: dict[str, list[tuple[str, ...]]] = {}
        for surface in lexicon.entries:
            parts = tuple(surface.split(" "))
            self._by_first.setdefault(parts[0], []).append(parts)
        for candidates in self._by_first.values():
            candidates.sort(key=lambda parts: (-len(parts), parts))

    def match(self, tokens: Sequence[str]) -> set[str]:
        found: set[str] = set()
        i = 0
        n = len(tokens)
        while i < n:
            candidates = self._by_first.get(tokens[i])
            step = 1
            if candidates:
                for parts in candidates:
                    k = len(parts)
                    if k <= n - i and tuple(tokens[i:i + k]) == parts:
                        found.add(" ".join(parts))
                        step = k
                        break
            i += step
        return found


@lru_cache(maxsize=8)
def _cached_matcher(lexicon: EntityLexicon) -> EntityMatcher:
    return EntityMatcher(lexicon)


def match_entities(context, lexicon: EntityLexicon) -> set[str]:
    """Distinct lexicon surface forms occurring in a context."""
    tokens = context.tokens if isinstance(context, ContextRecord) else tuple(context)
    return _cached_matcher(lexicon).match(tokens)


@dataclass
class CoocCounts:
    """Exact integer co-occurrence counts.

    ``pair_count`` keys are (u, v) with u < v; a pair is counted once per
    context regardless of repeated mentions, so pair_count(u, v) never
    exceeds min(entity_freq(u), entity_freq(v)).
    """

    entity_freq: Counter = field(default_factory=Counter)
    pair_count: Counter = field(default_factory=Counter)

    def __add__(self, other: "CoocCounts") -> "CoocCounts":
        return CoocCounts(
            self.entity_freq + other.entity_freq,
            self.pair_count + other.pair_count,
        )


def merge_counts(parts: Iterable[CoocCounts]) -> CoocCounts:
    """Sum per-shard counts; associative and commutative, all integers."""
    total = CoocCounts()
    for part in parts:
        total = total + part
    return total


def count_cooccurrences(
    contexts: Iterable, lexicon: EntityLexicon, max_mentions: int | None = None
) -> CoocCounts:
    """Count entity frequencies and pairwise co-occurrences over contexts.

    Every context contributes at most 1 to each matched entity's frequency
    and at most 1 to each unordered pair of distinct matched entities.
    Contexts matching more than ``max_mentions`` entities are skipped
    entirely (guards against list-heavy documents creating weight-1 cliques).
    """
    matcher = EntityMatcher(lexicon)
    counts = CoocCounts()
    for context in contexts:
        tokens = context.tokens if isinstance(context, ContextRecord) else context
        found = matcher.match(tokens)
        if not found:
            continue
        if max_mentions is not None and len(found) > max_mentions:
            continue
        for entity in found:
            counts.entity_freq[entity] += 1
        for pair in combinations(sorted(found), 2):
            counts.pair_count[pair] += 1
    return counts
