"""Entity lexicons: loading, normalization, and ambiguity filtering."""

from __future__ import annotations

import logging
import unicodedata
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

logger = logging.getLogger(__name__)

KIND_NAMES = "names"
KIND_CITIES = "cities"
KINDS = (KIND_NAMES, KIND_CITIES)


@dataclass(frozen=True)
class EntityLexicon:
    """An immutable set of entity surface forms of one kind.

    Surface forms are NFC-normalized strings; multi-token forms keep a single
    space between tokens. ``dropped`` reports how many input lines were
    discarded while loading: duplicate lines for name lexicons, every row of
    an ambiguous surface for city lexicons.
    """

    kind: str
    entries: frozenset[str]
    dropped: int = 0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown lexicon kind {self.kind!r}")
        for surface in self.entries:
            if not surface or "\t" in surface or "\n" in surface:
                raise ValueError(f"invalid surface form {surface!r}")

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, surface: object) -> bool:
        return surface in self.entries


def _read_surfaces(path) -> list[str]:
    surfaces: list[str] = []
    try:
        with open(path, encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, 1):
                line = raw.rstrip()
                if not line or line.startswith("#"):
                    continue
                surface = unicodedata.normalize("NFC", line)
                if "\t" in surface:
                    raise ValueError(f"{path}:{lineno}: surface form contains a tab")
                surfaces.append(surface)
    except UnicodeDecodeError as exc:
        raise ValueError(f"{path}: not valid UTF-8 ({exc.reason} near byte {exc.start})") from None
    return surfaces


def load_lexicon(path, kind: str = KIND_NAMES) -> EntityLexicon:
    """Load a lexicon file: one surface form per line, '#' lines are comments.

    Name lexicons collapse duplicate lines into one entry. City lexicons may
    carry several rows for one surface (distinct places sharing a name); any
    surface occurring more than once is ambiguous and all its rows are
    dropped. Normalization is Unicode NFC only, no case folding: matching
    stays case-sensitive so surfaces that collide with common lowercase words
    do not pick up extra noise.
    """
    surfaces = _read_surfaces(path)
    if kind == KIND_CITIES:
        occurrences = Counter(surfaces)
        entries = frozenset(s for s, c in occurrences.items() if c == 1)
    elif kind == KIND_NAMES:
        entries = frozenset(surfaces)
    else:
        raise ValueError(f"unknown lexicon kind {kind!r}")
    if not entries:
        raise ValueError(f"{path}: empty lexicon after filtering")
    dropped = len(surfaces) - len(entries)
    if dropped:
        logger.info("%s: dropped %d duplicate/ambiguous lines", path, dropped)
    return EntityLexicon(kind=kind, entries=entries, dropped=dropped)


def save_lexicon(lexicon: EntityLexicon, path) -> None:
    """Write the lexicon back out, one sorted surface form per line."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for surface in sorted(lexicon.entries):
            handle.write(surface + "\n")


def drop_ambiguous(lexicon: EntityLexicon, collisions: Iterable[str]) -> EntityLexicon:
    """Remove every surface form present in ``collisions``."""
    collision_set = frozenset(collisions)
    kept = lexicon.entries - collision_set
    return EntityLexicon(
        kind=lexicon.kind, entries=kept, dropped=len(lexicon.entries) - len(kept)
    )
