"""Symmetric-delete spelling correction over normalized grapheme strings.

Both dictionary words and queries are reduced by deletions only; a delete
collision is merely a candidate filter, and every candidate is re-verified
with the true edit distance before it may be suggested.  Distance operates
on Unicode scalars so a single mistyped vowel or sign costs 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .script import normalize_text

__all__ = [
    "LexiconEntry",
    "Suggestion",
    "DeleteIndex",
    "damerau_levenshtein",
    "build_index",
    "lookup",
    "load_lexicon",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LexiconEntry:
    word: str  # canonical character order
    frequency: int = 0


@dataclass(frozen=True)
class Suggestion:
    word: str
    distance: int
    frequency: int


def damerau_levenshtein(a: Sequence, b: Sequence) -> int:
    """Optimal string alignment distance: insert, delete, substitute, and
    adjacent transposition, each costing 1.

    Works on any sequences with comparable items — strings of scalars for
    grapheme spelling, tuples of phoneme tokens for phonemic spelling.
    """
    if a == b:
        return 0
    la, lb = len(a), len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la

    prev2 = [0] * (lb + 1)
    prev = list(range(lb + 1))
    cur = [0] * (lb + 1)
    for i in range(1, la + 1):
        cur[0] = i
        ai = a[i - 1]
        for j in range(1, lb + 1):
            cost = 0 if ai == b[j - 1] else 1
            best = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
            if i > 1 and j > 1 and ai == b[j - 2] and a[i - 2] == b[j - 1]:
                best = min(best, prev2[j - 2] + 1)
            cur[j] = best
        prev2, prev, cur = prev, cur, prev2
    return prev[lb]


def _deletes(seq: tuple, max_distance: int) -> set[tuple]:
    """All variants of `seq` with up to max_distance items deleted, seq included."""
    out = {seq}
    frontier = {seq}
    for _ in range(max_distance):
        nxt = set()
        for s in frontier:
            for i in range(len(s)):
                d = s[:i] + s[i + 1 :]
                if d not in out:
                    nxt.add(d)
        out |= nxt
        frontier = nxt
        if not frontier:
            break
    return out


class DeleteIndex:
    """Immutable symmetric-delete index over item sequences.

    `entries` maps each deletion variant (a tuple of items) to the set of
    originating dictionary sequences; `lexicon` maps sequence -> frequency.
    For grapheme use, items are scalars; for phoneme use, tokens.
    """

    def __init__(self, lexicon: dict[tuple, int], max_distance: int):
        if max_distance < 1:
            raise ValueError("max_distance must be >= 1")
        self.max_distance = max_distance
        self.lexicon: dict[tuple, int] = dict(lexicon)
        self.entries: dict[tuple, set[tuple]] = {}
        for seq in self.lexicon:
            for variant in _deletes(seq, max_distance):
                self.entries.setdefault(variant, set()).add(seq)

    def candidates(self, seq: tuple, max_distance: int) -> set[tuple]:
        """Dictionary sequences sharing a deletion variant with `seq`.

        A superset filter only; callers must verify with the true distance.
        """
        found: set[tuple] = set()
        for variant in _deletes(seq, max_distance):
            hit = self.entries.get(variant)
            if hit:
                found |= hit
        return found

    def lookup(self, seq: tuple, max_distance: int, top_k: int,
               frequency_of=None) -> list[tuple]:
        """Verified matches as (seq, distance, frequency), ranked
        (distance asc, frequency desc, item order asc), truncated to top_k."""
        if max_distance > self.max_distance:
            raise ValueError(
                f"max_distance {max_distance} exceeds index bound {self.max_distance}"
            )
        freq = frequency_of or self.lexicon.get
        hits = []
        for cand in self.candidates(seq, max_distance):
            d = damerau_levenshtein(seq, cand)
            if d <= max_distance:
                hits.append((cand, d, freq(cand) or 0))
        hits.sort(key=lambda h: (h[1], -h[2], h[0]))
        return hits[:top_k]


def build_index(lexicon: Iterable[LexiconEntry], max_distance: int = 2) -> DeleteIndex:
    """Build the grapheme index. Duplicate words get their frequencies summed."""
    if not 1 <= max_distance <= 3:
        raise ValueError("max_distance must be in 1..3")
    merged: dict[tuple, int] = {}
    for entry in lexicon:
        key = tuple(entry.word)
        merged[key] = merged.get(key, 0) + entry.frequency
    return DeleteIndex(merged, max_distance)


def lookup(index: DeleteIndex, query: str, max_distance: int = 2,
           top_k: int = 10) -> list[Suggestion]:
    """All dictionary words within `max_distance` edits of the normalized
    query. An empty list means no correction was found."""
    seq = tuple(normalize_text(query))
    return [
        Suggestion(word="".join(cand), distance=d, frequency=f)
        for cand, d, f in index.lookup(seq, max_distance, top_k)
    ]


def load_lexicon(path: str | Path) -> list[LexiconEntry]:
    """Read a `word<TAB>frequency` TSV, normalizing words on the way in.

    `#` lines are comments.  Malformed lines are logged with their line
    number and skipped.
    """
    entries: list[LexiconEntry] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                logger.warning("%s:%d: expected word<TAB>frequency, skipped", path, lineno)
                continue
            word, freq_text = parts
            word = normalize_text(word.strip())
            try:
                freq = int(freq_text.strip())
            except ValueError:
                logger.warning("%s:%d: bad frequency %r, skipped", path, lineno, freq_text)
                continue
            if not word or freq < 0:
                logger.warning("%s:%d: empty word or negative frequency, skipped", path, lineno)
                continue
            entries.append(LexiconEntry(word=word, frequency=freq))
    return entries
