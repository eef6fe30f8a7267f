"""Khmer codepoint classification, cluster segmentation, and character-order
normalization.

Khmer renders a syllable from a base consonant plus subscripts, signs, and a
vowel, and keyboards accept those trailing marks in any order.  Distinct
codepoint sequences therefore display identically and defeat plain string
matching.  This module segments text into orthographic syllables (KCCs) and
rewrites each one into a single canonical scalar order so that identically
rendered spellings compare equal.  The canonical form is for matching and
indexing; display text should keep its original order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

__all__ = [
    "CodepointClass",
    "KhmerCluster",
    "classify_codepoint",
    "segment_clusters",
    "normalize_cluster",
    "normalize_text",
]

COENG = "្"
ZERO_WIDTH = {"​", "‌"}  # ZWSP / ZWNJ: invisible separators, stripped

MUUSIKATOAN = "៉"
TRIISAP = "៊"


class CodepointClass(enum.Enum):
    BASE_CONSONANT = "base-consonant"
    INDEPENDENT_VOWEL = "independent-vowel"
    DEPENDENT_VOWEL = "dependent-vowel"
    COENG = "coeng"
    DIACRITIC_SIGN = "diacritic-sign"
    REGISTER_SHIFTER = "register-shifter"
    DIGIT = "digit"
    OTHER = "other"


def classify_codepoint(cp: str) -> CodepointClass:
    """Classify a single Unicode scalar. Total: every scalar gets a class."""
    o = ord(cp)
    if 0x1780 <= o <= 0x17A2:
        return CodepointClass.BASE_CONSONANT
    if 0x17A5 <= o <= 0x17B3:
        return CodepointClass.INDEPENDENT_VOWEL
    if 0x17B6 <= o <= 0x17C5:
        return CodepointClass.DEPENDENT_VOWEL
    if o == 0x17D2:
        return CodepointClass.COENG
    if o in (0x17C9, 0x17CA):
        return CodepointClass.REGISTER_SHIFTER
    if 0x17C6 <= o <= 0x17D3 or o == 0x17DD:
        return CodepointClass.DIACRITIC_SIGN
    if 0x17E0 <= o <= 0x17E9:
        return CodepointClass.DIGIT
    return CodepointClass.OTHER


@dataclass(frozen=True)
class KhmerCluster:
    """One orthographic syllable (KCC), or a pass-through run of other text.

    `raw` always holds the exact scalars consumed, so joining `raw` across a
    cluster sequence reproduces the input (minus stripped zero-width chars).
    Field slots only hold what was understood; anything structurally off
    (orphan coeng, doubled vowel, baseless marks) sets `malformed` and the
    cluster is then left untouched by normalization.
    """

    base: str | None = None
    subscripts: tuple[str, ...] = ()
    shifter: str | None = None
    diacritics: tuple[str, ...] = ()
    vowel: str | None = None
    raw: str = ""
    malformed: bool = False

    @property
    def is_khmer(self) -> bool:
        return self.base is not None

    @property
    def well_formed(self) -> bool:
        return self.base is not None and not self.malformed

    def serialize(self) -> str:
        """Canonical scalar order: base, subscripts, shifter, diacritics, vowel."""
        parts = [self.base or ""]
        for sub in self.subscripts:
            parts.append(COENG + sub)
        if self.shifter:
            parts.append(self.shifter)
        parts.extend(self.diacritics)
        if self.vowel:
            parts.append(self.vowel)
        return "".join(parts)


class _Builder:
    __slots__ = ("base", "subscripts", "shifter", "diacritics", "vowel", "raw", "malformed")

    def __init__(self, base: str | None = None):
        self.base = base
        self.subscripts: list[str] = []
        self.shifter: str | None = None
        self.diacritics: list[str] = []
        self.vowel: str | None = None
        self.raw: list[str] = [base] if base else []
        self.malformed = base is None

    def build(self) -> KhmerCluster:
        return KhmerCluster(
            base=self.base,
            subscripts=tuple(self.subscripts),
            shifter=self.shifter,
            diacritics=tuple(self.diacritics),
            vowel=self.vowel,
            raw="".join(self.raw),
            malformed=self.malformed,
        )


def segment_clusters(text: str) -> list[KhmerCluster]:
    """Segment text into KCCs plus pass-through runs.

    A base consonant or independent vowel opens a cluster; coeng binds the
    next consonant as a subscript; vowels, signs, and shifters attach to the
    open cluster.  Marks with no base, orphan coengs, and overfilled slots
    yield clusters flagged malformed rather than errors: search input must
    never crash the pipeline.  Zero-width separators are dropped.
    """
    scalars = [c for c in text if c not in ZERO_WIDTH]
    clusters: list[KhmerCluster] = []
    cur: _Builder | None = None
    passthrough: list[str] = []

    def flush_cur():
        nonlocal cur
        if cur is not None:
            clusters.append(cur.build())
            cur = None

    def flush_passthrough():
        nonlocal passthrough
        if passthrough:
            clusters.append(KhmerCluster(raw="".join(passthrough)))
            passthrough = []

    i = 0
    n = len(scalars)
    while i < n:
        cp = scalars[i]
        cls = classify_codepoint(cp)
        if cls in (CodepointClass.BASE_CONSONANT, CodepointClass.INDEPENDENT_VOWEL):
            flush_passthrough()
            flush_cur()
            cur = _Builder(cp)
        elif cls is CodepointClass.COENG:
            nxt = scalars[i + 1] if i + 1 < n else None
            if (
                cur is not None
                and cur.base is not None
                and nxt is not None
                and classify_codepoint(nxt) is CodepointClass.BASE_CONSONANT
            ):
                cur.subscripts.append(nxt)
                cur.raw.append(cp)
                cur.raw.append(nxt)
                i += 2
                continue
            # orphan coeng: keep it in raw, flag whatever holds it
            flush_passthrough()
            if cur is None:
                cur = _Builder()
            cur.raw.append(cp)
            cur.malformed = True
        elif cls in (
            CodepointClass.DEPENDENT_VOWEL,
            CodepointClass.REGISTER_SHIFTER,
            CodepointClass.DIACRITIC_SIGN,
        ):
            flush_passthrough()
            if cur is None:
                cur = _Builder()  # baseless mark: degenerate cluster
            cur.raw.append(cp)
            if cls is CodepointClass.DEPENDENT_VOWEL:
                if cur.vowel is None:
                    cur.vowel = cp
                else:
                    cur.malformed = True
            elif cls is CodepointClass.REGISTER_SHIFTER:
                if cur.shifter is None:
                    cur.shifter = cp
                else:
                    cur.malformed = True
            else:
                cur.diacritics.append(cp)
        else:  # Digit / Other: pass-through run
            flush_cur()
            passthrough.append(cp)
        i += 1

    flush_cur()
    flush_passthrough()
    return clusters


def normalize_cluster(c: KhmerCluster) -> KhmerCluster:
    """Rewrite a well-formed cluster into canonical order.

    Subscripts and diacritics sort ascending by scalar value; the serialized
    order is base, subscripts, shifter, diacritics, vowel.  Malformed and
    pass-through clusters come back unchanged: normalization reorders, it
    never repairs or destroys.
    """
    if not c.well_formed:
        return c
    ordered = replace(
        c,
        subscripts=tuple(sorted(c.subscripts)),
        diacritics=tuple(sorted(c.diacritics)),
    )
    return replace(ordered, raw=ordered.serialize())


def normalize_text(text: str) -> str:
    """Segment, normalize each well-formed cluster, and recombine."""
    return "".join(normalize_cluster(c).raw for c in segment_clusters(text))
