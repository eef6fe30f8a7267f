"""Grapheme-to-phoneme conversion for Khmer words.

Lexicon-first: a loaded pronunciation dictionary wins whenever the word is
in it.  Otherwise a rule fallback transcribes cluster by cluster, driven by
the two-register consonant system: every consonant carries a register that
selects the quality of the attached vowel, and the register shifters flip
it.  The written form often splits one spoken syllable across clusters
(a bare consonant closing the syllable, or a subscript opening the next),
so the rules also rebuild those reduced disyllables.

Rule output is an approximation; irregular words (Pali/Sanskrit loans,
silent letters beyond the explicit silencer) are corrected by shipping them
in the pronunciation lexicon, never by more rules.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path

from .script import (
    CodepointClass,
    KhmerCluster,
    classify_codepoint,
    normalize_text,
    segment_clusters,
)

__all__ = [
    "ConsonantSeries",
    "PhonemeSequence",
    "PronDict",
    "Source",
    "NoKhmerContentError",
    "series_of",
    "transcribe",
    "homophones",
    "load_prondict",
    "DEFAULT_INVENTORY",
]

logger = logging.getLogger(__name__)


class NoKhmerContentError(ValueError):
    """The word contains no well-formed Khmer cluster to transcribe."""


class ConsonantSeries(enum.Enum):
    FIRST = 1
    SECOND = 2


class Source(enum.Enum):
    LEXICON = "lexicon"
    RULE = "rule"


# consonant -> (phoneme, default series); covers all of U+1780..U+17A2
_CONSONANTS: dict[str, tuple[str, ConsonantSeries]] = {
    "ក": ("k", ConsonantSeries.FIRST),
    "ខ": ("kh", ConsonantSeries.FIRST),
    "គ": ("k", ConsonantSeries.SECOND),
    "ឃ": ("kh", ConsonantSeries.SECOND),
    "ង": ("ŋ", ConsonantSeries.SECOND),
    "ច": ("c", ConsonantSeries.FIRST),
    "ឆ": ("ch", ConsonantSeries.FIRST),
    "ជ": ("c", ConsonantSeries.SECOND),
    "ឈ": ("ch", ConsonantSeries.SECOND),
    "ញ": ("ɲ", ConsonantSeries.SECOND),
    "ដ": ("d", ConsonantSeries.FIRST),
    "ឋ": ("th", ConsonantSeries.FIRST),
    "ឌ": ("d", ConsonantSeries.SECOND),
    "ឍ": ("th", ConsonantSeries.SECOND),
    "ណ": ("n", ConsonantSeries.FIRST),
    "ត": ("t", ConsonantSeries.FIRST),
    "ថ": ("th", ConsonantSeries.FIRST),
    "ទ": ("t", ConsonantSeries.SECOND),
    "ធ": ("th", ConsonantSeries.SECOND),
    "ន": ("n", ConsonantSeries.SECOND),
    "ប": ("b", ConsonantSeries.FIRST),
    "ផ": ("ph", ConsonantSeries.FIRST),
    "ព": ("p", ConsonantSeries.SECOND),
    "ភ": ("ph", ConsonantSeries.SECOND),
    "ម": ("m", ConsonantSeries.SECOND),
    "យ": ("j", ConsonantSeries.SECOND),
    "រ": ("r", ConsonantSeries.SECOND),
    "ល": ("l", ConsonantSeries.SECOND),
    "វ": ("w", ConsonantSeries.SECOND),
    "ឝ": ("s", ConsonantSeries.FIRST),
    "ឞ": ("s", ConsonantSeries.SECOND),
    "ស": ("s", ConsonantSeries.FIRST),
    "ហ": ("h", ConsonantSeries.FIRST),
    "ឡ": ("l", ConsonantSeries.FIRST),
    "អ": ("ʔ", ConsonantSeries.FIRST),
}

# independent vowel -> (onset, nucleus)
_INDEPENDENT: dict[str, tuple[str, str]] = {
    "ឥ": ("ʔ", "e"),
    "ឦ": ("ʔ", "ej"),
    "ឧ": ("ʔ", "o"),
    "ឨ": ("ʔ", "o"),
    "ឩ": ("ʔ", "uu"),
    "ឪ": ("ʔ", "ao"),
    "ឫ": ("r", "i"),
    "ឬ": ("r", "ii"),
    "ឭ": ("l", "i"),
    "ឮ": ("l", "ii"),
    "ឯ": ("ʔ", "ae"),
    "ឰ": ("ʔ", "ej"),
    "ឱ": ("ʔ", "ao"),
    "ឲ": ("ʔ", "ao"),
    "ឳ": ("ʔ", "ao"),
}

MUUSIKATOAN = "៉"
TRIISAP = "៊"
NIKAHIT = "ំ"
REAHMUK = "ះ"
YUUKALEAPINTU = "ៈ"
BANTOC = "់"
TOANDAKHIAT = "៍"

# inherent nucleus when a cluster carries no written vowel
_INHERENT = {ConsonantSeries.FIRST: "aa", ConsonantSeries.SECOND: "oo"}
# reduced nucleus of minor syllables and of the nasal sign
_SHORT_REGISTER = {ConsonantSeries.FIRST: "o", ConsonantSeries.SECOND: "u"}
# nucleus of the final-aspiration / short-a signs
_SHORT_A = {ConsonantSeries.FIRST: "a", ConsonantSeries.SECOND: "ea"}
# nucleus of the samyok sign
_SAMYOK = {ConsonantSeries.FIRST: "a", ConsonantSeries.SECOND: "e"}

_SHORTEN = {
    "aa": "a", "ie": "ea", "ee": "e", "əə": "ə",
    "oo": "o", "uu": "u", "ii": "i",
}

_CODA_SILENT = {"រ"}  # final r is not pronounced

DEFAULT_INVENTORY: frozenset[str] = frozenset(
    "k kh c ch t th d p ph b m n ɲ ŋ j r l w s h ʔ".split()
    + "a aa e ee ə əə i ii o oo u uu ie uə ae ao aə ej ea ah eh".split()
)


def series_of(base: str, shifter: str | None = None) -> ConsonantSeries:
    """Register of a base consonant, after applying any shifter."""
    entry = _CONSONANTS.get(base)
    if entry is None:
        raise ValueError(f"not a Khmer base consonant: {base!r}")
    if shifter == MUUSIKATOAN:
        return ConsonantSeries.FIRST
    if shifter == TRIISAP:
        return ConsonantSeries.SECOND
    return entry[1]


@dataclass(frozen=True)
class PhonemeSequence:
    syllables: tuple[tuple[str, ...], ...]
    source: Source

    def serialized(self) -> str:
        return " . ".join(" ".join(syl) for syl in self.syllables)

    def tokens(self) -> tuple[str, ...]:
        """All phoneme tokens, syllable boundaries excluded."""
        return tuple(tok for syl in self.syllables for tok in syl)


@dataclass
class PronDict:
    """Loaded pronunciation lexicon plus the exact inverse multimap."""

    entries: dict[str, PhonemeSequence]
    reverse: dict[str, set[str]]
    inventory: frozenset[str]

    @classmethod
    def empty(cls) -> "PronDict":
        return cls(entries={}, reverse={}, inventory=DEFAULT_INVENTORY)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries


def _load_vowel_table() -> dict[str, dict[ConsonantSeries, str]]:
    table: dict[str, dict[ConsonantSeries, str]] = {}
    text = files("khmersearch.data").joinpath("vowels.tsv").read_text("utf-8")
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        vowel, first, second = line.split("\t")
        table[vowel] = {ConsonantSeries.FIRST: first, ConsonantSeries.SECOND: second}
    return table


_VOWEL_TABLE = _load_vowel_table()


def _base_phoneme(base: str, shifter: str | None) -> str:
    if base == "ប" and shifter == MUUSIKATOAN:
        return "p"  # the one shifter that changes the consonant itself
    return _CONSONANTS[base][0]


def _onset(cluster: KhmerCluster) -> list[str]:
    out = [_base_phoneme(cluster.base, cluster.shifter)]
    out.extend(_CONSONANTS[sub][0] for sub in cluster.subscripts)
    return out


def _has_nucleus(cluster: KhmerCluster) -> bool:
    if cluster.vowel is not None:
        return True
    return any(d in (NIKAHIT, REAHMUK, YUUKALEAPINTU, "័") for d in cluster.diacritics)


def _nucleus_and_coda(cluster: KhmerCluster, series: ConsonantSeries) -> tuple[str, list[str]]:
    nucleus: str | None = None
    coda: list[str] = []
    if cluster.vowel is not None:
        nucleus = _VOWEL_TABLE[cluster.vowel][series]
    signs = set(cluster.diacritics)
    if NIKAHIT in signs:
        if cluster.vowel == "ា":
            nucleus = _SHORT_A[series]
        elif cluster.vowel in (None, "ុ"):
            nucleus = _SHORT_REGISTER[series]
        coda.append("m")
    if "័" in signs and nucleus is None:  # samyok
        nucleus = _SAMYOK[series]
    if YUUKALEAPINTU in signs:
        nucleus = _SHORT_A[series] if nucleus is None else _SHORTEN.get(nucleus, nucleus)
    if REAHMUK in signs:
        nucleus = _SHORT_A[series] if nucleus is None else _SHORTEN.get(nucleus, nucleus)
        coda.append("h")
    if BANTOC in signs and nucleus is not None:
        nucleus = _SHORTEN.get(nucleus, nucleus)
    if nucleus is None:
        nucleus = _INHERENT[series]
    return nucleus, coda


class _Syllable:
    __slots__ = ("onset", "nucleus", "coda")

    def __init__(self, onset: list[str], nucleus: str, coda: list[str]):
        self.onset = onset
        self.nucleus = nucleus
        self.coda = coda

    def tokens(self) -> tuple[str, ...]:
        return tuple(self.onset + [self.nucleus] + self.coda)


def _is_bare(cluster: KhmerCluster) -> bool:
    return not _has_nucleus(cluster)


def _append_coda(syl: _Syllable, cluster: KhmerCluster) -> None:
    if BANTOC in cluster.diacritics:
        syl.nucleus = _SHORTEN.get(syl.nucleus, syl.nucleus)
    if cluster.base not in _CODA_SILENT:
        syl.coda.append(_base_phoneme(cluster.base, cluster.shifter))


def _rule_syllables(word: str) -> tuple[tuple[str, ...], ...]:
    clusters = [c for c in segment_clusters(word) if c.well_formed]
    clusters = [c for c in clusters if TOANDAKHIAT not in c.diacritics]
    if not clusters:
        raise NoKhmerContentError(f"no Khmer clusters in {word!r}")

    syllables: list[_Syllable] = []
    i = 0
    n = len(clusters)
    while i < n:
        c = clusters[i]
        if classify_codepoint(c.base) is CodepointClass.INDEPENDENT_VOWEL:
            onset_tok, nucleus = _INDEPENDENT[c.base]
            coda = [_CONSONANTS[s][0] for s in c.subscripts]
            syllables.append(_Syllable([onset_tok], nucleus, coda))
            i += 1
            continue

        series = series_of(c.base, c.shifter)
        if _is_bare(c):
            nxt = clusters[i + 1] if i + 1 < n else None
            if nxt is None and syllables:
                _append_coda(syllables[-1], c)
            elif nxt is not None and nxt.subscripts and classify_codepoint(
                nxt.base
            ) is CodepointClass.BASE_CONSONANT:
                # reduced minor syllable: the next cluster's base closes this
                # syllable, its subscripts open the next one
                coda = []
                if nxt.base not in _CODA_SILENT:
                    coda.append(_CONSONANTS[nxt.base][0])
                syllables.append(_Syllable(_onset(c), _SHORT_REGISTER[series], coda))
                promoted = KhmerCluster(
                    base=nxt.subscripts[0],
                    subscripts=nxt.subscripts[1:],
                    shifter=nxt.shifter,
                    diacritics=nxt.diacritics,
                    vowel=nxt.vowel,
                    raw=nxt.raw,
                )
                clusters[i + 1] = promoted
            elif not c.subscripts and syllables and _has_nucleus(clusters[i - 1]):
                _append_coda(syllables[-1], c)
            elif nxt is None:
                # whole word is one bare cluster
                nucleus = _INHERENT[series]
                if BANTOC in c.diacritics:
                    nucleus = _SHORTEN.get(nucleus, nucleus)
                syllables.append(_Syllable(_onset(c), nucleus, []))
            else:
                syllables.append(_Syllable(_onset(c), _SHORT_REGISTER[series], []))
        else:
            nucleus, coda = _nucleus_and_coda(c, series)
            syllables.append(_Syllable(_onset(c), nucleus, coda))
        i += 1

    return tuple(s.tokens() for s in syllables)


def transcribe(word: str, prondict: PronDict) -> PhonemeSequence:
    """Phoneme sequence for a word: dictionary entry if present, rules if not."""
    if not word:
        raise ValueError("word must be non-empty")
    norm = normalize_text(word)
    stored = prondict.entries.get(norm)
    if stored is not None:
        return stored
    return PhonemeSequence(syllables=_rule_syllables(norm), source=Source.RULE)


def homophones(word: str, prondict: PronDict) -> set[str]:
    """Other dictionary spellings sharing this word's pronunciation."""
    try:
        seq = transcribe(word, prondict)
    except (ValueError, NoKhmerContentError):
        return set()
    same = prondict.reverse.get(seq.serialized(), set())
    return same - {normalize_text(word)}


def load_prondict(path: str | Path) -> PronDict:
    """Read a `word<TAB>phonemes` TSV; phonemes are space-separated with "."
    between syllables.  Tokens outside the built-in inventory extend it with
    a warning; malformed lines are logged and skipped.
    """
    entries: dict[str, PhonemeSequence] = {}
    inventory = set(DEFAULT_INVENTORY)
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[1].strip():
                logger.warning("%s:%d: expected word<TAB>phonemes, skipped", path, lineno)
                continue
            word = normalize_text(parts[0].strip())
            syllables = []
            for chunk in parts[1].split("."):
                toks = tuple(chunk.split())
                if toks:
                    syllables.append(toks)
            if not word or not syllables:
                logger.warning("%s:%d: empty word or pronunciation, skipped", path, lineno)
                continue
            for tok in (t for syl in syllables for t in syl):
                if tok not in inventory:
                    logger.warning("%s:%d: unknown phoneme %r added to inventory", path, lineno, tok)
                    inventory.add(tok)
            entries[word] = PhonemeSequence(syllables=tuple(syllables), source=Source.LEXICON)
    reverse: dict[str, set[str]] = {}
    for word, seq in entries.items():
        reverse.setdefault(seq.serialized(), set()).add(word)
    return PronDict(entries=entries, reverse=reverse, inventory=frozenset(inventory))
