"""Spellchecking in phoneme space.

Stacked/unstacked respellings and sound-alike typos can sit far from the
intended word orthographically while sharing its pronunciation.  This
speller transcribes the query, finds near pronunciations with the same
symmetric-delete machinery the grapheme speller uses — over phoneme tokens,
so a substituted vowel costs 1 no matter how it is spelled — and maps the
matches back to their grapheme spellings.
"""

from __future__ import annotations

import logging

from .g2p import NoKhmerContentError, PronDict, transcribe
from .speller import DeleteIndex, Suggestion

__all__ = ["PhonemeIndex", "build_phoneme_index", "lookup_phonemic"]

logger = logging.getLogger(__name__)


class PhonemeIndex:
    """Delete index over pronunciation token sequences, with the maps needed
    to expand a matched pronunciation back into grapheme words."""

    def __init__(self, prondict: PronDict, max_distance: int,
                 lexicon_frequencies: dict[str, int] | None = None):
        self.prondict = prondict
        self.max_distance = max_distance
        self.word_frequency = dict(lexicon_frequencies or {})
        # syllable dots are not tokens: distance is over phonemes only
        self.words_by_tokens: dict[tuple[str, ...], set[str]] = {}
        for word, seq in prondict.entries.items():
            self.words_by_tokens.setdefault(seq.tokens(), set()).add(word)
        pron_freq = {
            tokens: sum(self.word_frequency.get(w, 0) for w in words)
            for tokens, words in self.words_by_tokens.items()
        }
        self.delete_index = DeleteIndex(pron_freq, max_distance)


def build_phoneme_index(prondict: PronDict, max_distance: int = 1,
                        lexicon_frequencies: dict[str, int] | None = None) -> PhonemeIndex:
    """Index every pronunciation in the dictionary.  A pronunciation's weight
    is the summed lexicon frequency of its spellings (0 when unknown)."""
    if max_distance < 1:
        raise ValueError("max_distance must be >= 1")
    return PhonemeIndex(prondict, max_distance, lexicon_frequencies)


def lookup_phonemic(index: PhonemeIndex, word: str, top_k: int = 10) -> list[Suggestion]:
    """Dictionary words whose pronunciation is within the index's token edit
    distance of the query's transcription.

    The query is transcribed rules-allowed (misspellings are rarely in the
    lexicon).  Nothing is excluded: a validly spelled input comes back at
    distance 0 together with its homophones.
    """
    try:
        seq = transcribe(word, index.prondict)
    except (ValueError, NoKhmerContentError) as exc:
        logger.warning("cannot transcribe %r: %s", word, exc)
        return []
    matches = index.delete_index.lookup(
        seq.tokens(), index.max_distance, top_k=len(index.words_by_tokens) or 1
    )
    suggestions = [
        Suggestion(word=w, distance=dist, frequency=index.word_frequency.get(w, 0))
        for tokens, dist, _ in matches
        for w in index.words_by_tokens[tokens]
    ]
    suggestions.sort(key=lambda s: (s.distance, -s.frequency, s.word))
    return suggestions[:top_k]
