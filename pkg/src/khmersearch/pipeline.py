"""Query expansion: normalize, correct, add alternative spellings, add
semantic neighbors, and keep the provenance of every term.

Expanded terms are OR-joined downstream, so expansion can only grow the
candidate set; the normalized original is always kept, which floors the
expanded hit count at the raw hit count.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from . import embedding as emb
from .g2p import PronDict, homophones
from .ir import InvertedIndex, search, segment_words
from .phoneme_speller import PhonemeIndex, lookup_phonemic
from .script import normalize_text
from .speller import DeleteIndex, lookup

__all__ = [
    "Provenance",
    "ExpansionConfig",
    "ExpandedTerm",
    "ExpandedQuery",
    "Resources",
    "query_words",
    "expand",
    "run_experiment",
    "ExperimentReport",
]


def _has_khmer(s: str) -> bool:
    return any(0x1780 <= ord(c) <= 0x17FF for c in s)


def query_words(query: str, lexicon: set[str]) -> list[str]:
    """Split a query into words for expansion.

    Within each whitespace chunk, dictionary segmentation applies — unless
    some Khmer token falls outside the lexicon, in which case the chunk's
    Khmer content is kept whole: a misspelled word must reach the
    spellcheckers in one piece, not as the fragments segmentation leaves
    behind.
    """
    words: list[str] = []
    for chunk in normalize_text(query).split():
        tokens = segment_words(chunk, lexicon, normalize=False)
        khmer = [t for t in tokens if _has_khmer(t)]
        if khmer and any(t not in lexicon for t in khmer):
            words.append("".join(khmer))
            words.extend(t for t in tokens if not _has_khmer(t))
        else:
            words.extend(tokens)
    return words


class Provenance(enum.Enum):
    ORIGINAL = "original"
    NORMALIZED = "normalized"
    GRAPHEME_CORRECTION = "grapheme-correction"
    PHONEME_CORRECTION = "phoneme-correction"
    HOMOPHONE = "homophone"
    SEMANTIC_NEIGHBOR = "semantic-neighbor"


@dataclass(frozen=True)
class ExpansionConfig:
    enable_spellcheck: bool = True
    enable_homophones: bool = True
    enable_semantic: bool = False
    max_corrections: int = 3
    max_neighbors: int = 5
    min_similarity: float = 0.5
    post_spellcheck_neighbors: bool = True

    def __post_init__(self):
        if self.max_corrections < 1 or self.max_neighbors < 1:
            raise ValueError("limits must be positive")
        if not 0.0 <= self.min_similarity <= 1.0:
            raise ValueError("min_similarity must be in [0, 1]")


@dataclass(frozen=True)
class ExpandedTerm:
    term: str
    provenance: Provenance
    score: float | None = None


@dataclass
class ExpandedQuery:
    terms: list[ExpandedTerm] = field(default_factory=list)

    def term_strings(self) -> list[str]:
        return [t.term for t in self.terms]

    def to_json(self) -> str:
        return json.dumps(
            [
                {"term": t.term, "provenance": t.provenance.value, "score": t.score}
                for t in self.terms
            ],
            ensure_ascii=False,
        )


@dataclass
class Resources:
    """Everything expansion needs, built once and shared."""

    grapheme_index: DeleteIndex
    prondict: PronDict
    phoneme_index: PhonemeIndex
    lexicon: set[str]
    model: emb.EmbeddingModel | None = None


def _merged_corrections(word: str, resources: Resources, config: ExpansionConfig):
    """Grapheme and phonemic suggestions merged: grapheme wins ties at each
    distance, exact-pronunciation matches come right after exact spellings."""
    ranked = []
    for source_rank, (prov, suggestions) in enumerate(
        [
            (Provenance.GRAPHEME_CORRECTION, lookup(resources.grapheme_index, word)),
            (Provenance.PHONEME_CORRECTION, lookup_phonemic(resources.phoneme_index, word)),
        ]
    ):
        for s in suggestions:
            ranked.append((s.distance, source_rank, -s.frequency, s.word, prov))
    ranked.sort()
    out = []
    seen = set()
    for distance, _, _, w, prov in ranked:
        if w not in seen:
            seen.add(w)
            out.append((w, prov, distance))
        if len(out) >= config.max_corrections:
            break
    return out


def _neighbor_is_plausible(neighbor: str, resources: Resources) -> bool:
    if neighbor in resources.lexicon:
        return True
    return bool(lookup(resources.grapheme_index, neighbor, max_distance=1, top_k=1))


def expand(query: str, resources: Resources, config: ExpansionConfig) -> ExpandedQuery:
    """Expand a raw query into OR-terms with per-term provenance.

    Per segmented word: normalize always; in-lexicon words keep themselves
    and (optionally) their homophones; unknown words go through both
    spellcheckers; semantic neighbors attach to every retained lexicon
    word.  Multi-word queries expand per word and union the terms.
    """
    result = ExpandedQuery()
    added: set[str] = set()

    def add(term: str, prov: Provenance, score: float | None = None) -> None:
        if term and term not in added:
            added.add(term)
            result.terms.append(ExpandedTerm(term, prov, score))

    words = query_words(query, resources.lexicon)
    anchor_terms: list[str] = []  # lexicon words that seed the semantic stage

    for word in words:
        add(word, Provenance.NORMALIZED)
        if word in resources.lexicon:
            anchor_terms.append(word)
            if config.enable_homophones:
                for alt in sorted(homophones(word, resources.prondict)):
                    add(alt, Provenance.HOMOPHONE)
                    if alt in resources.lexicon:
                        anchor_terms.append(alt)
        elif config.enable_spellcheck and _has_khmer(word):
            for corrected, prov, distance in _merged_corrections(word, resources, config):
                add(corrected, prov, float(distance))
                if corrected in resources.lexicon:
                    anchor_terms.append(corrected)
                if config.enable_homophones:
                    for alt in sorted(homophones(corrected, resources.prondict)):
                        add(alt, Provenance.HOMOPHONE)
                        if alt in resources.lexicon:
                            anchor_terms.append(alt)

    if config.enable_semantic and resources.model is not None:
        for term in anchor_terms:
            if term not in resources.model.vocab:
                continue
            kept = 0
            for neighbor, sim in emb.nearest_neighbors(resources.model, term,
                                                       k=4 * config.max_neighbors):
                if sim < config.min_similarity or kept >= config.max_neighbors:
                    break
                if config.post_spellcheck_neighbors and not _neighbor_is_plausible(
                    neighbor, resources
                ):
                    continue
                add(neighbor, Provenance.SEMANTIC_NEIGHBOR, sim)
                kept += 1

    return result


@dataclass
class ExperimentRow:
    query: str
    config_label: str
    raw_hits: int
    expanded_hits: int
    terms: ExpandedQuery


@dataclass
class ExperimentReport:
    rows: list[ExperimentRow]

    def to_text(self) -> str:
        width = max([len("query")] + [len(r.query) for r in self.rows])
        lwidth = max([len("config")] + [len(r.config_label) for r in self.rows])
        lines = [
            f"{'query'.ljust(width)}  {'config'.ljust(lwidth)}  raw_hits  expanded_hits",
            "-" * (width + lwidth + 28),
        ]
        for r in self.rows:
            lines.append(
                f"{r.query.ljust(width)}  {r.config_label.ljust(lwidth)}  "
                f"{str(r.raw_hits).rjust(8)}  {str(r.expanded_hits).rjust(13)}"
            )
        return "\n".join(lines)

    def to_jsonl(self) -> str:
        out = []
        for r in self.rows:
            out.append(
                json.dumps(
                    {
                        "query": r.query,
                        "config": r.config_label,
                        "raw_hits": r.raw_hits,
                        "expanded_hits": r.expanded_hits,
                        "terms": [
                            {
                                "term": t.term,
                                "provenance": t.provenance.value,
                                "score": t.score,
                            }
                            for t in r.terms.terms
                        ],
                    },
                    ensure_ascii=False,
                )
            )
        return "\n".join(out)


def run_experiment(index: InvertedIndex, resources: Resources, queries: list[str],
                   configs: list[tuple[str, ExpansionConfig]]) -> ExperimentReport:
    """Hit counts for every query under every expansion config, next to the
    raw (normalize-only) hit count."""
    rows = []
    for query in queries:
        raw_hits = search(index, query_words(query, resources.lexicon)).hits
        for label, config in configs:
            expanded = expand(query, resources, config)
            hits = search(index, expanded.term_strings()).hits
            rows.append(ExperimentRow(query, label, raw_hits, hits, expanded))
    return ExperimentReport(rows)
