"""Desk-scale search backend: dictionary word segmentation, an inverted
index that normalizes at ingest, boolean-OR retrieval, and TF-IDF ranking.

Khmer text runs words together, so indexing needs a segmenter; this one is
greedy forward longest-match against a lexicon, over cluster boundaries.
Normalization at ingest and at query time is what makes differently-typed
spellings of one word hit the same postings.
"""

from __future__ import annotations

import json
import math
from bisect import insort
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .script import KhmerCluster, normalize_cluster, normalize_text, segment_clusters

__all__ = [
    "Document",
    "InvertedIndex",
    "SearchResult",
    "DuplicateDocIdError",
    "IndexFormatError",
    "VersionMismatchError",
    "segment_words",
    "ingest",
    "search",
    "save_index",
    "load_index",
    "load_corpus",
]

INDEX_FORMAT_VERSION = 1


class DuplicateDocIdError(ValueError):
    """A document with this id is already in the index."""


class IndexFormatError(ValueError):
    """Corrupt or unreadable index file."""


class VersionMismatchError(IndexFormatError):
    """Index file written by an incompatible format version."""


@dataclass
class Document:
    id: str
    text: str
    tokens: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class SearchResult:
    hits: int
    ranked: list[tuple[str, float]]


def _prepare_clusters(text: str, normalize: bool) -> list[KhmerCluster]:
    clusters = segment_clusters(text)
    if normalize:
        clusters = [normalize_cluster(c) for c in clusters]
    return clusters


def _lexicon_cluster_limit(lexicon: Iterable[str]) -> int:
    longest = 1
    for word in lexicon:
        longest = max(longest, len(segment_clusters(word)))
    return longest


def segment_words(text: str, lexicon: Iterable[str], normalize: bool = True,
                  _max_clusters: int | None = None) -> list[str]:
    """Greedy forward longest-match segmentation.

    Khmer runs are matched against the lexicon over whole-cluster
    boundaries; anything unmatched falls back to a single-cluster token.
    Non-Khmer runs split on whitespace.  All Khmer content survives, in
    order.
    """
    lexset = lexicon if isinstance(lexicon, (set, frozenset)) else set(lexicon)
    limit = _max_clusters if _max_clusters is not None else _lexicon_cluster_limit(lexset)
    clusters = _prepare_clusters(text, normalize)
    tokens: list[str] = []
    i = 0
    n = len(clusters)
    while i < n:
        if not clusters[i].is_khmer:
            tokens.extend(clusters[i].raw.split())
            i += 1
            continue
        run_end = i
        while run_end < n and clusters[run_end].is_khmer:
            run_end += 1
        while i < run_end:
            matched = 1
            for length in range(min(limit, run_end - i), 1, -1):
                candidate = "".join(c.raw for c in clusters[i : i + length])
                if candidate in lexset:
                    matched = length
                    break
            tokens.append("".join(c.raw for c in clusters[i : i + matched]))
            i += matched
    return tokens


class InvertedIndex:
    """Postings keyed by normalized term.  Build by repeated ingest; the
    structure is plain data and reads are safe once writing stops."""

    def __init__(self, lexicon: Iterable[str] = (), normalize: bool = True):
        self.normalize = normalize
        self.lexicon: set[str] = set(lexicon)
        self._max_clusters = _lexicon_cluster_limit(self.lexicon) if self.lexicon else 1
        self.postings: dict[str, list[tuple[str, int]]] = {}
        self.doc_lengths: dict[str, int] = {}

    @property
    def doc_count(self) -> int:
        return len(self.doc_lengths)

    def tokenize(self, text: str) -> list[str]:
        return segment_words(text, self.lexicon, self.normalize,
                             _max_clusters=self._max_clusters)


def ingest(index: InvertedIndex, doc: Document) -> InvertedIndex:
    """Segment, normalize, and add one document. Duplicate ids are rejected
    outright so a failed reingest cannot double counts."""
    if doc.id in index.doc_lengths:
        raise DuplicateDocIdError(doc.id)
    tokens = index.tokenize(doc.text)
    doc.tokens = tokens
    counts: dict[str, int] = {}
    for tok in tokens:
        counts[tok] = counts.get(tok, 0) + 1
    for term, tf in counts.items():
        insort(index.postings.setdefault(term, []), (doc.id, tf))
    index.doc_lengths[doc.id] = len(tokens)
    return index


def search(index: InvertedIndex, terms: list[str]) -> SearchResult:
    """Boolean-OR retrieval with TF-IDF ranking.

    score(d) = sum over matched terms of tf(t, d) * (ln(N / df(t)) + 1).
    Unknown terms contribute nothing; hit count is the size of the union.
    """
    n_docs = index.doc_count
    scores: dict[str, float] = {}
    seen: set[str] = set()
    for term in terms:
        if index.normalize:
            term = normalize_text(term)
        if term in seen:
            continue
        seen.add(term)
        plist = index.postings.get(term)
        if not plist:
            continue
        idf = math.log(n_docs / len(plist)) + 1.0
        for doc_id, tf in plist:
            scores[doc_id] = scores.get(doc_id, 0.0) + tf * idf
    ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return SearchResult(hits=len(ranked), ranked=ranked)


def save_index(index: InvertedIndex, path: str | Path) -> None:
    payload = {
        "version": INDEX_FORMAT_VERSION,
        "normalize": index.normalize,
        "lexicon": sorted(index.lexicon),
        "doc_lengths": index.doc_lengths,
        "postings": {t: [[d, tf] for d, tf in pl] for t, pl in index.postings.items()},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False)


def load_index(path: str | Path) -> InvertedIndex:
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise IndexFormatError(f"corrupt index file {path}: {exc}") from exc
    if not isinstance(payload, dict) or "version" not in payload:
        raise IndexFormatError(f"{path} is not an index file")
    if payload["version"] != INDEX_FORMAT_VERSION:
        raise VersionMismatchError(
            f"{path}: format version {payload['version']}, expected {INDEX_FORMAT_VERSION}"
        )
    try:
        index = InvertedIndex(payload["lexicon"], normalize=payload["normalize"])
        index.doc_lengths = dict(payload["doc_lengths"])
        index.postings = {
            term: [(d, int(tf)) for d, tf in plist]
            for term, plist in payload["postings"].items()
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise IndexFormatError(f"corrupt index file {path}: {exc}") from exc
    return index


def load_corpus(path: str | Path) -> list[Document]:
    """Read a JSON-lines corpus of objects with `id` and `text` fields.
    Unknown fields are ignored."""
    docs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                docs.append(Document(id=str(obj["id"]), text=str(obj["text"])))
            except (json.JSONDecodeError, KeyError) as exc:
                raise IndexFormatError(f"{path}:{lineno}: bad corpus record: {exc}") from exc
    return docs
