"""Subword word embeddings with cluster-level n-grams.

Each word is represented as itself plus its character-cluster n-grams, so
spelling variants and unseen words still get vectors from the subwords they
share with known words.  N-grams run over whole KCC units rather than raw
scalars: a scalar n-gram could split a coeng pair and produce subwords no
reader would recognize.

Training is skip-gram with negative sampling, single-threaded and
deterministic for a fixed seed.  The n-gram hash table is demand-allocated:
a row's initial value is derived from (seed, row id), so untouched rows in
the 2^21-slot default table cost nothing until used.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .script import normalize_cluster, normalize_text, segment_clusters

__all__ = [
    "EmbeddingConfig",
    "EmbeddingModel",
    "EmptyVocabularyError",
    "NoSubwordsError",
    "ZeroVectorError",
    "OutOfVocabularyError",
    "VectorFormatError",
    "extract_ngrams",
    "train",
    "vector_of",
    "cosine",
    "nearest_neighbors",
    "save_vectors",
    "load_vectors",
    "save_model",
    "load_model",
]

logger = logging.getLogger(__name__)


class EmptyVocabularyError(ValueError):
    """No corpus word met min_word_count."""


class NoSubwordsError(ValueError):
    """The word yields no n-gram under the configured bounds."""


class ZeroVectorError(ValueError):
    """Cosine of a zero vector is undefined."""


class OutOfVocabularyError(KeyError):
    """Word unknown to a query-only model that carries no n-gram table."""


class VectorFormatError(ValueError):
    """Malformed vector file."""


@dataclass(frozen=True)
class EmbeddingConfig:
    dim: int = 100
    min_n: int = 1
    max_n: int = 4
    bucket_count: int = 1 << 21
    window: int = 5
    negatives: int = 5
    epochs: int = 5
    learning_rate: float = 0.05
    min_word_count: int = 5
    seed: int = 1

    def __post_init__(self):
        if not 1 <= self.min_n <= self.max_n:
            raise ValueError("need 1 <= min_n <= max_n")
        if self.dim < 8:
            raise ValueError("dim must be >= 8")
        for name in ("bucket_count", "window", "negatives", "epochs", "min_word_count"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")


def _fnv1a(s: str) -> int:
    h = 0xCBF29CE484222325
    for byte in s.encode("utf-8"):
        h ^= byte
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def extract_ngrams(word: str, min_n: int = 1, max_n: int = 4) -> list[str]:
    """Contiguous runs of length min_n..max_n over the word's normalized KCC
    units wrapped in boundary markers, excluding the full marked word."""
    if not word:
        raise ValueError("word must be non-empty")
    units = ["<"] + [normalize_cluster(c).raw for c in segment_clusters(word)] + [">"]
    full = "".join(units)
    grams = []
    for n in range(min_n, max_n + 1):
        for i in range(len(units) - n + 1):
            gram = "".join(units[i : i + n])
            if gram != full:
                grams.append(gram)
    return grams


class EmbeddingModel:
    """Trained or loaded embedding model.

    `query_only` models (loaded from the text vector format) hold final
    word vectors with no n-gram table, so only in-vocabulary queries work.
    """

    def __init__(self, config: EmbeddingConfig, words: list[str], counts: list[int],
                 query_only: bool = False):
        self.config = config
        self.words = list(words)
        self.vocab: dict[str, tuple[int, int]] = {
            w: (i, c) for i, (w, c) in enumerate(zip(words, counts))
        }
        self.query_only = query_only
        dim = config.dim
        if query_only:
            self.word_vectors = np.zeros((len(words), dim), dtype=np.float32)
        else:
            rng = np.random.default_rng(config.seed)
            bound = 1.0 / dim
            self.word_vectors = rng.uniform(-bound, bound, (len(words), dim)).astype(np.float32)
            self.output_vectors = np.zeros((len(words), dim), dtype=np.float32)
        self.bucket_vectors: dict[int, np.ndarray] = {}
        self.loss_history: list[float] = []
        self._ngram_ids: dict[str, list[int]] = {}
        self._composed: np.ndarray | None = None

    def bucket_row(self, bucket: int) -> np.ndarray:
        row = self.bucket_vectors.get(bucket)
        if row is None:
            rng = np.random.default_rng([self.config.seed, bucket])
            bound = 1.0 / self.config.dim
            row = rng.uniform(-bound, bound, self.config.dim).astype(np.float32)
            self.bucket_vectors[bucket] = row
        return row

    def ngram_ids(self, word: str) -> list[int]:
        ids = self._ngram_ids.get(word)
        if ids is None:
            grams = extract_ngrams(word, self.config.min_n, self.config.max_n)
            ids = [_fnv1a(g) % self.config.bucket_count for g in grams]
            self._ngram_ids[word] = ids
        return ids

    def input_rows(self, word: str) -> tuple[list[np.ndarray], list[int], int | None]:
        """Constituent input rows for a word: its own row when in-vocab plus
        one row per n-gram bucket."""
        idx = self.vocab.get(word, (None, 0))[0]
        bucket_ids = self.ngram_ids(word)
        rows = []
        if idx is not None:
            rows.append(self.word_vectors[idx])
        rows.extend(self.bucket_row(b) for b in bucket_ids)
        return rows, bucket_ids, idx

    def composed_matrix(self) -> np.ndarray:
        if self._composed is None:
            if self.query_only:
                self._composed = self.word_vectors
            else:
                self._composed = np.vstack(
                    [vector_of(self, w) for w in self.words]
                ) if self.words else np.zeros((0, self.config.dim), dtype=np.float32)
        return self._composed


def _sigmoid(x: float) -> float:
    if x > 30:
        return 1.0
    if x < -30:
        return 0.0
    return 1.0 / (1.0 + math.exp(-x))


def train(corpus: Iterable[Sequence[str]], config: EmbeddingConfig | None = None) -> EmbeddingModel:
    """Train on pre-segmented sentences (token sequences).

    Deterministic for a fixed seed; logs the mean loss per epoch, which
    should trend down on any reasonable corpus.
    """
    config = config or EmbeddingConfig()
    sentences = [list(s) for s in corpus]
    counts: dict[str, int] = {}
    for sent in sentences:
        for tok in sent:
            counts[tok] = counts.get(tok, 0) + 1
    kept = sorted(
        (w for w, c in counts.items() if c >= config.min_word_count),
        key=lambda w: (-counts[w], w),
    )
    if not kept:
        raise EmptyVocabularyError(
            f"no word reaches min_word_count={config.min_word_count}"
        )
    model = EmbeddingModel(config, kept, [counts[w] for w in kept])

    # negative-sampling table: unigram^0.75
    weights = np.array([counts[w] ** 0.75 for w in kept], dtype=np.float64)
    cumulative = np.cumsum(weights / weights.sum())

    rng = np.random.default_rng(config.seed)
    lr = config.learning_rate
    vocab = model.vocab
    out = model.output_vectors
    for epoch in range(config.epochs):
        loss_sum = 0.0
        loss_n = 0
        for sent in sentences:
            token_ids = [vocab[t][0] for t in sent if t in vocab]
            token_words = [t for t in sent if t in vocab]
            for pos, center_word in enumerate(token_words):
                reach = int(rng.integers(1, config.window + 1))
                rows, _, _ = model.input_rows(center_word)
                n_rows = len(rows)
                if n_rows == 0:
                    continue
                hidden = np.mean(rows, axis=0)
                lo = max(0, pos - reach)
                hi = min(len(token_ids), pos + reach + 1)
                for cpos in range(lo, hi):
                    if cpos == pos:
                        continue
                    target = token_ids[cpos]
                    grad = np.zeros(config.dim, dtype=np.float32)
                    # positive pair plus sampled negatives
                    samples = [(target, 1.0)]
                    attempts = 0
                    while len(samples) < config.negatives + 1 and attempts < 10 * config.negatives:
                        attempts += 1
                        neg = int(np.searchsorted(cumulative, rng.random()))
                        if neg != target:
                            samples.append((neg, 0.0))
                    for oidx, label in samples:
                        score = _sigmoid(float(np.dot(hidden, out[oidx])))
                        g = (label - score) * lr
                        loss_sum += -math.log(max(score if label else 1.0 - score, 1e-10))
                        loss_n += 1
                        grad += g * out[oidx]
                        out[oidx] += g * hidden
                    share = grad / n_rows
                    for row in rows:  # rows are views; updates land in place
                        row += share
        epoch_loss = loss_sum / max(loss_n, 1)
        model.loss_history.append(epoch_loss)
        logger.info("epoch %d/%d: loss %.4f", epoch + 1, config.epochs, epoch_loss)
    model._composed = None
    return model


def vector_of(model: EmbeddingModel, word: str) -> np.ndarray:
    """Mean of the word's own row (when in-vocab) and its n-gram rows.

    Any string with at least one cluster has a vector; misspellings and
    unseen words get one from their subwords alone.
    """
    if not word:
        raise ValueError("word must be non-empty")
    if model.query_only:
        idx = model.vocab.get(word, (None, 0))[0]
        if idx is None:
            raise OutOfVocabularyError(word)
        return model.word_vectors[idx]
    rows, _, _ = model.input_rows(word)
    if not rows:
        raise NoSubwordsError(f"{word!r} yields no n-gram")
    return np.mean(rows, axis=0)


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise ZeroVectorError("cosine undefined for zero vectors")
    return float(np.dot(a, b) / (na * nb))


def nearest_neighbors(model: EmbeddingModel, word: str, k: int = 10) -> list[tuple[str, float]]:
    """Top-k vocab words by cosine similarity, the query itself excluded.
    Brute force over the whole vocabulary; exact by construction."""
    query = vector_of(model, word)
    if not model.words:
        raise OutOfVocabularyError(word)
    scored = []
    for other in model.words:
        if other == word:
            continue
        scored.append((other, cosine(query, vector_of(model, other))))
    scored.sort(key=lambda t: (-t[1], t[0]))
    return scored[:k]


def save_vectors(model: EmbeddingModel, path: str | Path) -> None:
    """Write the text vector format: `vocab_size dim` header, then one line
    per word with its composed vector."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(model.words)} {model.config.dim}\n")
        for w in model.words:
            vec = vector_of(model, w)
            fh.write(w + " " + " ".join(f"{x:.6f}" for x in vec) + "\n")


def load_vectors(path: str | Path) -> EmbeddingModel:
    """Load a text vector file as a query-only model (in-vocab words only)."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        parts = header.split()
        if len(parts) != 2:
            raise VectorFormatError(f"{path}:1: bad header {header!r}")
        try:
            size, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise VectorFormatError(f"{path}:1: bad header {header!r}") from None
        if dim < 8:
            raise VectorFormatError(f"{path}:1: dim {dim} out of range")
        words: list[str] = []
        rows: list[np.ndarray] = []
        for lineno, line in enumerate(fh, start=2):
            fields = line.rstrip("\n").split(" ")
            if len(fields) != dim + 1:
                raise VectorFormatError(
                    f"{path}:{lineno}: expected {dim + 1} fields, got {len(fields)}"
                )
            try:
                rows.append(np.array([float(x) for x in fields[1:]], dtype=np.float32))
            except ValueError:
                raise VectorFormatError(f"{path}:{lineno}: non-numeric vector") from None
            words.append(fields[0])
    if len(words) != size:
        raise VectorFormatError(f"{path}: header says {size} words, file has {len(words)}")
    config = EmbeddingConfig(dim=dim)
    model = EmbeddingModel(config, words, [0] * len(words), query_only=True)
    if rows:
        model.word_vectors = np.vstack(rows)
    return model


def save_model(model: EmbeddingModel, path: str | Path) -> None:
    """Full binary save, n-gram buckets included, so OOV queries survive."""
    bucket_ids = np.array(sorted(model.bucket_vectors), dtype=np.int64)
    bucket_matrix = (
        np.vstack([model.bucket_vectors[b] for b in bucket_ids])
        if len(bucket_ids)
        else np.zeros((0, model.config.dim), dtype=np.float32)
    )
    np.savez_compressed(
        path,
        words=np.array(model.words, dtype=object),
        counts=np.array([model.vocab[w][1] for w in model.words], dtype=np.int64),
        word_vectors=model.word_vectors,
        bucket_ids=bucket_ids,
        bucket_matrix=bucket_matrix,
        config=np.array([json.dumps(asdict(model.config))], dtype=object),
    )


def load_model(path: str | Path) -> EmbeddingModel:
    try:
        data = np.load(path, allow_pickle=True)
        config = EmbeddingConfig(**json.loads(str(data["config"][0])))
        words = [str(w) for w in data["words"]]
        counts = [int(c) for c in data["counts"]]
        model = EmbeddingModel(config, words, counts)
        model.word_vectors = data["word_vectors"].astype(np.float32)
        model.output_vectors = np.zeros_like(model.word_vectors)
        for bucket, row in zip(data["bucket_ids"], data["bucket_matrix"]):
            model.bucket_vectors[int(bucket)] = row.astype(np.float32)
    except (KeyError, ValueError, OSError) as exc:
        raise VectorFormatError(f"cannot load model from {path}: {exc}") from exc
    return model
