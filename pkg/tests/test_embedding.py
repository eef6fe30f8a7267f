import numpy as np
import pytest

from khmersearch.embedding import (
    EmbeddingConfig,
    EmptyVocabularyError,
    NoSubwordsError,
    OutOfVocabularyError,
    VectorFormatError,
    ZeroVectorError,
    cosine,
    extract_ngrams,
    load_model,
    load_vectors,
    nearest_neighbors,
    save_model,
    save_vectors,
    train,
    vector_of,
)

TOY_CONFIG = EmbeddingConfig(dim=16, epochs=25, window=2, min_word_count=5, seed=3)


def cooccurrence_corpus(repeats=30):
    """A always next to B; C and D in their own world."""
    corpus = []
    for _ in range(repeats):
        corpus.append(["កក", "ខខ", "កក", "ខខ"])
        corpus.append(["គគ", "ឃឃ", "គគ", "ឃឃ"])
    return corpus


@pytest.fixture(scope="module")
def toy_model():
    return train(cooccurrence_corpus(), TOY_CONFIG)


class TestNgrams:
    def test_two_cluster_word(self):
        assert extract_ngrams("សាលា", 1, 2) == [
            "<", "សា", "លា", ">", "<សា", "សាលា", "លា>",
        ]

    def test_single_cluster_bigram_only(self):
        assert extract_ngrams("ក", 2, 2) == ["<ក", "ក>"]

    def test_full_marked_word_excluded(self):
        grams = extract_ngrams("ក", 1, 4)
        assert "<ក>" not in grams
        assert set(grams) == {"<", "ក", ">", "<ក", "ក>"}

    def test_shared_units_share_ngrams(self):
        a = set(extract_ngrams("សាលា", 1, 2))
        b = set(extract_ngrams("សាខា", 1, 2))
        # grams not touching the differing middle unit are common
        assert {"<", ">", "<សា", "សា"} <= (a & b)
        assert "លា" in (a - b) and "ខា" in (b - a)

    def test_ngrams_use_normalized_clusters(self):
        swapped = "ស" + "្រ" + "្ត" + "ី"
        canonical = "ស" + "្ត" + "្រ" + "ី"
        assert extract_ngrams(swapped, 1, 2) == extract_ngrams(canonical, 1, 2)

    def test_empty_word_rejected(self):
        with pytest.raises(ValueError):
            extract_ngrams("", 1, 2)


class TestCosine:
    def test_self_is_one(self):
        v = np.array([0.3, -1.2, 4.0])
        assert cosine(v, v) == pytest.approx(1.0, abs=1e-9)

    def test_opposite_is_minus_one(self):
        v = np.array([0.3, -1.2, 4.0])
        assert cosine(v, -v) == pytest.approx(-1.0, abs=1e-9)

    def test_orthogonal_is_zero(self):
        assert cosine(np.array([1.0, 0.0]), np.array([0.0, 2.0])) == pytest.approx(
            0.0, abs=1e-9
        )

    def test_zero_vector_rejected(self):
        with pytest.raises(ZeroVectorError):
            cosine(np.zeros(3), np.ones(3))


class TestConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [dict(dim=4), dict(min_n=0), dict(min_n=3, max_n=2), dict(window=0),
         dict(epochs=0), dict(learning_rate=0.0)],
    )
    def test_invalid_rejected(self, kwargs):
        with pytest.raises(ValueError):
            EmbeddingConfig(**kwargs)


class TestTrain:
    def test_self_similarity(self, toy_model):
        v = vector_of(toy_model, "កក")
        assert cosine(v, v) == pytest.approx(1.0, abs=1e-9)

    def test_cooccurring_words_closer(self):
        for seed in range(1, 6):
            model = train(
                cooccurrence_corpus(),
                EmbeddingConfig(dim=16, epochs=25, window=2, min_word_count=5, seed=seed),
            )
            a, b = vector_of(model, "កក"), vector_of(model, "ខខ")
            c = vector_of(model, "គគ")
            assert cosine(a, b) > cosine(a, c)

    def test_deterministic_retrain(self, toy_model):
        again = train(cooccurrence_corpus(), TOY_CONFIG)
        assert np.array_equal(toy_model.word_vectors, again.word_vectors)
        assert sorted(toy_model.bucket_vectors) == sorted(again.bucket_vectors)
        for b in toy_model.bucket_vectors:
            assert np.array_equal(toy_model.bucket_vectors[b], again.bucket_vectors[b])

    def test_loss_decreases(self, toy_model):
        assert toy_model.loss_history[-1] < toy_model.loss_history[0]

    def test_empty_vocabulary(self):
        with pytest.raises(EmptyVocabularyError):
            train([["once"]], TOY_CONFIG)

    def test_min_word_count_filters(self, toy_model):
        assert set(toy_model.vocab) == {"កក", "ខខ", "គគ", "ឃឃ"}


class TestVectorOf:
    def test_in_vocab_uses_own_row(self, toy_model):
        composed = vector_of(toy_model, "កក")
        idx = toy_model.vocab["កក"][0]
        rows = [toy_model.word_vectors[idx]]
        rows += [toy_model.bucket_row(b) for b in toy_model.ngram_ids("កក")]
        assert np.allclose(composed, np.mean(rows, axis=0))

    def test_oov_misspelling_lands_near_original(self, toy_model):
        # shares the first cluster and boundary grams with កក, nothing with គគ
        miss = "កខ"
        v = vector_of(toy_model, miss)
        assert cosine(v, vector_of(toy_model, "កក")) > cosine(
            v, vector_of(toy_model, "គគ")
        )

    def test_single_cluster_word_defined(self, toy_model):
        assert vector_of(toy_model, "ក").shape == (16,)

    def test_no_subwords_error(self):
        model = train(cooccurrence_corpus(),
                      EmbeddingConfig(dim=16, epochs=1, min_n=3, max_n=3,
                                      min_word_count=5, seed=1))
        with pytest.raises(NoSubwordsError):
            vector_of(model, "ក")  # 3 marked units, the full word is the only 3-gram

    def test_oov_totality_over_random_strings(self, toy_model):
        import random

        from helpers import random_khmer_word

        rng = random.Random(4)
        for _ in range(50):
            word = random_khmer_word(rng)
            assert vector_of(toy_model, word).shape == (16,)


class TestNeighbors:
    def test_query_excluded(self, toy_model):
        assert "កក" not in [w for w, _ in nearest_neighbors(toy_model, "កក", 10)]

    def test_matches_bruteforce_scan(self, toy_model):
        query = vector_of(toy_model, "កក")
        scored = []
        for w in toy_model.words:
            if w == "កក":
                continue
            v = vector_of(toy_model, w)
            scored.append((w, float(np.dot(query, v) / (np.linalg.norm(query) * np.linalg.norm(v)))))
        scored.sort(key=lambda t: (-t[1], t[0]))
        got = nearest_neighbors(toy_model, "កក", 3)
        assert [w for w, _ in got] == [w for w, _ in scored[:3]]
        for (_, a), (_, b) in zip(got, scored):
            assert a == pytest.approx(b, abs=1e-6)

    def test_constructed_corpus_nearest_is_partner(self, toy_model):
        assert nearest_neighbors(toy_model, "កក", 1)[0][0] == "ខខ"


class TestPersistence:
    def test_text_roundtrip_preserves_cosines(self, toy_model, tmp_path):
        path = tmp_path / "vec.txt"
        save_vectors(toy_model, path)
        loaded = load_vectors(path)
        for a in toy_model.words:
            for b in toy_model.words:
                want = cosine(vector_of(toy_model, a), vector_of(toy_model, b))
                got = cosine(vector_of(loaded, a), vector_of(loaded, b))
                assert got == pytest.approx(want, abs=1e-4)

    def test_text_model_rejects_oov(self, toy_model, tmp_path):
        path = tmp_path / "vec.txt"
        save_vectors(toy_model, path)
        loaded = load_vectors(path)
        with pytest.raises(OutOfVocabularyError):
            vector_of(loaded, "កខគ")

    def test_header_only_file(self, tmp_path):
        path = tmp_path / "vec.txt"
        path.write_text("0 16\n", encoding="utf-8")
        model = load_vectors(path)
        assert model.words == []
        with pytest.raises(OutOfVocabularyError):
            nearest_neighbors(model, "ក", 1)

    def test_mismatched_dim_rejected(self, tmp_path):
        path = tmp_path / "vec.txt"
        path.write_text("1 16\nword 0.1 0.2\n", encoding="utf-8")
        with pytest.raises(VectorFormatError) as err:
            load_vectors(path)
        assert ":2:" in str(err.value)

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "vec.txt"
        path.write_text("not a header\n", encoding="utf-8")
        with pytest.raises(VectorFormatError):
            load_vectors(path)

    def test_full_roundtrip_keeps_oov_support(self, toy_model, tmp_path):
        path = tmp_path / "model.npz"
        save_model(toy_model, path)
        loaded = load_model(path)
        for word in ["កក", "កខ", "សាលា"]:
            assert np.allclose(vector_of(toy_model, word), vector_of(loaded, word))

    def test_corrupt_model_file(self, tmp_path):
        path = tmp_path / "model.npz"
        path.write_bytes(b"garbage")
        with pytest.raises(VectorFormatError):
            load_model(path)
