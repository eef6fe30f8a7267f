import logging

import pytest

from khmersearch.g2p import (
    ConsonantSeries,
    NoKhmerContentError,
    PronDict,
    Source,
    homophones,
    load_prondict,
    series_of,
    transcribe,
)
from khmersearch.script import normalize_text

VICTORY_STACKED = "ជ័យជម្នះ"
VICTORY_UNSTACKED = "ជ័យជំនះ"
VICTORY_PHONEMES = "c e j . c u m . n e a h"


class TestSeries:
    def test_first_series(self):
        assert series_of("ក") is ConsonantSeries.FIRST

    def test_second_series(self):
        assert series_of("គ") is ConsonantSeries.SECOND

    def test_triisap_override(self):
        assert series_of("ប", "៊") is ConsonantSeries.SECOND

    def test_muusikatoan_override(self):
        assert series_of("ម", "៉") is ConsonantSeries.FIRST

    def test_total_over_consonant_range(self):
        for o in range(0x1780, 0x17A3):
            assert series_of(chr(o)) in (ConsonantSeries.FIRST, ConsonantSeries.SECOND)

    def test_non_consonant_rejected(self):
        with pytest.raises(ValueError):
            series_of("ា")


class TestTranscribe:
    def test_paper_pair_from_lexicon(self, prondict):
        seq = transcribe(VICTORY_UNSTACKED, prondict)
        assert seq.source is Source.LEXICON
        assert seq.serialized() == VICTORY_PHONEMES

    def test_paper_pair_identical(self, prondict):
        a = transcribe(VICTORY_UNSTACKED, prondict)
        b = transcribe(VICTORY_STACKED, prondict)
        assert a.serialized() == b.serialized()

    def test_rule_fallback_simple_syllable(self):
        seq = transcribe("កា", PronDict.empty())
        assert seq.source is Source.RULE
        assert seq.serialized() == "k aa"

    def test_rule_register_pair(self):
        # same vowel sign, both registers
        assert transcribe("កា", PronDict.empty()).serialized() == "k aa"
        assert transcribe("គា", PronDict.empty()).serialized() == "k ie"

    def test_rule_stacked_equals_unstacked(self):
        empty = PronDict.empty()
        for stacked, unstacked in [
            ("ចម្រៀង", "ចំរៀង"),
            ("បម្លែង", "បំលែង"),
            ("កម្សាន្ត", "កំសាន្ត"),
        ]:
            assert (
                transcribe(stacked, empty).serialized()
                == transcribe(unstacked, empty).serialized()
            )

    def test_silencer_drops_coda(self):
        empty = PronDict.empty()
        with_silent = transcribe("អភិវឌ្ឍន៍", empty)
        without_final = transcribe("អភិវឌ្ឍ", empty)
        assert with_silent.serialized() == without_final.serialized()

    def test_lexicon_fidelity(self, prondict):
        for word, stored in prondict.entries.items():
            assert transcribe(word, prondict) is stored

    def test_rule_determinism(self):
        a = transcribe("ស្រឡាញ់", PronDict.empty())
        b = transcribe("ស្រឡាញ់", PronDict.empty())
        assert a == b

    def test_empty_word_rejected(self, prondict):
        with pytest.raises(ValueError):
            transcribe("", prondict)

    def test_no_khmer_content(self, prondict):
        with pytest.raises(NoKhmerContentError):
            transcribe("abc", prondict)

    def test_syllable_serialization_shape(self):
        seq = transcribe("បង្កើត", PronDict.empty())
        assert all(syl for syl in seq.syllables)
        assert " . " in seq.serialized()


class TestHomophones:
    def test_paper_pair(self, prondict):
        assert homophones(VICTORY_UNSTACKED, prondict) == {normalize_text(VICTORY_STACKED)}

    def test_unique_pronunciation(self, prondict):
        assert homophones("ស្ត្រី", prondict) == set()

    def test_never_contains_self(self, prondict):
        for word in prondict.entries:
            assert word not in homophones(word, prondict)

    def test_symmetry(self, prondict):
        for word in prondict.entries:
            for other in homophones(word, prondict):
                assert word in homophones(other, prondict)

    def test_non_khmer_is_empty(self, prondict):
        assert homophones("xyz", prondict) == set()


class TestPronDictFile:
    def test_reverse_is_exact_inverse(self, prondict):
        rebuilt = {}
        for word, seq in prondict.entries.items():
            rebuilt.setdefault(seq.serialized(), set()).add(word)
        assert rebuilt == prondict.reverse

    def test_unknown_token_extends_inventory(self, tmp_path, caplog):
        path = tmp_path / "pron.tsv"
        path.write_text("កខ\tk zz\n", encoding="utf-8")
        with caplog.at_level(logging.WARNING):
            pd = load_prondict(path)
        assert "zz" in pd.inventory
        assert any("zz" in r.getMessage() for r in caplog.records)

    def test_malformed_lines_skipped(self, tmp_path, caplog):
        path = tmp_path / "pron.tsv"
        path.write_text("# header\nកខ\tk aa\nbroken-line\nគឃ\t\n", encoding="utf-8")
        with caplog.at_level(logging.WARNING):
            pd = load_prondict(path)
        assert list(pd.entries) == ["កខ"]
        assert len(caplog.records) == 2

    def test_words_normalized_at_load(self, tmp_path):
        swapped = "ស" + "្រ" + "្ត" + "ី"
        path = tmp_path / "pron.tsv"
        path.write_text(f"{swapped}\ts t r ej\n", encoding="utf-8")
        pd = load_prondict(path)
        assert normalize_text(swapped) in pd.entries

    def test_shipped_inventory_is_closed(self, prondict):
        for seq in prondict.entries.values():
            for tok in seq.tokens():
                assert tok in prondict.inventory
