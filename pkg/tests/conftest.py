import pytest
from importlib.resources import files

from khmersearch.g2p import load_prondict
from khmersearch.ir import InvertedIndex, ingest, load_corpus
from khmersearch.phoneme_speller import build_phoneme_index
from khmersearch.pipeline import Resources
from khmersearch.speller import build_index, load_lexicon


def data_path(name: str) -> str:
    return str(files("khmersearch.data").joinpath(name))


@pytest.fixture(scope="session")
def lexicon_entries():
    return load_lexicon(data_path("lexicon.tsv"))


@pytest.fixture(scope="session")
def lexicon_words(lexicon_entries):
    return {e.word for e in lexicon_entries}


@pytest.fixture(scope="session")
def prondict():
    return load_prondict(data_path("prondict.tsv"))


@pytest.fixture(scope="session")
def grapheme_index(lexicon_entries):
    return build_index(lexicon_entries, max_distance=2)


@pytest.fixture(scope="session")
def phoneme_index(prondict, lexicon_entries):
    freqs = {e.word: e.frequency for e in lexicon_entries}
    return build_phoneme_index(prondict, max_distance=1, lexicon_frequencies=freqs)


@pytest.fixture(scope="session")
def resources(grapheme_index, prondict, phoneme_index, lexicon_words):
    return Resources(
        grapheme_index=grapheme_index,
        prondict=prondict,
        phoneme_index=phoneme_index,
        lexicon=lexicon_words,
    )


@pytest.fixture(scope="session")
def demo_docs():
    return load_corpus(data_path("corpus.jsonl"))


@pytest.fixture(scope="session")
def demo_index(demo_docs, lexicon_words):
    index = InvertedIndex(lexicon_words, normalize=True)
    for doc in demo_docs:
        ingest(index, doc)
    return index
