"""khmersearch: a Khmer-aware word search toolkit.

Khmer's writing system lets one word be typed as several different
codepoint sequences that render identically, lets many words be spelled in
stacked or unstacked variants that sound the same, and offers users little
spellchecking help.  Plain string matching fails on all three.  This
package provides the pieces to fix that at search time:

- `script`: cluster segmentation and character-order normalization
- `speller`: symmetric-delete spelling correction over grapheme strings
- `g2p`: grapheme-to-phoneme conversion (lexicon first, rules as fallback)
- `phoneme_speller`: spelling correction in phoneme space
- `embedding`: subword word embeddings and nearest-neighbor queries
- `ir`: word segmentation, inverted index, boolean-OR TF-IDF search
- `pipeline`: query expansion with per-term provenance
- `cli`: the `khmersearch` command

Sample data (lexicon, pronunciation dictionary, a 200-document demo
corpus) ships under `khmersearch.data`.
"""

from .script import (
    CodepointClass,
    KhmerCluster,
    classify_codepoint,
    normalize_cluster,
    normalize_text,
    segment_clusters,
)
from .speller import (
    DeleteIndex,
    LexiconEntry,
    Suggestion,
    build_index,
    damerau_levenshtein,
    load_lexicon,
    lookup,
)
from .g2p import (
    ConsonantSeries,
    NoKhmerContentError,
    PhonemeSequence,
    PronDict,
    homophones,
    load_prondict,
    series_of,
    transcribe,
)
from .phoneme_speller import PhonemeIndex, build_phoneme_index, lookup_phonemic
from .embedding import (
    EmbeddingConfig,
    EmbeddingModel,
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
from .ir import (
    Document,
    InvertedIndex,
    SearchResult,
    ingest,
    load_corpus,
    load_index,
    save_index,
    search,
    segment_words,
)
from .pipeline import (
    ExpandedQuery,
    ExpandedTerm,
    ExpansionConfig,
    Provenance,
    Resources,
    expand,
    run_experiment,
)

__version__ = "0.1.0"
