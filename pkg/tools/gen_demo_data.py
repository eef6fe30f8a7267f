#!/usr/bin/env python3
"""Regenerate the packaged demo data from the curated word list below.

Writes into src/khmersearch/data/:
  lexicon.tsv    word <TAB> frequency
  prondict.tsv   word <TAB> phonemes (rule output, a few curated overrides)
  corpus.jsonl   200 themed documents, some with variant spellings
  sentences.txt  the same material pre-segmented for embedding training
  queries.txt    demo queries for the experiment command

Deterministic: same inputs, same bytes out.  Run from the repo root:
  python3 tools/gen_demo_data.py
"""

import json
import random
import sys
from pathlib import Path

from khmersearch.g2p import PronDict, transcribe
from khmersearch.script import normalize_text
from khmersearch.speller import damerau_levenshtein

DATA = Path(__file__).resolve().parent.parent / "src" / "khmersearch" / "data"

# (word, corpus-plausible frequency); the music pair reuses published
# per-spelling hit counts as weights
LEXICON: list[tuple[str, int]] = [
    # function words
    ("នៅ", 300), ("មាន", 280), ("បាន", 270), ("ជា", 260), ("និង", 250),
    ("ការ", 240), ("មួយ", 230), ("ដែល", 220), ("ក្នុង", 210), ("ទៅ", 190),
    ("អ្នក", 190), ("ពី", 180), ("នេះ", 170), ("គឺ", 160), ("ធ្វើ", 150),
    ("ខ្ញុំ", 140), ("ពេល", 140), ("នោះ", 130), ("ល្អ", 125), ("ថ្ងៃ", 120),
    ("គេ", 120), ("យើង", 115), ("ច្រើន", 110), ("ឆ្នាំ", 110), ("ថ្មី", 100),
    ("ធំ", 95), ("ពីរ", 90), ("ដើម្បី", 85), ("តូច", 80), ("ផង", 70),
    # people
    ("ស្ត្រី", 252), ("មនុស្ស", 180), ("បុរស", 140), ("គ្រួសារ", 88),
    ("ប្រជាជន", 75), ("កុមារ", 65),
    # school
    ("រៀន", 200), ("សាលា", 150), ("សិស្ស", 130), ("គ្រូ", 95),
    ("សាលារៀន", 80), ("គិត", 80), ("ដឹង", 75), ("អាន", 75), ("សៀវភៅ", 70),
    ("ចេះ", 65), ("សរសេរ", 60), ("មេរៀន", 55), ("ចាំ", 45), ("ភ្លេច", 30),
    # music
    ("ចម្រៀង", 231), ("បទ", 120), ("ច្រៀង", 95), ("តន្ត្រី", 85),
    ("ស្តាប់", 70), ("ភ្លេង", 60), ("សិល្បៈ", 40), ("ចំរៀង", 14),
    # clothing
    ("អាវ", 110), ("ខោ", 90), ("ស្អាត", 85), ("ខោអាវ", 75),
    ("សំលៀកបំពាក់", 59), ("សម្លៀកបំពាក់", 58), ("ពាក់", 55),
    ("ស្បែកជើង", 45), ("ស្លៀក", 35), ("រ៉ូប", 30), ("ម៉ូត", 25),
    ("ការស្លៀកពាក់", 20),
    # contest
    ("ក្រុម", 105), ("ប្រកួត", 92), ("កីឡា", 88), ("ឈ្នះ", 85),
    ("បាល់", 70), ("ជ័យជំនះ", 48), ("ចាញ់", 45), ("ជ័យជម្នះ", 36),
    # travel
    ("ផ្លូវ", 160), ("រថយន្ត", 120), ("ឡាន", 95), ("ទីក្រុង", 95),
    ("ភូមិ", 85), ("ម៉ូតូ", 80), ("ឆ្ងាយ", 65), ("ជិត", 55),
    ("ដំណើរ", 50), ("ចម្ងាយ", 42),
    # food
    ("ទឹក", 130), ("បាយ", 110), ("ត្រី", 95), ("ម្ហូប", 85), ("សាច់", 70),
    ("ហូប", 60), ("បន្លែ", 55), ("ផ្លែឈើ", 48), ("ឆ្ងាញ់", 40),
    # farming
    ("ស្រូវ", 60), ("កសិករ", 45), ("ចម្ការ", 40), ("ដំណាំ", 38),
    ("ដាំ", 35), ("ចំការ", 12),
    # leisure
    ("ដើរ", 95), ("លេង", 85), ("សួន", 42), ("ព្រឹក", 40),
    ("កម្សាន្ត", 38), ("ល្ងាច", 35), ("កំសាន្ត", 15),
    # trade
    ("សេដ្ឋកិច្ច", 145), ("លុយ", 90), ("ទីផ្សារ", 85), ("តម្លៃ", 77),
    ("ថ្លៃ", 66), ("ពាណិជ្ជកម្ម", 55), ("ថោក", 25),
    # friends and home
    ("ផ្ទះ", 135), ("មិត្ត", 95), ("មិត្តភក្តិ", 60), ("ជួយ", 50),
    ("បន្ទប់", 52), ("រស់នៅ", 44), ("សម្លាញ់", 18), ("សំឡាញ់", 6),
    # change, pests, misc
    ("ផ្លាស់", 33), ("បម្លែង", 22), ("បំលែង", 8),
    ("កម្ចាត់", 28), ("សត្វ", 75), ("កំចាត់", 9),
    ("ឱកាស", 33), ("ឮ", 12),
]

# pronunciations fixed by published sources or by pair identity, instead of
# the rule engine's approximation
PRON_OVERRIDES = {
    "ជ័យជំនះ": "c e j . c u m . n e a h",
    "ជ័យជម្នះ": "c e j . c u m . n e a h",
    "សម្លាញ់": "s o m . l a ɲ",
    "សំឡាញ់": "s o m . l a ɲ",
}

# spelling-variant pairs that must share one pronunciation
VARIANT_PAIRS = [
    ("ចម្រៀង", "ចំរៀង"),
    ("សម្លៀកបំពាក់", "សំលៀកបំពាក់"),
    ("ជ័យជំនះ", "ជ័យជម្នះ"),
    ("ចម្ការ", "ចំការ"),
    ("កម្សាន្ត", "កំសាន្ត"),
    ("បម្លែង", "បំលែង"),
    ("កម្ចាត់", "កំចាត់"),
    ("សម្លាញ់", "សំឡាញ់"),
]

# misspelled query that no grapheme edit within 2 can reach, but whose
# pronunciation sits one phoneme from a dictionary word
FAR_MISSPELLING = "ចាំងៀយ"
FAR_TARGET = "ចម្ងាយ"

FUNCTION_WORDS = [
    "នៅ", "មាន", "បាន", "ជា", "និង", "ការ", "ដែល", "ក្នុង", "ទៅ", "ពី",
    "នេះ", "ធ្វើ", "ខ្ញុំ", "នោះ", "គេ", "ច្រើន", "ល្អ", "មួយ", "ពីរ", "គឺ",
    "ផង", "ដើម្បី", "ពេល", "ថ្ងៃ", "ឆ្នាំ", "អ្នក", "យើង", "ថ្មី",
]

THEMES: dict[str, list[str]] = {
    "women": ["ស្ត្រី", "បុរស", "មនុស្ស", "កុមារ", "ប្រជាជន", "គ្រួសារ", "ទីក្រុង", "ភូមិ"],
    "school": ["សាលា", "សាលារៀន", "រៀន", "សិស្ស", "គ្រូ", "មេរៀន", "សៀវភៅ",
               "សរសេរ", "អាន", "ចេះ", "ដឹង", "គិត"],
    "music": ["ចម្រៀង", "ច្រៀង", "តន្ត្រី", "ភ្លេង", "បទ", "សិល្បៈ", "ស្តាប់"],
    "clothing": ["សម្លៀកបំពាក់", "ខោអាវ", "ស្បែកជើង", "រ៉ូប", "អាវ", "ខោ", "ម៉ូត",
                 "ការស្លៀកពាក់", "ស្លៀក", "ពាក់", "ស្អាត", "ទីផ្សារ"],
    "contest": ["ជ័យជំនះ", "ឈ្នះ", "ចាញ់", "ប្រកួត", "កីឡា", "ក្រុម", "បាល់", "លេង"],
    "travel": ["ឡាន", "រថយន្ត", "ម៉ូតូ", "ផ្លូវ", "ដំណើរ", "ចម្ងាយ", "ឆ្ងាយ", "ជិត",
               "ទីក្រុង", "ភូមិ"],
    "food": ["បាយ", "ម្ហូប", "ត្រី", "សាច់", "បន្លែ", "ផ្លែឈើ", "ទឹក", "ហូប", "ឆ្ងាញ់"],
    "farm": ["ចម្ការ", "ដាំ", "ស្រូវ", "កសិករ", "ដំណាំ", "ភូមិ"],
    "leisure": ["កម្សាន្ត", "លេង", "ដើរ", "សួន", "ព្រឹក", "ល្ងាច"],
    "market": ["សេដ្ឋកិច្ច", "ពាណិជ្ជកម្ម", "ទីផ្សារ", "លុយ", "តម្លៃ", "ថោក", "ថ្លៃ"],
    "friends": ["សម្លាញ់", "មិត្ត", "មិត្តភក្តិ", "ជួយ", "លេង"],
    "home": ["ផ្ទះ", "បន្ទប់", "រស់នៅ", "គ្រួសារ", "ធំ", "តូច"],
    "change": ["បម្លែង", "ផ្លាស់", "ថ្មី", "ឱកាស"],
    "pests": ["កម្ចាត់", "សត្វ", "ដំណាំ", "ចម្ការ", "កសិករ"],
}

# within a theme, docs sometimes use the variant spelling instead (or, a few
# times, both in one document — needed to show OR-hits < sum of hits)
VARIANT_SWAP = {
    "music": ("ចម្រៀង", "ចំរៀង"),
    "clothing": ("សម្លៀកបំពាក់", "សំលៀកបំពាក់"),
    "contest": ("ជ័យជំនះ", "ជ័យជម្នះ"),
    "farm": ("ចម្ការ", "ចំការ"),
    "leisure": ("កម្សាន្ត", "កំសាន្ត"),
    "change": ("បម្លែង", "បំលែង"),
    "pests": ("កម្ចាត់", "កំចាត់"),
    "friends": ("សម្លាញ់", "សំឡាញ់"),
}

# alternate typed orders of the trailing units of ស្ត្រី
STREY_CANONICAL = "ស" + "្ត" + "្រ" + "ី"
STREY_VARIANTS = [
    "ស" + "្រ" + "្ត" + "ី",
    "ស" + "្ត" + "ី" + "្រ",
]

QUERIES = [
    "ចម្រៀង", "ចំរៀង", "សម្លៀកបំពាក់", "ជ័យជំនះ", "ចម្ការ", "កម្សាន្ត",
    "បម្លែង", "សម្លាញ់", "កម្ចាត់", "ឡាន", "សាលា", "ខោអាវ", "ត្រី",
    "ស្ត្រី", "ផ្លូវ", "បាយ", "សិស្ស", "កីឡា", "លុយ", "ផ្ទះ",
]


def build_prondict_lines() -> list[str]:
    empty = PronDict.empty()
    lines = []
    prons = {}
    for word, _freq in LEXICON:
        norm = normalize_text(word)
        pron = PRON_OVERRIDES.get(word) or transcribe(norm, empty).serialized()
        prons[norm] = pron
        lines.append(f"{norm}\t{pron}")
    for a, b in VARIANT_PAIRS:
        pa, pb = prons[normalize_text(a)], prons[normalize_text(b)]
        if pa != pb:
            sys.exit(f"variant pair {a}/{b} disagrees: {pa!r} vs {pb!r}")
    return lines


def check_far_misspelling() -> None:
    for word, _ in LEXICON:
        d = damerau_levenshtein(normalize_text(FAR_MISSPELLING), normalize_text(word))
        if d <= 2:
            sys.exit(f"{FAR_MISSPELLING} is within grapheme distance {d} of {word}")


def make_sentence(rng: random.Random, theme: str, force: list[str] | None = None) -> list[str]:
    pool = THEMES[theme]
    k = rng.randint(3, min(5, len(pool)))
    topical = rng.sample(pool, k)
    if force:
        topical = force + [w for w in topical if w not in force]
    filler = rng.sample(FUNCTION_WORDS, rng.randint(2, 3))
    tokens = topical[:]
    for i, w in enumerate(filler):
        tokens.insert(rng.randint(0, len(tokens)), w)
    return tokens


def generate(seed: int = 42):
    rng = random.Random(seed)
    themes = list(THEMES)
    docs = []
    sentences = []
    doc_no = 0
    while doc_no < 200:
        theme = themes[doc_no % len(themes)]
        slot = doc_no // len(themes)
        doc_sentences = []
        for _ in range(rng.randint(1, 3)):
            doc_sentences.append(make_sentence(rng, theme))
        if theme in VARIANT_SWAP:
            official, variant = VARIANT_SWAP[theme]
            if slot % 5 == 1:  # variant-only document
                doc_sentences = [[variant if t == official else t for t in s]
                                 for s in doc_sentences]
                if not any(variant in s for s in doc_sentences):
                    doc_sentences[0] = [variant] + doc_sentences[0]
            elif slot % 5 == 2:  # both spellings in one document
                doc_sentences[0] = [official, variant] + doc_sentences[0]
            elif not any(official in s for s in doc_sentences):
                doc_sentences[0] = [official] + doc_sentences[0]
        text_sentences = []
        for s in doc_sentences:
            rendered = list(s)
            if theme == "women":
                # a slice of real-world typing: ស្ត្រី in assorted scalar orders
                for i, t in enumerate(rendered):
                    if t == STREY_CANONICAL:
                        if slot % 5 == 3:
                            rendered[i] = STREY_VARIANTS[0]
                        elif slot % 5 == 4:
                            rendered[i] = STREY_VARIANTS[1]
            text_sentences.append("".join(rendered) + "។")
            sentences.append(" ".join(s))
        docs.append({"id": f"doc-{doc_no:04d}", "text": " ".join(text_sentences)})
        doc_no += 1
    return docs, sentences


def main() -> None:
    check_far_misspelling()
    DATA.mkdir(parents=True, exist_ok=True)

    lex_lines = ["# word<TAB>frequency"]
    lex_lines += [f"{normalize_text(w)}\t{f}" for w, f in LEXICON]
    (DATA / "lexicon.tsv").write_text("\n".join(lex_lines) + "\n", encoding="utf-8")

    pron_lines = ["# word<TAB>phonemes ('.' separates syllables)"]
    pron_lines += build_prondict_lines()
    (DATA / "prondict.tsv").write_text("\n".join(pron_lines) + "\n", encoding="utf-8")

    docs, sentences = generate()
    with open(DATA / "corpus.jsonl", "w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(json.dumps(doc, ensure_ascii=False) + "\n")
    (DATA / "sentences.txt").write_text("\n".join(sentences) + "\n", encoding="utf-8")
    (DATA / "queries.txt").write_text("\n".join(QUERIES) + "\n", encoding="utf-8")
    print(f"wrote {len(LEXICON)} lexicon entries, {len(docs)} docs, "
          f"{len(sentences)} sentences to {DATA}")


if __name__ == "__main__":
    main()
