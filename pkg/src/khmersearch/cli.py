"""Command-line surface over the toolkit.

Thin delegates only: every subcommand calls one module API and formats the
result.  Results go to stdout (machine-readable with --format json); all
diagnostics and progress go to stderr.  Exit codes: 0 success, 1 usage
error, 2 data or file error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib.resources import as_file, files
from pathlib import Path

from . import embedding as emb
from . import ir
from .g2p import NoKhmerContentError, homophones, load_prondict, transcribe
from .phoneme_speller import build_phoneme_index, lookup_phonemic
from .pipeline import (
    ExpansionConfig,
    Resources,
    expand,
    query_words,
    run_experiment,
)
from .script import normalize_text
from .speller import build_index, load_lexicon, lookup

SCHEMA_VERSION = 1

logger = logging.getLogger("khmersearch")

_BOOL_KEYS = {
    "enable_spellcheck", "enable_homophones", "enable_semantic",
    "post_spellcheck_neighbors",
}
_PATH_KEYS = {"lexicon", "prondict", "vectors", "index"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are exit code 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


class DataError(Exception):
    pass


def _default_path(name: str) -> Path:
    resource = files("khmersearch.data").joinpath(name)
    with as_file(resource) as concrete:
        return Path(concrete)


def _read_config_file(path: str) -> dict[str, str]:
    settings = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise DataError(f"{path}:{lineno}: expected key=value")
                key, value = line.split("=", 1)
                settings[key.strip()] = value.strip()
    except OSError as exc:
        raise DataError(f"cannot read config file: {exc}") from exc
    return settings


def _resolve_settings(args) -> dict:
    """Config file values overridden by explicit flags, with packaged data
    as the fallback for paths."""
    settings: dict = {}
    if args.config:
        settings.update(_read_config_file(args.config))
    for key in _PATH_KEYS:
        flag = getattr(args, key, None)
        if flag:
            settings[key] = flag
    for key in _BOOL_KEYS | {"max_corrections", "max_neighbors", "min_similarity"}:
        if key in settings and isinstance(settings[key], str):
            raw = settings[key]
            if key in _BOOL_KEYS:
                settings[key] = raw.lower() in ("1", "true", "yes", "on")
            elif key == "min_similarity":
                settings[key] = float(raw)
            else:
                settings[key] = int(raw)
    for key in ("lexicon", "prondict"):
        settings.setdefault(key, str(_default_path(f"{key}.tsv")))
    for key in _PATH_KEYS:
        if key in settings and not Path(settings[key]).exists():
            raise DataError(f"{key} file not found: {settings[key]}")
    return settings


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        payload = {"schema_version": SCHEMA_VERSION, **payload}
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(text)


def _load_resources(settings: dict, need_model: bool = False) -> Resources:
    entries = load_lexicon(settings["lexicon"])
    prondict = load_prondict(settings["prondict"])
    frequencies = {e.word: e.frequency for e in entries}
    model = None
    if need_model and settings.get("vectors"):
        vectors = settings["vectors"]
        npz = Path(str(vectors) + ".npz")
        model = emb.load_model(npz) if npz.exists() else emb.load_vectors(vectors)
    return Resources(
        grapheme_index=build_index(entries),
        prondict=prondict,
        phoneme_index=build_phoneme_index(prondict, 1, frequencies),
        lexicon=set(frequencies),
        model=model,
    )


def _expansion_config(settings: dict) -> ExpansionConfig:
    kwargs = {}
    for key in _BOOL_KEYS | {"max_corrections", "max_neighbors", "min_similarity"}:
        if key in settings:
            kwargs[key] = settings[key]
    return ExpansionConfig(**kwargs)


def _read_text_arg(value: str) -> str:
    if value == "-":
        return sys.stdin.read()
    return value


def cmd_normalize(args, settings) -> int:
    out = normalize_text(_read_text_arg(args.text))
    _emit(args, {"normalized": out}, out)
    return 0


def cmd_spellcheck(args, settings) -> int:
    resources = _load_resources(settings)
    word = args.word
    rows = []
    if args.mode in ("grapheme", "both"):
        for s in lookup(resources.grapheme_index, word, top_k=args.top_k):
            rows.append({"word": s.word, "distance": s.distance,
                         "frequency": s.frequency, "mode": "grapheme"})
    if args.mode in ("phoneme", "both"):
        for s in lookup_phonemic(resources.phoneme_index, word, top_k=args.top_k):
            rows.append({"word": s.word, "distance": s.distance,
                         "frequency": s.frequency, "mode": "phoneme"})
    text = "\n".join(f"{r['word']}\t{r['distance']}\t{r['frequency']}\t{r['mode']}"
                     for r in rows)
    _emit(args, {"query": word, "suggestions": rows}, text)
    return 0


def cmd_g2p(args, settings) -> int:
    prondict = load_prondict(settings["prondict"])
    try:
        seq = transcribe(args.word, prondict)
    except (ValueError, NoKhmerContentError) as exc:
        raise DataError(str(exc)) from exc
    out = seq.serialized()
    _emit(args, {"word": args.word, "phonemes": out, "source": seq.source.value}, out)
    return 0


def cmd_homophones(args, settings) -> int:
    prondict = load_prondict(settings["prondict"])
    words = sorted(homophones(args.word, prondict))
    _emit(args, {"word": args.word, "homophones": words}, "\n".join(words))
    return 0


def cmd_train_embeddings(args, settings) -> int:
    corpus = []
    try:
        with open(args.corpus, encoding="utf-8") as fh:
            for line in fh:
                tokens = line.split()
                if tokens:
                    corpus.append(tokens)
    except OSError as exc:
        raise DataError(f"cannot read corpus: {exc}") from exc
    config = emb.EmbeddingConfig(
        dim=args.dim, epochs=args.epochs, seed=args.seed,
        min_word_count=args.min_count,
    )
    logger.info("training on %d sentences (dim=%d, epochs=%d)",
                len(corpus), args.dim, args.epochs)
    try:
        model = emb.train(corpus, config)
    except emb.EmptyVocabularyError as exc:
        raise DataError(str(exc)) from exc
    emb.save_vectors(model, args.out)
    emb.save_model(model, args.out + ".npz")
    logger.info("wrote %s and %s.npz", args.out, args.out)
    _emit(args, {"vocab_size": len(model.words), "out": args.out},
          f"trained {len(model.words)} words -> {args.out}")
    return 0


def cmd_neighbors(args, settings) -> int:
    if not settings.get("vectors"):
        raise DataError("no vectors file; pass --vectors or set vectors= in config")
    vectors = settings["vectors"]
    npz = Path(str(vectors) + ".npz")
    model = emb.load_model(npz) if npz.exists() else emb.load_vectors(vectors)
    try:
        pairs = emb.nearest_neighbors(model, args.word, k=args.k)
    except (emb.OutOfVocabularyError, emb.NoSubwordsError) as exc:
        raise DataError(f"cannot embed {args.word!r}: {exc}") from exc
    rows = [{"word": w, "similarity": round(s, 6)} for w, s in pairs]
    text = "\n".join(f"{r['word']}\t{r['similarity']:.4f}" for r in rows)
    _emit(args, {"word": args.word, "neighbors": rows}, text)
    return 0


def cmd_index_build(args, settings) -> int:
    entries = load_lexicon(settings["lexicon"])
    index = ir.InvertedIndex((e.word for e in entries),
                             normalize=not args.no_normalize)
    try:
        docs = ir.load_corpus(args.corpus)
    except (OSError, ir.IndexFormatError) as exc:
        raise DataError(str(exc)) from exc
    for n, doc in enumerate(docs, start=1):
        ir.ingest(index, doc)
        if n % 50 == 0:
            logger.info("indexed %d/%d documents", n, len(docs))
    ir.save_index(index, args.out)
    _emit(args, {"documents": index.doc_count, "terms": len(index.postings),
                 "out": args.out},
          f"indexed {index.doc_count} documents, {len(index.postings)} terms -> {args.out}")
    return 0


def _load_search_index(settings) -> ir.InvertedIndex:
    if not settings.get("index"):
        raise DataError("no index file; pass --index or set index= in config")
    try:
        return ir.load_index(settings["index"])
    except ir.IndexFormatError as exc:
        raise DataError(str(exc)) from exc


def cmd_search(args, settings) -> int:
    index = _load_search_index(settings)
    resources = _load_resources(settings, need_model=bool(settings.get("vectors")))
    if args.expand:
        config = _expansion_config(settings)
        expanded = expand(args.query, resources, config)
        terms = expanded.term_strings()
        term_info = [{"term": t.term, "provenance": t.provenance.value,
                      "score": t.score} for t in expanded.terms]
    else:
        terms = query_words(args.query, resources.lexicon)
        term_info = [{"term": t, "provenance": "normalized", "score": None}
                     for t in terms]
    result = ir.search(index, terms)
    ranked = [{"doc_id": d, "score": round(s, 6)} for d, s in result.ranked[: args.top_k]]
    text_lines = [f"hits: {result.hits}", "terms: " + " OR ".join(terms)]
    text_lines += [f"{r['doc_id']}\t{r['score']:.4f}" for r in ranked]
    _emit(args, {"query": args.query, "hits": result.hits, "terms": term_info,
                 "ranked": ranked}, "\n".join(text_lines))
    return 0


def cmd_experiment(args, settings) -> int:
    index = _load_search_index(settings)
    resources = _load_resources(settings, need_model=bool(settings.get("vectors")))
    try:
        with open(args.queries, encoding="utf-8") as fh:
            queries = [q.strip() for q in fh if q.strip() and not q.startswith("#")]
    except OSError as exc:
        raise DataError(f"cannot read queries: {exc}") from exc
    base = _expansion_config(settings)
    ladder = [
        ("normalized", ExpansionConfig(enable_spellcheck=False, enable_homophones=False,
                                       enable_semantic=False)),
        ("spellcheck", ExpansionConfig(enable_spellcheck=True, enable_homophones=False,
                                       enable_semantic=False,
                                       max_corrections=base.max_corrections)),
        ("homophones", ExpansionConfig(enable_spellcheck=True, enable_homophones=True,
                                       enable_semantic=False,
                                       max_corrections=base.max_corrections)),
    ]
    if resources.model is not None:
        ladder.append(
            ("semantic", ExpansionConfig(
                enable_spellcheck=True, enable_homophones=True, enable_semantic=True,
                max_corrections=base.max_corrections, max_neighbors=base.max_neighbors,
                min_similarity=base.min_similarity,
                post_spellcheck_neighbors=base.post_spellcheck_neighbors))
        )
    report = run_experiment(index, resources, queries, ladder)
    if args.format == "json":
        print(report.to_jsonl())
    else:
        print(report.to_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="khmersearch",
                     description="Khmer-aware word search toolkit")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--config", help="key=value settings file")
    parser.add_argument("--lexicon", help="word frequency TSV")
    parser.add_argument("--prondict", help="pronunciation TSV")
    parser.add_argument("--vectors", help="embedding vectors file")
    parser.add_argument("--index", help="search index file")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="canonicalize character order")
    p.add_argument("text", help="text to normalize, or - for stdin")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("spellcheck", help="suggest corrections")
    p.add_argument("word")
    p.add_argument("--mode", choices=("grapheme", "phoneme", "both"), default="both")
    p.add_argument("--top-k", type=int, default=10)
    p.set_defaults(func=cmd_spellcheck)

    p = sub.add_parser("g2p", help="word to phonemes")
    p.add_argument("word")
    p.set_defaults(func=cmd_g2p)

    p = sub.add_parser("homophones", help="alternative spellings")
    p.add_argument("word")
    p.set_defaults(func=cmd_homophones)

    p = sub.add_parser("train-embeddings", help="train subword embeddings")
    p.add_argument("corpus", help="one pre-segmented sentence per line")
    p.add_argument("--out", required=True)
    p.add_argument("--dim", type=int, default=64)
    p.add_argument("--epochs", type=int, default=20)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--min-count", type=int, default=3)
    p.set_defaults(func=cmd_train_embeddings)

    p = sub.add_parser("neighbors", help="nearest words by cosine")
    p.add_argument("word")
    p.add_argument("-k", type=int, default=10)
    p.set_defaults(func=cmd_neighbors)

    p = sub.add_parser("index", help="index operations")
    indexsub = p.add_subparsers(dest="index_command", required=True)
    pb = indexsub.add_parser("build", help="build index from JSON-lines corpus")
    pb.add_argument("corpus")
    pb.add_argument("--out", required=True)
    pb.add_argument("--no-normalize", action="store_true")
    pb.set_defaults(func=cmd_index_build)

    p = sub.add_parser("search", help="boolean-OR TF-IDF search")
    p.add_argument("query")
    p.add_argument("--expand", action="store_true")
    p.add_argument("--top-k", type=int, default=10)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("experiment", help="hit counts across expansion configs")
    p.add_argument("queries", help="file with one query per line")
    p.set_defaults(func=cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        settings = _resolve_settings(args)
        return args.func(args, settings)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
