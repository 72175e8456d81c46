"""Command-line pipeline: ingest, clean, tokenize, normalize, stats, train, query.

Stage commands share a work directory (``--workdir``, the
``EPIC_EMBED_WORKDIR`` environment variable, or ``./epic_embed_work``). Each
stage records a content hash of its inputs and settings in
``pipeline_state.json`` and is skipped as "cached" when nothing changed.

Exit codes are stable: 0 success, 2 input or I/O problem, 3 failed query
(unknown word), 4 configuration problem.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .corpus import (
    build_vocabulary,
    cooccurrence_pairs,
    is_punctuation,
    length_distribution,
    read_vocabulary,
    top_frequencies,
    write_histogram_csv,
    write_vocabulary,
)
from .embed import TrainConfig, export_text_vectors, load_model, save_model, train
from .errors import EpicEmbedError, UnknownWord
from .ingest import load_sections
from .normalize import LemmaLexicon, load_stopwords, normalize_corpus
from .resources import data_path
from .similarity import get_vector, most_similar
from .textprep import (
    CleanCorpus,
    clean_text,
    load_abbreviations,
    read_token_corpus,
    sentence_lengths,
    split_sentences,
    tokenize_corpus,
    write_token_corpus,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_QUERY = 3
EXIT_CONFIG = 4

WORKDIR_ENV = "EPIC_EMBED_WORKDIR"

_DEFAULTS: dict[str, object] = {
    "apostrophe": "delete",
    "strict_clean": False,
    "mode": "lemma",
    "stopwords": None,
    "lemma_exceptions": None,
    "abbreviations": None,
    "min_count": 5,
    "punct_policy": "drop_all",
    "bin_width": 10,
    "top_k": 20,
    "stats_source": "tokens",
    "train_mode": "skipgram",
    "objective": "negative_sampling",
    "window": 5,
    "negatives": 5,
    "epochs": 5,
    "dim": 100,
    "lr_start": 0.025,
    "lr_end": 0.0001,
    "seed": 1,
    "subsample": 0.0,
    "threads": 1,
    "text_export": False,
    "paper_compat": False,
    "neighbors": 5,
    "json": False,
    "force": False,
    "model": None,
}

# Settings the figure-compatibility switch relaxes (defaults layer only;
# explicit flags and config-file entries still win).
_PAPER_COMPAT_DEFAULTS = {
    "min_count": 1,
    "punct_policy": "paper_compat",
    "strict_clean": False,
}

_BOOL_KEYS = {"strict_clean", "text_export", "paper_compat", "json", "force"}
_INT_KEYS = {
    "min_count", "bin_width", "top_k", "window", "negatives",
    "epochs", "dim", "seed", "threads", "neighbors",
}
_FLOAT_KEYS = {"lr_start", "lr_end", "subsample"}
_CHOICES = {
    "apostrophe": ("delete", "space"),
    "mode": ("stem", "lemma", "none"),
    "punct_policy": ("drop_all", "paper_compat", "keep_all"),
    "stats_source": ("tokens", "normalized"),
    "train_mode": ("skipgram", "cbow"),
    "objective": ("softmax", "negative_sampling"),
}


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with the config status code."""

    def error(self, message: str) -> None:  # noqa: D102 - argparse contract
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


class SettingsError(ValueError):
    """An invalid setting, whether from a flag or a config file."""


def _convert(key: str, raw: str) -> object:
    if key in _BOOL_KEYS:
        lowered = raw.lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise SettingsError(f"{key}: expected a boolean, got {raw!r}")
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
    except ValueError:
        raise SettingsError(f"{key}: expected a number, got {raw!r}") from None
    if key in _CHOICES:
        value = raw.replace("-", "_")
        if value not in _CHOICES[key]:
            raise SettingsError(f"{key}: must be one of {_CHOICES[key]}, got {raw!r}")
        return value
    return raw


def _read_config_file(path: str) -> dict[str, object]:
    """Parse a key=value file; every flag has a matching key."""
    values: dict[str, object] = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise SettingsError(f"cannot read config file: {exc}") from None
    for number, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise SettingsError(f"{path}:{number}: expected key=value")
        key, _, raw = stripped.partition("=")
        key = key.strip().replace("-", "_")
        if key != "workdir" and key != "input" and key not in _DEFAULTS:
            raise SettingsError(f"{path}:{number}: unknown setting {key!r}")
        values[key] = _convert(key, raw.strip()) if key in _DEFAULTS else raw.strip()
    return values


@dataclass(frozen=True)
class Settings:
    """Flag values merged over config-file values merged over defaults."""

    values: dict[str, object]
    workdir: Path

    def __getattr__(self, key: str) -> object:
        try:
            return self.values[key]
        except KeyError:
            raise AttributeError(key) from None


def _resolve_settings(args: argparse.Namespace) -> Settings:
    file_values = _read_config_file(args.config) if getattr(args, "config", None) else {}
    defaults = dict(_DEFAULTS)
    paper_compat = getattr(args, "paper_compat", None)
    if paper_compat is None:
        paper_compat = file_values.get("paper_compat", defaults["paper_compat"])
    if paper_compat:
        defaults.update(_PAPER_COMPAT_DEFAULTS)
    values: dict[str, object] = {"paper_compat": paper_compat}
    for key, fallback in defaults.items():
        if key == "paper_compat":
            continue
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
        elif key in file_values:
            values[key] = file_values[key]
        else:
            values[key] = fallback
    workdir = (
        getattr(args, "workdir", None)
        or file_values.get("workdir")
        or os.environ.get(WORKDIR_ENV)
        or "./epic_embed_work"
    )
    return Settings(values=values, workdir=Path(workdir))


_POSITIVE_KEYS = (
    "min_count", "bin_width", "top_k", "window", "epochs",
    "dim", "threads", "neighbors",
)


def _validate_settings(cfg: Settings, *, train: bool = False) -> None:
    """Reject out-of-range values before any stage touches the filesystem."""
    for key in _POSITIVE_KEYS:
        if int(cfg.values[key]) < 1:
            raise SettingsError(f"{key} must be at least 1, not {cfg.values[key]}")
    if train:
        try:
            _train_config(cfg)
        except ValueError as exc:
            raise SettingsError(str(exc)) from None


@dataclass(frozen=True)
class Workspace:
    """File layout inside the work directory."""

    root: Path

    @property
    def sections_dir(self) -> Path:
        return self.root / "sections"

    @property
    def manifest(self) -> Path:
        return self.root / "manifest.json"

    @property
    def clean(self) -> Path:
        return self.root / "clean.txt"

    @property
    def tokens(self) -> Path:
        return self.root / "tokens.txt"

    @property
    def normalized(self) -> Path:
        return self.root / "normalized.txt"

    @property
    def vocab(self) -> Path:
        return self.root / "vocab.tsv"

    @property
    def histogram(self) -> Path:
        return self.root / "histogram.csv"

    @property
    def top_words(self) -> Path:
        return self.root / "top_words.tsv"

    @property
    def top_pairs(self) -> Path:
        return self.root / "top_pairs.tsv"

    @property
    def stats(self) -> Path:
        return self.root / "stats.txt"

    @property
    def model(self) -> Path:
        return self.root / "model.w2vm"

    @property
    def vectors(self) -> Path:
        return self.root / "vectors.txt"

    @property
    def state(self) -> Path:
        return self.root / "pipeline_state.json"


def _file_digest(path: Path) -> bytes:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.digest()


def _load_state(ws: Workspace) -> dict[str, str]:
    if ws.state.exists():
        try:
            return json.loads(ws.state.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            return {}
    return {}


def _run_stage(
    ws: Workspace,
    name: str,
    knobs: dict[str, object],
    inputs: list[Path],
    outputs: list[Path],
    force: bool,
    body,
) -> None:
    """Run one pipeline stage unless its inputs and settings are unchanged."""
    for path in inputs:
        if not path.exists():
            raise FileNotFoundError(
                f"{path} does not exist (run the earlier pipeline stages first)"
            )
    digest = hashlib.sha256()
    digest.update(json.dumps(knobs, sort_keys=True, default=str).encode())
    for path in inputs:
        digest.update(b"\0")
        digest.update(_file_digest(path))
    key = digest.hexdigest()
    state = _load_state(ws)
    if not force and state.get(name) == key and all(p.exists() for p in outputs):
        print(f"[cached] {name}")
        return
    summary = body()
    state[name] = key
    ws.root.mkdir(parents=True, exist_ok=True)
    ws.state.write_text(json.dumps(state, indent=2, sort_keys=True), encoding="utf-8")
    print(f"[done] {name}" + (f" — {summary}" if summary else ""))


# ---------------------------------------------------------------------------
# stage bodies


def _stage_ingest(ws: Workspace, cfg: Settings, input_path: Path) -> None:
    if not input_path.exists():
        raise FileNotFoundError(f"input file does not exist: {input_path}")

    def body() -> str:
        sections = load_sections(input_path)
        ws.sections_dir.mkdir(parents=True, exist_ok=True)
        for stale in ws.sections_dir.glob("section_*.txt"):
            stale.unlink()
        entries = []
        for index, section in enumerate(sections):
            name = f"section_{index:04d}.txt"
            (ws.sections_dir / name).write_text(section.text, encoding="utf-8")
            entries.append(
                {
                    "index": index,
                    "source_path": section.source_path,
                    "file": f"sections/{name}",
                    "chars": len(section.text),
                }
            )
        manifest = {"input": str(input_path), "sections": entries}
        ws.manifest.write_text(json.dumps(manifest, indent=2), encoding="utf-8")
        return f"{len(sections)} sections"

    ws.root.mkdir(parents=True, exist_ok=True)
    _run_stage(
        ws,
        "ingest",
        {"input_name": input_path.name},
        [input_path],
        [ws.manifest],
        bool(cfg.force),
        body,
    )


def _section_files(ws: Workspace) -> list[Path]:
    manifest = json.loads(ws.manifest.read_text(encoding="utf-8"))
    return [ws.root / entry["file"] for entry in manifest["sections"]]


def _stage_clean(ws: Workspace, cfg: Settings) -> None:
    def body() -> str:
        texts = [path.read_text(encoding="utf-8") for path in _section_files(ws)]
        cleaned = clean_text(
            texts, apostrophe=str(cfg.apostrophe), strict_clean=bool(cfg.strict_clean)
        )
        ws.clean.write_text(cleaned.text + "\n", encoding="utf-8")
        return f"{len(cleaned.text)} characters"

    inputs = [ws.manifest, *(_section_files(ws) if ws.manifest.exists() else [])]
    _run_stage(
        ws,
        "clean",
        {"apostrophe": cfg.apostrophe, "strict_clean": cfg.strict_clean},
        inputs,
        [ws.clean],
        bool(cfg.force),
        body,
    )


def _abbreviation_file(cfg: Settings) -> Path:
    return Path(str(cfg.abbreviations)) if cfg.abbreviations else data_path("abbreviations.txt")


def _stopword_file(cfg: Settings) -> Path:
    return Path(str(cfg.stopwords)) if cfg.stopwords else data_path("stopwords.txt")


def _lemma_file(cfg: Settings) -> Path:
    return (
        Path(str(cfg.lemma_exceptions))
        if cfg.lemma_exceptions
        else data_path("lemma_exceptions.tsv")
    )


def _stage_tokenize(ws: Workspace, cfg: Settings) -> None:
    abbrev_path = _abbreviation_file(cfg)

    def body() -> str:
        text = ws.clean.read_text(encoding="utf-8").rstrip("\n")
        sentences = split_sentences(CleanCorpus(text), load_abbreviations(abbrev_path))
        corpus = tokenize_corpus(sentences)
        write_token_corpus(corpus, ws.tokens)
        return f"{len(corpus)} sentences"

    _run_stage(
        ws, "tokenize", {}, [ws.clean, abbrev_path], [ws.tokens], bool(cfg.force), body
    )


def _stage_normalize(ws: Workspace, cfg: Settings) -> None:
    stop_path = _stopword_file(cfg)
    lemma_path = _lemma_file(cfg)

    def body() -> str:
        corpus = read_token_corpus(ws.tokens)
        stops = load_stopwords(stop_path)
        lexicon = LemmaLexicon.load(lemma_path) if cfg.mode == "lemma" else None
        normalized = normalize_corpus(corpus, str(cfg.mode), stops, lexicon)
        write_token_corpus(normalized, ws.normalized)
        return f"{len(normalized)} sentences, mode={cfg.mode}"

    _run_stage(
        ws,
        "normalize",
        {"mode": cfg.mode},
        [ws.tokens, stop_path, lemma_path],
        [ws.normalized],
        bool(cfg.force),
        body,
    )


def _stage_vocab(ws: Workspace, cfg: Settings) -> None:
    def body() -> str:
        corpus = read_token_corpus(ws.normalized)
        vocab = build_vocabulary(
            corpus, min_count=int(cfg.min_count), punct_policy=str(cfg.punct_policy)
        )
        write_vocabulary(vocab, ws.vocab)
        return f"{len(vocab)} words"

    _run_stage(
        ws,
        "vocab",
        {"min_count": cfg.min_count, "punct_policy": cfg.punct_policy},
        [ws.normalized],
        [ws.vocab],
        bool(cfg.force),
        body,
    )


def _stage_stats(ws: Workspace, cfg: Settings) -> None:
    source = ws.tokens if cfg.stats_source == "tokens" else ws.normalized

    def body() -> str:
        corpus = read_token_corpus(source)
        lengths = sentence_lengths(corpus)
        dist = length_distribution(lengths, bin_width=int(cfg.bin_width))
        write_histogram_csv(dist, ws.histogram)
        words_only = [
            [token for token in sentence if not is_punctuation(token)]
            for sentence in corpus
        ]
        k = int(cfg.top_k)
        with open(ws.top_words, "w", encoding="utf-8") as handle:
            for word, count in top_frequencies(words_only, k):
                handle.write(f"{word}\t{count}\n")
        with open(ws.top_pairs, "w", encoding="utf-8") as handle:
            for (first, second), count in cooccurrence_pairs(words_only, k):
                handle.write(f"{first}\t{second}\t{count}\n")
        token_total = sum(lengths)
        lines = [
            f"sentences: {len(corpus)}",
            f"tokens: {token_total}",
            f"mean_length: {dist.mean:.4f}",
            f"median_length: {dist.median}",
            f"max_length: {dist.max}",
            f"argmax_sentence: {dist.argmax_sentence}",
            f"skewness: {dist.skewness:.4f}",
        ]
        ws.stats.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return f"{len(corpus)} sentences, {token_total} tokens"

    _run_stage(
        ws,
        "stats",
        {"bin_width": cfg.bin_width, "top_k": cfg.top_k, "source": cfg.stats_source},
        [source],
        [ws.histogram, ws.top_words, ws.top_pairs, ws.stats],
        bool(cfg.force),
        body,
    )


def _train_config(cfg: Settings) -> TrainConfig:
    return TrainConfig(
        mode=str(cfg.train_mode),
        objective=str(cfg.objective),
        window=int(cfg.window),
        negatives=int(cfg.negatives),
        epochs=int(cfg.epochs),
        lr_start=float(cfg.lr_start),
        lr_end=float(cfg.lr_end),
        seed=int(cfg.seed),
        dim=int(cfg.dim),
        subsample=float(cfg.subsample),
    )


def _stage_train(ws: Workspace, cfg: Settings) -> None:
    config = _train_config(cfg)

    def body() -> str:
        corpus = read_token_corpus(ws.normalized)
        vocab = read_vocabulary(ws.vocab)
        model = train(corpus, vocab, config, threads=int(cfg.threads))
        save_model(model, ws.model)
        if cfg.text_export:
            export_text_vectors(model, ws.vectors)
        return f"{model.vocab_size} x {model.dim} vectors"

    outputs = [ws.model]
    if cfg.text_export:
        outputs.append(ws.vectors)
    knobs = {
        "config": config.__dict__,
        "threads": cfg.threads,
        "text_export": cfg.text_export,
    }
    _run_stage(
        ws, "train", knobs, [ws.normalized, ws.vocab], outputs, bool(cfg.force), body
    )


# ---------------------------------------------------------------------------
# commands


def _workspace(cfg: Settings) -> Workspace:
    ws = Workspace(root=cfg.workdir)
    ws.root.mkdir(parents=True, exist_ok=True)
    return ws


def cmd_ingest(args: argparse.Namespace) -> int:
    cfg = _resolve_settings(args)
    _validate_settings(cfg)
    _stage_ingest(_workspace(cfg), cfg, Path(args.input))
    return EXIT_OK


def cmd_clean(args: argparse.Namespace) -> int:
    cfg = _resolve_settings(args)
    _validate_settings(cfg)
    _stage_clean(_workspace(cfg), cfg)
    return EXIT_OK


def cmd_tokenize(args: argparse.Namespace) -> int:
    cfg = _resolve_settings(args)
    _validate_settings(cfg)
    _stage_tokenize(_workspace(cfg), cfg)
    return EXIT_OK


def cmd_normalize(args: argparse.Namespace) -> int:
    cfg = _resolve_settings(args)
    _validate_settings(cfg)
    _stage_normalize(_workspace(cfg), cfg)
    return EXIT_OK


def cmd_vocab(args: argparse.Namespace) -> int:
    cfg = _resolve_settings(args)
    _validate_settings(cfg)
    _stage_vocab(_workspace(cfg), cfg)
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    cfg = _resolve_settings(args)
    _validate_settings(cfg)
    _stage_stats(_workspace(cfg), cfg)
    return EXIT_OK


def cmd_train(args: argparse.Namespace) -> int:
    cfg = _resolve_settings(args)
    _validate_settings(cfg, train=True)
    _stage_train(_workspace(cfg), cfg)
    return EXIT_OK


def cmd_pipeline(args: argparse.Namespace) -> int:
    cfg = _resolve_settings(args)
    _validate_settings(cfg, train=True)
    ws = _workspace(cfg)
    _stage_ingest(ws, cfg, Path(args.input))
    _stage_clean(ws, cfg)
    _stage_tokenize(ws, cfg)
    _stage_normalize(ws, cfg)
    _stage_vocab(ws, cfg)
    _stage_stats(ws, cfg)
    _stage_train(ws, cfg)
    return EXIT_OK


def _model_path(cfg: Settings, ws: Workspace) -> Path:
    return Path(str(cfg.model)) if cfg.model else ws.model


def cmd_similar(args: argparse.Namespace) -> int:
    cfg = _resolve_settings(args)
    _validate_settings(cfg)
    model = load_model(_model_path(cfg, Workspace(root=cfg.workdir)))
    result = most_similar(model, args.word, n=int(cfg.neighbors))
    if cfg.json:
        payload = [
            {"rank": rank, "word": word, "score": score}
            for rank, (word, score) in enumerate(result.neighbors, 1)
        ]
        print(json.dumps(payload))
    else:
        for rank, (word, score) in enumerate(result.neighbors, 1):
            print(f"{rank}\t{word}\t{score:.6f}")
    return EXIT_OK


def cmd_vector(args: argparse.Namespace) -> int:
    cfg = _resolve_settings(args)
    _validate_settings(cfg)
    model = load_model(_model_path(cfg, Workspace(root=cfg.workdir)))
    vector = get_vector(model, args.word)
    if cfg.json:
        print(json.dumps({"word": args.word, "vector": [float(x) for x in vector]}))
    else:
        print(" ".join(f"{value:.6f}" for value in vector))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--workdir", help="work directory for pipeline artifacts")
    parser.add_argument("--config", help="key=value file supplying any flag")
    parser.add_argument(
        "--force",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="rerun stages even when cached",
    )


def _add_clean_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--apostrophe",
        choices=["delete", "space"],
        help="delete apostrophes or turn them into spaces (default: delete)",
    )
    parser.add_argument(
        "--strict-clean",
        dest="strict_clean",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="also remove semicolons during cleaning",
    )


def _add_tokenize_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--abbreviations", help="abbreviation list file for splitting")


def _add_normalize_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--mode", choices=["stem", "lemma", "none"], help="token normalizer (default: lemma)"
    )
    parser.add_argument("--stopwords", help="stopword list file")
    parser.add_argument("--lemma-exceptions", dest="lemma_exceptions", help="irregular-form table")


def _add_vocab_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--min-count", dest="min_count", type=int, help="minimum word count")
    parser.add_argument(
        "--punct-policy",
        dest="punct_policy",
        choices=["drop_all", "paper_compat", "keep_all"],
        help="punctuation handling when indexing words",
    )


def _add_stats_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--bin-width", dest="bin_width", type=int, help="histogram bin width")
    parser.add_argument("--top-k", dest="top_k", type=int, help="entries in top-word/pair lists")
    parser.add_argument(
        "--stats-source",
        dest="stats_source",
        choices=["tokens", "normalized"],
        help="corpus the statistics are computed on",
    )


def _add_train_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--train-mode", dest="train_mode", choices=["skipgram", "cbow"], help="input mode"
    )
    parser.add_argument(
        "--objective",
        type=lambda raw: raw.replace("-", "_"),
        choices=["softmax", "negative_sampling"],
        help="training objective",
    )
    parser.add_argument("--window", type=int, help="context window size each side")
    parser.add_argument("--negatives", type=int, help="negative samples per step")
    parser.add_argument("--epochs", type=int, help="passes over the corpus")
    parser.add_argument("--dim", type=int, help="embedding dimensionality")
    parser.add_argument("--lr-start", dest="lr_start", type=float, help="initial learning rate")
    parser.add_argument("--lr-end", dest="lr_end", type=float, help="final learning rate")
    parser.add_argument("--seed", type=int, help="random seed")
    parser.add_argument(
        "--subsample", type=float, help="frequent-word downsampling threshold (0 disables)"
    )
    parser.add_argument("--threads", type=int, help="training threads (1 = deterministic)")
    parser.add_argument(
        "--text-export",
        dest="text_export",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="also write vectors.txt in the interoperable text format",
    )


def _add_paper_compat(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--paper-compat",
        dest="paper_compat",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="figure-compatible defaults: min_count=1, period-only punctuation drop",
    )


def _add_query_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", help="model file (default: <workdir>/model.w2vm)")
    parser.add_argument(
        "--json",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="emit JSON instead of tab-separated lines",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="epic-embed",
        description="Turn an e-book into word embeddings and query related words.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    sub = subparsers.add_parser("ingest", parents=[], help="extract sections from an input file")
    sub.add_argument("input", help="EPUB or plain-text input file")
    _add_common(sub)
    sub.set_defaults(func=cmd_ingest)

    sub = subparsers.add_parser("clean", help="fold sections into one cleaned string")
    _add_common(sub)
    _add_clean_flags(sub)
    sub.set_defaults(func=cmd_clean)

    sub = subparsers.add_parser("tokenize", help="split sentences and words")
    _add_common(sub)
    _add_tokenize_flags(sub)
    sub.set_defaults(func=cmd_tokenize)

    sub = subparsers.add_parser("normalize", help="remove stopwords, stem or lemmatize")
    _add_common(sub)
    _add_normalize_flags(sub)
    sub.set_defaults(func=cmd_normalize)

    sub = subparsers.add_parser("vocab", help="index the corpus vocabulary")
    _add_common(sub)
    _add_vocab_flags(sub)
    _add_paper_compat(sub)
    sub.set_defaults(func=cmd_vocab)

    sub = subparsers.add_parser("stats", help="corpus statistics and histogram")
    _add_common(sub)
    _add_stats_flags(sub)
    sub.set_defaults(func=cmd_stats)

    sub = subparsers.add_parser("train", help="train the embedding model")
    _add_common(sub)
    _add_train_flags(sub)
    sub.set_defaults(func=cmd_train)

    sub = subparsers.add_parser("similar", help="nearest neighbors of a word")
    sub.add_argument("word")
    sub.add_argument("-n", "--neighbors", type=int, help="how many neighbors (default 5)")
    _add_common(sub)
    _add_query_flags(sub)
    sub.set_defaults(func=cmd_similar)

    sub = subparsers.add_parser("vector", help="print the embedding of a word")
    sub.add_argument("word")
    _add_common(sub)
    _add_query_flags(sub)
    sub.set_defaults(func=cmd_vector)

    sub = subparsers.add_parser("pipeline", help="run every stage in order")
    sub.add_argument("input", help="EPUB or plain-text input file")
    _add_common(sub)
    _add_clean_flags(sub)
    _add_tokenize_flags(sub)
    _add_normalize_flags(sub)
    _add_vocab_flags(sub)
    _add_stats_flags(sub)
    _add_train_flags(sub)
    _add_paper_compat(sub)
    sub.set_defaults(func=cmd_pipeline)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownWord as exc:
        print(f"epic-embed: {exc}", file=sys.stderr)
        return EXIT_QUERY
    except SettingsError as exc:
        print(f"epic-embed: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (EpicEmbedError, OSError, ValueError) as exc:
        print(f"epic-embed: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
