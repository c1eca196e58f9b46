"""Corpus ingestion: normalization, tokenization, and frequency vocabularies.

Input files are plain UTF-8 text, one sentence per line.  Normalization
replaces every codepoint outside a configurable allowlist with a space and
splits on whitespace, so tokens never contain punctuation or foreign-script
characters.  The default allowlist keeps the Telugu block (U+0C00..U+0C7F)
plus ASCII letters and digits.
"""

from __future__ import annotations

import functools
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

CodepointRange = tuple[int, int]

# Telugu block plus ASCII alphanumerics; digits are kept as tokens.
DEFAULT_KEEP_RANGES: tuple[CodepointRange, ...] = (
    (0x30, 0x39),    # 0-9
    (0x41, 0x5A),    # A-Z
    (0x61, 0x7A),    # a-z
    (0x0C00, 0x0C7F),  # Telugu
)


class CorpusError(ValueError):
    """Malformed corpus input (bad encoding, unreadable file)."""


@dataclass
class Corpus:
    """Tokenized text: a sequence of sentences, each a list of tokens.

    ``line_count`` counts only input lines that yielded at least one token;
    ``token_count`` is the sum of sentence lengths.
    """

    sentences: list[list[str]] = field(default_factory=list)
    line_count: int = 0
    token_count: int = 0

    def __iter__(self) -> Iterator[list[str]]:
        return iter(self.sentences)


@dataclass
class Vocabulary:
    """Token frequencies after min-count filtering."""

    entries: dict[str, int] = field(default_factory=dict)
    total_count: int = 0

    def __contains__(self, token: str) -> bool:
        return token in self.entries

    def __len__(self) -> int:
        return len(self.entries)


@functools.lru_cache(maxsize=32)
def _strip_pattern(keep_ranges: tuple[CodepointRange, ...]) -> re.Pattern[str]:
    if not keep_ranges:
        raise ValueError("keep_ranges must be nonempty")
    parts = []
    for lo, hi in keep_ranges:
        if lo > hi:
            raise ValueError(f"invalid codepoint range {lo:#x}..{hi:#x}")
        parts.append(f"{chr(lo)}-{chr(hi)}" if lo != hi else re.escape(chr(lo)))
    return re.compile(f"[^{''.join(parts)}]+")


def normalize_text(
    raw: str,
    keep_ranges: Iterable[CodepointRange] = DEFAULT_KEEP_RANGES,
) -> list[str]:
    """Tokenize ``raw`` by replacing disallowed codepoints with spaces.

    Returns the whitespace-split tokens; consecutive separators collapse and
    empty tokens never appear.
    """
    pattern = _strip_pattern(tuple(keep_ranges))
    return pattern.sub(" ", raw).split()


def iter_sentences(
    path: str | Path,
    keep_ranges: Iterable[CodepointRange] = DEFAULT_KEEP_RANGES,
) -> Iterator[list[str]]:
    """Stream normalized token sequences from a one-sentence-per-line file.

    Lines are NFC-normalized before tokenization.  Lines producing no tokens
    are skipped.  Decode failures raise :class:`CorpusError` naming the line
    number and byte offset.
    """
    ranges = tuple(keep_ranges)
    path = Path(path)
    with open(path, "rb") as fh:
        for lineno, raw_line in enumerate(fh, start=1):
            try:
                line = raw_line.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise CorpusError(
                    f"{path}: line {lineno}: invalid UTF-8 at byte offset {exc.start}"
                ) from exc
            tokens = normalize_text(unicodedata.normalize("NFC", line), ranges)
            if tokens:
                yield tokens


def load_corpus(
    path: str | Path,
    keep_ranges: Iterable[CodepointRange] = DEFAULT_KEEP_RANGES,
) -> Corpus:
    """Load a whole corpus file into memory (see :func:`iter_sentences`)."""
    sentences = []
    token_count = 0
    for tokens in iter_sentences(path, keep_ranges):
        sentences.append(tokens)
        token_count += len(tokens)
    return Corpus(sentences=sentences, line_count=len(sentences), token_count=token_count)


def scan_corpus(
    path: str | Path,
    keep_ranges: Iterable[CodepointRange] = DEFAULT_KEEP_RANGES,
) -> tuple[int, int]:
    """Streaming (line_count, token_count) without materializing sentences."""
    line_count = 0
    token_count = 0
    for tokens in iter_sentences(path, keep_ranges):
        line_count += 1
        token_count += len(tokens)
    return line_count, token_count


def build_vocabulary(corpus: Corpus | Iterable[list[str]], min_count: int = 1) -> Vocabulary:
    """Count token frequencies, dropping tokens rarer than ``min_count``."""
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")
    counts = Counter()
    for sentence in corpus:
        counts.update(sentence)
    entries = {tok: n for tok, n in counts.items() if n >= min_count}
    return Vocabulary(entries=entries, total_count=sum(entries.values()))


def save_vocabulary(vocab: Vocabulary, path: str | Path) -> None:
    """Write a ``token<TAB>count`` TSV, descending count then lexicographic."""
    items = sorted(vocab.entries.items(), key=lambda kv: (-kv[1], kv[0]))
    with open(path, "w", encoding="utf-8") as fh:
        for token, count in items:
            fh.write(f"{token}\t{count}\n")


def load_vocabulary(path: str | Path) -> Vocabulary:
    """Read a vocabulary TSV written by :func:`save_vocabulary`."""
    path = Path(path)
    entries: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 2 or not fields[0]:
                raise CorpusError(f"{path}: line {lineno}: expected 'token<TAB>count'")
            try:
                count = int(fields[1])
            except ValueError as exc:
                raise CorpusError(f"{path}: line {lineno}: bad count {fields[1]!r}") from exc
            if count < 1:
                raise CorpusError(f"{path}: line {lineno}: count must be positive")
            entries[fields[0]] = count
    return Vocabulary(entries=entries, total_count=sum(entries.values()))
