"""Corpus ingestion: tokenization, lexicon counts and document co-occurrence."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import regex

logger = logging.getLogger(__name__)

_WORD = r"[\p{L}\p{M}\p{N}_]+(?:['’][\p{L}\p{M}\p{N}_]+)*"
_TOKEN_STRIP = regex.compile(r"[#@]?(" + _WORD + ")")
_TOKEN_KEEP = regex.compile(r"([#@]?" + _WORD + ")")


class OutOfLexiconError(KeyError):
    """Raised when a query word is not part of the corpus lexicon."""


@dataclass(frozen=True)
class TokenizeConfig:
    lowercase: bool = True
    # when False, a leading '#'/'@' stays attached to the token
    strip_prefix: bool = True


def tokenize(text: str, config: TokenizeConfig | None = None) -> list[str]:
    """Split ``text`` into word tokens.

    Splitting is Unicode aware: letters, combining marks, digits and
    underscores form words, everything else separates them.  Apostrophes
    inside a word are kept ("don't").
    """
    config = config or TokenizeConfig()
    if config.lowercase:
        text = text.lower()
    pattern = _TOKEN_STRIP if config.strip_prefix else _TOKEN_KEEP
    return [m.group(1) for m in pattern.finditer(text)]


@dataclass(frozen=True)
class Document:
    id: int
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]
    lexicon: dict[str, int] = field(repr=False)

    @property
    def doc_count(self) -> int:
        return len(self.documents)

    @property
    def token_count(self) -> int:
        return sum(len(d.tokens) for d in self.documents)

    def __contains__(self, word: str) -> bool:
        return word in self.lexicon

    def frequency(self, word: str) -> int:
        return self.lexicon.get(word, 0)

    def words_by_frequency(self) -> list[str]:
        """Lexicon words, most frequent first, ties in lexicographic order."""
        return sorted(self.lexicon, key=lambda w: (-self.lexicon[w], w))

    def texts(self) -> list[str]:
        return [" ".join(d.tokens) for d in self.documents]

    @cached_property
    def cooccurrence_index(self) -> CooccurrenceIndex:
        return CooccurrenceIndex(self)

    def cooccurrence(self, w1: str, w2: str) -> float:
        return self.cooccurrence_index.average(w1, w2)


def corpus_from_tokens(token_lists: Iterable[Sequence[str]]) -> Corpus:
    """Build a corpus from already tokenized documents."""
    docs = tuple(Document(i, tuple(toks)) for i, toks in enumerate(token_lists))
    if not docs:
        raise ValueError("a corpus needs at least one document")
    lexicon: Counter[str] = Counter()
    for d in docs:
        lexicon.update(d.tokens)
    return Corpus(docs, dict(lexicon))


def build_corpus(documents: Iterable[str], config: TokenizeConfig | None = None) -> Corpus:
    return corpus_from_tokens(tokenize(text, config) for text in documents)


def _strip_bom(text: str) -> str:
    return text[1:] if text.startswith("﻿") else text


def read_lines(path: str | Path) -> list[str]:
    """One document per line; a leading BOM is dropped."""
    text = _strip_bom(Path(path).read_text(encoding="utf-8"))
    return text.splitlines()


def read_dir(path: str | Path) -> list[str]:
    """One document per ``.txt`` file, in sorted filename order."""
    files = sorted(Path(path).glob("*.txt"))
    return [_strip_bom(f.read_text(encoding="utf-8")) for f in files]


def load_corpus(path: str | Path, config: TokenizeConfig | None = None) -> Corpus:
    path = Path(path)
    texts = read_dir(path) if path.is_dir() else read_lines(path)
    corpus = build_corpus(texts, config)
    logger.info("loaded %d documents, %d types from %s",
                corpus.doc_count, len(corpus.lexicon), path)
    return corpus


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for line in corpus.texts():
            fh.write(line + "\n")


class CooccurrenceIndex:
    """Sparse document-level co-occurrence.

    Per-document contribution of a pair is ``min(count_1, count_2)``.  Only
    per-word postings are stored; pair values are computed (and cached) on
    demand so the full |L|^2 table is never built.
    """

    def __init__(self, corpus: Corpus):
        self.doc_count = corpus.doc_count
        postings: dict[str, dict[int, int]] = {}
        for doc in corpus.documents:
            for w, c in Counter(doc.tokens).items():
                postings.setdefault(w, {})[doc.id] = c
        self._postings = postings
        self._cache: dict[tuple[str, str], int] = {}

    def __contains__(self, word: str) -> bool:
        return word in self._postings

    def _check(self, word: str) -> dict[int, int]:
        try:
            return self._postings[word]
        except KeyError:
            raise OutOfLexiconError(word) from None

    def total(self, w1: str, w2: str) -> int:
        """Sum over documents of ``min(count(w1, d), count(w2, d))``."""
        p1, p2 = self._check(w1), self._check(w2)
        key = (w1, w2) if w1 <= w2 else (w2, w1)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if len(p1) > len(p2):
            p1, p2 = p2, p1
        value = sum(min(c, p2[d]) for d, c in p1.items() if d in p2)
        self._cache[key] = value
        return value

    def average(self, w1: str, w2: str) -> float:
        """Co-occurrence averaged over every document of the corpus."""
        return self.total(w1, w2) / self.doc_count


def cooccurrence(corpus: Corpus, w1: str, w2: str) -> float:
    return corpus.cooccurrence(w1, w2)
