"""Reference normalizers used for comparison: Sridhar, Enelvo and Ghosh.

All three emit the same :class:`NormalizationMap` as the main algorithm.
Every similarity is measured in the corpus-trained embedding space; an
external lexicon only decides which words count as clean.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .corpus import Corpus
from .embeddings import EmbeddingModel
from .graph import VariantGraph, ghosh_congregate, ghosh_prune
from .normmap import NormalizationMap, club
from .simstring import (edit_distance, edit_similarity, enelvo_lcsr, lcsr,
                        modified_edit_distance)

logger = logging.getLogger(__name__)

# multiplier standing in for LCSR / 0 when a noisy word equals a clean word
EXACT_MATCH_BOOST = 1e6


@dataclass(frozen=True)
class BaselineConfig:
    k: int = 25
    n: float = 0.8
    alpha: float = 0.7
    beta_fraction: float = 0.6
    gamma: float = 50.0
    clean_min_freq: int = 100
    clean_words: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0.0 < self.n < 1.0:
            raise ValueError("n must lie in (0, 1)")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")
        if not 0.0 < self.beta_fraction < 1.0:
            raise ValueError("beta_fraction must lie in (0, 1)")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("alpha must lie in (0, 1]")


def frequent_words(corpus: Corpus, min_freq: int) -> list[str]:
    return sorted(w for w, c in corpus.lexicon.items() if c >= min_freq)


def noisy_versions(model: EmbeddingModel, clean: Sequence[str], noisy: Sequence[str],
                   k: int) -> dict[str, list[str]]:
    """For each embedded clean word, its ``k`` nearest noisy words by cosine."""
    noisy = [w for w in noisy if w in model]
    out: dict[str, list[str]] = {}
    if not noisy:
        return {c: [] for c in clean if c in model}
    for c in clean:
        if c in model:
            out[c] = [w for w, _ in model.knn(c, k, restrict=noisy)]
    return out


def _invert(versions: dict[str, list[str]]) -> dict[str, list[str]]:
    inv: dict[str, list[str]] = {}
    for clean, noisy in versions.items():
        for w in noisy:
            inv.setdefault(w, []).append(clean)
    return inv


def sridhar_score(noisy: str, clean: str) -> float:
    ed = edit_distance(noisy, clean)
    if ed == 0:
        return lcsr(noisy, clean) * EXACT_MATCH_BOOST
    return lcsr(noisy, clean) / ed


def lexical_similarity(noisy: str, clean: str) -> float:
    med = modified_edit_distance(noisy, clean)
    sim = enelvo_lcsr(noisy, clean)
    return sim / med if med > 0 else sim


def enelvo_score(noisy: str, clean: str, cos: float, n: float) -> float:
    return n * lexical_similarity(noisy, clean) + (1.0 - n) * cos


def _best(scored: Iterable[tuple[str, float]]) -> str:
    return min(scored, key=lambda cs: (-cs[1], cs[0]))[0]


def _knn_map(corpus: Corpus, model: EmbeddingModel, clean: Sequence[str], k: int, score) -> NormalizationMap:
    clean_set = set(clean)
    noisy = sorted(w for w in corpus.lexicon if w not in clean_set)
    inv = _invert(noisy_versions(model, sorted(clean_set), noisy, k))
    pairs = {w: _best((c, score(w, c)) for c in cands) for w, cands in inv.items()}
    return NormalizationMap.from_pairs(pairs)


def sridhar_normalize(corpus: Corpus, model: EmbeddingModel, clean_lexicon: Iterable[str],
                      k: int = 25) -> NormalizationMap:
    """kNN candidates by cosine, winner by LCSR / edit distance."""
    clean = list(dict.fromkeys(clean_lexicon))
    if not clean:
        raise ValueError("sridhar needs a non-empty clean lexicon")
    return _knn_map(corpus, model, clean, k, sridhar_score)


def enelvo_normalize(corpus: Corpus, model: EmbeddingModel, k: int = 25, n: float = 0.8,
                     min_freq: int = 100, clean_lexicon: Iterable[str] | None = None) -> NormalizationMap:
    """kNN candidates by cosine, winner by a mix of lexical and cosine similarity."""
    if not 0.0 < n < 1.0:
        raise ValueError("n must lie in (0, 1)")
    clean = list(clean_lexicon) if clean_lexicon is not None else frequent_words(corpus, min_freq)
    if not clean:
        raise ValueError(f"no word occurs at least {min_freq} times; lower the frequency threshold")
    return _knn_map(corpus, model, clean, k,
                    lambda w, c: enelvo_score(w, c, model.cosine(w, c), n))


class _CharIndex:
    """Character-count lower bound on edit distance, for ES threshold search."""

    def __init__(self, words: Iterable[str]):
        self.words = sorted(set(words))
        alphabet = sorted({ch for w in self.words for ch in w})
        self._col = {ch: i for i, ch in enumerate(alphabet)}
        self._counts = np.zeros((len(self.words), len(alphabet)), dtype=np.int32)
        for r, w in enumerate(self.words):
            for ch in w:
                self._counts[r, self._col[ch]] += 1
        self._lens = np.array([len(w) for w in self.words])

    def similar(self, word: str, alpha: float) -> list[str]:
        q = np.zeros(self._counts.shape[1], dtype=np.int32)
        for ch in word:
            if ch in self._col:
                q[self._col[ch]] += 1
        common = np.minimum(self._counts, q).sum(axis=1)
        longest = np.maximum(self._lens, len(word))
        # ED >= longest - common, and ES > alpha needs ED < (1 - alpha) * longest
        ok = np.flatnonzero(longest - common < (1.0 - alpha) * longest + 1e-9)
        return [self.words[i] for i in ok if edit_similarity(self.words[i], word) > alpha]


def ghosh_graph(corpus: Corpus, words: Sequence[str]) -> VariantGraph:
    """Graph weighted by summed (not averaged) document co-occurrence."""
    cooc = corpus.cooccurrence_index
    edges = {}
    for i, u in enumerate(words):
        for v in words[i + 1:]:
            w = cooc.total(u, v)
            if w > 0:
                edges[(u, v)] = float(w)
    return VariantGraph.build(words, edges)


def ghosh_cluster(word: str, candidates: Sequence[str], corpus: Corpus, beta_fraction: float,
                  gamma: float) -> set[str]:
    graph = ghosh_prune(ghosh_graph(corpus, candidates), beta_fraction, gamma)
    part = ghosh_congregate(graph)
    best = None
    for cid, members in enumerate(part.communities()):
        key = (-max(edit_similarity(m, word) for m in members), cid)
        if best is None or key < best[0]:
            best = (key, members)
    return set(best[1]) if best else set()


def ghosh_normalize(corpus: Corpus, clean_words: Iterable[str], alpha: float = 0.7,
                    beta_fraction: float = 0.6, gamma: float = 50.0) -> NormalizationMap:
    """Segregation by edit similarity, co-occurrence graph, pruning,
    strongest-neighbour congregation, and melding by edit similarity."""
    clean = sorted(set(clean_words), key=lambda w: (-corpus.frequency(w), w))
    if not clean:
        raise ValueError("ghosh needs a non-empty clean word list")
    index = _CharIndex(corpus.lexicon)
    per_word = []
    for w in clean:
        cands = index.similar(w, alpha)
        if not cands:
            continue
        per_word.append((w, ghosh_cluster(w, cands, corpus, beta_fraction, gamma)))
    clean_set = set(clean)
    return club(per_word, rank=lambda w: (-corpus.frequency(w), w), eligible=clean_set)


def run_baseline(name: str, corpus: Corpus, model: EmbeddingModel | None,
                 config: BaselineConfig | None = None) -> NormalizationMap:
    config = config or BaselineConfig()
    clean = config.clean_words
    if name == "sridhar":
        if clean is None:
            clean = frequent_words(corpus, config.clean_min_freq)
        return sridhar_normalize(corpus, model, clean, config.k)
    if name == "enelvo":
        return enelvo_normalize(corpus, model, config.k, config.n, config.clean_min_freq, clean)
    if name == "ghosh":
        if clean is None:
            clean = frequent_words(corpus, config.clean_min_freq)
        return ghosh_normalize(corpus, clean, config.alpha, config.beta_fraction, config.gamma)
    raise ValueError(f"unknown baseline {name!r}")
