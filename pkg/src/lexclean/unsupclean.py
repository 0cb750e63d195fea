"""Unsupervised clustering of noisy morphological variants.

For every clean word ``w``:

1. candidates: corpus words whose bigram-LCS ratio with ``w`` exceeds alpha;
2. a similarity graph over the candidates, with edges where the embedding
   cosine beats a BLCSR-weighted average cosine (beta) and weights
   ``cosine * co-occurrence``;
3. Louvain communities of that graph;
4. the community holding the candidate closest to ``w`` in edit distance.

Per-word clusters are then merged (clubbed) into disjoint clusters and the
corpus is rewritten with one canonical word per cluster.
"""

from __future__ import annotations

import logging
import math
import zlib
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .corpus import Corpus, corpus_from_tokens
from .embeddings import EmbeddingModel
from .graph import Partition, VariantGraph, louvain
from .normmap import NormalizationMap, VariantCluster, club
from .simstring import bigrams, blcsr, edit_distance

logger = logging.getLogger(__name__)

__all__ = [
    "NormalizerConfig", "LexiconIndex", "DegenerateCandidateSet", "NormalizationMap",
    "VariantCluster", "candidate_set", "beta_threshold", "build_variant_graph",
    "select_cluster", "word_cluster", "clean_lexicon", "build_normalization_map",
    "normalize_tokens", "normalize_corpus",
]


class DegenerateCandidateSet(ValueError):
    """Fewer than two candidates carry an embedding."""


@dataclass(frozen=True)
class NormalizerConfig:
    alpha: float = 0.56
    # clean lexicon: explicit words if given, else corpus words this frequent
    clean_min_freq: int = 100
    clean_words: tuple[str, ...] | None = None
    cooccurrence_fallback: bool = True
    # experimental: let unembedded candidates within one edit of w join
    attach_unembedded: bool = False
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.clean_min_freq < 1:
            raise ValueError("clean_min_freq must be >= 1")


class LexiconIndex:
    """Bigram inverted index for fast BLCSR threshold queries.

    The number of shared bigrams (multiset intersection) bounds BLCS from
    above, so only words passing that bound get the exact DP.
    """

    def __init__(self, words: Iterable[str]):
        self.words = sorted(set(words))
        self._postings: dict[str, list[tuple[str, int]]] = {}
        for w in self.words:
            for bg, c in Counter(bigrams(w)).items():
                self._postings.setdefault(bg, []).append((w, c))

    def candidates(self, word: str, alpha: float) -> set[str]:
        shared: Counter[str] = Counter()
        for bg, c in Counter(bigrams(word)).items():
            for other, oc in self._postings.get(bg, ()):
                shared[other] += min(c, oc)
        out = set()
        for other, s in shared.items():
            if other == word:
                continue
            if s > alpha * (max(len(word), len(other)) - 1) and blcsr(other, word) > alpha:
                out.add(other)
        return out


def candidate_set(word: str, lexicon: LexiconIndex | Iterable[str], alpha: float) -> set[str]:
    """Lexicon words with BLCSR(word, .) strictly above ``alpha``, minus ``word``."""
    if isinstance(lexicon, LexiconIndex):
        return lexicon.candidates(word, alpha)
    return {w for w in lexicon if w != word and blcsr(w, word) > alpha}


def _embedded(candidates: Iterable[str], model: EmbeddingModel) -> list[str]:
    return sorted(w for w in candidates if w in model)


def _beta(words: Sequence[str], cos: np.ndarray) -> float:
    num, den = [], []
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            b = blcsr(words[i], words[j])
            num.append(b * cos[i, j])
            den.append(b)
    den_sum = math.fsum(den)
    if den_sum == 0:
        return 0.0
    return math.fsum(num) / den_sum


def beta_threshold(candidates: Iterable[str], model: EmbeddingModel) -> float:
    """BLCSR-weighted mean of the pairwise cosines among embedded candidates."""
    words = _embedded(candidates, model)
    if len(words) < 2:
        raise DegenerateCandidateSet(f"{len(words)} embedded candidate(s)")
    return _beta(words, model.cosine_matrix(words))


def build_variant_graph(candidates: Iterable[str], model: EmbeddingModel, corpus: Corpus,
                        beta: float | None = None, fallback: bool = True) -> VariantGraph:
    """Similarity graph over the embedded candidates.

    An edge joins two words whose cosine exceeds ``beta`` (computed from the
    same candidates when not given) and is positive; its weight is cosine
    times averaged co-occurrence.  When every admitted edge ends up with
    weight 0 and ``fallback`` is set, the cosines are used as weights.
    """
    words = _embedded(candidates, model)
    if len(words) < 2:
        return VariantGraph(tuple(words), {})
    cos = model.cosine_matrix(words)
    if beta is None:
        beta = _beta(words, cos)
    cooc = corpus.cooccurrence_index
    edges: dict[tuple[str, str], float] = {}
    cosines: dict[tuple[str, str], float] = {}
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            c = float(cos[i, j])
            if c > beta and c > 0.0:
                key = (words[i], words[j])
                cosines[key] = c
                shared = cooc.average(*key) if key[0] in cooc and key[1] in cooc else 0.0
                edges[key] = c * shared
    if fallback and cosines and not any(edges.values()):
        edges = cosines
    return VariantGraph(tuple(words), edges)


def select_cluster(partition: Partition, word: str) -> VariantCluster:
    """Community holding the member nearest to ``word`` in edit distance.

    Ties go to the smaller community id; Louvain numbers communities
    largest first, so a tie favours the bigger family.  An empty partition yields the bare
    singleton ``{word}``.
    """
    best = None
    for cid, members in enumerate(partition.communities()):
        if not members:
            continue
        key = (min(edit_distance(m, word) for m in members), cid)
        if best is None or key < best[0]:
            best = (key, members)
    if best is None:
        return VariantCluster(word, frozenset())
    return VariantCluster(word, frozenset(best[1]))


def _word_seed(seed: int, word: str) -> int:
    return (seed * 1_000_003 + zlib.crc32(word.encode("utf-8"))) & 0xFFFFFFFF


def word_cluster(word: str, index: LexiconIndex, model: EmbeddingModel, corpus: Corpus,
                 config: NormalizerConfig, graph_sink=None) -> VariantCluster:
    """Run candidate generation, graph building, Louvain and selection for one word."""
    candidates = index.candidates(word, config.alpha)
    embedded = _embedded(candidates, model)
    if len(embedded) < 2:
        # a lone candidate is its own community
        cluster = VariantCluster(word, frozenset(embedded))
    else:
        graph = build_variant_graph(embedded, model, corpus, fallback=config.cooccurrence_fallback)
        if graph_sink is not None:
            graph_sink(word, graph)
        part = louvain(graph, seed=_word_seed(config.seed, word))
        cluster = select_cluster(part, word)
    if config.attach_unembedded:
        extra = {c for c in candidates if c not in model and edit_distance(c, word) <= 1}
        if extra:
            cluster = VariantCluster(word, cluster.members | extra)
    return cluster


def clean_lexicon(corpus: Corpus, config: NormalizerConfig) -> list[str]:
    """Clean words, most frequent first (ties lexicographic)."""
    if config.clean_words is not None:
        words = set(config.clean_words)
    else:
        words = {w for w, c in corpus.lexicon.items() if c >= config.clean_min_freq}
    return sorted(words, key=lambda w: (-corpus.frequency(w), w))


def build_normalization_map(corpus: Corpus, model: EmbeddingModel,
                            config: NormalizerConfig | None = None, graph_sink=None) -> NormalizationMap:
    """Cluster the variants of every clean word and club the clusters.

    ``graph_sink(word, graph)``, if given, receives each variant graph (for
    debugging dumps).
    """
    config = config or NormalizerConfig()
    if corpus.doc_count == 0 or not corpus.lexicon:
        raise ValueError("cannot normalize an empty corpus")
    clean = clean_lexicon(corpus, config)
    if not clean:
        logger.warning("clean lexicon is empty; returning the identity map")
    index = LexiconIndex(corpus.lexicon)
    # build the co-occurrence postings once, before any worker threads start
    corpus.cooccurrence_index

    def run(w):
        return word_cluster(w, index, model, corpus, config, graph_sink)

    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            clusters = list(pool.map(run, clean))
    else:
        clusters = [run(w) for w in clean]
    logger.info("%d clean words, %d with variants",
                len(clean), sum(1 for c in clusters if c.members - {c.canonical}))

    clean_set = set(clean)
    return club(((c.canonical, c.members) for c in clusters),
                rank=lambda w: (-corpus.frequency(w), w), eligible=clean_set)


def normalize_tokens(tokens: Iterable[str], nmap: NormalizationMap) -> list[str]:
    return [nmap(t) for t in tokens]


def normalize_corpus(corpus: Corpus, nmap: NormalizationMap) -> Corpus:
    return corpus_from_tokens(normalize_tokens(d.tokens, nmap) for d in corpus.documents)
