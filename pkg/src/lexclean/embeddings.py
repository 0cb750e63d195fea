"""Skip-gram word embeddings with negative sampling.

A small numpy trainer: fixed context window, unigram^0.75 noise
distribution, linearly decaying learning rate, mini-batched SGD updates.
Training is single threaded and fully determined by ``TrainConfig.seed``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import Corpus

logger = logging.getLogger(__name__)

SMALL_CORPUS_TOKENS = 100_000


class OutOfVocabularyError(KeyError):
    pass


class EmbeddingFormatError(ValueError):
    def __init__(self, path, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = path
        self.lineno = lineno


@dataclass(frozen=True)
class TrainConfig:
    window: int = 3
    dim: int = 100
    negative: int = 5
    epochs: int = 5
    initial_lr: float = 0.025
    min_lr: float = 0.0001
    # None picks 1 below SMALL_CORPUS_TOKENS tokens and 5 otherwise
    min_count: int | None = None
    sample: float = 0.0
    batch_size: int = 64
    seed: int = 1

    def __post_init__(self):
        if self.window < 1 or self.dim < 1 or self.epochs < 1:
            raise ValueError("window, dim and epochs must all be >= 1")
        if self.negative < 1:
            raise ValueError("negative must be >= 1")
        if self.min_count is not None and self.min_count < 1:
            raise ValueError("min_count must be >= 1")


@dataclass(frozen=True, eq=False)
class EmbeddingModel:
    words: tuple[str, ...]
    vectors: np.ndarray = field(repr=False)
    min_count: int = 1

    def __post_init__(self):
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.words):
            raise ValueError("vectors must be a (len(words), dim) matrix")
        if not np.all(np.isfinite(self.vectors)):
            raise ValueError("non-finite embedding values")

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @cached_property
    def vocab(self) -> dict[str, int]:
        return {w: i for i, w in enumerate(self.words)}

    @cached_property
    def _unit(self) -> np.ndarray:
        norms = np.linalg.norm(self.vectors, axis=1, keepdims=True)
        return np.divide(self.vectors, norms, out=np.zeros_like(self.vectors), where=norms > 0)

    def __contains__(self, word: str) -> bool:
        return word in self.vocab

    def __len__(self) -> int:
        return len(self.words)

    def index(self, word: str) -> int:
        try:
            return self.vocab[word]
        except KeyError:
            raise OutOfVocabularyError(word) from None

    def vector(self, word: str) -> np.ndarray:
        return self.vectors[self.index(word)]

    def cosine(self, w1: str, w2: str) -> float:
        u = self._unit
        return float(np.clip(u[self.index(w1)] @ u[self.index(w2)], -1.0, 1.0))

    def cosine_matrix(self, words: Sequence[str]) -> np.ndarray:
        u = self._unit[[self.index(w) for w in words]]
        return np.clip(u @ u.T, -1.0, 1.0)

    def knn(self, word: str, k: int, restrict: Sequence[str] | None = None) -> list[tuple[str, float]]:
        """The ``k`` nearest words by cosine, excluding ``word`` itself.

        ``restrict`` limits the search to a subset of the vocabulary.  Ties
        are ordered lexicographically.
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        i = self.index(word)
        if restrict is None:
            idx = np.arange(len(self.words))
        else:
            idx = np.array([self.vocab[w] for w in restrict if w in self.vocab], dtype=np.int64)
        idx = idx[idx != i]
        if idx.size == 0:
            return []
        sims = np.clip(self._unit[idx] @ self._unit[i], -1.0, 1.0)
        # sort by (-cos, word); partial selection first for big vocabularies
        if idx.size > 4 * k:
            cut = np.partition(-sims, k - 1)[k - 1]
            keep = -sims <= cut
            idx, sims = idx[keep], sims[keep]
        order = sorted(range(idx.size), key=lambda j: (-sims[j], self.words[idx[j]]))
        return [(self.words[idx[j]], float(sims[j])) for j in order[:k]]


def cosine(model: EmbeddingModel, w1: str, w2: str) -> float:
    return model.cosine(w1, w2)


def knn(model: EmbeddingModel, word: str, k: int) -> list[tuple[str, float]]:
    return model.knn(word, k)


def _sigmoid(x):
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def sgns_loss_and_grads(w_in, w_out, centers, contexts, negatives):
    """Negative-sampling skip-gram loss for a batch of (center, context) pairs.

    Returns ``(loss, grad_center, grad_context, grad_negative)`` where the
    gradients are per batch row: ``grad_center`` has shape (B, dim),
    ``grad_context`` (B, dim) and ``grad_negative`` (B, K, dim).  Scatter
    them onto the parameter rows given by the index arrays.
    """
    v = w_in[centers]  # (B, d)
    u_pos = w_out[contexts]  # (B, d)
    u_neg = w_out[negatives]  # (B, K, d)
    s_pos = np.einsum("bd,bd->b", v, u_pos)
    s_neg = np.einsum("bkd,bd->bk", u_neg, v)
    loss = float(np.sum(np.logaddexp(0.0, -s_pos)) + np.sum(np.logaddexp(0.0, s_neg)))
    g_pos = _sigmoid(s_pos) - 1.0  # d loss / d s_pos
    g_neg = _sigmoid(s_neg)  # d loss / d s_neg
    grad_center = g_pos[:, None] * u_pos + np.einsum("bk,bkd->bd", g_neg, u_neg)
    grad_context = g_pos[:, None] * v
    grad_negative = g_neg[:, :, None] * v[:, None, :]
    return loss, grad_center, grad_context, grad_negative


def _vocabulary(corpus: Corpus, min_count: int) -> list[str]:
    return [w for w in corpus.words_by_frequency() if corpus.lexicon[w] >= min_count]


def _pairs(docs: list[np.ndarray], window: int) -> np.ndarray:
    out = []
    for ids in docs:
        n = ids.size
        for off in range(1, window + 1):
            if off >= n:
                break
            a, b = ids[:-off], ids[off:]
            out.append(np.stack([a, b], axis=1))
            out.append(np.stack([b, a], axis=1))
    if not out:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(out)


def train_skipgram(corpus: Corpus, config: TrainConfig | None = None) -> EmbeddingModel:
    config = config or TrainConfig()
    min_count = config.min_count
    if min_count is None:
        min_count = 1 if corpus.token_count < SMALL_CORPUS_TOKENS else 5
    words = _vocabulary(corpus, min_count)
    if not words:
        raise ValueError(f"no word reaches min_count={min_count}")
    vocab = {w: i for i, w in enumerate(words)}
    counts = np.array([corpus.lexicon[w] for w in words], dtype=np.float64)
    rng = np.random.default_rng(config.seed)
    dim = config.dim

    w_in = (rng.random((len(words), dim)) - 0.5) / dim
    w_out = np.zeros((len(words), dim))

    noise = counts ** 0.75
    noise_cdf = np.cumsum(noise / noise.sum())
    noise_cdf[-1] = 1.0

    docs = [np.array([vocab[t] for t in d.tokens if t in vocab], dtype=np.int64)
            for d in corpus.documents]
    if config.sample > 0:
        thresh = config.sample * counts.sum()
        keep_prob = np.minimum(1.0, (np.sqrt(counts / thresh) + 1) * thresh / counts)
    else:
        keep_prob = None
        fixed_pairs = _pairs(docs, config.window)

    batch = config.batch_size
    est_pairs = fixed_pairs.shape[0] if keep_prob is None else _pairs(docs, config.window).shape[0]
    total_steps = max(1, config.epochs * -(-est_pairs // batch))
    step = 0
    lr_span = config.initial_lr - config.min_lr
    for epoch in range(config.epochs):
        if keep_prob is None:
            pairs = fixed_pairs
        else:
            kept = [ids[rng.random(ids.size) < keep_prob[ids]] for ids in docs]
            pairs = _pairs(kept, config.window)
        pairs = pairs[rng.permutation(pairs.shape[0])]
        loss_sum = 0.0
        for start in range(0, pairs.shape[0], batch):
            chunk = pairs[start:start + batch]
            lr = config.initial_lr - lr_span * min(1.0, step / total_steps)
            step += 1
            negs = np.searchsorted(noise_cdf, rng.random((chunk.shape[0], config.negative)), side="right")
            negs = np.minimum(negs, len(words) - 1)
            centers, contexts = chunk[:, 0], chunk[:, 1]
            loss, g_c, g_o, g_n = sgns_loss_and_grads(w_in, w_out, centers, contexts, negs)
            loss_sum += loss
            np.add.at(w_in, centers, -lr * g_c)
            np.add.at(w_out, contexts, -lr * g_o)
            np.add.at(w_out, negs.ravel(), -lr * g_n.reshape(-1, dim))
        logger.debug("epoch %d: mean loss %.4f", epoch + 1, loss_sum / max(1, pairs.shape[0]))
    return EmbeddingModel(tuple(words), w_in, min_count)


def save_word2vec_text(model: EmbeddingModel, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{len(model.words)} {model.dim}\n")
        for w, vec in zip(model.words, model.vectors):
            fh.write(w + " " + " ".join(f"{x:.6f}" for x in vec) + "\n")


def load_word2vec_text(path: str | Path) -> EmbeddingModel:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise EmbeddingFormatError(path, 1, "empty file")
    header = lines[0].lstrip("﻿").split()
    try:
        n, dim = (int(x) for x in header)
    except ValueError:
        raise EmbeddingFormatError(path, 1, f"bad header {lines[0]!r}, expected 'vocab_size dim'") from None
    if n < 0 or dim < 1:
        raise EmbeddingFormatError(path, 1, "header sizes out of range")
    words: list[str] = []
    seen: set[str] = set()
    vectors = np.empty((n, dim))
    rows = [(i, ln) for i, ln in enumerate(lines[1:], 2) if ln.strip()]
    if len(rows) != n:
        raise EmbeddingFormatError(path, len(lines), f"header announces {n} words, found {len(rows)}")
    for k, (lineno, line) in enumerate(rows):
        parts = line.rstrip().split(" ")
        word, values = parts[0], parts[1:]
        if len(values) != dim:
            raise EmbeddingFormatError(path, lineno, f"expected {dim} values, got {len(values)}")
        if word in seen:
            raise EmbeddingFormatError(path, lineno, f"duplicate word {word!r}")
        try:
            vectors[k] = [float(x) for x in values]
        except ValueError:
            raise EmbeddingFormatError(path, lineno, "non-numeric value") from None
        seen.add(word)
        words.append(word)
    if not np.all(np.isfinite(vectors)):
        raise EmbeddingFormatError(path, 1, "non-finite values")
    return EmbeddingModel(tuple(words), vectors)
