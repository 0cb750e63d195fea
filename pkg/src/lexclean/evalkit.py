"""Synthetic noise with gold variant maps, and clustering scores.

The gold map uses the same two-column TSV layout as normalization maps.
Besides one row per injected variant it carries an identity row for every
source word that received variants, so gold clusters include their clean
word just like predicted clusters include their canonical.
"""

from __future__ import annotations

import random
import string
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import Corpus, corpus_from_tokens
from .normmap import NormalizationMap
from .simstring import blcsr

VOWELS = frozenset("aeiou")

# single-character confusions; multi-character ones are listed separately
OCR_CONFUSIONS: dict[str, tuple[str, ...]] = {
    "o": ("0",), "0": ("o",),
    "l": ("1", "i"), "1": ("l",), "i": ("l",),
    "e": ("c",), "c": ("e",),
    "m": ("rn",),
}
OCR_MULTI: dict[str, str] = {"rn": "m"}


@dataclass(frozen=True)
class NoiseModel:
    kind: str = "social"
    rate: float = 0.1
    seed: int = 0
    max_truncate: int = 2
    max_repeat: int = 2
    # share of OCR corruptions that are uniform random substitutions
    random_substitution: float = 0.2
    confusions: Mapping[str, tuple[str, ...]] = field(default_factory=lambda: dict(OCR_CONFUSIONS))

    def __post_init__(self):
        if self.kind not in ("social", "ocr"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if not 0.0 <= self.rate <= 1.0:
            raise ValueError("rate must lie in [0, 1]")


def social_variants(word: str, max_truncate: int = 2, max_repeat: int = 2) -> list[str]:
    """Every form reachable by one social-media edit.  The first character
    is never touched."""
    out = set()
    for i in range(1, len(word)):
        if word[i] in VOWELS:
            out.add(word[:i] + word[i + 1:])
    for t in range(1, max_truncate + 1):
        if len(word) - t >= 2:
            out.add(word[:-t])
    for i in range(1, len(word)):
        if word[i] in VOWELS or i == len(word) - 1:
            for r in range(1, max_repeat + 1):
                out.add(word[:i + 1] + word[i] * r + word[i + 1:])
    out.discard(word)
    return sorted(out)


def corrupt_social(word: str, rng: random.Random, max_truncate: int = 2, max_repeat: int = 2) -> str | None:
    """Vowel drop, suffix truncation or character repetition (None if the
    word is too short to corrupt)."""
    ops = []
    vowels = [i for i in range(1, len(word)) if word[i] in VOWELS]
    if vowels:
        ops.append("drop")
    if len(word) >= 3:
        ops.append("truncate")
    if len(word) >= 2:
        ops.append("repeat")
    if not ops:
        return None
    op = rng.choice(ops)
    if op == "drop":
        i = rng.choice(vowels)
        return word[:i] + word[i + 1:]
    if op == "truncate":
        t = rng.randint(1, min(max_truncate, len(word) - 2))
        return word[:-t]
    spots = [i for i in range(1, len(word)) if word[i] in VOWELS or i == len(word) - 1]
    i = rng.choice(spots)
    return word[:i + 1] + word[i] * rng.randint(1, max_repeat) + word[i + 1:]


def corrupt_ocr(word: str, rng: random.Random, confusions: Mapping[str, Sequence[str]],
                random_substitution: float = 0.2) -> str | None:
    """One OCR-style substitution at any position, the first included."""
    if not word:
        return None
    spots = [(i, 1, dst) for i, ch in enumerate(word) for dst in confusions.get(ch, ())]
    spots += [(i, len(src), dst) for src, dst in OCR_MULTI.items()
              for i in range(len(word)) if word.startswith(src, i)]
    if not spots or rng.random() < random_substitution:
        i = rng.randrange(len(word))
        choices = [c for c in string.ascii_lowercase if c != word[i]]
        return word[:i] + rng.choice(choices) + word[i + 1:]
    i, span, dst = rng.choice(spots)
    return word[:i] + dst + word[i + span:]


def _corrupt(word: str, model: NoiseModel, rng: random.Random) -> str | None:
    if model.kind == "social":
        return corrupt_social(word, rng, model.max_truncate, model.max_repeat)
    return corrupt_ocr(word, rng, model.confusions, model.random_substitution)


def inject_noise(docs: Corpus | Iterable[Sequence[str]], model: NoiseModel) -> tuple[Corpus, dict[str, str]]:
    """Corrupt each token independently with probability ``model.rate``.

    Each document draws from its own generator seeded by (seed, doc index),
    so the output does not depend on processing order.
    """
    token_lists = [d.tokens for d in docs.documents] if isinstance(docs, Corpus) else [list(d) for d in docs]
    gold: dict[str, str] = {}
    sources: set[str] = set()
    out = []
    for doc_id, tokens in enumerate(token_lists):
        rng = random.Random(f"{model.seed}:{doc_id}")
        noisy = []
        for tok in tokens:
            if model.rate > 0 and rng.random() < model.rate:
                variant = _corrupt(tok, model, rng)
                if variant is not None and variant != tok:
                    gold.setdefault(variant, tok)
                    sources.add(tok)
                    tok = variant
            noisy.append(tok)
        out.append(noisy)
    for s in sorted(sources):
        gold.setdefault(s, s)
    return corpus_from_tokens(out), gold


def write_gold(gold: Mapping[str, str], path: str | Path) -> None:
    Path(path).write_text("".join(f"{k}\t{v}\n" for k, v in sorted(gold.items())), encoding="utf-8")


def _labels(mapping) -> Mapping[str, str]:
    return mapping.rewrite if isinstance(mapping, NormalizationMap) else mapping


def bcubed(predicted, gold) -> tuple[float, float, float]:
    """B-cubed precision, recall and F1 of the word partitions induced by
    two maps, over the words keyed in either of them."""
    pred, ref = _labels(predicted), _labels(gold)
    words = set(pred) | set(ref)
    if not words:
        return 0.0, 0.0, 0.0
    p_lab = {w: pred.get(w, w) for w in words}
    g_lab = {w: ref.get(w, w) for w in words}
    p_size = Counter(p_lab.values())
    g_size = Counter(g_lab.values())
    both = Counter((p_lab[w], g_lab[w]) for w in words)
    precision = sum(both[p_lab[w], g_lab[w]] / p_size[p_lab[w]] for w in words) / len(words)
    recall = sum(both[p_lab[w], g_lab[w]] / g_size[g_lab[w]] for w in words) / len(words)
    if precision + recall == 0:
        return precision, recall, 0.0
    return precision, recall, 2 * precision * recall / (precision + recall)


def purity(predicted, gold) -> float:
    pred, ref = _labels(predicted), _labels(gold)
    words = set(pred) | set(ref)
    if not words:
        return 0.0
    both = Counter((pred.get(w, w), ref.get(w, w)) for w in words)
    best: dict[str, int] = {}
    for (p, _), c in both.items():
        best[p] = max(best.get(p, 0), c)
    return sum(best.values()) / len(words)


def evaluate(predicted, gold) -> dict:
    p, r, f = bcubed(predicted, gold)
    words = set(_labels(predicted)) | set(_labels(gold))
    return {"precision": p, "recall": r, "f1": f, "purity": purity(predicted, gold), "n_words": len(words)}


# --- synthetic corpora -----------------------------------------------------

_ONSETS = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z",
           "br", "dr", "gr", "kl", "pr", "st", "tr", "sk", "pl", "fr"]
_NUCLEI = ["a", "e", "i", "o", "u", "ai", "ou", "ea"]
_CODAS = ["", "", "", "n", "r", "s", "l", "m", "t", "k"]


def pseudo_words(n: int, seed: int, min_len: int = 7, max_len: int = 12,
                 max_similarity: float = 0.4) -> list[str]:
    """``n`` pronounceable nonce words whose pairwise BLCSR stays at or below
    ``max_similarity``."""
    rng = random.Random(seed)
    words: list[str] = []
    attempts = 0
    while len(words) < n:
        attempts += 1
        if attempts > 1000 * n:
            raise RuntimeError("could not generate enough dissimilar words")
        w = ""
        while len(w) < min_len:
            w += rng.choice(_ONSETS) + rng.choice(_NUCLEI) + rng.choice(_CODAS)
        if len(w) > max_len or any(blcsr(w, o) > max_similarity for o in words):
            continue
        words.append(w)
    return words


def confusable_vocabulary(n: int, seed: int, min_len: int = 7, max_len: int = 12) -> list[str]:
    """``n`` nonce words arranged as ``n // 2`` sibling pairs.

    Siblings differ only in their last letter (like "kashmiri" and
    "kashmira"), so they look alike lexically; unrelated words stay far
    apart.  The result lists all first siblings, then the second ones
    rotated by one place, so that dealing words round-robin into topics
    never puts two siblings in the same topic.
    """
    rng = random.Random(seed)
    bases = pseudo_words(n - n // 2, seed, min_len, max_len)
    taken = set(bases)
    siblings = []
    for b in bases[: n // 2]:
        pool = "aeiou" if b[-1] in VOWELS else "bdfgklmnprstvz"
        options = [b[:-1] + ch for ch in pool
                   if b[:-1] + ch not in taken and b[:-1] + ch not in social_variants(b)
                   and b not in social_variants(b[:-1] + ch)]
        sib = rng.choice(options)
        taken.add(sib)
        siblings.append(sib)
    return bases + siblings[1:] + siblings[:1]


def topic_documents(vocab: Sequence[str], n_docs: int, seed: int, n_topics: int = 10,
                    doc_len: tuple[int, int] = (12, 18), off_topic: int = 1) -> list[list[str]]:
    """Short, microblog-like documents.

    Words are dealt round-robin into ``n_topics`` topics; a document draws
    distinct words from one topic plus ``off_topic`` words from anywhere, so
    no word occurs twice in a document.
    """
    rng = random.Random(seed)
    topics = [list(vocab[i::n_topics]) for i in range(n_topics)]
    docs = []
    for d in range(n_docs):
        topic = topics[d % n_topics]
        length = rng.randint(*doc_len)
        words = rng.sample(topic, min(length - off_topic, len(topic)))
        others = [w for w in vocab if w not in words]
        words += rng.sample(others, off_topic)
        rng.shuffle(words)
        docs.append(words)
    return docs


@dataclass(frozen=True)
class Fixture:
    vocab: list[str]
    clean: list[list[str]]
    noisy: Corpus
    gold: dict[str, str]


def make_fixture(n_docs: int = 2000, vocab_size: int = 200, rate: float = 0.15, seed: int = 42,
                 kind: str = "social", confusable: bool = True) -> Fixture:
    """Clean topic corpus plus its noisy version and gold map.

    With ``confusable`` the vocabulary is made of look-alike sibling pairs
    used in different topics.
    """
    if confusable:
        vocab = confusable_vocabulary(vocab_size, seed)
    else:
        vocab = pseudo_words(vocab_size, seed)
    clean = topic_documents(vocab, n_docs, seed)
    noisy, gold = inject_noise(clean, NoiseModel(kind=kind, rate=rate, seed=seed))
    return Fixture(vocab, clean, noisy, gold)


def family_documents(family: Mapping[str, int], forms: Sequence[str], context: Sequence[str],
                     filler: Sequence[str], seed: int, pair_rate: float = 0.3) -> list[list[str]]:
    """Documents for one word family, ``family[w]`` of them per word ``w``.

    Well-formed ``forms`` take four context words and sometimes a second
    form; the remaining (misspelled) words take only two context words and
    more random filler, as misspellings tend to turn up in sloppier text.
    """
    rng = random.Random(seed)
    docs = []
    for w, count in family.items():
        k = 4 if w in forms else 2
        for _ in range(count):
            d = rng.sample(list(context), k) + [w] + rng.sample(list(filler), 5 - k)
            if w in forms and rng.random() < pair_rate:
                d.append(rng.choice([f for f in forms if f != w]))
            rng.shuffle(d)
            docs.append(d)
    return docs


RELEASE_FAMILY = {"release": 120, "released": 40, "releases": 40, "relea": 10, "realease": 10}


def release_family_corpus(seed: int = 7, n_docs: int = 600, vocab_size: int = 60) -> Corpus:
    """A small topic corpus plus the release / released / releases family
    and two misspellings, all sharing one set of context words."""
    vocab = confusable_vocabulary(vocab_size, seed)
    docs = topic_documents(vocab, n_docs, seed)
    docs += family_documents(RELEASE_FAMILY, ["release", "released", "releases"],
                             ["album", "new", "single", "date", "tour", "band"], vocab, seed)
    return corpus_from_tokens(docs)
