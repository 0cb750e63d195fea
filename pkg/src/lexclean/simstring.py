"""String similarity kernels.

All functions work on Unicode code points (``str`` indexing), never on
bytes, so Bengali or accented text is handled per character.  Results are
memoized per word pair; the caches are plain ``functools.lru_cache``
instances and therefore safe under the GIL.
"""

from __future__ import annotations

import unicodedata
from functools import lru_cache
from typing import Sequence

_CACHE = 1 << 18


def _lcs(a: Sequence, b: Sequence) -> int:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            if x == y:
                cur.append(prev[j] + 1)
            else:
                cur.append(cur[j] if cur[j] > prev[j + 1] else prev[j + 1])
        prev = cur
    return prev[-1]


def bigrams(word: str) -> list[str]:
    return [word[i:i + 2] for i in range(len(word) - 1)]


@lru_cache(maxsize=_CACHE)
def lcs_len(a: str, b: str) -> int:
    """Length of the longest common subsequence of two words."""
    return _lcs(a, b)


@lru_cache(maxsize=_CACHE)
def blcs(a: str, b: str) -> int:
    """LCS length over the sequences of adjacent character bigrams.

    >>> blcs("ABCD", "ACD")
    1
    """
    return _lcs(bigrams(a), bigrams(b))


def blcsr(a: str, b: str) -> float:
    longest = max(len(a), len(b))
    if longest < 2:
        return 1.0 if a == b else 0.0
    return blcs(a, b) / (longest - 1.0)


def lcsr(a: str, b: str) -> float:
    if not a or not b:
        raise ValueError("lcsr is undefined for empty words")
    return lcs_len(a, b) / max(len(a), len(b))


@lru_cache(maxsize=_CACHE)
def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance with unit costs."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, 1):
        cur = [i]
        for j, y in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x != y)))
        prev = cur
    return prev[-1]


def edit_similarity(a: str, b: str) -> float:
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - edit_distance(a, b) / longest


def strip_diacritics(word: str) -> str:
    """Drop combining marks after canonical decomposition."""
    decomposed = unicodedata.normalize("NFD", word)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def diacritical_symmetry(a: str, b: str) -> int:
    """Part of the edit distance that disappears once diacritics are removed.

    ``cafe``/``café`` differ by one edit, their stripped forms by none, so the
    symmetry is 1.  Words without marks always give 0.
    """
    sa, sb = strip_diacritics(a), strip_diacritics(b)
    if sa == a and sb == b:
        return 0
    return max(0, edit_distance(a, b) - edit_distance(sa, sb))


def modified_edit_distance(a: str, b: str) -> int:
    return edit_distance(a, b) - diacritical_symmetry(a, b)


def enelvo_lcsr(a: str, b: str) -> float:
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return min(1.0, (lcs_len(a, b) + diacritical_symmetry(a, b)) / longest)


def clear_caches() -> None:
    for fn in (lcs_len, blcs, edit_distance):
        fn.cache_clear()
