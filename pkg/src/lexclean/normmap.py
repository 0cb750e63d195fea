"""Normalization maps: disjoint variant clusters and their rewrite function."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping


@dataclass(frozen=True)
class VariantCluster:
    canonical: str
    members: frozenset[str]

    def to_json(self) -> dict:
        return {"canonical": self.canonical, "members": sorted(self.members)}


@dataclass(frozen=True, eq=False)
class NormalizationMap:
    """Word -> canonical word.  Words without an entry map to themselves.

    ``rewrite`` holds one row per clustered word, canonicals included (they
    map to themselves), so applying the map twice changes nothing.
    """

    rewrite: dict[str, str]
    clusters: tuple[VariantCluster, ...] = field(default=())

    def __call__(self, word: str) -> str:
        return self.rewrite.get(word, word)

    def get(self, word: str, default: str | None = None) -> str | None:
        return self.rewrite.get(word, default)

    def __len__(self) -> int:
        return len(self.rewrite)

    def __eq__(self, other) -> bool:
        return isinstance(other, NormalizationMap) and self.rewrite == other.rewrite

    @classmethod
    def from_clusters(cls, clusters: Iterable[VariantCluster]) -> NormalizationMap:
        rewrite: dict[str, str] = {}
        kept = []
        for cl in sorted(clusters, key=lambda c: c.canonical):
            for w in [cl.canonical, *sorted(cl.members)]:
                prev = rewrite.setdefault(w, cl.canonical)
                if prev != cl.canonical:
                    raise ValueError(f"{w!r} assigned to both {prev!r} and {cl.canonical!r}")
            kept.append(VariantCluster(cl.canonical, frozenset(cl.members - {cl.canonical})))
        return cls(rewrite, tuple(kept))

    @classmethod
    def from_pairs(cls, pairs: Mapping[str, str]) -> NormalizationMap:
        groups: dict[str, set[str]] = {}
        for noisy, canon in pairs.items():
            groups.setdefault(canon, set())
            if noisy != canon:
                groups[canon].add(noisy)
        return cls.from_clusters(VariantCluster(c, frozenset(m)) for c, m in groups.items() if m)

    def check(self) -> None:
        """Raise AssertionError unless the map is disjoint and idempotent."""
        seen: set[str] = set()
        for cl in self.clusters:
            words = {cl.canonical, *cl.members}
            assert not (words & seen), f"clusters overlap on {sorted(words & seen)}"
            seen |= words
        for w, c in self.rewrite.items():
            assert self.rewrite.get(c, c) == c, f"rewrite not idempotent at {w!r} -> {c!r}"

    def to_tsv(self) -> str:
        return "".join(f"{w}\t{c}\n" for w, c in sorted(self.rewrite.items()))

    def write_tsv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_tsv(), encoding="utf-8")

    def write_clusters_json(self, path: str | Path) -> None:
        payload = [cl.to_json() for cl in self.clusters]
        Path(path).write_text(json.dumps(payload, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")


def read_tsv(path: str | Path) -> dict[str, str]:
    pairs: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise ValueError(f"{path}:{lineno}: expected 2 tab-separated columns")
            if cols[0] in pairs and pairs[cols[0]] != cols[1]:
                raise ValueError(f"{path}:{lineno}: {cols[0]!r} mapped twice")
            pairs[cols[0]] = cols[1]
    return pairs


def load_map(path: str | Path) -> NormalizationMap:
    return NormalizationMap.from_pairs(read_tsv(path))


def club(per_word: Iterable[tuple[str, Iterable[str]]], rank: Callable[[str], tuple],
         eligible: set[str] | None = None) -> NormalizationMap:
    """Merge overlapping per-word clusters into disjoint ones.

    ``per_word`` yields ``(clean_word, variants)``.  Clusters that share a
    word are merged transitively; each merged cluster is named after its
    best word under ``rank`` (lower sorts first) among the ``eligible``
    canonicals, which default to the clean words that brought variants.
    """
    parent: dict[str, str] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    heads: set[str] = set()
    for clean, variants in per_word:
        variants = [v for v in variants if v != clean]
        if not variants:
            continue
        heads.add(clean)
        root = find(clean)
        for v in variants:
            rv = find(v)
            if rv != root:
                parent[rv] = root
    groups: dict[str, set[str]] = {}
    for w in parent:
        groups.setdefault(find(w), set()).add(w)
    clusters = []
    for words in groups.values():
        pool = (words & eligible) if eligible is not None else set()
        canonical = min(pool or (words & heads), key=rank)
        clusters.append(VariantCluster(canonical, frozenset(words - {canonical})))
    return NormalizationMap.from_clusters(clusters)
