"""Slow, obviously-correct reference implementations used by the tests.

None of these share code with the package: subsequences are enumerated,
edit distance is plain recursion, and modularity is the dense-matrix
formula evaluated over every set partition.
"""

from __future__ import annotations

import itertools
import unicodedata

import numpy as np


def is_subsequence(sub, seq) -> bool:
    it = iter(seq)
    return all(x in it for x in sub)


def lcs_brute(a, b) -> int:
    """Longest common subsequence by enumerating subsequences of the shorter input."""
    a, b = list(a), list(b)
    if len(a) > len(b):
        a, b = b, a
    for size in range(len(a), 0, -1):
        for idx in itertools.combinations(range(len(a)), size):
            if is_subsequence([a[i] for i in idx], b):
                return size
    return 0


def char_bigrams(word: str) -> list[str]:
    return [word[i:i + 2] for i in range(len(word) - 1)]


def blcs_brute(a: str, b: str) -> int:
    return lcs_brute(char_bigrams(a), char_bigrams(b))


def edit_distance_brute(a: str, b: str) -> int:
    """Levenshtein distance by unmemoised recursion (exponential)."""
    if not a:
        return len(b)
    if not b:
        return len(a)
    if a[0] == b[0]:
        # matching the first characters is always optimal
        return edit_distance_brute(a[1:], b[1:])
    return 1 + min(edit_distance_brute(a[1:], b),
                   edit_distance_brute(a, b[1:]),
                   edit_distance_brute(a[1:], b[1:]))


def strip_marks(word: str) -> str:
    return "".join(ch for ch in unicodedata.normalize("NFD", word) if not unicodedata.combining(ch))


def set_partitions(items):
    """Every partition of ``items`` as a list of blocks (restricted growth strings)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first], *part]
        for i in range(len(part)):
            yield [*part[:i], [first, *part[i]], *part[i + 1:]]


def modularity_dense(nodes, edges, blocks) -> float:
    """Q = 1/2m * sum_ij (A_ij - k_i k_j / 2m) [c_i == c_j] on a dense matrix."""
    pos = {n: i for i, n in enumerate(nodes)}
    a = np.zeros((len(nodes), len(nodes)))
    for (u, v), w in edges.items():
        a[pos[u], pos[v]] += w
        a[pos[v], pos[u]] += w
    k = a.sum(axis=1)
    two_m = a.sum()
    if two_m == 0:
        return 0.0
    label = np.empty(len(nodes), dtype=int)
    for c, block in enumerate(blocks):
        for n in block:
            label[pos[n]] = c
    same = label[:, None] == label[None, :]
    return float(((a - np.outer(k, k) / two_m) * same).sum() / two_m)


def best_modularity(nodes, edges) -> float:
    return max(modularity_dense(nodes, edges, p) for p in set_partitions(nodes))


def is_connected(nodes, edges) -> bool:
    if not nodes:
        return True
    adj = {n: set() for n in nodes}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, stack = {nodes[0]}, [nodes[0]]
    while stack:
        for nb in adj[stack.pop()] - seen:
            seen.add(nb)
            stack.append(nb)
    return len(seen) == len(nodes)


def random_graph_suite(n_graphs: int = 50, seed: int = 0, max_nodes: int = 8):
    """Connected weighted graphs with 3..max_nodes nodes."""
    rng = np.random.default_rng(seed)
    suite = []
    while len(suite) < n_graphs:
        n = int(rng.integers(3, max_nodes + 1))
        nodes = [f"n{i}" for i in range(n)]
        p = rng.uniform(0.25, 0.7)
        edges = {}
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < p:
                    edges[(nodes[i], nodes[j])] = float(rng.integers(1, 6)) if rng.random() < 0.5 else 1.0
        if edges and is_connected(nodes, edges):
            suite.append((nodes, edges))
    return suite


def sgns_loss_brute(w_in, w_out, centers, contexts, negatives) -> float:
    """Negative-sampling loss summed pair by pair with plain logs."""
    total = 0.0
    for c, o, negs in zip(centers, contexts, negatives):
        v = w_in[c]
        total -= np.log(1.0 / (1.0 + np.exp(-(w_out[o] @ v))))
        for n in negs:
            total -= np.log(1.0 / (1.0 + np.exp(w_out[n] @ v)))
    return float(total)


def central_difference(f, x: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Numerical gradient of scalar ``f`` with respect to every entry of ``x`` (in place)."""
    grad = np.zeros_like(x)
    for idx in np.ndindex(x.shape):
        orig = x[idx]
        x[idx] = orig + h
        up = f()
        x[idx] = orig - h
        down = f()
        x[idx] = orig
        grad[idx] = (up - down) / (2 * h)
    return grad


def relative_error(a: np.ndarray, b: np.ndarray, floor: float = 1e-8) -> float:
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(a) + np.abs(b), floor)))
