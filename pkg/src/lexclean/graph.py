"""Weighted word graphs, modularity and community detection."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping


def _key(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True, eq=False)
class VariantGraph:
    """Undirected weighted graph over words.  No self-loops."""

    nodes: tuple[str, ...]
    edges: dict[tuple[str, str], float] = field(default_factory=dict)

    @classmethod
    def build(cls, nodes: Iterable[str], edges: Mapping[tuple[str, str], float] | Iterable = ()) -> VariantGraph:
        nodes = tuple(dict.fromkeys(nodes))
        known = set(nodes)
        items = edges.items() if isinstance(edges, Mapping) else (((u, v), w) for u, v, w in edges)
        out: dict[tuple[str, str], float] = {}
        for (u, v), w in items:
            if u == v:
                raise ValueError(f"self-loop on {u!r}")
            if u not in known or v not in known:
                raise ValueError(f"edge ({u!r}, {v!r}) references an unknown node")
            if w < 0:
                raise ValueError("edge weights must be nonnegative")
            out[_key(u, v)] = float(w)
        return cls(nodes, out)

    def weight(self, u: str, v: str) -> float:
        return self.edges.get(_key(u, v), 0.0)

    def total_weight(self) -> float:
        return sum(self.edges.values())

    def max_weight(self) -> float:
        return max(self.edges.values(), default=0.0)

    def neighbors(self) -> dict[str, dict[str, float]]:
        adj: dict[str, dict[str, float]] = {n: {} for n in self.nodes}
        for (u, v), w in self.edges.items():
            adj[u][v] = w
            adj[v][u] = w
        return adj

    def scaled(self, factor: float) -> VariantGraph:
        return VariantGraph(self.nodes, {k: w * factor for k, w in self.edges.items()})

    def write_edgelist(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for (u, v), w in sorted(self.edges.items()):
                fh.write(f"{u} {v} {w!r}\n")


@dataclass(frozen=True)
class Partition:
    assignment: dict[str, int]

    def __len__(self) -> int:
        return len(self.assignment)

    @property
    def n_communities(self) -> int:
        return len(set(self.assignment.values()))

    def communities(self) -> list[list[str]]:
        """Members of each community, indexed by community id."""
        groups: list[list[str]] = [[] for _ in range(self.n_communities)]
        for node, c in self.assignment.items():
            groups[c].append(node)
        return groups

    @classmethod
    def from_groups(cls, groups: Iterable[Iterable[str]]) -> Partition:
        assignment = {}
        for c, members in enumerate(groups):
            for m in members:
                if m in assignment:
                    raise ValueError(f"{m!r} assigned twice")
                assignment[m] = c
        return cls(assignment)


def _relabel(nodes: Iterable[str], label: Mapping[str, object]) -> Partition:
    """Renumber communities 0.. largest first, equal sizes by smallest member."""
    groups: dict[object, list[str]] = {}
    for n in nodes:
        groups.setdefault(label[n], []).append(n)
    ranked = sorted(groups.values(), key=lambda g: (-len(g), min(g)))
    return Partition({n: c for c, g in enumerate(ranked) for n in g})


def singletons(g: VariantGraph) -> Partition:
    return _relabel(g.nodes, {n: n for n in g.nodes})


def modularity(g: VariantGraph, p: Partition) -> float:
    """Newman modularity with weighted degrees; zero for edgeless graphs."""
    for n in g.nodes:
        if n not in p.assignment:
            raise KeyError(f"node {n!r} missing from partition")
    m = g.total_weight()
    if m <= 0:
        return 0.0
    degree = dict.fromkeys(g.nodes, 0.0)
    inside = 0.0
    for (u, v), w in g.edges.items():
        degree[u] += w
        degree[v] += w
        if p.assignment[u] == p.assignment[v]:
            inside += w
    tot: dict[int, float] = {}
    for n, k in degree.items():
        c = p.assignment[n]
        tot[c] = tot.get(c, 0.0) + k
    return inside / m - sum(t * t for t in tot.values()) / (4.0 * m * m)


def _one_level(adj, loops, order, m2):
    """Local moving phase.  Returns node -> community and whether anything moved."""
    n = len(adj)
    degree = [sum(a.values()) + 2.0 * loops[i] for i, a in enumerate(adj)]
    comm = list(range(n))
    tot = degree[:]
    moved_any = False
    improved = True
    while improved:
        improved = False
        for i in order:
            ci = comm[i]
            ki = degree[i]
            links: dict[int, float] = {}
            for j, w in adj[i].items():
                links[comm[j]] = links.get(comm[j], 0.0) + w
            tot[ci] -= ki
            best, best_gain = ci, links.get(ci, 0.0) - tot[ci] * ki / m2
            for c in sorted(links):
                gain = links[c] - tot[c] * ki / m2
                if gain > best_gain + 1e-12:
                    best, best_gain = c, gain
            tot[best] += ki
            if best != ci:
                comm[i] = best
                improved = moved_any = True
    return comm, moved_any


def louvain(g: VariantGraph, seed: int = 0) -> Partition:
    """Two-phase Louvain community detection (resolution 1).

    Node visiting order is shuffled once per level with ``seed``.  Isolated
    nodes and graphs without weight end up as singletons.
    """
    if not g.nodes:
        return Partition({})
    if g.total_weight() <= 0:
        return singletons(g)
    rng = random.Random(seed)
    index = {w: i for i, w in enumerate(g.nodes)}
    adj: list[dict[int, float]] = [{} for _ in g.nodes]
    for (u, v), w in g.edges.items():
        if w > 0:
            adj[index[u]][index[v]] = w
            adj[index[v]][index[u]] = w
    loops = [0.0] * len(adj)
    m2 = 2.0 * g.total_weight()
    membership = list(range(len(adj)))

    while True:
        order = list(range(len(adj)))
        rng.shuffle(order)
        comm, moved = _one_level(adj, loops, order, m2)
        if not moved:
            break
        renum: dict[int, int] = {}
        for c in comm:
            renum.setdefault(c, len(renum))
        membership = [renum[comm[c]] for c in membership]
        new_adj: list[dict[int, float]] = [{} for _ in renum]
        new_loops = [0.0] * len(renum)
        for i, a in enumerate(adj):
            ci = renum[comm[i]]
            new_loops[ci] += loops[i]
            for j, w in a.items():
                cj = renum[comm[j]]
                if ci == cj:
                    # each internal edge is seen from both ends
                    new_loops[ci] += w / 2.0
                else:
                    new_adj[ci][cj] = new_adj[ci].get(cj, 0.0) + w
        adj, loops = new_adj, new_loops
        if len(adj) == 1:
            break
    return _relabel(g.nodes, dict(zip(g.nodes, membership)))


def ghosh_prune(g: VariantGraph, beta_fraction: float, gamma: float) -> VariantGraph:
    """Drop edges lighter than ``beta_fraction`` of the heaviest one.

    Pruning only happens when the heaviest edge is above ``gamma``.
    """
    if not 0.0 < beta_fraction < 1.0:
        raise ValueError("beta_fraction must lie in (0, 1)")
    top = g.max_weight()
    if top <= gamma:
        return g
    cut = beta_fraction * top
    return VariantGraph(g.nodes, {k: w for k, w in g.edges.items() if w >= cut})


def strongest_neighbors(g: VariantGraph) -> dict[str, str]:
    """Each non-isolated node's heaviest neighbour (ties: smaller word)."""
    out = {}
    for node, nbrs in g.neighbors().items():
        if nbrs:
            out[node] = min(nbrs, key=lambda v: (-nbrs[v], v))
    return out


def ghosh_congregate(g: VariantGraph) -> Partition:
    """Group nodes linked by the strongest-neighbour relation (either way)."""
    parent = {n: n for n in g.nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in strongest_neighbors(g).items():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    return _relabel(g.nodes, {n: find(n) for n in g.nodes})
