import pytest

from lexclean.graph import (Partition, VariantGraph, ghosh_congregate, ghosh_prune, louvain, modularity,
                            singletons, strongest_neighbors)

from oracles import best_modularity, modularity_dense, random_graph_suite, set_partitions

TRIANGLES = VariantGraph.build("abcdef", {("a", "b"): 1, ("b", "c"): 1, ("a", "c"): 1,
                                          ("d", "e"): 1, ("e", "f"): 1, ("d", "f"): 1})


def blocks(p: Partition):
    return sorted(sorted(c) for c in p.communities())


class TestVariantGraph:
    def test_build_validates(self):
        with pytest.raises(ValueError):
            VariantGraph.build("ab", {("a", "a"): 1})
        with pytest.raises(ValueError):
            VariantGraph.build("ab", {("a", "z"): 1})
        with pytest.raises(ValueError):
            VariantGraph.build("ab", {("a", "b"): -1})

    def test_undirected(self):
        g = VariantGraph.build("ab", [("b", "a", 2.5)])
        assert g.weight("a", "b") == g.weight("b", "a") == 2.5
        assert g.neighbors() == {"a": {"b": 2.5}, "b": {"a": 2.5}}

    def test_edgelist(self, tmp_path):
        TRIANGLES.write_edgelist(tmp_path / "g.txt")
        lines = (tmp_path / "g.txt").read_text().splitlines()
        assert len(lines) == 6 and lines[0] == "a b 1.0"


class TestModularity:
    def test_triangles(self):
        p = Partition.from_groups(["abc", "def"])
        assert modularity(TRIANGLES, p) == pytest.approx(0.5, abs=1e-12)

    def test_one_community_is_zero(self):
        for nodes, edges in random_graph_suite(10, seed=3):
            g = VariantGraph.build(nodes, edges)
            assert modularity(g, Partition.from_groups([nodes])) == pytest.approx(0.0, abs=1e-12)

    def test_single_edge_split(self):
        g = VariantGraph.build("ab", {("a", "b"): 1})
        assert modularity(g, singletons(g)) == pytest.approx(-0.5)

    def test_edgeless(self):
        g = VariantGraph.build("abc")
        assert modularity(g, singletons(g)) == 0.0

    def test_matches_dense_formula(self):
        for nodes, edges in random_graph_suite(10, seed=4, max_nodes=6):
            g = VariantGraph.build(nodes, edges)
            for part in list(set_partitions(nodes))[:40]:
                assert modularity(g, Partition.from_groups(part)) == pytest.approx(
                    modularity_dense(nodes, edges, part), abs=1e-12)

    def test_missing_node(self):
        with pytest.raises(KeyError):
            modularity(TRIANGLES, Partition({"a": 0}))


class TestOracle:
    def test_bell_numbers(self):
        assert [sum(1 for _ in set_partitions(range(n))) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]


class TestLouvain:
    def test_two_triangles(self):
        p = louvain(TRIANGLES, seed=0)
        assert blocks(p) == [["a", "b", "c"], ["d", "e", "f"]]
        assert modularity(TRIANGLES, p) == pytest.approx(0.5, abs=1e-9)

    def test_empty(self):
        assert louvain(VariantGraph(()), seed=0).assignment == {}

    def test_isolated_nodes_are_singletons(self):
        g = VariantGraph.build("abcxy", {("a", "b"): 1, ("b", "c"): 1, ("a", "c"): 1})
        p = louvain(g, seed=1)
        assert ["x"] in blocks(p) and ["y"] in blocks(p)

    def test_weightless_graph(self):
        g = VariantGraph.build("abc", {("a", "b"): 0.0})
        assert louvain(g, seed=0).n_communities == 3

    @pytest.mark.parametrize("seed", range(5))
    def test_near_optimal_on_small_graphs(self, seed):
        for nodes, edges in random_graph_suite(8, seed=100 + seed, max_nodes=7):
            g = VariantGraph.build(nodes, edges)
            q = modularity(g, louvain(g, seed=seed))
            assert q >= best_modularity(nodes, edges) - 0.05
            assert q >= modularity(g, singletons(g)) - 1e-12

    def test_seed_determinism(self):
        nodes, edges = random_graph_suite(1, seed=9)[0]
        g = VariantGraph.build(nodes, edges)
        assert louvain(g, seed=5) == louvain(g, seed=5)

    def test_scale_invariant(self):
        for nodes, edges in random_graph_suite(5, seed=11):
            g = VariantGraph.build(nodes, edges)
            assert louvain(g, seed=2) == louvain(g.scaled(0.001), seed=2)

    def test_larger_community_numbered_first(self):
        g = VariantGraph.build("abcdxy", {("a", "b"): 1, ("b", "c"): 1, ("a", "c"): 1, ("c", "d"): 1,
                                          ("b", "d"): 1, ("x", "y"): 1})
        comms = louvain(g, seed=0).communities()
        assert comms[0] == ["a", "b", "c", "d"]
        assert comms[1] == ["x", "y"]


class TestGhosh:
    def test_prune_above_gamma(self):
        g = VariantGraph.build("abcd", {("a", "b"): 100, ("b", "c"): 69.9, ("c", "d"): 70})
        pruned = ghosh_prune(g, 0.7, 50)
        assert set(pruned.edges) == {("a", "b"), ("c", "d")}

    def test_no_prune_below_gamma(self):
        g = VariantGraph.build("abc", {("a", "b"): 40, ("b", "c"): 1})
        assert ghosh_prune(g, 0.7, 50).edges == g.edges

    def test_prune_empty(self):
        assert ghosh_prune(VariantGraph(()), 0.6, 50).edges == {}

    def test_path(self):
        g = VariantGraph.build("abc", {("a", "b"): 5, ("b", "c"): 9})
        assert strongest_neighbors(g) == {"a": "b", "b": "c", "c": "b"}
        assert blocks(ghosh_congregate(g)) == [["a", "b", "c"]]

    def test_two_edges(self):
        g = VariantGraph.build("abcd", {("a", "b"): 1, ("c", "d"): 1})
        assert blocks(ghosh_congregate(g)) == [["a", "b"], ["c", "d"]]

    def test_star(self):
        g = VariantGraph.build("sabcd", {("s", x): 1 for x in "abcd"})
        assert blocks(ghosh_congregate(g)) == [["a", "b", "c", "d", "s"]]

    def test_tie_goes_to_smaller_word(self):
        g = VariantGraph.build("abc", {("a", "b"): 2, ("a", "c"): 2})
        assert strongest_neighbors(g)["a"] == "b"

    def test_strongest_pairs_never_split(self):
        for nodes, edges in random_graph_suite(20, seed=5):
            g = VariantGraph.build(nodes, edges)
            p = ghosh_congregate(g)
            for u, v in strongest_neighbors(g).items():
                assert p.assignment[u] == p.assignment[v]
