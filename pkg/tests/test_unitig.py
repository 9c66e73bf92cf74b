import random

import pytest

from asmlab import graph as dbg
from asmlab.sequence import ReadSet
from asmlab.simulate import idealized_reads, random_genome
from asmlab.unitig import (
    check_safety_preconditions,
    is_safe_bounded,
    maximal_unitigs,
    safety_suite,
    unitig_contigs,
)


def graph_of(text: str, k: int = 3) -> dbg.DeBruijnGraph:
    return dbg.build(ReadSet(tuple(idealized_reads(text, k))), k)


class TestMaximalUnitigs:
    def test_running_example_partition(self, fig_graph):
        partition = maximal_unitigs(fig_graph)
        assert set(partition.unitigs) == {
            ("AT", "TT", "TC", "CC", "CA", "AG"),
            ("AA",),
            ("GT",),
            ("GC", "CT", "TG", "GA"),
        }

    def test_partition_covers_every_vertex_once(self):
        rng = random.Random(11)
        for _ in range(50):
            g = graph_of(str(random_genome(rng.randint(5, 30), seed=rng.randrange(2**63))))
            partition = maximal_unitigs(g)
            flattened = [v for path in partition.unitigs for v in path]
            assert sorted(flattened) == list(g.vertices)
            assert maximal_unitigs(g).unitigs == partition.unitigs  # unique

    def test_single_isolated_vertex(self):
        g = dbg.build(ReadSet.of("AC"), 3)
        assert maximal_unitigs(g).unitigs == (("AC",),)

    def test_pure_cycle_is_one_unitig(self):
        g = dbg.DeBruijnGraph(3, ["ACG", "CGT", "GTA", "TAC"])
        partition = maximal_unitigs(g)
        assert len(partition.unitigs) == 1
        assert len(partition.unitigs[0]) == 4

    def test_labeled_bubble_graph_paths(self):
        g = dbg.make_bubble_graph(3, labeled_paths=True)
        # source, entry junction, per bubble: top + bottom interior paths,
        # the two inter-bubble connectors, last exit, sink
        assert len(maximal_unitigs(g).unitigs) == 3 * 3 + 3


class TestUnitigContigs:
    def test_running_example_spellings(self, fig_graph):
        contigs = unitig_contigs(fig_graph)
        assert [str(c.sequence) for c in contigs] == ["AA", "ATTCCAG", "GCTGA", "GT"]
        assert all(c.source == "unitig" for c in contigs)

    def test_single_edge_graph(self):
        g = dbg.build(ReadSet.of("ACGT"), 4)
        assert [str(c.sequence) for c in unitig_contigs(g)] == ["ACGT"]

    def test_simple_path_spells_whole_string(self):
        g = graph_of("ACGTCA")
        contigs = unitig_contigs(g)
        assert [str(c.sequence) for c in contigs] == ["ACGTCA"]

    def test_labeled_bubble_count(self):
        g = dbg.make_bubble_graph(3, labeled_paths=True)
        assert len(unitig_contigs(g)) == 12


class TestPreconditions:
    def test_running_example_satisfies(self, fig_graph):
        report = check_safety_preconditions(fig_graph)
        assert report.sources == ("AA",)
        assert report.sinks == ("GT",)
        assert report.covering_walk_exists
        assert report.satisfied

    def test_cycle_has_no_source_or_sink(self):
        g = dbg.DeBruijnGraph(3, ["ACG", "CGT", "GTA", "TAC"])
        report = check_safety_preconditions(g)
        assert not report.sources and not report.sinks
        assert report.covering_walk_exists
        assert not report.satisfied

    def test_disjoint_edges_fail(self):
        g = dbg.DeBruijnGraph(3, ["ACG", "TTG"])
        report = check_safety_preconditions(g)
        assert not report.covering_walk_exists
        assert not report.satisfied


class TestIsSafeBounded:
    def test_single_edge_always_safe(self, fig_graph):
        verdict = is_safe_bounded(fig_graph, dbg.Walk(fig_graph, ("AAT",)),
                                  fig_graph.num_edges)
        assert verdict.status == "safe"

    def test_nonisolated_vertex_safe(self, fig_graph):
        assert is_safe_bounded(fig_graph, "AA", fig_graph.num_edges).status == "safe"

    def test_isolated_vertex_unsafe(self):
        g = dbg.build(ReadSet.of("ACGT", "TT"), 3)
        assert is_safe_bounded(g, "TT", g.num_edges).status == "unsafe"

    def test_bound_below_edge_count_rejected(self, fig_graph):
        with pytest.raises(ValueError, match="below the edge count"):
            is_safe_bounded(fig_graph, dbg.Walk(fig_graph, ("AAT",)), 3)

    def test_connector_then_top_branch_is_safe_nonunitig(self):
        # every covering walk re-enters the second bubble straight after the
        # connector at least once, so connector+branch is safe yet not a unitig
        g, names = dbg.make_bubble_graph_with_names(2)
        edge = lambda u, w: names[u] + names[w][-1]
        candidate = dbg.Walk(g, (edge("jx0", "j1"), edge("j1", "jx1")))
        assert is_safe_bounded(g, candidate, 2 * g.num_edges + g.k).status == "safe"

    def test_branch_connector_branch_is_unsafe(self):
        # a covering walk can pair the top of bubble 2 with the bottom of
        # bubble 3 on each pass, avoiding the top-top combination entirely
        g, names = dbg.make_bubble_graph_with_names(3)
        edge = lambda u, w: names[u] + names[w][-1]
        candidate = dbg.Walk(g, (edge("j1", "jx1"), edge("jx1", "j2"), edge("j2", "jx2")))
        verdict = is_safe_bounded(g, candidate, 2 * g.num_edges + g.k)
        assert verdict.status == "unsafe"
        witness = verdict.witness
        assert dbg.is_edge_covering(witness)
        assert all(witness.edges[i:i + 3] != candidate.edges
                   for i in range(len(witness.edges) - 2))

    def test_textbook_alternating_walk_is_a_witness(self):
        # the alternating traversal (bottom/top/bottom then top/bottom/top)
        # covers everything without ever pairing top-connector-top
        g, names = dbg.make_bubble_graph_with_names(3)
        edge = lambda u, w: names[u] + names[w][-1]
        hops = [("a0", "j0"), ("j0", "x0"), ("x0", "jx0"), ("jx0", "j1"),
                ("j1", "jx1"), ("jx1", "j2"), ("j2", "x2"), ("x2", "jx2"),
                ("jx2", "j0"), ("j0", "jx0"), ("jx0", "j1"), ("j1", "x1"),
                ("x1", "jx1"), ("jx1", "j2"), ("j2", "jx2"), ("jx2", "h0")]
        walk = dbg.Walk(g, tuple(edge(u, w) for u, w in hops))
        assert dbg.is_edge_covering(walk)
        optimum, _ = dbg.oracle_shortest_edge_covering_walk(g, mode="count_all")
        assert len(walk.edges) == optimum
        candidate = (edge("j1", "jx1"), edge("jx1", "j2"), edge("j2", "jx2"))
        assert all(walk.edges[i:i + 3] != candidate
                   for i in range(len(walk.edges) - 2))

    def test_long_nonunitig_contig_on_running_example(self, fig_graph):
        # trunk, repeat loop, trunk again: safe but spans several unitigs
        verts = ["AA", "AT", "TT", "TC", "CC", "CA", "AG", "GC", "CT", "TG",
                 "GA", "AT", "TT", "TC", "CC", "CA", "AG"]
        walk = dbg.Walk(fig_graph,
                        tuple(u + w[-1] for u, w in zip(verts, verts[1:])))
        verdict = is_safe_bounded(fig_graph, walk, 2 * fig_graph.num_edges + fig_graph.k)
        assert verdict.status == "safe"
        assert dbg.spell(walk) == "AATTCCAGCTGATTCCAG"


class TestSafetySuite:
    def test_running_example_all_safe(self, fig_graph):
        report = safety_suite(fig_graph, unitig_contigs(fig_graph), bound=24)
        assert report.applicable
        assert [r.verdict for r in report.rows] == ["safe"] * 4
        assert not report.bug_flags
        assert report.unknown_count == 0

    def test_bubble_graph_unitigs_safe(self):
        g = dbg.make_bubble_graph(2)
        report = safety_suite(g, unitig_contigs(g))
        assert report.applicable
        assert all(r.verdict == "safe" for r in report.rows)

    def test_precondition_failure_marks_not_applicable(self):
        g = dbg.DeBruijnGraph(3, ["ACG", "CGT", "GTA", "TAC"])
        report = safety_suite(g, unitig_contigs(g))
        assert not report.applicable
        assert report.rows == ()

    def test_tsv_rendering(self, fig_graph):
        report = safety_suite(fig_graph, unitig_contigs(fig_graph))
        lines = report.to_tsv().strip().splitlines()
        assert lines[0] == "contig\tverdict\twitness_length"
        assert len(lines) == 5

    def test_generated_graphs_certify_unitig_safety(self):
        rng = random.Random(606)
        evaluated = 0
        attempts = 0
        while evaluated < 15 and attempts < 200:
            attempts += 1
            g = graph_of(str(random_genome(rng.randint(6, 12), seed=rng.randrange(2**63))))
            if g.num_edges == 0 or g.num_edges > 12:
                continue
            if not check_safety_preconditions(g).satisfied:
                continue
            evaluated += 1
            report = safety_suite(g, unitig_contigs(g), bound=2 * g.num_edges + g.k)
            assert not report.bug_flags
            assert report.unknown_count == 0
        assert evaluated >= 15
