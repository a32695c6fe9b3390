"""Relation graph: validation, queries, chaining, document round-trips."""

from __future__ import annotations

import random

import pytest

from crosstrace.errors import InvalidArgumentError, NotFoundError
from crosstrace.model import (
    Bicluster,
    Chain,
    Entity,
    RelationGraph,
    View,
    chain_biclusters,
)


def three_view_graph(relations):
    views = [View("map", "map", (0, 0, 100, 100)),
             View("bar", "barChart", (150, 0, 100, 100)),
             View("graph", "nodeLinkGraph", (300, 0, 100, 100))]
    entities = []
    for i in range(4):
        entities.append(Entity(f"m{i}", "location", f"M{i}", (10 + i * 5, 20), "map"))
        entities.append(Entity(f"b{i}", "organization", f"B{i}", (160 + i * 5, 20), "bar"))
        entities.append(Entity(f"g{i}", "person", f"G{i}", (310 + i * 5, 20), "graph"))
    return RelationGraph(views, entities, relations)


class TestValidation:
    def test_duplicate_entity_id_rejected(self):
        views = [View("v1", "map", (0, 0, 10, 10)), View("v2", "barChart", (20, 0, 10, 10))]
        ents = [Entity("e", "location", "E", (1, 1), "v1"),
                Entity("e", "organization", "E2", (21, 1), "v2")]
        with pytest.raises(InvalidArgumentError):
            RelationGraph(views, ents, [])

    def test_position_outside_view_rejected(self):
        views = [View("v1", "map", (0, 0, 10, 10))]
        with pytest.raises(InvalidArgumentError):
            RelationGraph(views, [Entity("e", "location", "E", (50, 50), "v1")], [])

    def test_overlapping_views_rejected(self):
        views = [View("v1", "map", (0, 0, 10, 10)), View("v2", "barChart", (5, 5, 10, 10))]
        with pytest.raises(InvalidArgumentError):
            RelationGraph(views, [], [])

    def test_same_view_relation_rejected(self):
        views = [View("v1", "map", (0, 0, 10, 10)), View("v2", "barChart", (20, 0, 10, 10))]
        ents = [Entity("a", "location", "A", (1, 1), "v1"),
                Entity("b", "location", "B", (2, 2), "v1")]
        with pytest.raises(InvalidArgumentError):
            RelationGraph(views, ents, [("a", "b")])

    def test_missing_endpoint_rejected(self):
        views = [View("v1", "map", (0, 0, 10, 10))]
        ents = [Entity("a", "location", "A", (1, 1), "v1")]
        with pytest.raises(InvalidArgumentError):
            RelationGraph(views, ents, [("a", "ghost")])

    def test_duplicate_unordered_pair_rejected(self):
        views = [View("v1", "map", (0, 0, 10, 10)), View("v2", "barChart", (20, 0, 10, 10))]
        ents = [Entity("a", "location", "A", (1, 1), "v1"),
                Entity("b", "organization", "B", (21, 1), "v2")]
        with pytest.raises(InvalidArgumentError):
            RelationGraph(views, ents, [("a", "b"), ("b", "a")])


class TestRelatedElements:
    def test_isolated_element_empty(self):
        g = three_view_graph([])
        assert g.related_elements("m0") == {}

    def test_direct_lookup(self):
        g = three_view_graph([("m0", "b1"), ("m0", "b2")])
        assert g.related_elements("m0") == {"bar": ["b1", "b2"]}

    def test_unknown_id_raises(self):
        g = three_view_graph([])
        with pytest.raises(NotFoundError):
            g.related_elements("nope")

    def test_matches_linear_scan_oracle(self):
        rng = random.Random(3)
        all_pairs = [(f"m{i}", f"b{j}") for i in range(4) for j in range(4)]
        all_pairs += [(f"b{i}", f"g{j}") for i in range(4) for j in range(4)]
        rels = rng.sample(all_pairs, 12)
        g = three_view_graph(rels)
        for eid in list(g.entities):
            # oracle: scan the raw relation list
            want = sorted({b for a, b in rels if a == eid} | {a for a, b in rels if b == eid})
            assert g.related_flat(eid) == want

    def test_symmetry(self):
        rng = random.Random(9)
        all_pairs = [(f"m{i}", f"b{j}") for i in range(4) for j in range(4)]
        rels = rng.sample(all_pairs, 7)
        g = three_view_graph(rels)
        for x in list(g.entities):
            for y in g.related_flat(x):
                assert x in g.related_flat(y)


class TestChaining:
    def b(self, lv, rv, left, right):
        return Bicluster(lv, rv, tuple(left), tuple(right))

    def test_shared_middle(self):
        c = chain_biclusters(self.b("map", "bar", ["m1", "m2"], ["b1", "b2"]),
                             self.b("bar", "graph", ["b2", "b3"], ["g1", "g2"]))
        assert isinstance(c, Chain)
        assert c.shared == ("b2",)

    def test_disjoint_middle(self):
        c = chain_biclusters(self.b("map", "bar", ["m1", "m2"], ["b1", "b2"]),
                             self.b("bar", "graph", ["b3", "b4"], ["g1", "g2"]))
        assert c is None

    def test_view_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            chain_biclusters(self.b("map", "bar", ["m1"], ["b1"]),
                             self.b("map", "bar", ["m1"], ["b1"]))

    def test_all_pairs_match_intersection_oracle(self):
        rng = random.Random(11)
        pairs1 = [(f"m{i}", f"b{j}") for i in range(4) for j in range(4)]
        pairs2 = [(f"b{i}", f"g{j}") for i in range(4) for j in range(4)]
        rels = rng.sample(pairs1, 10) + rng.sample(pairs2, 10)
        g = three_view_graph(rels)
        first = g.biclusters_between("map", "bar")
        second = g.biclusters_between("bar", "graph")
        got = g.bicluster_chains()
        want = []
        for b1 in first:
            for b2 in second:
                shared = sorted(set(b1.right_entities) & set(b2.left_entities))
                if shared:
                    want.append((b1, b2, tuple(shared)))
        assert [(c.first, c.second, c.shared) for c in got] == want


class TestDocumentRoundTrip:
    def test_round_trip(self):
        g = three_view_graph([("m0", "b0"), ("b0", "g0")])
        doc = g.to_document()
        g2 = RelationGraph.from_document(doc)
        assert g2.to_document() == doc
        assert sorted(g2.entities) == sorted(g.entities)
        assert g2.relations == g.relations

    def test_adjacent_view_pairs_in_x_order(self):
        g = three_view_graph([])
        assert g.adjacent_view_pairs() == [("map", "bar"), ("bar", "graph")]
