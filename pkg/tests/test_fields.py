import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from scholnet import (
    FieldHierarchy,
    FieldNode,
    HierarchyError,
    NotFoundError,
    Paper,
    assign_fields,
    author_field_weights,
    author_primary_field,
    build_corpus,
    filter_corpus,
    load_hierarchy,
    paper_field_weights,
    parents_of,
)
from scholnet.fields import primary_field

from conftest import LENIENT
from oracles import brute_top_reach, random_dag


def test_katz_maps_to_math_and_cs(small_hierarchy):
    assert parents_of(small_hierarchy, "katz") == {"math", "cs"}


def test_top_field_is_its_own_parent(small_hierarchy):
    assert parents_of(small_hierarchy, "math") == {"math"}


def test_unreachable_field(small_hierarchy):
    assert parents_of(small_hierarchy, "orphan") == frozenset()


def test_unknown_field(small_hierarchy):
    with pytest.raises(NotFoundError):
        parents_of(small_hierarchy, "nope")


def test_top_field_stops_traversal():
    nodes = [FieldNode("root"), FieldNode("mid", "mid", ("root",)), FieldNode("leaf", "leaf", ("mid",))]
    h = FieldHierarchy(nodes, {"root", "mid"})
    assert parents_of(h, "leaf") == {"mid"}


def test_cycle_rejected():
    nodes = [FieldNode("a", "a", ("b",)), FieldNode("b", "b", ("a",))]
    with pytest.raises(HierarchyError, match="cycle"):
        FieldHierarchy(nodes, set())


def test_dangling_parent_rejected():
    with pytest.raises(HierarchyError):
        FieldHierarchy([FieldNode("a", "a", ("ghost",))], set())


def test_load_hierarchy(jsonl):
    path = jsonl("fields.jsonl", [
        {"id": "M", "name": "Mathematics", "parents": [], "top": True},
        {"id": "x", "name": "x", "parents": ["M"], "top": False},
    ])
    h = load_hierarchy(path)
    assert h.top_fields == {"M"} and h.name("M") == "Mathematics"
    assert parents_of(h, "x") == {"M"}


def _h(parent_map, top):
    return FieldHierarchy([FieldNode(k, k, tuple(v)) for k, v in parent_map.items()], top)


def test_single_subfield_two_tops():
    h = _h({"Math": [], "CS": [], "f1": ["Math", "CS"]}, {"Math", "CS"})
    assert paper_field_weights(h, ["f1"]) == {"Math": 0.5, "CS": 0.5}


def test_two_subfields():
    h = _h({"Math": [], "CS": [], "f1": ["Math"], "f2": ["Math", "CS"]}, {"Math", "CS"})
    # (1/2)(1 + 1/2) and (1/2)(1/2)
    assert paper_field_weights(h, ["f1", "f2"]) == {"Math": Fraction(3, 4), "CS": Fraction(1, 4)}


def test_top_subfield_self_weight():
    h = _h({"Math": [], "CS": []}, {"Math", "CS"})
    assert paper_field_weights(h, ["Math"]) == {"Math": 1}


def test_unmapped_subfields_excluded(small_hierarchy):
    w = paper_field_weights(small_hierarchy, ["orphan", "algebra", "not-in-hierarchy"])
    assert w == {"math": 1}
    assert paper_field_weights(small_hierarchy, ["orphan"]) == {}


def test_author_weights_and_primary():
    h = _h({"Math": [], "CS": [], "f1": ["Math"], "f2": ["Math", "CS"], "g": ["CS"], "o": []},
           {"Math", "CS"})
    papers = [
        Paper("p1", 2000, ("a", "b"), ("f1", "f2")),
        Paper("p2", 2000, ("a",), ("g",)),
        Paper("p3", 2000, ("b",), ("f2",)),
        Paper("p4", 2000, ("b",), ("f2",)),
        Paper("p5", 2000, ("c",), ("o",)),
    ]
    c = filter_corpus(build_corpus(papers), LENIENT)
    assert author_field_weights(h, c, "a") == {"Math": Fraction(3, 4), "CS": Fraction(5, 4)}
    assert author_primary_field(h, c, "a") == "CS"
    # b: (3/4, 1/4) + 2 * (1/2, 1/2) -> Math 7/4, CS 5/4
    assert author_primary_field(h, c, "b") == "Math"
    assert author_field_weights(h, c, "c") == {}
    assert author_primary_field(h, c, "c") is None
    fa = assign_fields(h, c)
    assert fa.primary == {"a": "CS", "b": "Math", "c": None}
    assert fa.authors_in("CS") == ["a"]
    with pytest.raises(NotFoundError):
        fa.authors_in("Bio")


def test_author_additivity():
    h = _h({"Math": [], "CS": [], "f1": ["Math", "CS"]}, {"Math", "CS"})
    papers = [Paper("p1", 2000, ("a",), ("f1",)), Paper("p2", 2000, ("a",), ("f1",))]
    c = filter_corpus(build_corpus(papers), LENIENT)
    assert author_field_weights(h, c, "a") == {"Math": 1, "CS": 1}


def test_primary_tie_goes_to_smallest_id():
    assert primary_field({"Math": 1.0, "CS": 1.0}) == "CS"
    assert primary_field({"Math": 1.0, "CS": 1.25}) == "CS"
    assert primary_field({}) is None


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_reachability_matches_brute_force(seed):
    rng = random.Random(seed)
    names, parents, top = random_dag(rng, rng.randint(1, 50))
    h = FieldHierarchy([FieldNode(n, n, tuple(parents[n])) for n in names], top)
    for n in names:
        assert parents_of(h, n) == brute_top_reach(parents, top, n)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_weight_conservation(seed):
    rng = random.Random(seed)
    names, parents, top = random_dag(rng, rng.randint(1, 50))
    h = FieldHierarchy([FieldNode(n, n, tuple(parents[n])) for n in names], top)
    subs = rng.sample(names, rng.randint(1, min(5, len(names))))
    w = paper_field_weights(h, subs)
    assert all(x >= 0 for x in w.values())
    if all(brute_top_reach(parents, top, s) for s in subs):
        assert sum(w.values()) == 1
    else:
        assert sum(w.values()) <= 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 9))
def test_primary_field_scale_invariant(seed, scale):
    rng = random.Random(seed)
    weights = {f"t{i}": Fraction(rng.randint(0, 6), rng.randint(1, 4)) for i in range(rng.randint(1, 5))}
    scaled = {k: v * scale for k, v in weights.items()}
    assert primary_field(weights) == primary_field(scaled)


def test_traversal_terminates_on_deep_chain():
    n = 2000
    nodes = [FieldNode("n0")] + [FieldNode(f"n{i}", f"n{i}", (f"n{i-1}",)) for i in range(1, n)]
    h = FieldHierarchy(nodes, {"n0"})
    assert parents_of(h, f"n{n-1}") == {"n0"}
