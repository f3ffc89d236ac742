import random

from hypothesis import given, settings

from conftest import fixture_sources
from corpus_gen import corpus_strategy
from picip import analyze_sources
from picip.model import Ambiguous, External, Internal, enclosing_chain, resolve_superclass, superclass_chain


def graph_of(sources):
    return analyze_sources(sources)[0]


def test_house_graph(listing):
    g, _ = listing("house")
    assert sorted(str(q) for q in g) == ["Bedroom", "House", "House.Bedroom", "House.Bedroom.Attachedwashroom"]
    wash = g.find("House.Bedroom.Attachedwashroom")
    assert g[wash].outer == g.find("House.Bedroom")
    assert g[g.find("House.Bedroom")].outer == g.find("House")
    assert g[g.find("House")].outer is None


def test_single_empty_class():
    g = graph_of({"x.java": "class Solo { }"})
    assert len(g) == 1
    assert g[g.find("Solo")].super_ref is None


def test_indirect_cycle_resolution(listing):
    g, _ = listing("indirect_cycle")
    assert g[g.find("A.B")].super_ref == Internal(g.find("C"))
    assert g[g.find("C")].super_ref == Internal(g.find("A"))
    assert g[g.find("A")].super_ref is None


def test_inner_resolves_to_outer(listing):
    g, _ = listing("inner_extends_outer")
    assert resolve_superclass(g, g.find("TestIn1.TestIn2")) == Internal(g.find("TestIn1"))


def test_enclosing_class_shadows_top_level(listing):
    g, _ = listing("house")
    ref = resolve_superclass(g, g.find("House.Bedroom.Attachedwashroom"))
    assert ref == Internal(g.find("House.Bedroom"))
    assert ref != Internal(g.find("Bedroom"))


def test_unknown_package_name_is_external():
    g = graph_of({"x.java": "class L extends java.util.ArrayList { }"})
    assert g[g.find("L")].super_ref == External("java.util.ArrayList")


def test_dotted_reference_navigates_members():
    g = graph_of({"x.java": "class P { class Q { class R { } } } class S extends P.Q.R { } class T extends P.Z { }"})
    assert g[g.find("S")].super_ref == Internal(g.find("P.Q.R"))
    assert g[g.find("T")].super_ref == External("P.Z")


def test_member_class_found_from_nested_scope():
    g = graph_of({"x.java": "class O { class Helper { } class In { class Deep extends Helper { } } }"})
    assert g[g.find("O.In.Deep")].super_ref == Internal(g.find("O.Helper"))


def test_same_file_top_level_beats_other_files():
    g = graph_of({"a.java": "class Base { }", "b.java": "class Base { } class Sub extends Base { }"})
    assert g[g.find("Sub")].super_ref == Internal(g.find("Base", file="b.java"))


def test_cross_file_duplicates_are_ambiguous():
    g = graph_of({"b.java": "class Base { }", "a.java": "class Base { }", "c.java": "class Sub extends Base { }"})
    ref = g[g.find("Sub")].super_ref
    assert isinstance(ref, Ambiguous)
    assert ref.chosen == g.find("Base", file="a.java")
    assert len(ref.candidates) == 2
    kinds = [w.kind for w in g.warnings]
    assert "DuplicateTopLevel" in kinds and "AmbiguousSuperclass" in kinds
    assert g.superclass_of(g.find("Sub")) == ref.chosen


def test_unique_cross_file_match_is_internal():
    g = graph_of({"a.java": "class Base { }", "c.java": "class Sub extends Base { }"})
    assert g[g.find("Sub")].super_ref == Internal(g.find("Base"))


def test_duplicate_member_in_one_file_is_warned():
    g = graph_of({"x.java": "class O { class I { } class I { } }"})
    assert [w.kind for w in g.warnings] == ["DuplicateClass"]
    assert sorted(str(q) for q in g) == ["O", "O.I"]


def test_enclosing_chain(listing):
    g, _ = listing("house")
    assert enclosing_chain(g, g.find("House.Bedroom.Attachedwashroom")) == [g.find("House.Bedroom"), g.find("House")]
    g4, _ = listing("account")
    assert enclosing_chain(g4, g4.find("Account")) == []
    g2, _ = listing("inner_extends_outer")
    assert enclosing_chain(g2, g2.find("TestIn1.TestIn2")) == [g2.find("TestIn1")]


def test_superclass_chain(listing):
    g3, _ = listing("indirect_cycle")
    chain = superclass_chain(g3, g3.find("A.B"))
    assert chain == [g3.find("C"), g3.find("A")] and not chain.cyclic
    assert superclass_chain(g3, g3.find("A")) == []
    g1, _ = listing("compiler_cycles")
    chain = superclass_chain(g1, g1.find("A"))
    assert chain == [g1.find("A")] and chain.cyclic


def test_superclass_chain_into_foreign_cycle():
    g = graph_of({"x.java": "class P extends Q { } class Q extends R { } class R extends Q { }"})
    chain = superclass_chain(g, g.find("P"))
    assert [str(q) for q in chain] == ["Q", "R", "Q"] and chain.cyclic


def _invariants(g):
    for q, node in g.classes.items():
        # key equals the path obtained by walking outer edges
        path, cur = [], q
        while cur is not None:
            path.append(cur.simple_name)
            cur = g[cur].outer
        assert tuple(reversed(path)) == q.segments
        assert q.segments[0] == q.top_level.simple_name and q.top_level in g
        if isinstance(node.super_ref, Internal):
            assert node.super_ref.target in g
    for q in g.classes:
        expected = sorted(x for x in g.classes if g.superclass_of(x) == q)
        assert g[q].subclasses == expected


@settings(max_examples=100, deadline=None)
@given(corpus_strategy())
def test_graph_invariants(corpus):
    _invariants(graph_of(corpus.sources()))


@settings(max_examples=100, deadline=None)
@given(corpus_strategy())
def test_resolution_independent_of_file_order(corpus):
    sources = corpus.sources()
    items = list(sources.items())
    random.Random(len(items)).shuffle(items)
    g1, g2 = graph_of(sources), graph_of(dict(reversed(items)))
    assert {q: n.super_ref for q, n in g1.classes.items()} == {q: n.super_ref for q, n in g2.classes.items()}
    assert g1.warnings == g2.warnings
