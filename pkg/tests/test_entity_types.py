import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from paranames.dump_reader import EntityRecord
from paranames.entity_types import (
    LOC,
    ORG,
    PER,
    SubclassClosure,
    SubclassGraph,
    build_closures,
    build_subclass_closure,
    canonical_types,
    classify_entity,
    dedup_types,
    format_types,
    parse_types,
    qid_key,
)


def graph_of(edges):
    g = SubclassGraph()
    for child, parents in edges.items():
        g.add(child, parents)
    return g


def test_chain():
    c = build_subclass_closure(graph_of({"QA": ["QB"], "QB": ["Q1"]}), "Q1")
    assert {"Q1", "QA", "QB"} <= c.descendants


def test_cycle_terminates():
    c = build_subclass_closure(graph_of({"QA": ["QB"], "QB": ["QA"], "QC": ["QA"]}), "Q1")
    assert c.descendants == {"Q1"}
    c = build_subclass_closure(graph_of({"QA": ["QB", "Q1"], "QB": ["QA"]}), "Q1")
    assert c.descendants == {"Q1", "QA", "QB"}


def test_missing_root_and_records_input():
    assert build_subclass_closure(SubclassGraph(), "Q5").descendants == {"Q5"}
    recs = [EntityRecord("Q10", {}, [], ["Q5"]), EntityRecord("Q11", {}, [], ["Q10"])]
    assert build_subclass_closure(recs, "Q5").descendants == {"Q5", "Q10", "Q11"}


def closures_for(edges):
    return build_closures(graph_of(edges))


def test_classify_examples():
    closures = closures_for({"Q515": ["Q82794"], "Q98414232": ["Q5"], "Q200": ["Q82794", "Q43229"]})
    assert classify_entity(EntityRecord("Q7251", {}, ["Q5"]), closures) == (PER,)
    assert classify_entity(EntityRecord("Q1", {}, ["Q98414232"]), closures) == ()
    assert classify_entity(EntityRecord("Q2", {}, ["Q200"]), closures) == (LOC, ORG)
    assert classify_entity(EntityRecord("Q3", {}, ["Q515", "Q5"]), closures) == (PER, LOC)
    assert classify_entity(EntityRecord("Q4", {}, []), closures) == ()


def test_dedup_rules():
    assert dedup_types({ORG, PER}) == ORG
    assert dedup_types({LOC, ORG, PER}) == ORG
    assert dedup_types({LOC}) == LOC
    assert dedup_types({ORG, LOC}) == LOC
    assert dedup_types({LOC, PER}) == PER
    with pytest.raises(ValueError):
        dedup_types(set())
    with pytest.raises(ValueError):
        dedup_types({"MISC"})


@given(st.sets(st.sampled_from([PER, LOC, ORG]), min_size=1))
def test_dedup_properties(s):
    t = dedup_types(s)
    assert t in s
    assert dedup_types({t}) == t


def test_type_formatting():
    assert format_types({ORG, LOC}) == "LOC;ORG"
    assert parse_types("PER;ORG") == (PER, ORG)
    assert canonical_types([ORG, PER, PER]) == (PER, ORG)
    with pytest.raises(ValueError):
        parse_types("PER;MISC")


def test_qid_key_numeric_order():
    assert sorted(["Q10", "Q9", "Q100", "Q2"], key=qid_key) == ["Q2", "Q9", "Q10", "Q100"]


def test_closure_cache_round_trip(tmp_path):
    c = SubclassClosure("Q5", frozenset({"Q5", "Q100", "Q20"}))
    path = tmp_path / "closure.PER.txt"
    c.dump(path)
    lines = path.read_text().splitlines()
    assert lines == ["#root=Q5 #ucd-independent", "Q5", "Q20", "Q100"]
    assert SubclassClosure.load(path) == c
    path.write_text("Q5\n")
    with pytest.raises(ValueError):
        SubclassClosure.load(path)


def test_random_graphs_against_fixpoint():
    rng = random.Random(11)
    for _ in range(30):
        nodes = [f"Q{i}" for i in range(1, 60)]
        edges = {q: rng.sample(nodes, rng.randint(0, 3)) for q in nodes}
        root = rng.choice(nodes)
        members = {root}
        changed = True
        while changed:
            changed = False
            for q, ps in edges.items():
                if q not in members and members & set(ps):
                    members.add(q)
                    changed = True
        assert build_subclass_closure(graph_of(edges), root).descendants == members
