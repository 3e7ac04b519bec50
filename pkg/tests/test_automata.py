import pytest
from hypothesis import given, strategies as st

from desco.automata import (EventTable, Generator, Relation, complete_with_dump, coreachable,
                            is_nonblocking, isomorphic, language_relation, minimize, reachable,
                            restrict, sync, sync_product, trim)
from desco.errors import AlphabetMismatch, UnknownEvent

import oracles as O
from strategies import acyclic, tables

T = EventTable(["a", "b"], ["a"], ["a"])


def chain(*events, marked=None):
    n = len(events) + 1
    names = [str(i) for i in range(n)]
    return Generator.build(T, names, "0", [names[-1]] if marked is None else marked,
                           [(str(i), e, str(i + 1)) for i, e in enumerate(events)])


def test_event_table_rejects_unknown_partition_member():
    with pytest.raises(UnknownEvent):
        EventTable(["a"], controllable=["z"])


def test_event_table_override():
    t = T.with_unobservable(["a"])
    assert t.unobservable == {"a"} and t.controllable == T.controllable


def test_build_rejects_nondeterminism():
    with pytest.raises(ValueError):
        Generator.build(T, ["0", "1"], "0", [], [("0", "a", "1"), ("0", "a", "0")])


def test_trim_drops_blocking_branch():
    g = Generator.build(T, ["0", "1", "2"], "0", ["1"], [("0", "a", "1"), ("0", "b", "2")])
    assert not is_nonblocking(g)
    t = trim(g)
    assert t.n_states == 2 and is_nonblocking(t)


def test_restrict_without_initial_is_empty():
    assert restrict(chain("a"), [1]).is_empty


def test_reachability_helpers():
    g = Generator.build(T, ["0", "1", "2"], "0", ["1"], [("0", "a", "1"), ("2", "b", "1")])
    assert reachable(g) == [0, 1]
    assert coreachable(g) == {0, 1, 2}


def test_sync_shares_only_common_events():
    ta, tb = EventTable(["a", "c"], ["a"]), EventTable(["b", "c"], ["b"])
    ga = Generator.build(ta, ["0", "1"], "0", ["1"], [("0", "a", "0"), ("0", "c", "1")])
    gb = Generator.build(tb, ["0", "1"], "0", ["1"], [("0", "b", "0"), ("0", "c", "1")])
    p = sync(ga, gb)
    assert set(p.events) == {"a", "b", "c"}
    assert p.in_marked(["a", "b", "a", "c"]) and not p.in_closed(["c", "a"])


def test_product_requires_equal_alphabets():
    other = Generator.build(EventTable(["a"], ["a"]), ["0"], "0", ["0"], [])
    with pytest.raises(AlphabetMismatch):
        sync_product(chain("a"), other)


def test_dump_completion_is_total():
    full, dump = complete_with_dump(chain("a", "b"))
    assert dump == full.n_states - 1
    assert all(set(full.delta[q]) == set(T.events) for q in range(full.n_states))
    assert dump not in full.marked


def test_relation_witnesses():
    rel = language_relation(chain("a"), chain("a", "b"))
    assert rel.marked is Relation.INCOMPARABLE
    assert rel.closed is Relation.A_STRICTLY_IN_B
    assert rel.witness is not None


def test_minimize_merges_equivalent_states():
    g = Generator.build(T, list("012"), "0", ["1", "2"], [("0", "a", "1"), ("0", "b", "2")])
    m = minimize(g)
    assert m.n_states < g.n_states
    assert language_relation(m, g).relation is Relation.EQUAL


@given(st.data())
def test_language_relation_agrees_with_string_sets(data):
    table = data.draw(tables())
    a, b = data.draw(acyclic(table)), data.draw(acyclic(table))
    (ac, am), (bc, bm) = O.strings(a), O.strings(b)
    rel = language_relation(a, b)
    expected = {(True, True): Relation.EQUAL, (True, False): Relation.A_STRICTLY_IN_B,
                (False, True): Relation.B_STRICTLY_IN_A, (False, False): Relation.INCOMPARABLE}
    assert rel.marked is expected[am <= bm, bm <= am]
    assert rel.closed is expected[ac <= bc, bc <= ac]


@given(st.data())
def test_product_is_intersection(data):
    table = data.draw(tables())
    a, b = data.draw(acyclic(table)), data.draw(acyclic(table))
    (ac, am), (bc, bm) = O.strings(a), O.strings(b)
    pc, pm = O.strings(sync_product(a, b))
    assert pc == ac & bc and pm == am & bm


@given(st.data())
def test_minimize_is_canonical(data):
    table = data.draw(tables())
    g = data.draw(acyclic(table))
    m = minimize(g)
    assert O.strings(m)[1] == O.strings(g)[1]
    assert minimize(m).n_states == m.n_states
    # for trim inputs the minimal recognizer of Lm is unique up to isomorphism
    assert isomorphic(minimize(trim(g)), minimize(O.from_strings(table, O.strings(g)[1])))
