import pytest

from desco.automata import EventTable, Generator, Relation, language_relation
from desco.control import (ControlContext, is_controllable, is_normal, supcon, supnorm,
                           supnorm_con)
from desco.errors import PreconditionViolated

T = EventTable(["a", "u"], controllable=["a"], observable=["a", "u"])


def plant():
    # a then an uncontrollable u; u is also possible right away
    return Generator.build(T, list("0123"), "0", ["1", "2", "3"],
                           [("0", "a", "1"), ("1", "u", "2"), ("0", "u", "3")])


def test_guideway_supcon(guideway):
    g, k = guideway
    h = supcon(ControlContext(g), k)
    assert (h.n_states, h.n_transitions) == (30, 40)
    assert is_controllable(ControlContext(g), h) == (True, None)


def test_uncontrollable_witness():
    g = plant()
    k = Generator.build(T, ["0", "1"], "0", ["1"], [("0", "a", "1")])
    ok, (s, event) = is_controllable(ControlContext(g), k)
    assert not ok and s == () and event == "u"


def test_supcon_removes_unsafe_prefix():
    g = plant()
    k = Generator.build(T, ["0", "1", "3"], "0", ["1", "3"], [("0", "a", "1"), ("0", "u", "3")])
    h = supcon(ControlContext(g), k)
    # a is followed by an uncontrollable u that k forbids, so a must be disabled
    assert h.in_marked(["u"]) and not h.in_closed(["a"])


def test_supcon_precondition():
    g = plant()
    bigger = Generator.build(T, ["0", "1"], "0", ["1"], [("0", "a", "1"), ("1", "a", "1")])
    with pytest.raises(PreconditionViolated):
        supcon(ControlContext(g), bigger)


def test_normality_of_plant_itself():
    g = plant().with_events(T.with_unobservable(["u"]))
    assert is_normal(g, g) == (True, True)


def test_unobservable_disablement_is_not_normal():
    t = EventTable(["a", "b"], ["a", "b"], ["a"])
    g = Generator.build(t, list("012"), "0", ["1", "2"], [("0", "a", "1"), ("0", "b", "2")])
    k = Generator.build(t, ["0", "1"], "0", ["1"], [("0", "a", "1")])
    assert is_normal(g, k) == (True, False)
    assert supnorm(g, k).is_empty


def test_supnorm_keeps_normal_spec():
    t = EventTable(["a", "b"], ["a", "b"], ["a"])
    g = Generator.build(t, list("012"), "0", ["2"], [("0", "b", "1"), ("1", "a", "2"),
                                                      ("0", "a", "2")])
    assert language_relation(supnorm(g, g), g).relation is Relation.EQUAL


def test_guideway_normal_supervisor(guideway):
    g, k = guideway
    n = supnorm_con(ControlContext(g), k)
    assert not n.is_empty
    assert not n.in_closed(["11", "13", "10", "21"])
    assert is_normal(g, n) == (True, True)
