from hypothesis import given

from desco.automata import Relation, language_relation
from desco.control import ControlContext, is_controllable, supnorm_con
from desco.pipeline import round_is_fixpoint, suprelobs_con, verify_supervisor
from desco.relobs import check_observability, check_relative_observability

from strategies import instances


def test_guideway_one_round(guideway):
    g, k = guideway
    ctx = ControlContext(g)
    out, report = suprelobs_con(ctx, k)
    assert report.n_rounds == 1
    assert report.rounds[0].supcon_states == 30
    assert is_controllable(ctx, out)[0] and check_observability(g, out)[0]
    assert out.in_closed(["11", "13", "10", "21"])
    assert not out.in_closed(["11", "13", "10", "21", "23"])
    check = verify_supervisor(ctx, k, out)
    assert check.ok and check.relation is Relation.A_STRICTLY_IN_B


def test_guideway_string_tracking_is_stricter(guideway):
    g, k = guideway
    ctx = ControlContext(g)
    strict, _ = suprelobs_con(ctx, k, tracking="string")
    loose, _ = suprelobs_con(ctx, k)
    assert language_relation(strict, loose).relation in (Relation.EQUAL,
                                                         Relation.A_STRICTLY_IN_B)


def test_guideway_fixpoint(guideway):
    g, k = guideway
    ctx = ControlContext(g)
    out, _ = suprelobs_con(ctx, k)
    assert round_is_fixpoint(ctx, out)


def test_intermediates_kept(guideway):
    g, k = guideway
    _, report = suprelobs_con(ControlContext(g), k, keep_intermediates=True)
    r = report.rounds[0]
    assert r.ambient.n_states == 30 and r.result is not None
    d = report.as_dict()
    assert d["rounds"][0]["supcon_states"] == 30


@given(instances())
def test_string_tracking_rounds_are_relobs(inst):
    g, k, *_ = inst
    ctx = ControlContext(g)
    _, report = suprelobs_con(ctx, k, keep_intermediates=True, tracking="string")
    events = sorted(g.events.controllable)
    for r in report.rounds:
        if not r.result.is_empty:
            assert check_relative_observability(g, r.ambient, r.result, events=events)[0]


@given(instances())
def test_result_contains_normal_supervisor(inst):
    g, k, *_ = inst
    ctx = ControlContext(g)
    for tracking in ("state", "string"):
        out, _ = suprelobs_con(ctx, k, tracking=tracking)
        assert is_controllable(ctx, out)[0]
        assert check_observability(g, out)[0]
        rel = language_relation(supnorm_con(ctx, k), out).relation
        assert rel in (Relation.EQUAL, Relation.A_STRICTLY_IN_B)
