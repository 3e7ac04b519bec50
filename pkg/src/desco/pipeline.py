"""Alternating controllable / relatively observable synthesis.

Each round computes the supremal controllable sublanguage H of the current
iterate and then the supremal sublanguage of H that is relatively observable
with respect to H itself, checking the transition condition only on
controllable events. The loop stops once a round returns a controllable
language, which is then a fixpoint of the round map.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .automata import Generator, Relation, language_equal, language_relation, minimize
from .control import ControlContext, is_controllable, supcon, supnorm_con
from .relobs import SynthesisReport, check_observability, suprelobs


@dataclass
class Round:
    supcon_states: int
    supcon_transitions: int
    relobs: SynthesisReport
    ambient: Generator | None = None
    result: Generator | None = None


@dataclass
class PipelineReport:
    rounds: list = field(default_factory=list)
    outcome: Generator | None = None
    checks: dict = field(default_factory=dict)

    @property
    def n_rounds(self) -> int:
        return len(self.rounds)

    @property
    def inner_iterations(self) -> list[int]:
        return [r.relobs.n_iterations for r in self.rounds]

    def as_dict(self) -> dict:
        return {
            "rounds": [{"supcon_states": r.supcon_states,
                        "supcon_transitions": r.supcon_transitions,
                        "relobs": r.relobs.as_dict()} for r in self.rounds],
            "outcome": None if self.outcome is None else
            {"states": self.outcome.n_states, "transitions": self.outcome.n_transitions},
            "checks": dict(self.checks),
        }


def suprelobs_con(ctx: ControlContext, k: Generator, keep_intermediates: bool = False,
                  tracking: str = "state") -> tuple[Generator, PipelineReport]:
    """Controllable and observable sublanguage containing the normal supremum.

    ``tracking`` is passed to :func:`suprelobs`. The default ``"state"``
    judges lookalike strings of the round's ambient by the ambient state
    they reach; ``"string"`` makes every round's output relatively
    observable with respect to that round's ambient in the strict sense,
    which is more conservative. ``keep_intermediates`` stores each round's
    ambient and result.
    """
    g = ctx.plant
    controllable = sorted(ctx.controllable)
    report = PipelineReport()
    while True:
        h = supcon(ctx, k)
        result, rel = suprelobs(g, h, events=controllable, tracking=tracking)
        report.rounds.append(Round(h.n_states, h.n_transitions, rel,
                                   h if keep_intermediates else None,
                                   result if keep_intermediates else None))
        if result.is_empty or is_controllable(ctx, result)[0]:
            report.outcome = result
            return result, report
        k = result


@dataclass
class SupervisorCheck:
    controllable: bool
    observable: bool
    contains_normal: bool
    relation: Relation
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.controllable and self.observable and self.contains_normal


def verify_supervisor(ctx: ControlContext, k: Generator, result: Generator) -> SupervisorCheck:
    """Controllable, observable, and containing the normal-controllable supremum."""
    cont, w1 = is_controllable(ctx, result)
    obs, w2 = check_observability(ctx.plant, result)
    normal = supnorm_con(ctx, k)
    rel = language_relation(normal, result).relation
    contains = rel in (Relation.EQUAL, Relation.A_STRICTLY_IN_B)
    witness = w1 if not cont else (w2 if not obs else None)
    return SupervisorCheck(cont, obs, contains, rel, witness)


def round_is_fixpoint(ctx: ControlContext, result: Generator,
                      tracking: str = "state") -> bool:
    """One more round leaves the language unchanged."""
    again, _ = suprelobs_con(ctx, result, tracking=tracking)
    return language_equal(again, result)


def minimized_states(g: Generator) -> int:
    return minimize(g).n_states
