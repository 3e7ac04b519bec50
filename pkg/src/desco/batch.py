"""Batch runs of the alternating pipeline over several unobservable-event sets.

A batch file looks like::

    desbatch 1
    plant agv1.gen agv2.gen
    spec zone1.gen zone2.gen
    case 13 expect relobs=4406 normal=3516 rounds=1
    case 41,51

Plant files are composed into the plant; spec files are composed with the
plant to give the specification. Paths are relative to the batch file.
Each ``case`` fixes the unobservable events; all others are observable.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .automata import minimize, sync
from .control import ControlContext, supnorm_con
from .errors import GenSyntaxError, UnknownReference
from .io import load
from .pipeline import suprelobs_con

HEADER = "desbatch 1"
EXPECT_KEYS = ("relobs", "normal", "rounds")


@dataclass
class Case:
    unobservable: tuple
    expect: dict = field(default_factory=dict)


@dataclass
class BatchSpec:
    plant: list
    spec: list
    cases: list


@dataclass
class CaseResult:
    unobservable: tuple
    relobs: int
    normal: int
    rounds: int
    inner: list
    seconds: float
    expect: dict

    def mismatches(self) -> list[str]:
        return [k for k, v in self.expect.items() if getattr(self, k) != v]

    def as_dict(self) -> dict:
        return {"unobservable": list(self.unobservable), "relobs": self.relobs,
                "normal": self.normal, "rounds": self.rounds, "inner_iterations": self.inner,
                "expect": dict(self.expect), "mismatches": self.mismatches()}


def parse_batch(text: str, base: Path = Path(".")) -> BatchSpec:
    plant, spec, cases = [], [], []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if not header_seen:
            if toks != HEADER.split():
                raise GenSyntaxError(f"expected header {HEADER!r}", lineno, 1)
            header_seen = True
            continue
        kind, rest = toks[0], toks[1:]
        if kind in ("plant", "spec"):
            (plant if kind == "plant" else spec).extend(base / r for r in rest)
        elif kind == "case":
            if not rest:
                raise GenSyntaxError("case needs an event list ('-' for none)", lineno, 1)
            uo = () if rest[0] == "-" else tuple(rest[0].split(","))
            expect = {}
            if len(rest) > 1:
                if rest[1] != "expect":
                    raise GenSyntaxError("expected 'expect key=value ...'", lineno, 1)
                for item in rest[2:]:
                    key, _, val = item.partition("=")
                    if key not in EXPECT_KEYS or not val.isdigit():
                        raise GenSyntaxError(f"bad expectation {item!r}", lineno, 1)
                    expect[key] = int(val)
            cases.append(Case(uo, expect))
        else:
            raise GenSyntaxError(f"unknown declaration {kind!r}", lineno, 1)
    if not header_seen:
        raise GenSyntaxError("empty batch file", 1, 1)
    if not plant:
        raise GenSyntaxError("no plant files", 1, 1)
    return BatchSpec(plant, spec, cases)


def load_models(batch: BatchSpec):
    plant = sync(*[load(p) for p in batch.plant])
    spec = sync(plant, *[load(p) for p in batch.spec]) if batch.spec else plant
    return plant, spec


def _run_case(plant, spec, case: Case, tracking: str) -> CaseResult:
    missing = [e for e in case.unobservable if e not in plant.events]
    if missing:
        raise UnknownReference(f"unknown event(s) {','.join(missing)} in case", 0, 0)
    start = time.perf_counter()
    table = plant.events.with_unobservable(case.unobservable)
    g, k = plant.with_events(table), spec.with_events(table)
    ctx = ControlContext(g)
    result, report = suprelobs_con(ctx, k, tracking=tracking)
    normal = supnorm_con(ctx, k)
    return CaseResult(case.unobservable, minimize(result).n_states, minimize(normal).n_states,
                      report.n_rounds, report.inner_iterations,
                      time.perf_counter() - start, case.expect)


def _worker(args):
    plant, spec, case, tracking = args
    return _run_case(plant, spec, case, tracking)


def run_batch(batch: BatchSpec, jobs: int = 1, tracking: str = "state") -> list[CaseResult]:
    """Run every case; results are returned in file order regardless of ``jobs``."""
    plant, spec = load_models(batch)
    work = [(plant, spec, c, tracking) for c in batch.cases]
    if jobs <= 1 or len(work) <= 1:
        return [_worker(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_worker, work))


def format_table(results: list[CaseResult], timing: bool = False) -> str:
    head = ["unobservable", "relobs", "normal", "rounds", "inner", "check"]
    if timing:
        head.append("seconds")
    rows = []
    for r in results:
        bad = r.mismatches()
        check = "-" if not r.expect else ("ok" if not bad else "MISMATCH " + ",".join(
            f"{k}(expected {r.expect[k]})" for k in bad))
        row = ["{" + ",".join(r.unobservable) + "}", str(r.relobs), str(r.normal),
               str(r.rounds), ",".join(map(str, r.inner)), check]
        if timing:
            row.append(f"{r.seconds:.2f}")
        rows.append(row)
    widths = [max(len(x) for x in col) for col in zip(head, *rows)]
    fmt = lambda row: "  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
    return "\n".join([fmt(head)] + [fmt(r) for r in rows]) + "\n"
