"""Command-line front end: ``desco <command> [options]``.

Exit status is 0 on success, 1 when a check fails (the witness is printed),
and 2 on usage, parse, or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import batch as batchmod
from .automata import Generator, minimize, sync, trim
from .control import ControlContext, is_controllable, is_normal, supcon, supnorm, supnorm_con
from .errors import DescoError, ParseError
from .io import load, serialize
from .pipeline import suprelobs_con
from .projection import is_lm_observer
from .relobs import TRACKING_MODES, check_observability, check_relative_observability, suprelobs

SCHEMA_ID = "desco-report/1"

SYNTHESIS = ("supcon", "suprelobs", "supnorm", "supnormcon", "suprelobscon")
CHECKS = ("check-obs", "check-relobs", "check-norm", "check-cont", "check-observer")
TRANSFORMS = ("product", "trim", "minimize")


class UsageError(DescoError):
    pass


def corpus_dir() -> Path:
    return Path(str(resources.files("desco") / "corpus"))


def resolve(path: str) -> Path:
    """Local paths win; otherwise fall back to the bundled corpus."""
    p = Path(path)
    if p.exists():
        return p
    bundled = corpus_dir() / path
    return bundled if bundled.exists() else p


def _events(arg: str | None) -> list[str] | None:
    if arg is None:
        return None
    return [e for e in arg.split(",") if e]


def _apply_overrides(g: Generator, args) -> Generator:
    table = g.events
    unobs, unctrl = _events(args.unobservable), _events(args.uncontrollable)
    if unobs is not None:
        table = table.with_unobservable(unobs)
    if unctrl is not None:
        table = table.with_uncontrollable(unctrl)
    return g if table is g.events else g.with_events(table)


def _load(path: str, args) -> Generator:
    try:
        return _apply_overrides(load(resolve(path)), args)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _need(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"--{name} is required for {args.command}")


def _summary(g: Generator, minimized: bool) -> dict:
    out = {"states": g.n_states, "transitions": g.n_transitions, "empty": g.is_empty}
    if minimized:
        out["minimized"] = True
    return out


def _finish(args, g: Generator | None, report: dict) -> int:
    if g is not None:
        if args.minimize:
            g = minimize(g)
        report["result"] = _summary(g, args.minimize)
        if args.out:
            Path(args.out).write_text(serialize(g), encoding="utf-8")
    if args.report:
        Path(args.report).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        if g is not None:
            r = report["result"]
            print(f"{args.command}: {r['states']} states, {r['transitions']} transitions")
            if not args.out and args.print:
                sys.stdout.write(serialize(g))
        if "ok" in report and g is None:
            print(f"{args.command}: {'true' if report['ok'] else 'false'}")
        if report.get("witness"):
            print(f"witness: {report['witness']}")
    return 0 if report.get("ok", True) else 1


def _report(command: str, **fields) -> dict:
    return {"schema": SCHEMA_ID, "command": command, **fields}


def _cmd_synthesis(args) -> int:
    _need(args, "plant", "spec")
    g, k = _load(args.plant, args), _load(args.spec, args)
    ctx = ControlContext(g)
    details = {}
    if args.command == "supcon":
        out = supcon(ctx, k)
    elif args.command == "supnorm":
        out = supnorm(g, k)
    elif args.command == "supnormcon":
        out = supnorm_con(ctx, k)
    elif args.command == "suprelobs":
        ambient = _load(args.ambient, args) if args.ambient else None
        events = sorted(g.events.controllable) if args.condition_events == "controllable" else None
        out, rep = suprelobs(g, k, ambient=ambient, events=events, tracking=args.tracking)
        details = rep.as_dict()
    else:
        out, rep = suprelobs_con(ctx, k, tracking=args.tracking)
        details = rep.as_dict()
    return _finish(args, out, _report(args.command, ok=True, details=details))


def _cmd_check(args) -> int:
    if args.command == "check-observer":
        _need(args, "spec")
        k = _load(args.spec, args)
        ok, w = is_lm_observer(k)
        witness = None if ok else f"s={'.'.join(w[0]) or 'eps'} t_o={'.'.join(w[1]) or 'eps'}"
        return _finish(args, None, _report(args.command, ok=ok, witness=witness))
    _need(args, "plant", "spec")
    g, k = _load(args.plant, args), _load(args.spec, args)
    if args.command == "check-obs":
        ok, w = check_observability(g, k)
        witness = str(w) if w else None
    elif args.command == "check-relobs":
        c = _load(args.ambient, args) if args.ambient else g
        events = sorted(g.events.controllable) if args.condition_events == "controllable" else None
        ok, w = check_relative_observability(g, c, k, events=events)
        witness = str(w) if w else None
    elif args.command == "check-norm":
        marked_ok, closed_ok = is_normal(g, k)
        ok = marked_ok and closed_ok
        witness = None if ok else f"marked normal: {marked_ok}, closed normal: {closed_ok}"
    else:
        ok, w = is_controllable(ControlContext(g), k)
        witness = None if ok else f"s={'.'.join(w[0]) or 'eps'} event={w[1]}"
    return _finish(args, None, _report(args.command, ok=ok, witness=witness))


def _cmd_transform(args) -> int:
    if not args.files:
        raise UsageError(f"{args.command} needs at least one generator file")
    gens = [_load(f, args) for f in args.files]
    if args.command == "product":
        out = sync(*gens)
    elif len(gens) != 1:
        raise UsageError(f"{args.command} takes exactly one generator file")
    elif args.command == "trim":
        out = trim(gens[0])
    else:
        out = minimize(gens[0])
    return _finish(args, out, _report(args.command, ok=True))


def _cmd_stats(args) -> int:
    paths = list(args.files) + [p for p in (args.plant, args.spec) if p]
    if not paths:
        raise UsageError("stats needs a generator file")
    rows = []
    for p in paths:
        g = _load(p, args)
        row = {"file": p, "states": g.n_states, "transitions": g.n_transitions,
               "events": len(g.events), "marked": len(g.marked)}
        if args.minimize:
            row["minimized_states"] = minimize(g).n_states
        rows.append(row)
    report = _report("stats", ok=True, files=rows)
    if args.report:
        Path(args.report).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        for r in rows:
            extra = f", {r['minimized_states']} minimized" if args.minimize else ""
            print(f"{r['file']}: {r['states']} states, {r['transitions']} transitions, "
                  f"{r['events']} events, {r['marked']} marked{extra}")
    return 0


def _cmd_batch(args) -> int:
    if len(args.files) != 1:
        raise UsageError("batch takes exactly one batch file")
    path = resolve(args.files[0])
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.files[0]}: {exc.strerror or exc}") from exc
    try:
        spec = batchmod.parse_batch(text, path.parent)
        results = batchmod.run_batch(spec, jobs=args.jobs, tracking=args.tracking)
    except ParseError as exc:
        raise UsageError(f"{args.files[0]}: {exc}") from exc
    ok = all(not r.mismatches() for r in results)
    report = _report("batch", ok=ok, cases=[r.as_dict() for r in results])
    if args.report:
        Path(args.report).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        sys.stdout.write(batchmod.format_table(results, timing=args.timing))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("files", nargs="*", help="generator or batch files")
    common.add_argument("--plant", help="plant generator file")
    common.add_argument("--spec", help="specification generator file")
    common.add_argument("--ambient", help="ambient generator for suprelobs/check-relobs")
    common.add_argument("--condition-events", choices=("all", "controllable"), default="all",
                        help="events on which the transition condition is checked")
    common.add_argument("--unobservable", metavar="E1,E2,...",
                        help="exact set of unobservable events (overrides the files)")
    common.add_argument("--uncontrollable", metavar="E1,E2,...",
                        help="exact set of uncontrollable events (overrides the files)")
    common.add_argument("--tracking", choices=TRACKING_MODES, default=None,
                        help="lookalike tracking for suprelobs (default: string; "
                             "suprelobscon and batch default to state)")
    common.add_argument("--out", help="write the resulting generator here")
    common.add_argument("--print", action="store_true", help="print the resulting generator")
    common.add_argument("--report", help="write a JSON report here")
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--minimize", action="store_true", help="minimize results before output")
    common.add_argument("--jobs", type=int, default=1, help="parallel batch cases")
    common.add_argument("--timing", action="store_true", help="add wall time to batch tables")

    parser = argparse.ArgumentParser(prog="desco", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SYNTHESIS + CHECKS + TRANSFORMS + ("stats", "batch"):
        sub.add_parser(name, parents=[common])
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.tracking is None:
        args.tracking = "string" if args.command == "suprelobs" else "state"
    try:
        if args.command in SYNTHESIS:
            return _cmd_synthesis(args)
        if args.command in CHECKS:
            return _cmd_check(args)
        if args.command in TRANSFORMS:
            return _cmd_transform(args)
        if args.command == "stats":
            return _cmd_stats(args)
        return _cmd_batch(args)
    except DescoError as exc:
        print(f"desco: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
