"""Line-oriented text format for generators.

::

    desgen 1
    event 11 c o
    state 0 initial marked
    trans 0 11 1

Events are declared ``c``/``u`` (controllable or not) and ``o``/``x``
(observable or not). ``#`` starts a comment. An empty generator is written
as the header followed by ``empty``.
"""

from __future__ import annotations

from pathlib import Path

from .automata import EventTable, Generator, event_sort_key, reachable
from .errors import (DuplicateTransition, GenSyntaxError, NoInitialState,
                     UnknownReference)

HEADER = "desgen 1"
EMPTY_MARKER = "empty"


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = line.split()
        if toks:
            col = len(raw) - len(raw.lstrip()) + 1
            yield lineno, col, toks


def parse(text: str) -> Generator:
    """Parse generator text; errors carry line and column."""
    lines = list(_tokens(text))
    if not lines:
        raise NoInitialState("empty input: no initial state", 1, 1)
    lineno, col, toks = lines[0]
    if toks != HEADER.split():
        raise GenSyntaxError(f"expected header {HEADER!r}", lineno, col)

    events, ctrl, obs = [], [], []
    states, marked = [], []
    initial = None
    initial_line = None
    trans = []
    seen_trans = {}
    empty = False
    for lineno, col, toks in lines[1:]:
        kind = toks[0]
        if kind == "event":
            if len(toks) != 4 or toks[2] not in "cu" or toks[3] not in "ox":
                raise GenSyntaxError("expected: event <name> <c|u> <o|x>", lineno, col)
            name = toks[1]
            if name in events:
                raise GenSyntaxError(f"event {name!r} declared twice", lineno, col)
            events.append(name)
            if toks[2] == "c":
                ctrl.append(name)
            if toks[3] == "o":
                obs.append(name)
        elif kind == "state":
            if len(toks) < 2 or any(t not in ("initial", "marked") for t in toks[2:]):
                raise GenSyntaxError("expected: state <name> [initial] [marked]", lineno, col)
            name = toks[1]
            if name in states:
                raise GenSyntaxError(f"state {name!r} declared twice", lineno, col)
            states.append(name)
            if "initial" in toks[2:]:
                if initial is not None:
                    raise GenSyntaxError(
                        f"second initial state (first on line {initial_line})", lineno, col)
                initial, initial_line = name, lineno
            if "marked" in toks[2:]:
                marked.append(name)
        elif kind == "trans":
            if len(toks) != 4:
                raise GenSyntaxError("expected: trans <src> <event> <dst>", lineno, col)
            _, src, ev, dst = toks
            if (src, ev) in seen_trans:
                raise DuplicateTransition(
                    f"state {src!r} already has a transition on {ev!r} "
                    f"(line {seen_trans[src, ev]})", lineno, col)
            seen_trans[src, ev] = lineno
            trans.append((lineno, col, src, ev, dst))
        elif kind == EMPTY_MARKER and len(toks) == 1:
            empty = True
        else:
            raise GenSyntaxError(f"unknown declaration {kind!r}", lineno, col)

    table = EventTable(events, ctrl, obs)
    if empty:
        if states or trans:
            raise GenSyntaxError("an empty generator has no states", lines[-1][0], 1)
        return Generator.empty(table)
    if initial is None:
        raise NoInitialState("no initial state declared", lines[-1][0], 1)
    known = set(states)
    for lineno, col, src, ev, dst in trans:
        for ref in (src, dst):
            if ref not in known:
                raise UnknownReference(f"undeclared state {ref!r}", lineno, col)
        if ev not in table:
            raise UnknownReference(f"undeclared event {ev!r}", lineno, col)
    return Generator.build(table, states, initial, marked,
                           [(s, e, d) for _, _, s, e, d in trans])


def serialize(g: Generator) -> str:
    """Canonical text: sorted events, BFS state order, transitions by source then event.

    Unreachable states follow the reachable ones in index order.
    """
    out = [HEADER]
    table = g.events
    for e in sorted(table.events, key=event_sort_key):
        c = "c" if e in table.controllable else "u"
        o = "o" if e in table.observable else "x"
        out.append(f"event {e} {c} {o}")
    if g.is_empty:
        out.append(EMPTY_MARKER)
        return "\n".join(out) + "\n"
    order = reachable(g)
    seen = set(order)
    order += [s for s in range(g.n_states) if s not in seen]
    for s in order:
        flags = []
        if s == g.initial:
            flags.append("initial")
        if s in g.marked:
            flags.append("marked")
        out.append(" ".join(["state", g.names[s], *flags]))
    for s in order:
        for e in sorted(g.delta[s], key=event_sort_key):
            out.append(f"trans {g.names[s]} {e} {g.names[g.delta[s][e]]}")
    return "\n".join(out) + "\n"


def load(path) -> Generator:
    return parse(Path(path).read_text(encoding="utf-8"))


def save(g: Generator, path) -> None:
    Path(path).write_text(serialize(g), encoding="utf-8")


def to_dot(g: Generator) -> str:
    lines = ["digraph G {", "  rankdir=LR;"]
    for s in range(g.n_states):
        shape = "doublecircle" if s in g.marked else "circle"
        lines.append(f'  s{s} [label="{g.names[s]}", shape={shape}];')
    if not g.is_empty:
        lines.append("  init [shape=point];")
        lines.append(f"  init -> s{g.initial};")
    for s, e, t in g.transitions():
        style = "" if e in g.events.observable else ", style=dashed"
        lines.append(f'  s{s} -> s{t} [label="{e}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
