"""Deterministic generators and the generic automata operations.

A :class:`Generator` is a deterministic finite automaton with marker states.
States are dense integer indices ``0..n-1`` with a parallel name table; the
transition function is a tuple of per-state ``{event: target}`` dicts.
Generators are treated as immutable values: every operation here returns a
new generator and never mutates its arguments.

The canonical empty generator (no states, empty closed and marked languages)
is produced by :meth:`Generator.empty` and accepted by every operation.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import AlphabetMismatch, UnknownEvent

DUMP = -1  # pseudo-state used when a run leaves a generator


def event_sort_key(name: str):
    """Sort key placing numeric event names in numeric order."""
    return [(0, int(tok), "") if tok.isdigit() else (1, 0, tok)
            for tok in re.findall(r"\d+|\D+", name)]


class EventTable:
    """The alphabet with its controllable and observable partitions.

    ``events`` keeps declaration order; equality and hashing only look at the
    three sets, so two tables listing the same events in different order are
    the same table.
    """

    __slots__ = ("events", "controllable", "observable", "_key")

    def __init__(self, events: Iterable[str], controllable: Iterable[str] = (),
                 observable: Iterable[str] | None = None):
        evs = tuple(events)
        seen = set()
        for e in evs:
            if not isinstance(e, str) or not e or any(c.isspace() for c in e):
                raise ValueError(f"invalid event name {e!r}")
            if e in seen:
                raise ValueError(f"duplicate event {e!r}")
            seen.add(e)
        ctrl = frozenset(controllable)
        obs = frozenset(evs) if observable is None else frozenset(observable)
        for label, sub in (("controllable", ctrl), ("observable", obs)):
            extra = sub - seen
            if extra:
                raise UnknownEvent(f"{label} events not in alphabet: {sorted(extra)}")
        object.__setattr__(self, "events", evs)
        object.__setattr__(self, "controllable", ctrl)
        object.__setattr__(self, "observable", obs)
        object.__setattr__(self, "_key", (frozenset(evs), ctrl, obs))

    def __setattr__(self, name, value):
        raise AttributeError("EventTable is immutable")

    def __reduce__(self):
        return EventTable, (self.events, self.controllable, self.observable)

    def __eq__(self, other):
        return isinstance(other, EventTable) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return (f"EventTable(events={list(self.events)}, "
                f"controllable={sorted(self.controllable, key=event_sort_key)}, "
                f"observable={sorted(self.observable, key=event_sort_key)})")

    def __contains__(self, event):
        return event in self._key[0]

    def __iter__(self):
        return iter(self.events)

    def __len__(self):
        return len(self.events)

    @property
    def uncontrollable(self) -> frozenset:
        return self._key[0] - self.controllable

    @property
    def unobservable(self) -> frozenset:
        return self._key[0] - self.observable

    def sorted_events(self) -> list[str]:
        return sorted(self.events, key=event_sort_key)

    def with_unobservable(self, names: Iterable[str]) -> "EventTable":
        names = set(names)
        self._check_known(names)
        return EventTable(self.events, self.controllable,
                          [e for e in self.events if e not in names])

    def with_uncontrollable(self, names: Iterable[str]) -> "EventTable":
        names = set(names)
        self._check_known(names)
        return EventTable(self.events, [e for e in self.events if e not in names],
                          self.observable)

    def observable_table(self) -> "EventTable":
        """The table restricted to observable events (alphabet of observers)."""
        evs = [e for e in self.events if e in self.observable]
        return EventTable(evs, self.controllable & self.observable, evs)

    def merge(self, other: "EventTable") -> "EventTable":
        """Union of two tables; shared events must agree on their attributes."""
        for e in set(self.events) & set(other.events):
            if (e in self.controllable) != (e in other.controllable) or \
                    (e in self.observable) != (e in other.observable):
                raise AlphabetMismatch(f"conflicting attributes for event {e!r}")
        evs = list(self.events) + [e for e in other.events if e not in self]
        return EventTable(evs, self.controllable | other.controllable,
                          self.observable | other.observable)

    def _check_known(self, names):
        unknown = set(names) - self._key[0]
        if unknown:
            raise UnknownEvent(f"unknown events: {sorted(unknown)}")


class Generator:
    """Deterministic generator ``(Q, Sigma, delta, q0, Qm)``.

    Parameters
    ----------
    events : EventTable
    names : sequence of str
        One unique name per state; index ``i`` is state ``i``.
    initial : int or None
        ``None`` exactly when there are no states.
    marked : iterable of int
    delta : sequence of mappings
        ``delta[i][event]`` is the target of ``event`` at state ``i``.
    provenance : sequence, optional
        Per-state origin labels (tuples for products, frozensets for
        observers).
    """

    __slots__ = ("events", "names", "initial", "marked", "delta", "provenance",
                 "_index")

    def __init__(self, events: EventTable, names: Sequence[str], initial: int | None,
                 marked: Iterable[int], delta: Sequence[Mapping[str, int]],
                 provenance: Sequence | None = None, check: bool = True):
        self.events = events
        self.names = tuple(names)
        self.initial = initial
        self.marked = frozenset(marked)
        self.delta = tuple(delta)
        self.provenance = None if provenance is None else tuple(provenance)
        self._index = None
        if check:
            self._validate()

    def _validate(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise ValueError("state names must be unique")
        if len(self.delta) != n:
            raise ValueError("delta must have one entry per state")
        if n == 0:
            if self.initial is not None:
                raise ValueError("an empty generator has no initial state")
        elif self.initial is None or not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        if any(not 0 <= m < n for m in self.marked):
            raise ValueError("marked state out of range")
        alphabet = self.events
        for row in self.delta:
            for e, t in row.items():
                if e not in alphabet:
                    raise UnknownEvent(f"transition event {e!r} not in alphabet")
                if not 0 <= t < n:
                    raise ValueError("transition target out of range")
        if self.provenance is not None and len(self.provenance) != n:
            raise ValueError("provenance must have one entry per state")

    # construction helpers

    @classmethod
    def empty(cls, events: EventTable) -> "Generator":
        return cls(events, (), None, (), (), check=False)

    @classmethod
    def build(cls, events: EventTable, states: Sequence[str], initial: str,
              marked: Iterable[str], transitions: Iterable[tuple[str, str, str]]
              ) -> "Generator":
        """Build from named states and ``(src, event, dst)`` triples."""
        index = {s: i for i, s in enumerate(states)}
        delta = [dict() for _ in states]
        for src, ev, dst in transitions:
            row = delta[index[src]]
            if ev in row and row[ev] != index[dst]:
                raise ValueError(f"nondeterministic transition at {src!r} on {ev!r}")
            row[ev] = index[dst]
        return cls(events, states, index[initial], [index[m] for m in marked], delta)

    # basic queries

    def __repr__(self):
        return f"<Generator {self.n_states} states, {self.n_transitions} transitions>"

    @property
    def n_states(self) -> int:
        return len(self.names)

    @property
    def n_transitions(self) -> int:
        return sum(len(row) for row in self.delta)

    @property
    def is_empty(self) -> bool:
        return self.initial is None

    def index(self, name: str) -> int:
        if self._index is None:
            self._index = {s: i for i, s in enumerate(self.names)}
        return self._index[name]

    def transitions(self) -> Iterator[tuple[int, str, int]]:
        for src, row in enumerate(self.delta):
            for ev, dst in row.items():
                yield src, ev, dst

    def named_transitions(self) -> set[tuple[str, str, str]]:
        nm = self.names
        return {(nm[s], e, nm[t]) for s, e, t in self.transitions()}

    def run(self, string: Iterable[str], start: int | None = None) -> int | None:
        """State reached by ``string`` or ``None`` if it is not in L."""
        state = self.initial if start is None else start
        for ev in string:
            if state is None:
                return None
            state = self.delta[state].get(ev)
        return state

    def in_closed(self, string) -> bool:
        return self.run(string) is not None

    def in_marked(self, string) -> bool:
        s = self.run(string)
        return s is not None and s in self.marked

    def with_events(self, events: EventTable) -> "Generator":
        """Same structure over a table with the same event set."""
        if set(events.events) != set(self.events.events):
            raise AlphabetMismatch("with_events requires the same event set")
        return Generator(events, self.names, self.initial, self.marked, self.delta,
                         self.provenance, check=False)

    def relabel_states(self, names: Sequence[str]) -> "Generator":
        return Generator(self.events, names, self.initial, self.marked, self.delta,
                         self.provenance)


def _require_same_alphabet(a: Generator, b: Generator):
    if a.events != b.events:
        raise AlphabetMismatch("generators have different event tables")


def reachable(g: Generator) -> list[int]:
    """States reachable from the initial state, in BFS order."""
    if g.is_empty:
        return []
    seen = {g.initial}
    order = [g.initial]
    queue = deque(order)
    while queue:
        s = queue.popleft()
        for t in g.delta[s].values():
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


def coreachable(g: Generator, within: Iterable[int] | None = None) -> set[int]:
    """States from which a marker state can be reached."""
    allowed = set(range(g.n_states)) if within is None else set(within)
    pred = {s: [] for s in allowed}
    for s in allowed:
        for t in g.delta[s].values():
            if t in allowed:
                pred[t].append(s)
    good = {m for m in g.marked if m in allowed}
    stack = list(good)
    while stack:
        t = stack.pop()
        for s in pred[t]:
            if s not in good:
                good.add(s)
                stack.append(s)
    return good


def restrict(g: Generator, keep: Iterable[int], marked: Iterable[int] | None = None,
             removed: Iterable[tuple[int, str]] = ()) -> Generator:
    """Induced sub-generator on ``keep`` (order preserved), minus ``removed``.

    Dropping the initial state yields the empty generator.
    """
    keep = sorted(set(keep))
    if not keep or g.initial not in keep:
        return Generator.empty(g.events)
    new = {old: i for i, old in enumerate(keep)}
    drop = set(removed)
    delta = []
    for old in keep:
        row = {}
        for e, t in g.delta[old].items():
            if t in new and (old, e) not in drop:
                row[e] = new[t]
        delta.append(row)
    mk = g.marked if marked is None else marked
    prov = None if g.provenance is None else [g.provenance[o] for o in keep]
    return Generator(g.events, [g.names[o] for o in keep], new[g.initial],
                     [new[m] for m in mk if m in new], delta, prov, check=False)


def trim(g: Generator) -> Generator:
    """Remove non-reachable and non-coreachable states.

    Returns the empty generator if the initial state is removed.
    """
    if g.is_empty:
        return g
    reach = reachable(g)
    good = coreachable(g, reach)
    if g.initial not in good:
        return Generator.empty(g.events)
    if len(good) == g.n_states:
        return g
    return restrict(g, good)


def accessible(g: Generator) -> Generator:
    if g.is_empty:
        return g
    reach = reachable(g)
    if len(reach) == g.n_states:
        return g
    return restrict(g, reach)


def is_nonblocking(g: Generator) -> bool:
    reach = reachable(g)
    return len(coreachable(g, reach)) == len(reach)


def _pair_name(a: str, b: str) -> str:
    return f"({a},{b})"


def sync_product(a: Generator, b: Generator) -> Generator:
    """Reachable synchronous product over a common alphabet.

    L(result) = L(a) & L(b) and Lm(result) = Lm(a) & Lm(b); provenance holds
    the (a-state, b-state) origin of each product state.
    """
    _require_same_alphabet(a, b)
    if a.is_empty or b.is_empty:
        return Generator.empty(a.events)
    start = (a.initial, b.initial)
    index = {start: 0}
    pairs = [start]
    delta = []
    i = 0
    while i < len(pairs):
        x, y = pairs[i]
        row = {}
        yrow = b.delta[y]
        for e, x2 in a.delta[x].items():
            y2 = yrow.get(e)
            if y2 is None:
                continue
            key = (x2, y2)
            j = index.get(key)
            if j is None:
                j = index[key] = len(pairs)
                pairs.append(key)
            row[e] = j
        delta.append(row)
        i += 1
    marked = [k for k, (x, y) in enumerate(pairs) if x in a.marked and y in b.marked]
    names = [_pair_name(a.names[x], b.names[y]) for x, y in pairs]
    return Generator(a.events, names, 0, marked, delta, pairs, check=False)


def sync(*gens: Generator) -> Generator:
    """Synchronous product of generators over possibly different alphabets.

    An event moves every component whose alphabet contains it and is blocked
    unless all of them can execute it. The result is over the merged table.
    """
    if not gens:
        raise ValueError("sync needs at least one generator")
    table = gens[0].events
    for g in gens[1:]:
        table = table.merge(g.events)
    if any(g.is_empty for g in gens):
        return Generator.empty(table)
    owners = {e: [k for k, g in enumerate(gens) if e in g.events] for e in table.events}
    start = tuple(g.initial for g in gens)
    index = {start: 0}
    tuples = [start]
    delta = []
    i = 0
    while i < len(tuples):
        cur = tuples[i]
        row = {}
        for e in table.events:
            nxt = list(cur)
            for k in owners[e]:
                t = gens[k].delta[cur[k]].get(e)
                if t is None:
                    break
                nxt[k] = t
            else:
                key = tuple(nxt)
                j = index.get(key)
                if j is None:
                    j = index[key] = len(tuples)
                    tuples.append(key)
                row[e] = j
        delta.append(row)
        i += 1
    marked = [k for k, t in enumerate(tuples)
              if all(s in g.marked for s, g in zip(t, gens))]
    names = ["(" + ",".join(g.names[s] for s, g in zip(t, gens)) + ")" for t in tuples]
    return Generator(table, names, 0, marked, delta, tuples, check=False)


def complete_with_dump(g: Generator) -> tuple[Generator, int]:
    """Totalize the transition function with a fresh unmarked dump state."""
    name = "dump"
    taken = set(g.names)
    while name in taken:
        name += "'"
    n = g.n_states
    evs = g.events.events
    delta = [{e: row.get(e, n) for e in evs} for row in g.delta]
    delta.append({e: n for e in evs})
    initial = n if g.is_empty else g.initial
    prov = None if g.provenance is None else list(g.provenance) + [None]
    out = Generator(g.events, list(g.names) + [name], initial, g.marked, delta, prov,
                    check=False)
    return out, n


class Relation(enum.Enum):
    EQUAL = "Equal"
    A_STRICTLY_IN_B = "AStrictlyInB"
    B_STRICTLY_IN_A = "BStrictlyInA"
    INCOMPARABLE = "Incomparable"

    def __str__(self):
        return self.value


def _relation(a_in_b: bool, b_in_a: bool) -> Relation:
    if a_in_b and b_in_a:
        return Relation.EQUAL
    if a_in_b:
        return Relation.A_STRICTLY_IN_B
    if b_in_a:
        return Relation.B_STRICTLY_IN_A
    return Relation.INCOMPARABLE


def _difference_witnesses(a: Generator, b: Generator):
    """Shortest strings in L(a) - L(b) and Lm(a) - Lm(b) (or None).

    Explores a against the dump-completed b; ``DUMP`` stands for the dump.
    """
    if a.is_empty:
        return None, None
    start = (a.initial, DUMP if b.is_empty else b.initial)
    parent = {start: None}
    queue = deque([start])
    closed_w = marked_w = None
    evs = a.events.events

    def path(node):
        out = []
        while parent[node] is not None:
            node, e = parent[node]
            out.append(e)
        return tuple(reversed(out))

    while queue:
        node = queue.popleft()
        x, y = node
        if closed_w is None and y == DUMP:
            closed_w = path(node)
        if marked_w is None and x in a.marked and (y == DUMP or y not in b.marked):
            marked_w = path(node)
        if closed_w is not None and marked_w is not None:
            break
        arow = a.delta[x]
        brow = b.delta[y] if y != DUMP else {}
        for e in evs:
            x2 = arow.get(e)
            if x2 is None:
                continue
            nxt = (x2, brow.get(e, DUMP))
            if nxt not in parent:
                parent[nxt] = (node, e)
                queue.append(nxt)
    return closed_w, marked_w


@dataclass(frozen=True)
class LanguageRelation:
    """Inclusion verdicts for the closed and marked languages of ``(a, b)``.

    Witness fields hold a shortest string in the corresponding difference.
    """

    closed: Relation
    marked: Relation
    closed_a_not_b: tuple | None = None
    closed_b_not_a: tuple | None = None
    marked_a_not_b: tuple | None = None
    marked_b_not_a: tuple | None = None

    @property
    def relation(self) -> Relation:
        """Verdict on the pair (L, Lm) under componentwise inclusion."""
        a_in_b = self.closed_a_not_b is None and self.marked_a_not_b is None
        b_in_a = self.closed_b_not_a is None and self.marked_b_not_a is None
        return _relation(a_in_b, b_in_a)

    @property
    def witness(self) -> tuple | None:
        for w in (self.marked_a_not_b, self.marked_b_not_a,
                  self.closed_a_not_b, self.closed_b_not_a):
            if w is not None:
                return w
        return None


def language_relation(a: Generator, b: Generator) -> LanguageRelation:
    """Decide inclusion both ways for the closed and marked languages."""
    _require_same_alphabet(a, b)
    ca, ma = _difference_witnesses(a, b)
    cb, mb = _difference_witnesses(b, a)
    return LanguageRelation(
        closed=_relation(ca is None, cb is None),
        marked=_relation(ma is None, mb is None),
        closed_a_not_b=ca, closed_b_not_a=cb,
        marked_a_not_b=ma, marked_b_not_a=mb)


def language_equal(a: Generator, b: Generator) -> bool:
    return language_relation(a, b).relation is Relation.EQUAL


def marked_subset(a: Generator, b: Generator) -> tuple | None:
    """``None`` if Lm(a) is contained in Lm(b), else a witness string."""
    _require_same_alphabet(a, b)
    return _difference_witnesses(a, b)[1]


def closed_subset(a: Generator, b: Generator) -> tuple | None:
    _require_same_alphabet(a, b)
    return _difference_witnesses(a, b)[0]


def minimize(g: Generator) -> Generator:
    """Canonical minimal generator with the same closed and marked languages.

    Blocks are refined from the initial partition by (marked, defined
    events), so both languages are preserved. States of the result are
    numbered in BFS order over the table's event order, so language-equal
    inputs yield identical outputs.
    """
    g = accessible(g)
    if g.is_empty:
        return g
    n = g.n_states
    evs = g.events.sorted_events()
    rows = [[(e, row[e]) for e in evs if e in row] for row in g.delta]
    keys = {}
    block = []
    for s in range(n):
        k = (s in g.marked, tuple(e for e, _ in rows[s]))
        block.append(keys.setdefault(k, len(keys)))
    count = len(keys)
    while True:
        keys = {}
        nb = []
        for s in range(n):
            k = (block[s], tuple(block[t] for _, t in rows[s]))
            nb.append(keys.setdefault(k, len(keys)))
        block = nb
        if len(keys) == count:
            break
        count = len(keys)
    # canonical renumbering by BFS from the initial block
    rep = {}
    for s in range(n):
        rep.setdefault(block[s], s)
    delta = []
    marked = []
    order = {block[g.initial]: 0}
    seq = [block[g.initial]]
    i = 0
    while i < len(seq):
        b = seq[i]
        s = rep[b]
        row = {}
        for e, t in rows[s]:
            tb = block[t]
            j = order.get(tb)
            if j is None:
                j = order[tb] = len(seq)
                seq.append(tb)
            row[e] = j
        delta.append(row)
        if s in g.marked:
            marked.append(i)
        i += 1
    return Generator(g.events, [str(i) for i in range(len(seq))], 0, marked, delta,
                     check=False)


def isomorphic(a: Generator, b: Generator) -> bool:
    """Structural isomorphism of the reachable parts (names ignored)."""
    if a.events != b.events:
        return False
    if a.is_empty or b.is_empty:
        return a.is_empty and b.is_empty
    m = {a.initial: b.initial}
    queue = deque([a.initial])
    while queue:
        x = queue.popleft()
        y = m[x]
        if (x in a.marked) != (y in b.marked):
            return False
        ra, rb = a.delta[x], b.delta[y]
        if ra.keys() != rb.keys():
            return False
        for e, x2 in ra.items():
            y2 = rb[e]
            if x2 in m:
                if m[x2] != y2:
                    return False
            else:
                m[x2] = y2
                queue.append(x2)
    return len(set(m.values())) == len(m) and len(m) == len(reachable(b))
