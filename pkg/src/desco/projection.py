"""Natural projection, observers, and the normalizations that precede synthesis."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .automata import (EventTable, Generator, complete_with_dump, is_nonblocking,
                       sync_product, _require_same_alphabet)
from .errors import Blocking, UnknownEvent


def project_string(s: Iterable[str], table: EventTable) -> tuple[str, ...]:
    """Erase unobservable events from ``s``."""
    out = []
    for e in s:
        if e not in table:
            raise UnknownEvent(f"event {e!r} not in alphabet")
        if e in table.observable:
            out.append(e)
    return tuple(out)


class _Closure:
    """Unobservable reach of state subsets, cached per subset."""

    def __init__(self, g: Generator):
        self.g = g
        uo = g.events.unobservable
        self.uo_rows = [[t for e, t in row.items() if e in uo] for row in g.delta]
        self.cache = {}

    def __call__(self, states) -> frozenset:
        key = frozenset(states)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        seen = set(key)
        stack = list(key)
        rows = self.uo_rows
        while stack:
            s = stack.pop()
            for t in rows[s]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        out = self.cache[key] = frozenset(seen)
        return out

    def step(self, subset: frozenset, event: str) -> frozenset:
        delta = self.g.delta
        image = {delta[s][event] for s in subset if event in delta[s]}
        return self(image) if image else frozenset()


def _subset_name(g: Generator, subset) -> str:
    return "{" + ",".join(g.names[s] for s in sorted(subset)) + "}"


def observer(k: Generator) -> Generator:
    """Deterministic observer PK over the observable events.

    Each observer state is the set of k-states reachable by strings with the
    same projection; it is recorded as provenance and is marked iff it
    contains a marker state of k.
    """
    table = k.events.observable_table()
    if k.is_empty:
        return Generator.empty(table)
    closure = _Closure(k)
    obs_events = [e for e in k.events.events if e in k.events.observable]
    start = closure([k.initial])
    index = {start: 0}
    subsets = [start]
    delta = []
    i = 0
    while i < len(subsets):
        cur = subsets[i]
        row = {}
        for e in obs_events:
            nxt = closure.step(cur, e)
            if not nxt:
                continue
            j = index.get(nxt)
            if j is None:
                j = index[nxt] = len(subsets)
                subsets.append(nxt)
            row[e] = j
        delta.append(row)
        i += 1
    marked = [j for j, sub in enumerate(subsets) if not sub.isdisjoint(k.marked)]
    names = [_subset_name(k, sub) for sub in subsets]
    return Generator(table, names, 0, marked, delta, subsets, check=False)


def uncertainty_set(k: Generator, s: Sequence[str]) -> frozenset[str]:
    """Names of the k-states reached by strings lookalike to ``s``."""
    obs = observer(k)
    x = obs.run(project_string(s, k.events))
    if x is None:
        return frozenset()
    return frozenset(k.names[y] for y in obs.provenance[x])


def _pair_with_observer(k: Generator, source: Generator) -> tuple[Generator, list]:
    """Product of k with the observer of ``source``.

    k moves on every event; the observer component moves on observable
    events only. Requires L(k) to be contained in L(source).
    """
    obs = observer(source)
    if k.is_empty:
        return Generator.empty(k.events), []
    observable = k.events.observable
    start = (k.initial, obs.initial)
    index = {start: 0}
    pairs = [start]
    delta = []
    i = 0
    while i < len(pairs):
        y, x = pairs[i]
        row = {}
        orow = obs.delta[x]
        for e, y2 in k.delta[y].items():
            if e in observable:
                x2 = orow.get(e)
                if x2 is None:
                    raise ValueError("L(k) is not contained in L(source)")
            else:
                x2 = x
            key = (y2, x2)
            j = index.get(key)
            if j is None:
                j = index[key] = len(pairs)
                pairs.append(key)
            row[e] = j
        delta.append(row)
        i += 1
    marked = [j for j, (y, _) in enumerate(pairs) if y in k.marked]
    names = [f"({k.names[y]},{obs.names[x]})" for y, x in pairs]
    return Generator(k.events, names, 0, marked, delta, pairs, check=False), pairs


def check_assumption1(k: Generator, g: Generator) -> tuple[bool, str | None]:
    """Whether every reachable k-state pairs with a unique plant state.

    Returns ``(True, None)`` or ``(False, name_of_offending_k_state)``.
    """
    _require_same_alphabet(k, g)
    if k.is_empty:
        return True, None
    owner = {k.initial: g.initial}
    queue = deque([(k.initial, g.initial)])
    seen = {(k.initial, g.initial)}
    while queue:
        y, q = queue.popleft()
        grow = g.delta[q]
        for e, y2 in k.delta[y].items():
            q2 = grow.get(e)
            if q2 is None:
                continue
            prev = owner.setdefault(y2, q2)
            if prev != q2:
                return False, k.names[y2]
            if (y2, q2) not in seen:
                seen.add((y2, q2))
                queue.append((y2, q2))
    return True, None


def normalize_assumption1(k: Generator, g: Generator) -> Generator:
    """``k || g``: each state of the result determines a unique plant state."""
    return sync_product(k, g)


def check_assumption2(k: Generator) -> tuple[bool, str | None]:
    """Whether strings reaching the same k-state share one uncertainty set.

    Returns ``(True, None)`` or ``(False, name_of_offending_k_state)``.
    """
    if k.is_empty:
        return True, None
    _, pairs = _pair_with_observer(k, k)
    owner = {}
    for y, x in pairs:
        if owner.setdefault(y, x) != x:
            return False, k.names[y]
    return True, None


def normalize_assumption2(k: Generator) -> Generator:
    """``k || PK``: language-equal to k and satisfying Assumption 2."""
    return _pair_with_observer(k, k)[0]


def refine_by_ambient(k: Generator, ambient: Generator) -> Generator:
    """Pair k with the observer of ``ambient x dump-completed k``.

    Afterwards every k-state determines the set of (ambient state, k-state)
    configurations reached by lookalike ambient strings; with ``ambient = k``
    this is the same refinement as :func:`normalize_assumption2`.
    """
    _require_same_alphabet(k, ambient)
    full, _ = complete_with_dump(k)
    return _pair_with_observer(k, sync_product(ambient, full))[0]


def is_lm_observer(k: Generator) -> tuple[bool, tuple | None]:
    """Decide whether the projection is an Lm(k)-observer.

    Returns ``(True, None)`` or ``(False, (s, t_o))`` where ``s`` is in L(k),
    ``P(s) t_o`` is in P Lm(k), and no ``t`` with ``P(t) = t_o`` extends ``s``
    into Lm(k).
    """
    if not is_nonblocking(k):
        raise Blocking("is_lm_observer requires a nonblocking generator")
    if k.is_empty:
        return True, None
    obs = observer(k)
    closure = _Closure(k)
    observable = k.events.observable
    obs_events = list(obs.events.events)

    # reachable (k-state, observer-state) pairs with BFS parents for s
    start = (k.initial, obs.initial)
    parent = {start: None}
    order = [start]
    i = 0
    while i < len(order):
        y, x = order[i]
        for e, y2 in k.delta[y].items():
            x2 = obs.delta[x][e] if e in observable else x
            nxt = (y2, x2)
            if nxt not in parent:
                parent[nxt] = ((y, x), e)
                order.append(nxt)
        i += 1

    # multi-source search over (observer state, lifted k-subset)
    back = {}
    queue = deque()
    for pair in order:
        y, x = pair
        node = (x, closure([y]))
        if node not in back:
            back[node] = ("src", pair)
            queue.append(node)
    marked = k.marked
    while queue:
        node = queue.popleft()
        x, z = node
        if x in obs.marked and z.isdisjoint(marked):
            t_o = []
            cur = node
            while back[cur][0] != "src":
                cur, e = back[cur]
                t_o.append(e)
            s = []
            pair = back[cur][1]
            while parent[pair] is not None:
                pair, e = parent[pair]
                s.append(e)
            return False, (tuple(reversed(s)), tuple(reversed(t_o)))
        for e in obs_events:
            x2 = obs.delta[x].get(e)
            if x2 is None:
                continue
            nxt = (x2, closure.step(z, e) if z else z)
            if nxt not in back:
                back[nxt] = (node, e)
                queue.append(nxt)
    return True, None
