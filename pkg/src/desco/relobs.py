"""Relative observability: checking, T-sets, and the supremal sublanguage.

The synthesis loop (:func:`suprelobs`) follows the transition-removal
procedure: in every iteration the lookalike classes of the frozen ambient
language are enumerated as sets of (plant state, iterate state) pairs, every
observationally inconsistent class contributes the transitions to delete and
the marker states to unmark, and the trimmed result feeds the next iteration.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .automata import (DUMP, Generator, complete_with_dump, is_nonblocking, marked_subset,
                       restrict, trim, _require_same_alphabet)
from .errors import PreconditionViolated
from .projection import (_pair_with_observer, check_assumption1, normalize_assumption2,
                         observer, refine_by_ambient, sync_product)


@dataclass(frozen=True)
class TSet:
    """Pairs ``(plant state, iterate state)`` reached by one lookalike class.

    ``key`` is a shortest observable string of the class; it is not part of
    equality. Iterate states are names; the dump state appears as ``dump``.
    """

    pairs: frozenset
    key: tuple = field(default=(), compare=False)

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class ConsistencyViolation:
    """Transitions to delete and marker states to unmark for one T-set."""

    removals: frozenset = frozenset()
    unmarkings: frozenset = frozenset()

    def __bool__(self):
        return bool(self.removals or self.unmarkings)


@dataclass(frozen=True)
class RelobsWitness:
    """A lookalike pair violating relative observability.

    ``event`` is set for a closed-behavior violation (condition (i)) and is
    ``None`` for a marking violation (condition (ii)).
    """

    s: tuple
    s_prime: tuple
    event: str | None

    def __str__(self):
        fmt = lambda w: ".".join(w) if w else "ε"
        if self.event is None:
            return f"s={fmt(self.s)} in K, s'={fmt(self.s_prime)} marked in G but not in K"
        return (f"s={fmt(self.s)}, s'={fmt(self.s_prime)}, event={self.event}: "
                f"s.{self.event} in closure(K) but s'.{self.event} is not")


@dataclass
class IterationRecord:
    removed: list
    unmarked: list
    n_states: int
    n_transitions: int
    n_tsets: int


@dataclass
class SynthesisReport:
    """Trace of one run of the transition-removal loop."""

    normalizations: list = field(default_factory=list)
    iterations: list = field(default_factory=list)
    intermediates: list = field(default_factory=list)

    @property
    def n_iterations(self) -> int:
        return len(self.iterations)

    @property
    def n_removal_iterations(self) -> int:
        return sum(1 for it in self.iterations if it.removed or it.unmarked)

    def as_dict(self) -> dict:
        return {
            "normalizations": list(self.normalizations),
            "iterations": [
                {"removed": [list(t) for t in it.removed], "unmarked": list(it.unmarked),
                 "states": it.n_states, "transitions": it.n_transitions,
                 "tsets": it.n_tsets}
                for it in self.iterations],
        }


# ---------------------------------------------------------------------------
# checking


def _check_inclusions(g: Generator, c: Generator, k: Generator):
    w = marked_subset(k, c)
    if w is not None:
        raise PreconditionViolated("Lm(K) is not contained in Lm(C)", w)
    w = marked_subset(c, g)
    if w is not None:
        raise PreconditionViolated("Lm(C) is not contained in Lm(G)", w)


def check_relative_observability(g: Generator, c: Generator, k: Generator,
                                 events: Iterable[str] | None = None
                                 ) -> tuple[bool, RelobsWitness | None]:
    """Decide whether Lm(k) is relatively observable w.r.t. closure(Lm(c)).

    Explores pairs of lookalike strings ``(s, s')`` with ``s`` in L(k) and
    ``s'`` in L(c), tracking ``(k-state of s, plant state of s', c-state of
    s', dump-completed k-state of s')``. ``events`` restricts condition (i)
    to a subset of the alphabet.
    """
    _require_same_alphabet(g, c)
    _require_same_alphabet(g, k)
    _check_inclusions(g, c, k)
    if k.is_empty or c.is_empty:
        return True, None
    kt, dump = complete_with_dump(k)
    table = g.events
    cond_events = list(table.events) if events is None else \
        [e for e in table.events if e in set(events)]
    observable = table.observable
    evs = table.events
    gd, cd, kd, ktd = g.delta, c.delta, k.delta, kt.delta

    start = (k.initial, g.initial, c.initial, k.initial)
    parent = {start: None}
    queue = deque([start])

    def strings(node):
        s, sp = [], []
        while parent[node] is not None:
            node, e, who = parent[node]
            if who != 1:
                s.append(e)
            if who != 0:
                sp.append(e)
        return tuple(reversed(s)), tuple(reversed(sp))

    while queue:
        node = queue.popleft()
        y, q, cc, yt = node
        krow, grow, ktrow = kd[y], gd[q], ktd[yt]
        for e in cond_events:
            if e in krow and e in grow and ktrow[e] == dump:
                s, sp = strings(node)
                return False, RelobsWitness(s, sp, e)
        if y in k.marked and q in g.marked and yt not in k.marked:
            s, sp = strings(node)
            return False, RelobsWitness(s, sp, None)
        crow = cd[cc]
        for e in evs:
            if e in observable:
                y2 = krow.get(e)
                c2 = crow.get(e)
                if y2 is None or c2 is None or e not in grow:
                    continue
                nxt = (y2, grow[e], c2, ktrow[e])
                if nxt not in parent:
                    parent[nxt] = (node, e, 2)
                    queue.append(nxt)
            else:
                y2 = krow.get(e)
                if y2 is not None:
                    nxt = (y2, q, cc, yt)
                    if nxt not in parent:
                        parent[nxt] = (node, e, 0)
                        queue.append(nxt)
                c2 = crow.get(e)
                if c2 is not None and e in grow:
                    nxt = (y, grow[e], c2, ktrow[e])
                    if nxt not in parent:
                        parent[nxt] = (node, e, 1)
                        queue.append(nxt)
    return True, None


def check_observability(g: Generator, k: Generator, events: Iterable[str] | None = None
                        ) -> tuple[bool, RelobsWitness | None]:
    """Standard observability: the relative check with ambient closure(K)."""
    return check_relative_observability(g, k, k, events)


# ---------------------------------------------------------------------------
# T-sets


class _TFamily:
    """Subset construction over (plant, ambient, completed tracker) triples.

    ``kt`` is a dump-completed generator that follows each ambient string;
    ``classes`` holds the reachable subsets of triples and ``parents`` the
    BFS tree used to recover a representative observable string per class.
    """

    def __init__(self, g: Generator, ambient: Generator, kt: Generator):
        table = g.events
        uo = table.unobservable
        obs_events = [e for e in table.events if e in table.observable]
        gd, ad, kd = g.delta, ambient.delta, kt.delta

        uo_moves = {}

        def closure(triples):
            seen = set(triples)
            stack = list(seen)
            while stack:
                tr = stack.pop()
                nxts = uo_moves.get(tr)
                if nxts is None:
                    q, a, y = tr
                    grow, arow, krow = gd[q], ad[a], kd[y]
                    nxts = []
                    for e, a2 in arow.items():
                        if e in uo:
                            q2 = grow.get(e)
                            if q2 is not None:
                                nxts.append((q2, a2, krow[e]))
                    uo_moves[tr] = nxts
                for t2 in nxts:
                    if t2 not in seen:
                        seen.add(t2)
                        stack.append(t2)
            return frozenset(seen)

        start = closure([(g.initial, ambient.initial, kt.initial)])
        index = {start: 0}
        classes = [start]
        parents = [None]
        i = 0
        while i < len(classes):
            cur = classes[i]
            images = {}
            for q, a, y in cur:
                grow, arow, krow = gd[q], ad[a], kd[y]
                for e, a2 in arow.items():
                    if e in uo:
                        continue
                    q2 = grow.get(e)
                    if q2 is None:
                        continue
                    images.setdefault(e, []).append((q2, a2, krow[e]))
            for e in obs_events:
                img = images.get(e)
                if not img:
                    continue
                nxt = closure(img)
                if nxt not in index:
                    index[nxt] = len(classes)
                    classes.append(nxt)
                    parents.append((i, e))
            i += 1
        self.classes = classes
        self.parents = parents

    def key(self, i: int) -> tuple:
        out = []
        while self.parents[i] is not None:
            i, e = self.parents[i]
            out.append(e)
        return tuple(reversed(out))

    def pair_sets(self, ymap) -> dict:
        """Distinct pair sets of size >= 2, mapped to a class index.

        ``ymap`` translates tracker states to iterate states or ``DUMP``.
        """
        seen = {}
        for i, cls in enumerate(self.classes):
            pairs = frozenset((q, ymap[y]) for q, _, y in cls)
            if len(pairs) >= 2 and pairs not in seen:
                seen[pairs] = i
        return seen


def _identity_map(k_i: Generator) -> list:
    # complete_with_dump appends the dump state last
    return list(range(k_i.n_states)) + [DUMP]


def compute_T_family(g: Generator, ambient: Generator, k_i: Generator) -> set[TSet]:
    """The family of T-sets with at least two pairs.

    Pairs are ``(plant state name, iterate state name)``; strings leaving
    L(k_i) contribute the dump state.
    """
    _require_same_alphabet(g, ambient)
    _require_same_alphabet(g, k_i)
    if ambient.is_empty:
        return set()
    kt, dump = complete_with_dump(k_i)
    fam = _TFamily(g, ambient, kt)
    ymap = _identity_map(k_i)
    out = set()
    for pairs, i in fam.pair_sets(ymap).items():
        named = frozenset((g.names[q], kt.names[dump if y == DUMP else y])
                          for q, y in pairs)
        out.add(TSet(named, fam.key(i)))
    return out


def _violations(pairs, g: Generator, k_i: Generator, cond_events):
    """R_T and M_T of one T-set over integer states of k_i (``DUMP`` = -1)."""
    gd, kd = g.delta, k_i.delta
    removals = []
    ys = {y for _, y in pairs if y != DUMP}
    for e in cond_events:
        enabled = [y for y in ys if e in kd[y]]
        if not enabled:
            continue
        for q, y in pairs:
            if e in gd[q] and (y == DUMP or e not in kd[y]):
                removals.extend((y2, e) for y2 in enabled)
                break
    unmark = []
    marked = [y for y in ys if y in k_i.marked]
    if marked:
        gm, km = g.marked, k_i.marked
        for q, y in pairs:
            if q in gm and (y == DUMP or y not in km):
                unmark = marked
                break
    return removals, unmark


def _event_filter(g: Generator, events) -> list:
    if events is None:
        return list(g.events.events)
    wanted = set(events)
    return [e for e in g.events.events if e in wanted]


def consistency_check(t: TSet, g: Generator, k_i: Generator,
                      events: Iterable[str] | None = None) -> ConsistencyViolation:
    """Transitions and marker states of k_i violating consistency within ``t``.

    ``t`` carries state names as produced by :func:`compute_T_family`;
    ``k_i`` is the (uncompleted) iterate. ``events`` restricts the
    transition condition to a subset of events.
    """
    kt, dump = complete_with_dump(k_i)
    dump_name = kt.names[dump]
    pairs = []
    for qn, yn in t.pairs:
        y = DUMP if yn == dump_name else k_i.index(yn)
        pairs.append((g.index(qn), y))
    removals, unmark = _violations(pairs, g, k_i, _event_filter(g, events))
    nm = k_i.names
    return ConsistencyViolation(
        frozenset((nm[y], e, nm[k_i.delta[y][e]]) for y, e in removals),
        frozenset(nm[y] for y in unmark))


# ---------------------------------------------------------------------------
# synthesis

TRACKING_MODES = ("string", "state")


class _Sweeper:
    """Runs removal sweeps against a frozen ambient.

    ``tracking="string"`` follows every ambient string through the current
    iterate, so a string that has left closure(K_i) pairs with the dump
    state; this decides the relative observability definition exactly.
    ``tracking="state"`` follows ambient strings through the initial
    iterate K_0 and judges them by the current iterate's transitions at the
    K_0 state they reach (the dump only once that state is gone). The
    lookalike classes then never change, so they are built once.
    """

    def __init__(self, g: Generator, ambient: Generator, k0: Generator,
                 cond_events, tracking: str = "string"):
        if tracking not in TRACKING_MODES:
            raise ValueError(f"tracking must be one of {TRACKING_MODES}")
        self.g, self.ambient, self.k0 = g, ambient, k0
        self.cond = cond_events
        self.tracking = tracking
        self.fam = None
        if tracking == "state" and not k0.is_empty:
            kt0, _ = complete_with_dump(k0)
            self.fam = _TFamily(g, ambient, kt0)

    def _pair_sets(self, k_i: Generator) -> dict:
        if self.tracking == "string":
            kt, _ = complete_with_dump(k_i)
            return _TFamily(self.g, self.ambient, kt).pair_sets(_identity_map(k_i))
        where = {name: i for i, name in enumerate(k_i.names)}
        ymap = [where.get(name, DUMP) for name in self.k0.names] + [DUMP]
        return self.fam.pair_sets(ymap)

    def step(self, k_i: Generator):
        """One sweep; returns ``(k_next, removed, unmarked, n_tsets)``."""
        if k_i.is_empty:
            return k_i, [], [], 0
        pair_sets = self._pair_sets(k_i)
        removed, unmarked = set(), set()
        for pairs in pair_sets:
            r, m = _violations(pairs, self.g, k_i, self.cond)
            removed.update(r)
            unmarked.update(m)
        if not removed and not unmarked:
            return k_i, [], [], len(pair_sets)
        stripped = restrict(k_i, range(k_i.n_states),
                            marked=k_i.marked - unmarked, removed=removed)
        nm = k_i.names
        rem = sorted((nm[y], e, nm[k_i.delta[y][e]]) for y, e in removed)
        unm = sorted(nm[y] for y in unmarked)
        return trim(stripped), rem, unm, len(pair_sets)


def suprelobs_step(g: Generator, ambient: Generator, k_i: Generator,
                   events: Iterable[str] | None = None):
    """One iteration: union all violations, delete, unmark, trim.

    Returns ``(k_next, (removed_transitions, unmarked_states))`` with state
    names; a consistent ``k_i`` is returned unchanged.
    """
    _require_same_alphabet(g, ambient)
    _require_same_alphabet(g, k_i)
    sweeper = _Sweeper(g, ambient, k_i, _event_filter(g, events))
    k_next, rem, unm, _ = sweeper.step(k_i)
    return k_next, (rem, unm)


def _is_refined(k: Generator, source: Generator) -> bool:
    _, pairs = _pair_with_observer(k, source)
    owner = {}
    return all(owner.setdefault(y, x) == x for y, x in pairs)


def prepare(g: Generator, k: Generator, ambient: Generator | None = None,
            report: SynthesisReport | None = None) -> Generator:
    """Trim k and normalize it for the removal loop.

    Applies ``k || g`` when states of k do not determine plant states and
    then the observer refinement (``k || PK``, or the ambient-aware variant
    when an explicit ambient is given) when needed.
    """
    notes = report.normalizations if report is not None else []
    if not is_nonblocking(k):
        k = trim(k)
        notes.append("trim")
    if k.is_empty:
        return k
    ok, _ = check_assumption1(k, g)
    if not ok:
        k = sync_product(k, g)
        notes.append("assumption1")
    if ambient is None:
        if not _is_refined(k, k):
            k = normalize_assumption2(k)
            notes.append("assumption2")
    else:
        full, _ = complete_with_dump(k)
        if not _is_refined(k, sync_product(ambient, full)):
            k = refine_by_ambient(k, ambient)
            notes.append("ambient-refinement")
    return k


def suprelobs(g: Generator, k: Generator, ambient: Generator | None = None,
              events: Iterable[str] | None = None, keep_intermediates: bool = False,
              tracking: str = "string") -> tuple[Generator, SynthesisReport]:
    """Supremal relatively observable sublanguage of Lm(k).

    Parameters
    ----------
    g : plant generator.
    k : specification; Lm(k) must be contained in Lm(g).
    ambient : generator C with Lm(k) <= Lm(C) <= Lm(g); defaults to k, in
        which case the result is relatively observable w.r.t. closure(Lm(k)).
        The ambient is frozen for the whole run.
    events : restrict the transition condition to these events.
    keep_intermediates : store every iterate in the report.
    tracking : ``"string"`` (default) decides the definition exactly;
        ``"state"`` judges lookalike ambient strings by the state they reach
        in the normalized input (see :class:`_Sweeper`).
    """
    _require_same_alphabet(g, k)
    report = SynthesisReport()
    w = marked_subset(k, g)
    if w is not None:
        raise PreconditionViolated("Lm(K) is not contained in Lm(G)", w)
    if ambient is not None:
        _require_same_alphabet(g, ambient)
        _check_inclusions(g, ambient, k)
    k_i = prepare(g, k, ambient, report)
    frozen = k_i if ambient is None else ambient
    sweeper = _Sweeper(g, frozen, k_i, _event_filter(g, events), tracking)
    if keep_intermediates:
        report.intermediates.append(k_i)
    while True:
        k_next, rem, unm, n_t = sweeper.step(k_i)
        report.iterations.append(IterationRecord(rem, unm, k_next.n_states,
                                                 k_next.n_transitions, n_t))
        if not rem and not unm:
            return k_i, report
        k_i = k_next
        if keep_intermediates:
            report.intermediates.append(k_i)
