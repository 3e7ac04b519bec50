"""Controllability, the supremal controllable sublanguage, and normality."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automata import (Generator, Relation, closed_subset, complete_with_dump, language_equal,
                       language_relation, marked_subset, minimize, restrict, sync_product,
                       trim, _require_same_alphabet)
from .errors import PreconditionViolated
from .projection import _pair_with_observer, check_assumption1, observer


@dataclass(frozen=True)
class ControlContext:
    """A plant together with its uncontrollable events."""

    plant: Generator

    @property
    def uncontrollable(self) -> frozenset:
        return self.plant.events.uncontrollable

    @property
    def controllable(self) -> frozenset:
        return self.plant.events.controllable


def _string_to(parent, node):
    out = []
    while parent[node] is not None:
        node, e = parent[node]
        out.append(e)
    return tuple(reversed(out))


def is_controllable(ctx: ControlContext, k: Generator) -> tuple[bool, tuple | None]:
    """Whether closure(K) is closed under plant-admissible uncontrollable events.

    Returns ``(True, None)`` or ``(False, (s, sigma_u))``.
    """
    g = ctx.plant
    _require_same_alphabet(g, k)
    w = closed_subset(k, g)
    if w is not None:
        raise PreconditionViolated("L(K) is not contained in L(G)", w)
    if k.is_empty:
        return True, None
    unc = sorted(ctx.uncontrollable)
    start = (k.initial, g.initial)
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        y, q = node
        krow, grow = k.delta[y], g.delta[q]
        for e in unc:
            if e in grow and e not in krow:
                return False, (_string_to(parent, node), e)
        for e, y2 in krow.items():
            nxt = (y2, grow[e])
            if nxt not in parent:
                parent[nxt] = (node, e)
                queue.append(nxt)
    return True, None


def supcon(ctx: ControlContext, k: Generator) -> Generator:
    """Supremal controllable sublanguage of Lm(k) by iterated bad-state deletion.

    If states of k do not already determine plant states, ``k || plant`` is
    used instead. Every sweep deletes all states at which the plant admits an
    uncontrollable event that k does not, then trims.
    """
    g = ctx.plant
    _require_same_alphabet(g, k)
    w = marked_subset(k, g)
    if w is not None:
        raise PreconditionViolated("Lm(K) is not contained in Lm(G)", w)
    if not check_assumption1(k, g)[0]:
        k = sync_product(k, g)
    k = trim(k)
    unc = ctx.uncontrollable
    while not k.is_empty:
        plant_state = {k.initial: g.initial}
        for y in _bfs(k):
            q = plant_state[y]
            for e, y2 in k.delta[y].items():
                plant_state.setdefault(y2, g.delta[q][e])
        bad = {y for y, q in plant_state.items()
               if any(e in unc and e not in k.delta[y] for e in g.delta[q])}
        if not bad:
            return k
        keep = [y for y in range(k.n_states) if y not in bad]
        k = trim(restrict(k, keep))
    return k


def _bfs(g: Generator):
    seen = {g.initial}
    order = [g.initial]
    for y in order:
        for y2 in g.delta[y].values():
            if y2 not in seen:
                seen.add(y2)
                order.append(y2)
    return order


def _inverse_projection(g: Generator, k: Generator) -> Generator:
    """G x PK: the plant restricted to strings whose image lies in P L(k)."""
    obs = observer(k)
    if obs.is_empty:
        return Generator.empty(g.events)
    observable = g.events.observable
    start = (g.initial, obs.initial)
    index = {start: 0}
    pairs = [start]
    delta = []
    for q, x in pairs:
        row = {}
        for e, q2 in g.delta[q].items():
            if e in observable:
                x2 = obs.delta[x].get(e)
                if x2 is None:
                    continue
            else:
                x2 = x
            j = index.setdefault((q2, x2), len(pairs))
            if j == len(pairs):
                pairs.append((q2, x2))
            row[e] = j
        delta.append(row)
    marked = [j for j, (q, x) in enumerate(pairs) if q in g.marked and x in obs.marked]
    names = [f"({g.names[q]},{obs.names[x]})" for q, x in pairs]
    return Generator(g.events, names, 0, marked, delta, pairs, check=False)


def is_normal(g: Generator, k: Generator) -> tuple[bool, bool]:
    """``(marked_normal, closed_normal)`` of Lm(k) with respect to g and P."""
    _require_same_alphabet(g, k)
    w = marked_subset(k, g)
    if w is not None:
        raise PreconditionViolated("Lm(K) is not contained in Lm(G)", w)
    k = trim(k)
    inv = _inverse_projection(g, k)
    rel = language_relation(inv, k)
    return rel.marked is Relation.EQUAL, rel.closed is Relation.EQUAL


def supnorm(g: Generator, k: Generator) -> Generator:
    """Supremal sublanguage of Lm(k) that is normal with closed-normal prefix closure.

    Each sweep pairs k with the observer of ``g x complete(k)``: states whose
    lookalike set contains a plant string outside closure(K) are deleted, and
    marker states whose lookalike set contains a marked plant string outside
    K are unmarked. The result is trimmed and minimized, and the sweep repeats
    until nothing changes.
    """
    _require_same_alphabet(g, k)
    w = marked_subset(k, g)
    if w is not None:
        raise PreconditionViolated("Lm(K) is not contained in Lm(G)", w)
    k = minimize(trim(k))
    while not k.is_empty:
        full, dump = complete_with_dump(k)
        amb = sync_product(g, full)
        obs = observer(amb)
        paired, pairs = _pair_with_observer(k, amb)
        bad_subset = {}
        unmark_subset = {}
        for x, subset in enumerate(obs.provenance):
            lookalike = [amb.provenance[i] for i in subset]
            bad_subset[x] = any(yt == dump for _, yt in lookalike)
            unmark_subset[x] = any(q in g.marked and yt not in k.marked
                                   for q, yt in lookalike)
        keep = [j for j, (_, x) in enumerate(pairs) if not bad_subset[x]]
        marked = {j for j in paired.marked if not unmark_subset[pairs[j][1]]}
        if len(keep) == paired.n_states and marked == paired.marked:
            return k
        k = minimize(trim(restrict(paired, keep, marked=marked)))
    return k


def supnorm_con(ctx: ControlContext, k: Generator) -> Generator:
    """Supremal controllable and normal sublanguage by alternating both operators."""
    g = ctx.plant
    k = minimize(trim(k))
    while True:
        nxt = minimize(supnorm(g, supcon(ctx, k)))
        if language_equal(nxt, k):
            return nxt
        k = nxt
