"""Brute-force reference implementations over explicit finite string sets.

Everything here works on acyclic generators, whose languages are finite.
Suprema are computed by enumerating every subset of the marked language and
taking the union of the subsets that satisfy the property; each property
is union-closed, so that union is the supremal element.
"""

from __future__ import annotations

import itertools
import random

from desco.automata import EventTable, Generator


def strings(g: Generator, limit: int = 12):
    """(closed, marked) string sets of an acyclic generator."""
    closed, marked = set(), set()
    if g.is_empty:
        return closed, marked
    stack = [(g.initial, ())]
    while stack:
        q, s = stack.pop()
        closed.add(s)
        if q in g.marked:
            marked.add(s)
        if len(s) < limit:
            for e, t in g.delta[q].items():
                stack.append((t, s + (e,)))
    return closed, marked


def prefixes(lang):
    return {s[:i] for s in lang for i in range(len(s) + 1)}


def project(s, observable):
    return tuple(e for e in s if e in observable)


def from_strings(table: EventTable, marked, closed=None) -> Generator:
    """Prefix-tree generator; ``closed`` defaults to the prefix closure."""
    closed = prefixes(marked) if closed is None else set(closed) | prefixes(marked)
    if not closed:
        return Generator.empty(table)
    order = sorted(closed, key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(order)}
    delta = [dict() for _ in order]
    for s in order:
        if s:
            delta[index[s[:-1]]][s[-1]] = index[s]
    names = [".".join(s) or "eps" for s in order]
    return Generator(table, names, 0, [index[s] for s in marked], delta)


def is_controllable(k, plant_closed, uncontrollable):
    kc = prefixes(k)
    return all(s + (u,) in kc for s in kc for u in uncontrollable
               if s + (u,) in plant_closed)


def is_relobs(k, ambient_closed, plant_closed, plant_marked, observable,
              events=None):
    kc = prefixes(k)
    by_image = {}
    for s in ambient_closed:
        by_image.setdefault(project(s, observable), []).append(s)
    alphabet = {e for s in plant_closed for e in s}
    cond = alphabet if events is None else set(events)
    for s in kc:
        for sp in by_image.get(project(s, observable), ()):
            for e in cond:
                if s + (e,) in kc and sp + (e,) in plant_closed and sp + (e,) not in kc:
                    return False
            if s in k and sp in plant_marked and sp not in k:
                return False
    return True


def is_normal(k, plant_closed, plant_marked, observable):
    kc = prefixes(k)
    pk = {project(s, observable) for s in k}
    pkc = {project(s, observable) for s in kc}
    marked_ok = all(s in k for s in plant_marked if project(s, observable) in pk)
    closed_ok = all(s in kc for s in plant_closed if project(s, observable) in pkc)
    return marked_ok and closed_ok


def supremum(k, predicate):
    """Union of all subsets of the finite language ``k`` satisfying ``predicate``."""
    k = sorted(k)
    best = set()
    for r in range(len(k) + 1):
        for sub in itertools.combinations(k, r):
            sub = set(sub)
            if not sub <= best and predicate(sub):
                best |= sub
    return best


def random_acyclic(rng: random.Random, table: EventTable, n_states: int,
                   density: float = 0.6, p_marked: float = 0.5) -> Generator:
    """Random acyclic generator: edges go from lower to higher state index."""
    events = list(table.events)
    delta = [dict() for _ in range(n_states)]
    for q in range(n_states - 1):
        for e in events:
            if rng.random() < density:
                delta[q][e] = rng.randrange(q + 1, n_states)
    marked = [q for q in range(n_states) if rng.random() < p_marked]
    if not marked:
        marked = [n_states - 1]
    return Generator(table, [str(i) for i in range(n_states)], 0, marked, delta)


def random_table(rng: random.Random, n_events: int, n_unobservable: int,
                 n_uncontrollable: int = 1) -> EventTable:
    events = "abcd"[:n_events]
    uo = set(rng.sample(events, n_unobservable))
    uc = set(rng.sample(events, n_uncontrollable))
    return EventTable(events, [e for e in events if e not in uc],
                      [e for e in events if e not in uo])
