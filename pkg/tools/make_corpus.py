"""Regenerate the bundled model files under src/desco/corpus.

Run from the repository root: ``python3 tools/make_corpus.py``.
"""

from pathlib import Path

from desco.automata import EventTable, Generator, restrict, sync, trim
from desco.io import serialize

ROOT = Path(__file__).resolve().parent.parent / "src" / "desco" / "corpus"


def write(rel, g, *comment):
    path = ROOT / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    head = "".join(f"# {line}\n" for line in comment)
    path.write_text(head + serialize(g), encoding="utf-8")


def table(events, controllable, unobservable=()):
    return EventTable(events, controllable,
                      [e for e in events if e not in set(unobservable)])


# Guideway: two vehicles on a single track with four shared sections.
def vehicle(i):
    ev = [f"{i}{d}" for d in "13025"]
    t = EventTable(ev, controllable=[f"{i}1", f"{i}3", f"{i}5"],
                   observable=[f"{i}1", f"{i}0", f"{i}2"])
    path = [f"{i}1", f"{i}3", f"{i}0", f"{i}5", f"{i}2"]
    tr = [(str(s), e, str(s + 1)) for s, e in enumerate(path)]
    return Generator.build(t, [str(s) for s in range(6)], "0", ["5"], tr)


def guideway():
    note = ("Guideway: vehicle i enters at station A (i1), passes sections 1..4",
            "(i3, i0, i5) and arrives at station B (i2). Odd events controllable;",
            "i3 and i5 are unobservable.")
    v1, v2 = vehicle(1), vehicle(2)
    write("guideway/vehicle1.gen", v1, *note)
    write("guideway/vehicle2.gen", v2, *note)
    g = sync(v1, v2)
    write("guideway/plant.gen", g, "Guideway plant: synchronous product of vehicle1 and vehicle2.")
    clash = {f"({j},{j})" for j in "1234"}
    k = trim(restrict(g, [s for s in range(g.n_states) if g.names[s] not in clash]))
    write("guideway/spec.gen", k,
          "Guideway specification: the plant with states where both vehicles",
          "occupy the same section (j,j), j = 1..4, deleted, then trimmed.")


# Five-AGV workcell, reconstructed from the standard textbook model.
def cycle(*events, name=None):
    evs = [str(e) for e in events]
    alpha = sorted(set(evs), key=int)
    t = table(alpha, [e for e in alpha if int(e) % 2])
    n = len(evs)
    tr = [(str(i), e, str((i + 1) % n)) for i, e in enumerate(evs)]
    return Generator.build(t, [str(i) for i in range(n)], "0", ["0"], tr)


def component(trs):
    evs = sorted({e for _, e, _ in trs}, key=int)
    sts = sorted({s for s, _, _ in trs} | {d for _, _, d in trs}, key=int)
    t = table(evs, [e for e in evs if int(e) % 2])
    return Generator.build(t, sts, "0", ["0"], trs)


def zone(a_in, a_out, b_in, b_out):
    s = lambda xs: [str(x) for x in xs]
    return component([("0", e, "1") for e in s(a_in)] + [("1", e, "0") for e in s(a_out)]
                     + [("0", e, "2") for e in s(b_in)] + [("2", e, "0") for e in s(b_out)])


def agv():
    prov = ("Five-AGV workcell (standard textbook model, reconstructed).",
            "Odd events controllable, even events uncontrollable.")
    plant = {
        "agv1": cycle(11, 10, 13, 12),
        "agv2": cycle(21, 18, 20, 22, 23, 24, 26, 28),
        "agv3": cycle(31, 34, 33, 32),
        "agv4": cycle(41, 40, 42, 43, 44, 46),
        "agv5": cycle(51, 50, 53, 52),
    }
    spec = {
        "zone1": zone([11, 13], [10, 12], [20, 23], [22, 24]),
        "zone2": zone([18, 24], [20, 26], [31, 33], [32, 34]),
        "zone3": zone([21, 26], [18, 28], [41, 44], [40, 46]),
        "zone4": zone([40, 43], [42, 44], [51, 53], [50, 52]),
        "ws13": component([("0", "32", "1"), ("1", "50", "0")]),
        "ws14": component([("0", "42", "1"), ("1", "50", "0")]),
        "ws2": component([("0", "12", "1"), ("1", "34", "0")]),
        "ws3": component([("0", "28", "1"), ("1", "41", "0")]),
        "ips": component([("0", "10", "1"), ("1", "13", "0"),
                          ("0", "22", "2"), ("2", "23", "0")]),
    }
    for name, g in {**plant, **spec}.items():
        role = "plant component" if name in plant else "specification component"
        write(f"agv/{name}.gen", g, *prov, f"{name}: {role}.")


def small(events, controllable, unobservable, states, initial, marked, trans):
    return Generator.build(table(events, controllable, unobservable),
                           states, initial, marked, trans)


def fixtures():
    ab = ["a", "b"]
    # Observable but not relatively observable w.r.t. the plant (b unobservable).
    g = small(ab, ab, ["b"], list("01234"), "0", ["2", "4"],
              [("0", "a", "1"), ("1", "b", "2"), ("0", "b", "3"), ("3", "a", "4")])
    k = small(ab, ab, ["b"], list("012"), "0", ["2"], [("0", "a", "1"), ("1", "b", "2")])
    write("fixtures/obs_not_relobs/plant.gen", g, "Marked plant strings ab and ba; b unobservable.")
    write("fixtures/obs_not_relobs/spec.gen", k, "Marked language {ab}.")

    # Relatively observable w.r.t. its own closure but not normal (all events unobservable).
    g = small(["b", "c"], ["b", "c"], ["b", "c"], list("0123"), "0", ["2", "3"],
              [("0", "b", "1"), ("1", "b", "2"), ("2", "c", "3")])
    k = small(["b", "c"], ["b", "c"], ["b", "c"], list("012"), "0", ["2"],
              [("0", "b", "1"), ("1", "b", "2")])
    write("fixtures/relobs_not_normal/plant.gen", g, "Every event unobservable.")
    write("fixtures/relobs_not_normal/spec.gen", k, "Marked language {bb}; the ambient is its own closure.")

    # Two lookalike paths (ab and ca) merge at y1 with different uncertainty sets.
    ev = ["a", "b", "c", "s"]
    k = small(ev, ev, ["b"], [f"y{i}" for i in range(8)], "y0", ["y1", "y7"],
              [("y0", "a", "y2"), ("y2", "b", "y1"), ("y1", "b", "y4"), ("y0", "b", "y5"),
               ("y5", "a", "y3"), ("y0", "c", "y6"), ("y6", "a", "y1"), ("y1", "s", "y7")])
    write("fixtures/merged_uncertainty/spec.gen", k,
          "Strings ab and ca both reach y1; U(ab) = {y1,y2,y3,y4}, U(ca) = {y1,y4}.")

    # Intersection of two relatively observable languages that is not.
    ev = ["a", "s", "g", "d"]
    g = small(ev, ev, ["a"], list("012345"), "0", ["2", "4", "5"],
              [("0", "s", "1"), ("1", "g", "2"), ("0", "a", "3"), ("3", "s", "4"), ("4", "d", "5")])
    k1 = small(ev, ev, ["a"], list("01234"), "0", ["2", "4"],
               [("0", "s", "1"), ("1", "g", "2"), ("0", "a", "3"), ("3", "s", "4")])
    k2 = small(ev, ev, ["a"], list("012345"), "0", ["2", "5"],
               [("0", "s", "1"), ("1", "g", "2"), ("0", "a", "3"), ("3", "s", "4"), ("4", "d", "5")])
    write("fixtures/intersection/plant.gen", g, "a unobservable; the ambient is the plant.")
    write("fixtures/intersection/spec1.gen", k1, "Marked language {sg, as}.")
    write("fixtures/intersection/spec2.gen", k2, "Marked language {sg, asd}.")

    # Four-sweep pruning run with five unobservable events b1..b5.
    ev = ["alpha", "gamma", "sigma", "b1", "b2", "b3", "b4", "b5"]
    unobs = ["b1", "b2", "b3", "b4", "b5"]
    base = [("0", "b1", "2"), ("0", "b2", "3"), ("0", "b3", "4"), ("0", "b4", "5"),
            ("0", "alpha", "1"), ("2", "alpha", "9"), ("3", "alpha", "7"), ("5", "alpha", "8"),
            ("0", "gamma", "1"), ("4", "gamma", "7"), ("5", "gamma", "8"),
            ("7", "b5", "9"), ("1", "sigma", "6"), ("9", "sigma", "6"), ("6", "b1", "11")]
    idx = ["0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "11"]
    marked = ["1", "7", "8", "11"]
    k = small(ev, ev, unobs, ["y" + i for i in idx], "y0", ["y" + i for i in marked],
              [("y" + a, e, "y" + b) for a, e, b in base])
    g = small(ev, ev, unobs, ["q" + i for i in idx + ["10"]], "q0", ["q" + i for i in marked],
              [("q" + a, e, "q" + b) for a, e, b in base + [("8", "b5", "10")]])
    note = ("Reconstructed so that each y_i is paired with q_i; the plant adds",
            "the transition q8 -b5-> q10 that the specification lacks.")
    write("fixtures/pruning_run/plant.gen", g, *note)
    write("fixtures/pruning_run/spec.gen", k, *note)


if __name__ == "__main__":
    guideway()
    agv()
    fixtures()
