import json
from importlib import resources

import jsonschema
import pytest

from desco.automata import minimize
from desco.batch import format_table, parse_batch, run_batch
from desco.cli import corpus_dir, main
from desco.control import ControlContext, supnorm_con
from desco.errors import GenSyntaxError
from desco.io import load

SCHEMA = json.loads((resources.files("desco") / "report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_guideway_pipeline(capsys, tmp_path):
    out = tmp_path / "sup.gen"
    code, cap = run(capsys, "suprelobscon", "--plant", "guideway/plant.gen",
                    "--spec", "guideway/spec.gen", "--out", str(out))
    assert code == 0
    assert "24 states, 28 transitions" in cap.out
    sup = load(out)
    assert sup.in_closed(["11", "13", "10", "21"])
    code, cap = run(capsys, "stats", str(out))
    assert code == 0 and "24 states, 28 transitions" in cap.out


def test_check_relobs_witness(capsys):
    code, cap = run(capsys, "check-relobs", "--plant", "fixtures/obs_not_relobs/plant.gen",
                    "--spec", "fixtures/obs_not_relobs/spec.gen")
    assert code == 1
    assert "s=ε, s'=b, event=a" in cap.out


def test_check_obs_passes(capsys):
    code, cap = run(capsys, "check-obs", "--plant", "fixtures/obs_not_relobs/plant.gen",
                    "--spec", "fixtures/obs_not_relobs/spec.gen")
    assert code == 0 and "true" in cap.out


@pytest.mark.parametrize("argv", [
    ["check-cont", "--plant", "guideway/plant.gen", "--spec", "guideway/spec.gen"],
    ["check-norm", "--plant", "guideway/plant.gen", "--spec", "guideway/spec.gen"],
])
def test_failing_checks_exit_one(capsys, argv):
    code, cap = run(capsys, *argv)
    assert code == 1 and "witness:" in cap.out


def test_observer_check(capsys):
    code, _ = run(capsys, "check-observer", "--spec", "guideway/vehicle1.gen")
    assert code == 0


def test_unobservable_override(capsys):
    code, cap = run(capsys, "check-relobs", "--plant", "fixtures/obs_not_relobs/plant.gen",
                    "--spec", "fixtures/obs_not_relobs/spec.gen", "--unobservable", "")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["supcon", "--plant", "missing.gen", "--spec", "guideway/spec.gen"],
    ["supcon", "--plant", "guideway/plant.gen"],
    ["nonsense"],
    ["trim"],
    ["check-relobs", "--plant", "guideway/plant.gen", "--spec", "guideway/spec.gen",
     "--unobservable", "99"],
])
def test_usage_errors_exit_two(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse
        code = exc.code
    assert code == 2


def test_parse_error_is_located(capsys, tmp_path):
    bad = tmp_path / "bad.gen"
    bad.write_text("desgen 1\nevent a c o\nstate 0 initial\ntrans 0 a 0\ntrans 0 a 0\n")
    code, cap = run(capsys, "trim", str(bad))
    assert code == 2 and "line 5" in cap.err


def test_json_reports_follow_schema(capsys, tmp_path):
    cases = [
        ["supcon", "--plant", "guideway/plant.gen", "--spec", "guideway/spec.gen", "--minimize"],
        ["suprelobs", "--plant", "guideway/plant.gen", "--spec", "guideway/spec.gen",
         "--condition-events", "controllable"],
        ["check-relobs", "--plant", "fixtures/obs_not_relobs/plant.gen",
         "--spec", "fixtures/obs_not_relobs/spec.gen"],
        ["stats", "guideway/spec.gen", "--minimize"],
        ["product", "guideway/vehicle1.gen", "guideway/vehicle2.gen"],
    ]
    for argv in cases:
        _, cap = run(capsys, *argv, "--json")
        jsonschema.validate(json.loads(cap.out), SCHEMA)


def test_minimize_flag_reports_minimized_counts(capsys):
    _, cap = run(capsys, "supnormcon", "--plant", "guideway/plant.gen",
                 "--spec", "guideway/spec.gen", "--minimize", "--json")
    report = json.loads(cap.out)
    assert report["result"]["minimized"] is True
    g, k = load_pair()
    assert report["result"]["states"] == minimize(supnorm_con(ControlContext(g), k)).n_states


def load_pair():
    return load(corpus_dir() / "guideway/plant.gen"), load(corpus_dir() / "guideway/spec.gen")


def test_report_file(capsys, tmp_path):
    rep = tmp_path / "r.json"
    code, _ = run(capsys, "supnorm", "--plant", "guideway/plant.gen",
                  "--spec", "guideway/spec.gen", "--report", str(rep))
    assert code == 0
    jsonschema.validate(json.loads(rep.read_text()), SCHEMA)


BATCH = """desbatch 1
# guideway with varying sensors
plant {d}/vehicle1.gen {d}/vehicle2.gen
spec {d}/spec.gen
case 13,15,23,25 expect rounds=1
case -
case 13,23
"""


def test_batch_is_deterministic(corpus, tmp_path):
    path = tmp_path / "gw.batch"
    path.write_text(BATCH.format(d=corpus / "guideway"))
    spec = parse_batch(path.read_text(), tmp_path)
    serial = run_batch(spec, jobs=1)
    parallel = run_batch(spec, jobs=3)
    assert format_table(serial) == format_table(parallel)
    assert [r.as_dict() for r in serial] == [r.as_dict() for r in parallel]
    assert serial[0].rounds == 1 and not serial[0].mismatches()
    # fully observable: the normal and relatively observable supervisors coincide
    assert serial[1].relobs == serial[1].normal


def test_batch_cli_exit_codes(capsys, corpus, tmp_path):
    path = tmp_path / "gw.batch"
    path.write_text(BATCH.format(d=corpus / "guideway") + "case 13 expect relobs=1\n")
    code, cap = run(capsys, "batch", str(path))
    assert code == 1 and "MISMATCH" in cap.out
    code, cap = run(capsys, "batch", str(path), "--json")
    jsonschema.validate(json.loads(cap.out), SCHEMA)


@pytest.mark.parametrize("text", ["", "desbatch 1\ncase 1\n", "desbatch 1\nplant a.gen\nwhat\n",
                                  "desbatch 1\nplant a.gen\ncase 1 expect states=3\n"])
def test_batch_syntax_errors(text):
    with pytest.raises(GenSyntaxError):
        parse_batch(text)
