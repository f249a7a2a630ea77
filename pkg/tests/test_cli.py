import csv
import json
import subprocess
import sys

import pytest

from cartesian_incidence.cli import ExperimentConfig, main, parse_n_values, run_experiment
from cartesian_incidence.errors import DuplicatePoint, InputError, ParseError, ZeroPolynomial
from cartesian_incidence.exact import gr
from cartesian_incidence.instances import generate_instance, loads_instance, parse_instance
from cartesian_incidence.poly import BivariatePoly

LINE = {"label": "C_1", "terms": [{"i": 0, "j": 1, "c": "1"}, {"i": 1, "j": 0, "c": "-1"}]}


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


# -- instance files ------------------------------------------------------------


def test_minimal_instance(tmp_path):
    inst = parse_instance(write(tmp_path, "i.json", {"A": ["0"], "B": ["0"], "curves": [LINE]}))
    assert len(inst.points) == 1 and inst.family.labels == ["C_1"]


def test_duplicate_point_reports_location(tmp_path):
    with pytest.raises(DuplicatePoint, match=r"A\[2\].*A\[0\]"):
        parse_instance(write(tmp_path, "i.json", {"A": ["1/2", "1", "2/4"], "B": ["0"], "curves": []}))


def test_empty_terms_is_zero_polynomial(tmp_path):
    with pytest.raises(ZeroPolynomial):
        parse_instance(write(tmp_path, "i.json", {"A": ["0"], "B": ["0"], "curves": [{"label": "z", "terms": []}]}))


@pytest.mark.parametrize(
    "text",
    [
        "{not json",
        "[]",
        json.dumps({"A": ["0"], "B": ["0"]}),
        json.dumps({"A": ["1/0"], "B": ["0"], "curves": []}),
        json.dumps({"A": ["0"], "B": ["0"], "curves": [{"terms": []}]}),
        json.dumps({"A": ["0"], "B": ["0"], "curves": [], "seed": "x"}),
    ],
)
def test_malformed_instances(text):
    with pytest.raises(ParseError):
        loads_instance(text)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        parse_instance(tmp_path / "absent.json")


# -- generators ------------------------------------------------------------------


def test_generator_kinds():
    assert generate_instance("arithmetic", 3).points.A == (gr(1), gr(2), gr(3))
    assert generate_instance("geometric", 3).points.A == (gr(1), gr(2), gr(4))
    rand = generate_instance("random", 5, 42)
    assert len(rand.points.A) == 5
    assert all(abs(a.re.numerator) <= 1000 and a.re.denominator <= 1000 for a in rand.points.A)


def test_generator_is_deterministic():
    assert generate_instance("random", 5, 42).dumps() == generate_instance("random", 5, 42).dumps()
    assert generate_instance("random", 5, 42).dumps() != generate_instance("random", 5, 43).dumps()


@pytest.mark.parametrize("kind", ["arithmetic", "geometric", "random"])
def test_schema_round_trip(kind):
    inst = generate_instance(kind, 6, 7)
    again = loads_instance(inst.dumps())
    assert again.dumps() == inst.dumps()
    assert again.points.A == inst.points.A and again.points.B == inst.points.B
    assert [(l, f) for l, f in again.family] == [(l, f) for l, f in inst.family]
    assert (again.name, again.seed, again.generator) == (inst.name, inst.seed, inst.generator)


# -- n ranges ---------------------------------------------------------------------


def test_parse_n_values():
    assert parse_n_values("4,6,8") == [4, 6, 8]
    assert parse_n_values("4..6,9") == [4, 5, 6, 9]
    with pytest.raises(InputError, match="empty range"):
        parse_n_values("5..4")
    with pytest.raises(ParseError):
        parse_n_values("four")


# -- run_experiment exit codes ------------------------------------------------------


def test_inversion_three_rows(tmp_path):
    trend = tmp_path / "trend.csv"
    cfg = ExperimentConfig("inversion", n_values=[4, 6, 8], k=2, trend=str(trend), out=str(tmp_path / "r.json"))
    res = run_experiment(cfg)
    assert res.exit_code == 0 and len(res.trend_rows) == 3
    rows = list(csv.reader(trend.open()))
    assert rows[0] == ["app", "n", "observed", "bound_terms", "ratio"]
    assert [r[1] for r in rows[1:]] == ["4", "6", "8"]
    assert json.loads((tmp_path / "r.json").read_text())["passed"] is True


def test_empty_range_exit_one():
    res = run_experiment(ExperimentConfig("inversion", n_values=[]))
    assert res.exit_code == 1 and "empty range" in res.report["message"]


def test_duplicated_curve_exit_two(tmp_path):
    dup = dict(LINE, label="C_2", terms=[{"i": 0, "j": 1, "c": "2"}, {"i": 1, "j": 0, "c": "-2"}])
    path = write(tmp_path, "i.json", {"A": ["0", "1", "2"], "B": ["0", "1", "2"], "curves": [LINE, dup]})
    res = run_experiment(ExperimentConfig("kst", instance=path, s=2, t=2))
    assert res.exit_code == 2 and res.report["passed"] is False
    assert main(["incidence", "kst", "--in", path, "--s", "2", "--t", "2", "--out", str(tmp_path / "k.json")]) == 2


def test_bad_instance_exit_one(tmp_path):
    path = write(tmp_path, "i.json", {"A": ["0", "0"], "B": ["0"], "curves": []})
    res = run_experiment(ExperimentConfig("count", instance=path))
    assert res.exit_code == 1 and res.report["error"].endswith("DuplicatePoint")


def test_report_determinism(tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        run_experiment(ExperimentConfig("sumset", n_values=[2, 3], out=str(out)))
        report = json.loads(out.read_text())
        assert "timestamp" in report
        del report["timestamp"]
        outs.append(json.dumps(report, indent=2))
    assert outs[0] == outs[1]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        run_experiment(ExperimentConfig("distance", n_values=[3], out=str(path), timestamp=False))
    assert a.read_bytes() == b.read_bytes()


def test_count_and_partition_outputs(tmp_path):
    inst = write(tmp_path, "i.json", generate_instance("arithmetic", 6, 1).dumps())
    edges = tmp_path / "edges.csv"
    assert main(["incidence", "count", "--in", inst, "--csv", str(edges), "--out", str(tmp_path / "c.json")]) == 0
    header, *rows = list(csv.reader(edges.open()))
    assert header == ["label", "iA", "iB", "a", "b"]
    count = json.loads((tmp_path / "c.json").read_text())
    assert count["incidences"] == len(rows) >= 6
    assert main(["partition", "run", "--in", inst, "--r", "2", "--out", str(tmp_path / "p.json")]) == 0
    rep = json.loads((tmp_path / "p.json").read_text())
    d = rep["decomposition"]
    assert d["I1"] + d["I2"] == d["total"] == count["incidences"]
    cells = list(csv.reader((tmp_path / "p.cells.csv").open()))
    assert cells[0] == ["cellX", "cellY", "curve_label", "count"]
    assert sum(int(r[3]) for r in cells[1:]) == d["total"]


# -- direct commands ------------------------------------------------------------


def test_bounds_eval(capsys):
    assert main(["bounds", "eval", "--formula", "main", "--params", "d=1,M=1,nP=64,nC=64", "--observed", "10"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["terms"][0]["value"] == "256" and out["terms"][0]["exact"] is True
    assert out["observed"] == 10
    assert main(["bounds", "eval", "--formula", "kst", "--params", "s=2"]) == 1


def test_bezout_command(capsys, tmp_path):
    f = json.dumps(LINE)
    g = BivariatePoly.from_json({"terms": [{"i": 0, "j": 1, "c": "1"}, {"i": 2, "j": 0, "c": "-1"}]}).to_json()
    gpath = write(tmp_path, "g.json", g)
    assert main(["bezout", "--f", f, "--g", "@" + gpath]) == 0
    out = json.loads(capsys.readouterr().out)
    # Res_y(y - x, y - x^2) = x - x^2, lowest degree first
    assert out == {"common_component": False, "distinct_x_bound": 2, "resultant": ["0", "1", "-1"]}
    assert main(["bezout", "--f", "{", "--g", f]) == 1


def test_gen_command(tmp_path):
    out = tmp_path / "g.json"
    assert main(["gen", "--kind", "geometric", "--n", "4", "--out", str(out)]) == 0
    assert parse_instance(out).points.A == (gr(1), gr(2), gr(4), gr(8))


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "cartesian_incidence", "app", "inversion", "--n", "3..2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1 and "empty range" in proc.stderr
