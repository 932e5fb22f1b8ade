import csv
import io
import json

import pytest

from maxloc.cli import main


def run(args):
    out, err = io.StringIO(), io.StringIO()
    code = main(args, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("domain,problem,expected", [
    ("half-disk", "torsion", "0.48022"),
    ("half-disk", "groundstate", "0.48051"),
    ("right-isosceles", "torsion", "0.39168"),
    ("right-isosceles", "groundstate", "0.39183"),
])
def test_maxima(tmp_path, domain, problem, expected):
    path = tmp_path / "m.json"
    code, out, _ = run(["maxima", "--domain", domain, "--problem", problem, "--out", str(path)])
    assert code == 0
    assert f"x = {expected}" in out
    data = json.loads(path.read_text())
    assert set(data) >= {"problem", "domain", "x_lo", "x_hi", "x_mid", "y", "value",
                         "certified", "evaluations"}
    assert data["certified"] is True
    assert f"{data['x_mid']:.5f}" == expected


def test_json_round_trip(tmp_path):
    path = tmp_path / "m.json"
    run(["maxima", "--domain", "half-disk", "--problem", "torsion", "--out", str(path)])
    data = json.loads(path.read_text())
    text = path.read_text()
    for key in ("x_lo", "x_hi", "x_mid", "value"):
        assert repr(data[key]) in text


def test_fem_polygon(tmp_path):
    poly = tmp_path / "tri.txt"
    poly.write_text("# scalene triangle\n0 0\n1 0\n0.3 0.7\n")
    res = {}
    for problem in ("torsion", "groundstate"):
        path = tmp_path / f"{problem}.json"
        code, _, _ = run(["fem", "--polygon", str(poly), "--problem", problem, "--level", "5",
                          "--out", str(path)])
        assert code == 0
        res[problem] = json.loads(path.read_text())
        assert res[problem]["certified"] is False
        assert res[problem]["n_triangles"] == 3 * 4 ** 5
    assert "lambda1" in res["groundstate"]
    dx = res["torsion"]["x_mid"] - res["groundstate"]["x_mid"]
    dy = res["torsion"]["y"] - res["groundstate"]["y"]
    assert (dx * dx + dy * dy) ** 0.5 < 5e-3


def test_fem_unit_disk_stdout():
    code, out, _ = run(["fem", "--domain", "unit-disk", "--problem", "torsion", "--level", "5"])
    data = json.loads(out)
    assert code == 0
    assert abs(data["x_mid"]) < 2e-3 and abs(data["y"]) < 2e-3


def test_fem_affine(tmp_path):
    code, out, _ = run(["fem", "--domain", "right-isosceles", "--problem", "affine",
                        "--a", "2", "--b-frac", "0.5", "--level", "4"])
    data = json.loads(out)
    assert code == 0 and data["b_over_lambda1"] == 0.5 and data["a"] == 2.0


def test_sweep_csv(tmp_path):
    path = tmp_path / "s.csv"
    code, _, _ = run(["sweep", "--domain", "half-disk", "--a", "1", "--b-fracs", "0,0.5,1.5",
                      "--level", "4", "--out", str(path)])
    assert code == 0
    rows = list(csv.DictReader(path.open()))
    assert [r["b_over_lambda1"] for r in rows] == ["0.0", "0.5", "1.5"]
    assert rows[2]["error"] and rows[2]["x"] == ""
    _, out, _ = run(["fem", "--domain", "half-disk", "--problem", "torsion", "--level", "4"])
    fem_row = json.loads(out)
    assert float(rows[0]["x"]) == fem_row["x_mid"]
    assert float(rows[0]["y"]) == fem_row["y"]
    assert float(rows[0]["value"]) == fem_row["value"]


def test_sweep_json_a_invariance():
    rows = {}
    for a in ("1", "5"):
        code, out, _ = run(["sweep", "--domain", "right-isosceles", "--a", a, "--b-fracs", "0.5",
                            "--level", "4", "--format", "json"])
        assert code == 0
        rows[a] = json.loads(out)["rows"][0]
    assert rows["1"]["vertex"] == rows["5"]["vertex"]


def test_plot(tmp_path):
    path = tmp_path / "p.svg"
    code, _, _ = run(["plot", "--domain", "unit-disk", "--problem", "torsion", "--level", "3",
                      "--out", str(path)])
    assert code == 0
    assert path.read_text().count("<circle") == 1


def test_errors():
    code, _, err = run(["fem", "--domain", "unit-disk", "--problem", "affine", "--b-frac", "1.2",
                        "--level", "2"])
    assert code == 1 and "exceeds" in err
    with pytest.raises(SystemExit):
        run(["maxima", "--domain", "unit-disk", "--problem", "torsion"])
    code, _, err = run(["fem", "--polygon", "/nonexistent.txt", "--problem", "torsion", "--level", "1"])
    assert code == 1
