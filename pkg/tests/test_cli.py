import json
import math
import subprocess
import sys
from decimal import Decimal
from fractions import Fraction as F

import pytest

from decatic.asymptotics import AsymptoticExponent, Potential
from decatic.cli import main
from decatic.numerics.poly import UniPoly
from decatic.numerics.scalars import scalar_from_json
from decatic.qes import verify


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- exact ----------------------------------------------------------------------


def test_exact_ground(capsys):
    code, out, _ = run(capsys, "exact", "--a", "1", "--b", "-1", "--c", "1", "--parity", "even", "--n", "0")
    assert code == 0
    (sol,) = json.loads(out)
    assert (sol["E"], sol["d"], sol["e"]) == ("3/8", "-43/8", "105/64")


def test_exact_round_trip_verifies(capsys):
    for argv in (
        ["--a", "1", "--b", "-1", "--c", "1", "--n", "1"],
        ["--a", "4", "--b", "2", "--c", "1", "--n", "0"],
        ["--a", "2", "--b", "1", "--c", "0", "--n", "0"],
    ):
        code, out, _ = run(capsys, "exact", *argv)
        assert code == 0
        vals = dict(zip(argv[0:6:2], argv[1:6:2]))
        for sol in json.loads(out):
            read = lambda v: scalar_from_json(v, exact=True)  # noqa: E731
            V = Potential(vals["--a"], vals["--b"], vals["--c"], read(sol["d"]), read(sol["e"]))
            chi = UniPoly([read(c) for c in sol["chi_coefficients"]], "x")
            ex = AsymptoticExponent(*(read(sol["exponent"][k]) for k in ("c6", "c4", "c2")))
            assert verify(V, read(sol["E"]), (chi, ex)).is_zero


def test_exact_degree_two_numeric(capsys):
    code, out, _ = run(capsys, "exact", "--a", "1", "--b", "1", "--c", "1", "--parity", "even", "--n", "2", "--digits", "40")
    assert code == 0
    (sol,) = json.loads(out)
    assert sol["d"] == "-69/8"
    assert abs(Decimal(sol["E"]) - Decimal("4.101010306396514141191381746074023603070")) < Decimal("1e-38")


def test_exact_fixed_potential_without_solution(capsys):
    code, _, err = run(capsys, "exact", "--a", "1", "--n", "0", "--d", "0", "--e", "0")
    assert code == 2 and "no solution" in err


def test_exact_fixed_potential_with_solution(capsys):
    code, out, _ = run(capsys, "exact", "--a", "1", "--b", "-1", "--c", "1", "--d=-43/8", "--e", "105/64", "--n", "0")
    assert code == 0 and json.loads(out)[0]["E"] == "3/8"


@pytest.mark.parametrize(
    "argv",
    [
        ["exact", "--a", "-1", "--n", "0"],
        ["exact", "--a", "0", "--n", "0"],
        ["exact", "--a", "x", "--n", "0"],
        ["exact", "--a", "1", "--n", "0", "--d", "1"],
        ["exact", "--a", "1", "--n", "0", "--parity", "odd"],
        ["exact", "--a", "1"],
        ["nonsense"],
    ],
)
def test_input_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 1


def test_exact_csv(capsys):
    code, out, _ = run(capsys, "exact", "--a", "1", "--b", "-1", "--c", "1", "--n", "0", "--format", "csv")
    assert code == 0
    assert out == "n,parity,E,d,e\r\n0,even,3/8,-43/8,105/64\r\n"


def test_out_path(tmp_path, capsys):
    path = tmp_path / "o.json"
    code, out, _ = run(capsys, "exact", "--a", "1", "--b", "-1", "--c", "1", "--n", "0", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())[0]["E"] == "3/8"


# -- aim ------------------------------------------------------------------------


def test_aim_qes_potential(capsys):
    code, out, _ = run(
        capsys, "aim", "--a", "1", "--b", "-1", "--c", "1", "--d=-43/8", "--e", "105/64",
        "--count", "1", "--digits", "12", "--iters", "40",
    )
    assert code == 0
    payload = json.loads(out)
    assert abs(Decimal(payload["eigenvalues"][0]["value"]) - Decimal("0.375")) < Decimal("1e-12")
    assert payload["certificates"] == [{"E": "3/8", "holds": True, "witness": 1}]
    assert payload["x0"] == "0/1"


def test_aim_table_qes_block(capsys):
    code, out, _ = run(
        capsys, "aim", "--a", "0.01", "--b", "0.1", "--c", "1.0", "--d", "3.250", "--e", "12.5625",
        "--count", "1", "--digits", "12", "--iters", "40", "--format", "csv",
    )
    assert code == 0
    row = out.split("\r\n")[1].split(",")
    assert abs(Decimal(row[1]) - Decimal("3.75")) < Decimal("1e-12")


def test_aim_no_convergence(capsys):
    code, _, err = run(capsys, "aim", "--a", "0.04", "--b", "0.877", "--c", "5.5", "--d=-7.5", "--e", "2", "--count", "1", "--iters", "4")
    assert code == 3 and "converged" in err


def test_aim_precision_env(capsys, monkeypatch):
    base = ["aim", "--a", "1", "--b", "-1", "--c", "1", "--d=-43/8", "--e", "105/64", "--count", "1", "--iters", "20"]
    monkeypatch.setenv("DECATIC_PRECISION", "20")
    code, _, err = run(capsys, *base)
    assert code == 1 and "precision" in err
    monkeypatch.setenv("DECATIC_PRECISION", "many")
    assert run(capsys, *base)[0] == 1
    monkeypatch.setenv("DECATIC_PRECISION", "60")
    assert run(capsys, *base)[0] == 0
    # an explicit flag wins over the environment
    monkeypatch.setenv("DECATIC_PRECISION", "20")
    assert run(capsys, *base, "--precision", "60")[0] == 0


def test_aim_bad_window(capsys):
    code, _, _ = run(capsys, "aim", "--a", "1", "--window", "5", "1")
    assert code == 1


# -- conditions -------------------------------------------------------------------


def _write(tmp_path, a6, a5, tau4):
    path = tmp_path / "ode.json"
    path.write_text(json.dumps({"a6": a6, "a5": a5, "tau4": tau4}))
    return str(path)


def test_conditions_trivial(tmp_path, capsys):
    f = _write(tmp_path, ["1/1"] + ["0/1"] * 6, ["0/1"] * 6, ["0/1"] * 5)
    code, out, _ = run(capsys, "conditions", "--file", f, "--nmax", "3")
    assert code == 0
    rep = json.loads(out)
    assert 0 in rep["admissible_degrees"]
    assert {"degree": 0, "coefficients": ["1/1"]} in rep["solutions"]


def test_conditions_planted_degree_one(tmp_path, capsys):
    # planted instance whose only polynomial solution is y = 1 + 2x
    f = _write(tmp_path, ["1/1"] + ["0/1"] * 6, ["0/1"] * 4 + ["1/1", "1/2"], ["0/1"] * 4 + ["1/1"])
    code, out, _ = run(capsys, "conditions", "--file", f, "--nmax", "2")
    assert code == 0
    rep = json.loads(out)
    assert 1 in rep["admissible_degrees"]
    assert all(v == "0/1" for v in rep["determinants"]["1"])
    assert rep["solutions"] == [{"degree": 1, "coefficients": ["1/1", "2/1"]}]


def test_conditions_infeasible(tmp_path, capsys):
    f = _write(tmp_path, ["1/1"] + ["0/1"] * 6, ["0/1"] * 6, ["7/3", "0/1", "0/1", "0/1", "1/1"])
    code, out, _ = run(capsys, "conditions", "--file", f, "--nmax", "4")
    assert code == 0
    rep = json.loads(out)
    assert rep["admissible_degrees"] == [] and rep["message"] == "no admissible degree <= 4"


def test_conditions_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "conditions", "--file", str(bad))[0] == 1
    assert run(capsys, "conditions", "--file", str(tmp_path / "missing.json"))[0] == 1


# -- table --------------------------------------------------------------------------


def test_table_one(capsys):
    code, out, _ = run(capsys, "table", "--which", "1", "--mu", "1", "--k", "2", "--sign", "1")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 8 and all(r["verified"] for r in rows)
    assert rows[0]["E"] == "3/8"


def test_table_two_mu_four(capsys):
    code, out, _ = run(capsys, "table", "--which", "2", "--mu", "4", "--k", "1", "--sign", "1")
    assert code == 0 and json.loads(out)[0]["E"] == "9/4"


def test_table_both_signs(capsys):
    code, out, _ = run(capsys, "table", "--which", "1", "--format", "csv")
    assert code == 0 and len(out.strip().split("\r\n")) == 1 + 10


def test_table_five(capsys):
    code, out, _ = run(capsys, "table", "--which", "5", "--count", "1", "--digits", "4", "--iters", "40")
    assert code == 0
    rows = json.loads(out)
    assert [r["block"] for r in rows] == [0, 1, 2, 3]
    assert abs(Decimal(rows[2]["E"]) - Decimal("3.75")) < Decimal("1e-4")
    assert rows[2]["reference_iterations"] == "exact"


def test_table_bad_inputs(capsys):
    assert run(capsys, "table", "--which", "1", "--mu", "0")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["table", "--which", "3"])
    assert exc.value.code == 1


# -- plot-data ------------------------------------------------------------------------


def test_plot_data_ground(capsys):
    code, out, _ = run(
        capsys, "plot-data", "--a", "1", "--b", "-1", "--c", "1", "--d=-43/8", "--e", "105/64", "--n", "0", "--samples", "5",
    )
    assert code == 0
    lines = out.strip().split("\r\n")
    assert lines[0] == "x,V,psi" and len(lines) == 6
    for line in lines[1:]:
        x, _, psi = line.split(",")
        xf = float(x)
        assert math.isclose(float(psi), math.exp(-3 * xf**2 / 16 + xf**4 / 8 - xf**6 / 6), rel_tol=1e-14)


def test_plot_data_potential_only(capsys):
    code, out, _ = run(capsys, "plot-data", "--a", "1", "--x-min", "0", "--x-max", "0", "--samples", "1")
    assert code == 0
    assert out.strip().split("\r\n")[1] == "0,0,"


def test_plot_data_double_well(capsys):
    code, out, _ = run(capsys, "plot-data", "--a", "1", "--d=-3", "--samples", "41", "--format", "json")
    assert code == 0
    V = [Decimal(r["V"]) for r in json.loads(out)]
    mid = len(V) // 2
    assert V[mid] == 0
    left, right = min(V[:mid]), min(V[mid + 1 :])
    assert left < 0 and right < 0 and left == right


def test_plot_data_deterministic(capsys):
    argv = ["plot-data", "--a", "1", "--b", "-1", "--c", "1", "--d=-43/8", "--e", "105/64", "--n", "0", "--samples", "50"]
    first = run(capsys, *argv)[1]
    assert first == run(capsys, *argv)[1]


def test_plot_data_no_state(capsys):
    code, _, _ = run(capsys, "plot-data", "--a", "1", "--n", "0")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "decatic", "exact", "--a", "1", "--b", "-1", "--c", "1", "--n", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)[0]["E"] == "9/8"
    assert F(json.loads(proc.stdout)[0]["e"]) == F(169, 64)
