import csv
import io
import json
import math

import pytest

from semigen.cli import RunConfig, auto_order, main, parse_grid, run
from semigen.errors import BadParams
from semigen.membership import MembershipReport
from semigen.radius import RadiusResult
from semigen.series import PowerSeries


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_radius_parabolic(capsys):
    code, out, _ = call(capsys, "radius", "--beta", "1", "--target", "parabolic")
    assert code == 0
    res = RadiusResult.from_dict(json.loads(out))
    assert res.r == pytest.approx(math.sqrt(5) - 2, abs=1e-9)


def test_kappa(capsys):
    code, out, _ = call(capsys, "kappa", "--beta", "0")
    assert code == 0 and json.loads(out)["kappa"] == pytest.approx(0.3862944, abs=5e-8)


def test_convolve_check(capsys):
    code, out, _ = call(
        capsys, "convolve", "--f", "hyper:beta=0.5", "--g", "bernardi:gamma=1", "--check", "a_beta:beta=0.5"
    )
    assert code == 0
    rep = MembershipReport.from_dict(json.loads(out))
    assert rep.member


def test_convolve_without_check_emits_series(capsys):
    code, out, _ = call(capsys, "convolve", "--f", "koebe", "--g", "log", "--order", "32")
    assert code == 0
    h = PowerSeries.from_dict(json.loads(out))
    assert h.coeffs[:4].real.tolist() == pytest.approx([0, 1, 1, 1])


def test_member_classes(capsys):
    code, out, _ = call(capsys, "member", "--class", "g0", "--function", "starlike_nongen")
    assert code == 0 and json.loads(out)["member"] is False
    code, out, _ = call(capsys, "member", "--class", "a_beta", "--param", "beta=0.5", "--function", "hyper")
    assert code == 0 and json.loads(out)["member"] is True
    code, out, _ = call(
        capsys, "member", "--class", "g0", "--function", "starlike_nongen", "--method", "hadamard"
    )
    assert code == 0 and json.loads(out)["member"] is False
    code, out, _ = call(capsys, "member", "--class", "u", "--param", "lambda=0.5", "--function", "ulambda")
    assert code == 0 and json.loads(out)["member"] is True


def test_member_from_series_file(capsys, tmp_path):
    path = tmp_path / "f.json"
    path.write_text(PowerSeries([0, 1, 0.25] + [0] * 30).to_json())
    code, out, _ = call(capsys, "member", "--class", "g0", "--series", str(path))
    assert code == 0 and json.loads(out)["member"] is True


def test_radius_sweep_csv(capsys):
    code, out, _ = call(capsys, "radius", "--target", "sg", "--sweep", "beta=0:1:0.25")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 5 and float(rows[-1]["beta"]) == 1.0
    assert float(rows[-1]["r"]) == pytest.approx(0.219887, abs=5e-7)


def test_flow_csv(capsys):
    code, out, err = call(capsys, "flow", "--function", "maminda:A=0,B=-1", "--z0", "0.5,0.2", "--T", "5")
    assert code == 0 and err == ""
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 101 and float(rows[0]["t"]) == 0.0
    assert all(float(r["abs"]) <= float(r["bound"]) + 1e-9 for r in rows)


def test_flow_escape_is_structured_error(capsys, tmp_path):
    # -z pushes every orbit outward
    path = tmp_path / "minus_z.json"
    path.write_text(PowerSeries([0, -1, 0]).to_json())
    code, out, _ = call(capsys, "flow", "--series", str(path), "--z0", "0.5,0", "--rate", "0")
    assert code == 1
    err = json.loads(out)
    assert err["error"] == "EscapedDisk" and err["diagnosis"] == "not a generator at this truncation"


def test_validation_errors_exit_2(capsys):
    for argv in (
        ["radius", "--beta", "1.5", "--target", "sg"],
        ["radius", "--target", "moon", "--beta", "1"],
        ["radius", "--target", "sg"],
        ["member", "--class", "a_beta", "--function", "hyper:beta=0.5"],
        ["member", "--class", "g0"],
        ["flow", "--function", "koebe", "--z0", "1,0"],
        ["flow", "--z0", "0.5,0"],
        ["kappa", "--beta", "0", "--order", "8"],
        ["kappa", "--beta", "0", "--grid", "rings=3,bogus=1"],
        ["convolve", "--f", "koebe", "--g", "log", "--check", "u:lambda=0.5"],
    ):
        code, out, err = call(capsys, *argv)
        assert code == 2, argv
        assert out == "" and len(err.strip().splitlines()) == 1


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["radius", "--bogus"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["kappa", "--beta", "0"])
    assert info.value.code == 0


def test_table_command_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert call(capsys, "table", "--out", str(a))[0] == 0
    assert call(capsys, "table", "--out", str(b))[0] == 0
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes()
    rows = {row["beta"]: row for row in csv.DictReader((a / "radius_parabolic.csv").open())}
    assert float(rows["1"]["r"]) == pytest.approx(0.2360680, abs=5e-8)
    rows = {row["beta"]: row for row in csv.DictReader((a / "radius_sg.csv").open())}
    assert float(rows["1"]["r"]) == pytest.approx(0.2198870, abs=5e-7)
    rows = {row["beta"]: row for row in csv.DictReader((a / "radius_rhoexp.csv").open())}
    assert float(rows["1"]["r"]) == pytest.approx(0.372153, abs=5e-6)


def test_repeated_runs_are_byte_identical(capsys):
    argv = ("member", "--class", "a_beta", "--param", "beta=0.3", "--function", "hyper", "--seed", "4")
    assert call(capsys, *argv)[1] == call(capsys, *argv)[1]


def test_run_config_and_grid_parsing(monkeypatch):
    with pytest.raises(BadParams):
        RunConfig("plot")
    with pytest.raises(BadParams):
        RunConfig("radius", order=8)
    g = parse_grid("rings=4,angles=64,rmax=0.9")
    assert len(g.radii) == 4 and g.angular_samples == 64 and g.rmax == pytest.approx(0.9)
    monkeypatch.delenv("SEMIGEN_ORDER", raising=False)
    assert auto_order(0.999) >= 32768
    monkeypatch.setenv("SEMIGEN_ORDER", "256")
    assert auto_order(0.999) == 256
