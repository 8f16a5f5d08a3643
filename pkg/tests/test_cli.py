import csv
import io
import json

import pytest

from grushinlab import cli, suites


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_csv(text):
    lines = text.splitlines()
    assert lines[0].startswith("# ")
    return lines[0], list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


def test_verify_theorem1(capsys):
    code, out, _ = run(capsys, "verify", "theorem1")
    assert code == 0
    meta, rows = parse_csv(out)
    assert "seed=0" in meta
    assert list(rows[0]) == list(cli.CSV_COLUMNS)
    row = {r["check_id"]: r for r in rows}["t1.grushin2d.extremal"]
    assert abs(float(row["value"]) - float(row["target"])) / float(row["target"]) < 1e-4
    assert row["pass"] == "true" and row["paper_anchor"]
    assert [r["check_id"] for r in rows] == sorted(r["check_id"] for r in rows)


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify", "identities")
    assert code == 0
    row = {r["check_id"]: r for r in parse_csv(out)[1]}["id.weighted-form"]
    assert float(row["residual"]) < 1e-8


def test_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "theorem6")
    assert code == 2 and "usage" in err


def test_failed_check_exit_1(capsys):
    # a tolerance scale of 1e-30 turns every nonzero residual into a failure
    code, out, _ = run(capsys, "--tol-scale", "1e-30", "verify", "theorem4")
    assert code == 1
    assert any(r["pass"] == "false" for r in parse_csv(out)[1])


def test_seventeen_digits(capsys):
    _, out, _ = run(capsys, "tabulate", "constants")
    rows = parse_csv(out)[1]
    val = {r["name"]: r["value"] for r in rows}["grushin_r3"]
    assert val == format(1 / (2 * 3.141592653589793), ".17g")


def test_tabulate_constants(capsys):
    code, out, _ = run(capsys, "tabulate", "constants")
    assert code == 0
    vals = {r["name"]: float(r["value"]) for r in parse_csv(out)[1]}
    assert vals["A_p(s=0.5)"] == pytest.approx(vals["hyperbolic_l4"], rel=1e-15)
    assert vals["A_p(s=0.25)"] == pytest.approx(vals["hyperbolic_l6"], rel=1e-15)
    assert vals["B_6"] == pytest.approx(vals["hyperbolic_l6_quarter"], rel=1e-15)


def test_tabulate_psi_s1(capsys):
    code, out, _ = run(capsys, "tabulate", "psi", "--s", "1")
    assert code == 0
    for r in parse_csv(out)[1]:
        assert float(r["psi_hypergeometric"]) == pytest.approx(float(r["closed_form_s1"]), rel=1e-12)


def test_tabulate_bad_arguments(capsys):
    assert run(capsys, "tabulate", "nothing")[0] == 2
    assert run(capsys, "tabulate", "psi", "--s", "0.5")[0] == 2
    assert run(capsys, "tabulate", "psi", "--s", "abc")[0] == 2


def test_scan_l6_epsilon(capsys):
    code, out, _ = run(capsys, "scan", "eq5-epsilon")
    assert code == 0
    rows = parse_csv(out)[1]
    assert rows[-1]["row"] == "extrapolated"
    assert float(rows[-1]["limit"]) == pytest.approx(2 ** (10 / 3), rel=1e-2)


def test_scan_l4_epsilon(capsys):
    code, out, _ = run(capsys, "scan", "thm4-epsilon")
    assert code == 0
    assert float(parse_csv(out)[1][-1]["limit"]) == pytest.approx(4.0, rel=1e-2)


def test_scan_miss_exit_1(capsys):
    assert run(capsys, "--tol-scale", "0.01", "scan", "eq5-epsilon")[0] == 1


def test_scan_psi_asymptotics(capsys):
    code, out, _ = run(capsys, "scan", "psi-asymptotics", "--s", "1.5")
    assert code == 0
    last = parse_csv(out)[1][-1]
    assert float(last["u"]) == 1e4
    assert 0.999 <= float(last["ratio_large_u"]) <= 1.001


def test_scan_quotient_family(capsys):
    code, out, _ = run(capsys, "scan", "quotient-family", "--family", "powerlaw", "--s", "1")
    assert code == 0
    last = parse_csv(out)[1][-1]
    assert float(last["argmax"]) == pytest.approx(1.0, abs=1e-4)


def test_scan_bad(capsys):
    assert run(capsys, "scan", "nope")[0] == 2
    assert run(capsys, "scan", "quotient-family", "--family", "cubes")[0] == 2


def test_json_and_out_dir(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "rearrangement", "--format", "json", "--out",
                       str(tmp_path), "--seed", "11")
    assert code == 0
    doc = json.loads((tmp_path / "verify-rearrangement.json").read_text())
    assert doc["seed"] == 11
    assert [r["check_id"] for r in doc["rows"]] == suites.checks_for("rearrangement")
    assert all(r["pass"] is True for r in doc["rows"])


def test_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli.main(["verify", "rearrangement", "--out", str(a), "--seed", "5"]) == 0
    assert cli.main(["verify", "rearrangement", "--out", str(b), "--seed", "5", "--workers", "2"]) == 0
    assert (a / "verify-rearrangement.csv").read_bytes() == (b / "verify-rearrangement.csv").read_bytes()


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# overrides\nseed = 9\ntol_scale.theorem4 = 2\nformat = json\nbudget_1d = 2000000\n")
    code, out, _ = run(capsys, "--config", str(cfg), "verify", "theorem4")
    assert code == 0
    doc = json.loads(out)
    assert doc["seed"] == 9
    row = {r["check_id"]: r for r in doc["rows"]}["t4.eps-limit"]
    assert row["tolerance"] == pytest.approx(2e-2)


@pytest.mark.parametrize("text", ["nonsense\n", "seed = x\n", "colour = red\n",
                                  "tol_scale = -1\n", "tol_scale.theorem9 = 1\n"])
def test_bad_config(tmp_path, capsys, text):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    assert run(capsys, "--config", str(cfg), "tabulate", "constants")[0] == 2


def test_missing_config(capsys, tmp_path):
    assert run(capsys, "--config", str(tmp_path / "none.cfg"), "tabulate", "constants")[0] == 2


def test_flags_after_subcommand(capsys):
    _, out, _ = run(capsys, "tabulate", "constants", "--seed", "4")
    assert out.startswith("# report=tabulate-constants seed=4 ")
    _, out, _ = run(capsys, "--seed", "3", "tabulate", "constants")
    assert out.startswith("# report=tabulate-constants seed=3 ")


def test_every_check_has_anchor():
    assert all(c.anchor for c in suites.REGISTRY.values())
    assert set(suites.checks_for("all")) == set(suites.REGISTRY)
