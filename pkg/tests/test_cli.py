import csv
import io
import json
import subprocess
import sys

import pytest

from ncic import cli, gdof_schemes
from ncic.gdof_schemes import SchemeId


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _cells(text):
    return {row[0]: row for row in csv.reader(io.StringIO(text))}


@pytest.mark.parametrize("argv, sym, empty", [
    (("--scheme", "rs", "--alpha", "1", "--coherence", "5"), "0.300000", "false"),
    (("--scheme", "tdm", "--alpha", "0.2", "--coherence", "5"), "0.400000", "false"),
    (("--scheme", "rs", "--alpha", "0.7", "--coherence", "2"), "0.000000", "true"),
])
def test_gdof_examples(capsys, argv, sym, empty):
    code, out, _ = run(capsys, "gdof", *argv)
    assert code == 0
    cells = _cells(out)
    assert cells["sym_gdof"][3] == sym
    assert cells["empty"][3] == empty


def test_gdof_report_layout(capsys):
    _, out, _ = run(capsys, "gdof", "--scheme", "rs", "--alpha", "1", "--coherence", "5")
    lines = out.split("\n")
    assert lines[0] == "kind,a,b,c"
    assert lines[1] == "row,1.000000,1.000000,0.600000"
    assert "vertex,0.600000,0.000000," in lines
    assert out.endswith("\n") and "\r" not in out


def test_gdof_json_mirrors_csv(capsys):
    args = ("gdof", "--scheme", "rs-fb", "--alpha", "0.6", "--coherence", "4")
    _, csv_out, _ = run(capsys, *args)
    _, json_out, _ = run(capsys, *args, "--format", "json")
    records = json.loads(json_out)
    rows = list(csv.DictReader(io.StringIO(csv_out)))
    assert records == rows


def test_sweep_examples(capsys, tmp_path):
    out_file = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "sweep", "--schemes", "rs,tdm", "--coherence", "6",
                       "--alpha-min", "0", "--alpha-max", "1", "--steps", "4",
                       "--out", str(out_file))
    assert code == 0 and out == ""
    rows = list(csv.DictReader(out_file.open(newline="")))
    assert [r["alpha"] for r in rows if r["scheme"] == "rs"] == [
        "0.000000", "0.333333", "0.666667", "1.000000"]
    at = {(r["alpha"], r["scheme"]): float(r["sym_gdof"]) for r in rows}
    assert at[("0.666667", "rs")] > at[("0.666667", "tdm")]


def test_sweep_two_steps(capsys):
    _, out, _ = run(capsys, "sweep", "--schemes", "tin,rs,tdm", "--coherence", "4",
                    "--alpha-min", "0", "--alpha-max", "1", "--steps", "2")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    assert {r["alpha"] for r in rows} == {"0.000000", "1.000000"}


def test_rates_deterministic_and_seed_env(capsys, monkeypatch):
    args = ("rates", "--snr-db-list", "16,18", "--link-gain", "0.1", "--samples", "20000")
    _, a, _ = run(capsys, *args, "--seed", "3")
    _, b, _ = run(capsys, *args, "--seed", "3")
    assert a == b
    monkeypatch.setenv(cli.SEED_ENV, "3")
    _, c, _ = run(capsys, *args)
    assert c == a
    monkeypatch.setenv(cli.SEED_ENV, "4")
    _, d, _ = run(capsys, *args)
    assert d != a
    assert a.split("\n")[0] == "snr_db,scheme,rate,stderr"


def test_csv_round_trip(capsys):
    _, out, _ = run(capsys, "rates", "--snr-db-list", "16,17", "--link-gain", "0.1",
                    "--samples", "5000")
    rows = list(csv.reader(io.StringIO(out)))
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    assert buf.getvalue() == out


def test_slope_command(capsys):
    _, out, _ = run(capsys, "slope", "--term", "IX1U2_Y1_gU1", "--alpha", "0.3",
                    "--coherence", "5")
    row = list(csv.DictReader(io.StringIO(out)))[0]
    assert row["expected"] == "2.500000"
    assert float(row["abs_diff"]) < 0.02


@pytest.mark.parametrize("argv, flag", [
    (("gdof", "--scheme", "bogus", "--alpha", "1", "--coherence", "5"), "--scheme"),
    (("gdof", "--scheme", "rs", "--alpha", "x", "--coherence", "5"), "--alpha"),
    (("gdof", "--scheme", "rs", "--alpha", "-1", "--coherence", "5"), "--alpha"),
    (("gdof", "--scheme", "rs", "--alpha", "nan", "--coherence", "5"), "--alpha"),
    (("gdof", "--scheme", "rs", "--alpha", "1", "--coherence", "1"), "--coherence"),
    (("gdof", "--scheme", "rs", "--alpha", "1"), "--coherence"),
    (("sweep", "--schemes", "rs", "--coherence", "4", "--steps", "1"), "--steps"),
    (("sweep", "--schemes", "rs,xx", "--coherence", "4"), "--schemes"),
    (("sweep", "--schemes", "rs,rs", "--coherence", "4"), "--schemes"),
    (("sweep", "--schemes", "rs", "--coherence", "4", "--alpha-min", "1",
      "--alpha-max", "0.5"), "--alpha-max"),
    (("rates", "--snr-db-list", "16,abc"), "--snr-db-list"),
    (("rates", "--snr-db-list", "16", "--samples", "10"), "--samples"),
    (("rates", "--snr-db-list", "16", "--link-gain", "0"), "--link-gain"),
    (("rates", "--snr-db-list", "16", "--schemes", "tin"), "--schemes"),
    (("rates", "--snr-db-list", "16", "--seed", "-2"), "--seed"),
    (("slope", "--term", "nope", "--alpha", "0.3", "--coherence", "5"), "--term"),
    (("slope", "--term", "IX1U2_Y1", "--alpha", "0.3", "--coherence", "5",
      "--exponents", "10,8"), "--exponents"),
    (("validate", "--fast", "--full"), "--full"),
])
def test_usage_errors_exit_2_and_name_flag(capsys, argv, flag):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert flag in err
    assert out == ""


def test_bad_seed_env_is_usage_error(capsys, monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "abc")
    code, _, err = run(capsys, "rates", "--snr-db-list", "16", "--samples", "1000")
    assert code == 2 and cli.SEED_ENV in err


def test_no_command_is_usage_error(capsys):
    code, _, _ = run(capsys)
    assert code == 2


def test_validate_detects_corrupted_table(capsys, monkeypatch):
    code, out, _ = run(capsys, "validate", "--fast")
    assert "PASS spot_rs_alpha1" in out

    original = gdof_schemes._ROWS[SchemeId.RS_NOFB]

    def corrupted(alpha, T, regime):
        rows = original(alpha, T, regime)
        a, b, c = rows[0]
        return [(a, b, c + 0.01)] + rows[1:]

    monkeypatch.setitem(gdof_schemes._ROWS, SchemeId.RS_NOFB, corrupted)
    code, out, _ = run(capsys, "validate", "--fast")
    assert code == 1
    assert "FAIL spot_rs_alpha1" in out


def test_validate_output_format(capsys):
    code, out, _ = run(capsys, "validate", "--fast")
    lines = out.strip().split("\n")
    for line in lines[:-1]:
        status, name, value, tol = line.split(" ")[:4]
        assert status in ("PASS", "FAIL")
        float(value), float(tol)
    # exit status tracks the presence of FAIL lines
    assert code == (1 if any(l.startswith("FAIL") for l in lines) else 0)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ncic", "gdof", "--scheme", "tdm",
                           "--alpha", "0.2", "--coherence", "5"],
                          capture_output=True, text=True, check=True)
    assert "sym_gdof,,,0.400000" in proc.stdout
