import json
import subprocess
import sys
from importlib import resources

import pytest

from ctk.catalog import bundled_table
from ctk.chartab import parse_table, render_table
from ctk.cli import main

DATA = resources.files("ctk") / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def q8_files(tmp_path):
    gens = tmp_path / "q8.gens"
    gens.write_text((DATA / "groups" / "Q8.gens").read_text())
    return tmp_path, gens


def test_table_golden(capsys, q8_files):
    tmp, gens = q8_files
    out = tmp / "q8.ctab"
    code, _, _ = run(capsys, "table", "--gens", str(gens), "--out", str(out))
    assert code == 0
    assert out.read_text() == render_table(bundled_table("Q8").renamed("q8"))


def test_table_by_name(capsys):
    code, out, _ = run(capsys, "table", "--group", "S3")
    assert code == 0 and out == (DATA / "tables" / "S3.ctab").read_text()


def test_analyze_json(capsys, q8_files):
    tmp, gens = q8_files
    ctab = tmp / "q8.ctab"
    run(capsys, "table", "--gens", str(gens), "--out", str(ctab))
    code, out, _ = run(capsys, "analyze", "--table", str(ctab), "--json")
    d = json.loads(out)
    assert code == 0
    assert d["schema"] == 1 and d["theta"] == "3/4" and d["theta_prime"] == "1"
    assert d["name"] == "q8"


def test_analyze_gens_sets_nilpotent(capsys, q8_files):
    _, gens = q8_files
    code, out, _ = run(capsys, "analyze", "--gens", str(gens), "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["nilpotent"] is True
    assert "nilpotent_theta_half" in d["verdicts"]


def test_family_suz(capsys):
    code, out, _ = run(capsys, "family", "suz", "--q", "8")
    assert code == 0
    assert "theta = 2377/4160 (0.5713942308)" in out
    assert "theta_prime = 8/11 (0.7272727273)" in out
    assert "FAIL" not in out


def test_family_l2_and_alt(capsys):
    code, out, _ = run(capsys, "family", "l2", "--sweep", "200", "--json")
    d = json.loads(out)
    assert code == 0 and d["passed"] and d["results"][0]["q"] == 4
    code, out, _ = run(capsys, "family", "alt", "--n", "5")
    assert code == 0 and "theta = 7/12" in out


def test_product(capsys, tmp_path):
    out = tmp_path / "p.ctab"
    code, _, _ = run(capsys, "product", str(DATA / "tables" / "Q8.ctab"),
                     str(DATA / "tables" / "C3.ctab"), "--name", "Q8xC3", "--out", str(out))
    assert code == 0
    t = parse_table(out.read_text())
    assert t.name == "Q8xC3" and t.num_classes == 15


def test_verify_fixtures(capsys):
    code, out, _ = run(capsys, "verify", "all", "--fixtures", "--count", "100")
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("all checks passed")


def test_verify_suites(capsys):
    for suite in ("classical", "primepower"):
        assert run(capsys, "verify", suite, "--group", "A5")[0] == 0
    assert run(capsys, "verify", "nilpotent", "--group", "He3")[0] == 0
    assert run(capsys, "verify", "congruence", "--count", "50", "--json")[0] == 0
    # a non-nilpotent group cannot enter the nilpotent suite
    assert run(capsys, "verify", "nilpotent", "--group", "S3")[0] == 1


def test_deterministic(capsys):
    a = run(capsys, "analyze", "--group", "A6", "--json")[1]
    b = run(capsys, "analyze", "--group", "A6", "--json")[1]
    assert a == b


def test_verification_failure_exit(capsys, tmp_path):
    # a file that parses but fails validation
    bad = (DATA / "tables" / "S3.ctab").read_text().replace("X3: 2 0 -1", "X3: 2 0 1")
    path = tmp_path / "bad.ctab"
    path.write_text(bad)
    code, _, err = run(capsys, "analyze", "--table", str(path))
    assert code == 4 and "orthogonality" in err


@pytest.mark.parametrize("argv,code", [
    (["bogus"], 1),
    (["table"], 1),
    (["analyze", "--table", "/nonexistent/x.ctab"], 1),
    (["family", "suz"], 1),
    (["family", "suz", "--q", "16"], 1),
    (["--cap", "0", "table", "--group", "S3"], 1),
    (["--cap", "10", "table", "--group", "S4"], 3),
    (["table", "--group", "NoSuchGroup"], 1),
])
def test_exit_codes(capsys, argv, code):
    try:
        got = main(argv)
    except SystemExit as exc:
        got = exc.code
    assert got == code


def test_parse_error_exit(capsys, tmp_path):
    path = tmp_path / "junk.ctab"
    path.write_text("not a table\n")
    assert run(capsys, "analyze", "--table", str(path))[0] == 2
    gens = tmp_path / "junk.gens"
    gens.write_text("domain: 3\n(0 5)\n")
    assert run(capsys, "table", "--gens", str(gens))[0] == 2


def test_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("CTK_ENUM_CAP", "20")
    assert run(capsys, "table", "--group", "S4")[0] == 3


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "ctk.cli", "family", "suz", "--q", "32"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "theta_prime = 4/7" in proc.stdout
