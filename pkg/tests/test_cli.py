import json
import shutil
import subprocess
import sys

import pytest

from homconf.cli import main, run_checks, render, EXIT_OK, EXIT_FAIL, EXIT_INPUT
from homconf.surface import load_definition, parse_definition

from conftest import FIXTURES

FIXTURE_NAMES = ["lsc_lambda.def", "rank2_symplectic.def", "current_2d.def", "broken.def"]


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_exit_code_matches_report_verdict(name, capsys):
    code, out, _ = run(["check", str(FIXTURES / name), "--format", "json"], capsys)
    records = [json.loads(line) for line in out.splitlines()]
    assert records
    assert code == (EXIT_OK if all(r["passed"] for r in records) else EXIT_FAIL)


def test_broken_fixture_names_failing_tuple(capsys):
    code, out, _ = run(["check", str(FIXTURES / "broken.def")], capsys)
    assert code == EXIT_FAIL
    assert "FAIL B left-symmetry (e, e, e)" in out


def test_lsc_fixture_passes(capsys):
    code, out, _ = run(["check", str(FIXTURES / "lsc_lambda.def")], capsys)
    assert code == EXIT_OK
    assert "PASS A left-symmetry" in out


def test_json_record_schema(capsys):
    _, out, _ = run(["check", str(FIXTURES / "rank2_symplectic.def"), "--format", "json"], capsys)
    rec = json.loads(out.splitlines()[0])
    assert list(rec) == ["subject", "axiom", "tuple", "passed", "residual"]


def test_reports_are_byte_identical(capsys):
    outs = []
    for _ in range(3):
        outs.append(run(["check", str(FIXTURES / "lsc_lambda.def"), "--format", "json"], capsys)[1])
        outs.append(run(["oracle", str(FIXTURES / "lsc_lambda.def"), "--seed", "5", "--format", "json"],
                        capsys)[1])
    assert outs[0] == outs[2] == outs[4]
    assert outs[1] == outs[3] == outs[5]


def test_axioms_flag(capsys):
    code, out, _ = run(["check", str(FIXTURES / "lsc_lambda.def"), "--axioms", "skew"], capsys)
    assert all(" skew " in line for line in out.splitlines() if line.startswith(("PASS", "FAIL")))
    code, _, err = run(["check", str(FIXTURES / "lsc_lambda.def"), "--axioms", "nonsense"], capsys)
    assert code == EXIT_INPUT and "nonsense" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(["check", str(tmp_path / "absent.def")], capsys)
    assert code == EXIT_INPUT


def test_parse_error_location(capsys, tmp_path):
    p = tmp_path / "bad.def"
    p.write_text("[algebra G]\nkind lie\nbasis e1 e2\n[e1, e2] = e3\n")
    code, _, err = run(["check", str(p)], capsys)
    assert code == EXIT_INPUT
    assert "line 4" in err and "e3" in err


def test_construct_sub_adjacent_pipeline(capsys, tmp_path):
    out = tmp_path / "lie.def"
    code, _, _ = run(["construct", "sub-adjacent", str(FIXTURES / "lsc_lambda.def"), "A", "--out", str(out)],
                     capsys)
    assert code == EXIT_OK
    d = load_definition(out)
    assert d.algebras["A_lie"].kind == "lie"
    code, _, _ = run(["check", str(out), "--axioms", "skew,jacobi"], capsys)
    assert code == EXIT_OK


def test_construct_from_symplectic(capsys):
    code, out, _ = run(["construct", "from-symplectic", str(FIXTURES / "rank2_symplectic.def")], capsys)
    assert code == EXIT_OK
    d = parse_definition(out)
    assert "L . L = (L - D)*E" in out
    assert d.algebras["R_ls"].kind == "left-symmetric"


def test_construct_current(capsys):
    code, out, _ = run(["construct", "current", str(FIXTURES / "current_2d.def")], capsys)
    assert code == EXIT_OK
    assert "e1 . e1 = e1" in out


def test_construct_refusal_exits_one(capsys):
    code, _, err = run(["construct", "sub-adjacent", str(FIXTURES / "broken.def")], capsys)
    assert code == EXIT_FAIL
    assert "left-symmetry" in err


def test_construct_dual_coalgebra_round_trip(capsys, tmp_path):
    co = tmp_path / "co.def"
    assert run(["construct", "dual-coalgebra", str(FIXTURES / "lsc_lambda.def"), "A", "--out", str(co)],
               capsys)[0] == EXIT_OK
    back = tmp_path / "back.def"
    assert run(["construct", "dual", str(co), "A_co", "--out", str(back)], capsys)[0] == EXIT_OK
    d = load_definition(back)
    orig = load_definition(FIXTURES / "lsc_lambda.def").algebras["A"]
    assert any(a.product == orig.product for a in d.algebras.values() if a.module == orig.module)


def test_oracle_agrees_on_fixtures(capsys):
    for name in FIXTURE_NAMES:
        code, out, _ = run(["oracle", str(FIXTURES / name), "--samples", "30"], capsys)
        assert code == EXIT_OK, name


def test_oracle_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("HOMCONF_SEED", "3")
    a = run(["oracle", str(FIXTURES / "broken.def"), "--format", "json"], capsys)[1]
    b = run(["oracle", str(FIXTURES / "broken.def"), "--format", "json", "--seed", "3"], capsys)[1]
    assert a == b


def test_corpus_command(capsys, tmp_path):
    code, _, _ = run(["corpus", "--count", "6", "--rank", "2", "--degree", "1", "--seed", "9",
                      "--out", str(tmp_path)], capsys)
    assert code == EXIT_OK
    index = (tmp_path / "index.tsv").read_text().splitlines()
    assert len(index) == 7
    for row in index[1:]:
        name, cert, _, _ = row.split("\t")
        code, _, _ = run(["check", str(tmp_path / f"{name}.def")], capsys)
        assert (code == EXIT_OK) == (cert == "true")


def test_figure_option(capsys, tmp_path):
    pytest.importorskip("matplotlib")
    fig = tmp_path / "grid.png"
    run(["check", str(FIXTURES / "lsc_lambda.def"), "--figure", str(fig)], capsys)
    assert fig.exists() and fig.stat().st_size > 0


def test_render_text_summary():
    reports = run_checks(load_definition(FIXTURES / "broken.def"))
    text = render(reports, "text")
    assert text.splitlines()[-1].endswith("FAILED")


@pytest.mark.skipif(shutil.which("homconf") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["homconf", "check", str(FIXTURES / "lsc_lambda.def")], capture_output=True, text=True)
    assert res.returncode == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "homconf.cli", "check", str(FIXTURES / "broken.def")],
                         capture_output=True, text=True)
    assert res.returncode == 1
