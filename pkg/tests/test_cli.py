import json
import shutil
import subprocess

import pytest

from adjforge import serialize
from adjforge.cli import RunConfig, main
from adjforge.corpus import searched_monad_corpus
from adjforge.monadics import dual_comonad

from oracles import search_all_false_monad


@pytest.fixture
def run(fixtures_dir, capsys, monkeypatch):
    monkeypatch.chdir(fixtures_dir)

    def go(*argv):
        code = main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err
    return go


# -- check ----------------------------------------------------------------------

@pytest.mark.parametrize("kind,path,code", [
    ("category", "chain3.json", 0),
    ("category", "nonassociative.json", 1),
    ("category", "truncated.json", 2),
    ("monad", "closure_monad.json", 0),
    ("comonad", "closure_comonad_op.json", 0),
    ("adjunction", "galois.json", 0),
    ("algebra", "dual_numbers.json", 0),
    ("algebra", "nonassociative_algebra.json", 1),
    ("module", "simple_module.json", 0),
    ("module", "triangular_p1.json", 0),
    ("monad", "chain3.json", 2),
    ("category", "missing.json", 2),
])
def test_check_exit_codes(run, kind, path, code):
    assert run("check", kind, path)[0] == code


def test_check_prints_violation_witness(run):
    code, out, _ = run("check", "category", "nonassociative.json")
    payload = json.loads(out)
    assert code == 1 and not payload["valid"]
    assert {"law": "associativity", "witness": ["a", "a", "a"]} in payload["violations"]


def test_bad_arguments_exit_two(run):
    assert run("check", "sheaf", "chain3.json")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("star", "triangular.json", "auto-end", "--budget", "0")[0] == 2


# -- battery --------------------------------------------------------------------

def test_galois_fixture_battery_all_true(run):
    code, out, _ = run("battery", "pair", "galois.json", "--expect-verdict", "true")
    payload = json.loads(out)
    assert code == 0
    assert all(payload["conditions"].values()) and payload["agree"]
    assert payload["equivalence"]["ran"] and payload["equivalence"]["ok"]


def test_expected_verdict_mismatch_exits_one(run):
    code, _, err = run("battery", "monad", "closure_monad.json", "--expect-verdict", "false")
    assert code == 1 and "differs" in err


def test_closure_batteries_all_true(run):
    for kind, path in (("monad", "closure_monad.json"), ("comonad", "closure_comonad_op.json")):
        code, out, _ = run("battery", kind, path)
        assert code == 0 and json.loads(out)["verdict"] is True


def test_truncated_battery_input_exits_two(run):
    code, out, err = run("battery", "pair", "truncated.json")
    assert code == 2 and not out and err.startswith("error:")


def test_non_idempotent_battery_exits_zero_all_false(run, tmp_path):
    m = search_all_false_monad()
    assert m is not None, "every searched monad is idempotent"
    path = tmp_path / "monad.json"
    path.write_text(serialize.dumps(serialize.monad_to_json(m)))
    code, out, _ = run("battery", "monad", str(path), "--expect-verdict", "false")
    assert code == 0
    assert not any(json.loads(out)["conditions"].values())


def test_dualized_monad_battery_via_cli(run, tmp_path):
    _, m = list(searched_monad_corpus())[-1]
    a, b = tmp_path / "m.json", tmp_path / "s.json"
    a.write_text(serialize.dumps(serialize.monad_to_json(m)))
    b.write_text(serialize.dumps(serialize.comonad_to_json(dual_comonad(m))))
    ra, rb = run("battery", "monad", str(a)), run("battery", "comonad", str(b))
    assert ra[0] == rb[0] == 0
    assert json.loads(ra[1])["conditions"] == json.loads(rb[1])["conditions"]


# -- star, enumerate, report ------------------------------------------------------

@pytest.mark.parametrize("argv,code", [
    (("triangular.json", "auto-end"), 0),
    (("dual_numbers.json", "simple_module.json", "--max-dim", "3"), 0),
    (("triangular.json", "triangular_p1.json"), 1),
    (("triangular.json", "auto-end", "--max-dim", "0"), 3),
    (("triangular.json", "truncated.json"), 2),
    (("nonassociative_algebra.json", "auto-end"), 2),
])
def test_star_exit_codes(run, argv, code):
    assert run("star", *argv)[0] == code


def test_refuted_report_round_trips_through_report(run, tmp_path):
    out = tmp_path / "star.json"
    assert run("star", "triangular.json", "triangular_p1.json", "--out", str(out))[0] == 1
    payload = json.loads(out.read_text())
    assert payload["verdict"] == "refuted" and payload["certificates"]
    code, text, _ = run("report", str(out))
    assert code == 0
    rep = json.loads(text)
    assert rep["revalidated"] == rep["certificates"] == len(payload["certificates"])

    forged = dict(payload)
    cert = dict(payload["certificates"][0])
    cert["matrix"] = [[0 for _ in row] for row in cert["matrix"]]
    forged["certificates"] = [cert]
    bad = tmp_path / "forged.json"
    bad.write_text(json.dumps(forged))
    assert run("report", str(bad))[0] == 1


def test_reports_are_byte_stable(run, tmp_path):
    outs = []
    for i in range(2):
        p = tmp_path / f"r{i}.json"
        run("star", "triangular.json", "triangular_p1.json", "--out", str(p))
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    texts = [run("battery", "pair", "galois.json", "--format", "text")[1] for _ in range(2)]
    assert texts[0] == texts[1]


def test_enumerate(run):
    code, out, _ = run("enumerate", "f2.json", "--max-dim", "2")
    payload = json.loads(out)
    assert code == 0 and payload["complete"]
    assert [m["dim"] for m in payload["modules"]] == [0, 1, 2]
    code, out, _ = run("enumerate", "triangular.json", "--max-dim", "2", "--enum-budget", "3")
    assert code == 3 and not json.loads(out)["complete"]


def test_text_format(run):
    code, out, _ = run("star", "triangular.json", "triangular_p1.json", "--format", "text")
    assert code == 1
    assert out.startswith("verdict: refuted")
    assert "certificate:" in out


def test_thread_cap_from_environment(run, monkeypatch):
    monkeypatch.setenv("ADJFORGE_THREADS", "4")
    assert run("check", "category", "chain3.json")[0] == 0


def test_run_config_rejects_bad_values():
    with pytest.raises(ValueError):
        RunConfig(command="nope")
    with pytest.raises(ValueError):
        RunConfig(command="check", budget=0)
    with pytest.raises(ValueError):
        RunConfig(command="check", fmt="yaml")


@pytest.mark.skipif(shutil.which("adjforge") is None, reason="console script not installed")
def test_console_script(fixtures_dir):
    r = subprocess.run(["adjforge", "check", "category", "chain3.json", "--format", "text"],
                       cwd=fixtures_dir, capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "category: valid"
