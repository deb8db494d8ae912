import io
import json
import subprocess
import sys

import pytest

from klatlas.harness import cli
from klatlas.harness import suites as S
from klatlas.harness.report import Status, SuiteConfig, write_jsonl, write_text
from klatlas.permcore import parse_perm

P = parse_perm


def jsonl(summary) -> str:
    buf = io.StringIO()
    write_jsonl(summary, buf)
    return buf.getvalue()


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(n=0)
    with pytest.raises(ValueError):
        SuiteConfig(n=3, jobs=0)
    with pytest.raises(ValueError):
        SuiteConfig(n=3, format="xml")


def test_theorem_main_s4(table):
    s = S.verify_theorem_main(SuiteConfig(n=4))
    assert s.ok and s.total == 24
    hyp = {str(r.w): r.detail for r in s.records if "h" in r.detail}
    assert hyp == {"3412": {"kl_stat": 2, "ms": ["1324"], "six": None, "h": 1, "P": "1 + q"},
                   "4231": {"kl_stat": 2, "ms": ["2143"], "six": None, "h": 1, "P": "1 + q"}}


def test_six_pattern_excluded(table):
    status, detail = S.check_theorem_main(P("653421"), table(6))
    assert status is Status.PASS and detail["six"] == "653421" and "h" not in detail
    assert S.check_corollary(P("653421"), table(6))[0] is Status.SKIP


def test_corollary_examples(table):
    t = table(4)
    for w, v in (("4231", "2143"), ("3412", "1324")):
        status, detail = S.check_corollary(P(w), t)
        assert status is Status.PASS and detail == {"v": v, "h": 1}


def test_ms_crosscheck_examples(table):
    t = table(7)
    assert S.check_ms_crosschecks(P("4631725"), t) == (
        Status.PASS, {"ms": sorted(map(str, S.ms_cached(P("4631725")))), "dotted": 2})
    t8 = S.SparseKLTable(8)
    status, detail = S.check_ms_crosschecks(P("47318625"), t8)
    assert status is Status.PASS and len(detail["ms"]) == 1 and detail["dotted"] == 1


def test_lemma_me_examples(table):
    status, detail = S.check_lemma_me(P("4231"), table(4), k=1)
    assert status is Status.PASS and detail["v"] in ("4231", "3412")
    status, detail = S.check_lemma_me(P("4631725"), table(7), k=2)
    assert status is Status.PASS and len(detail["Z"]) <= 8 and detail["ms_v"] >= 2
    assert S.check_lemma_me(P("4231"), table(4), k=2)[0] is Status.SKIP
    with pytest.raises(S.UsageError):
        S.verify_lemma_me(SuiteConfig(n=4), 0)


def test_conjecture1_classification(table):
    s = S.verify_conjecture1(SuiteConfig(n=6))
    assert s.ok
    threes = [r for r in s.records if r.detail["kl_stat"] == 3]
    assert {r.detail["ms_size"] for r in threes} <= {1, 2, 3}
    assert all(r.detail["kl_stat"] == 1 for r in s.records if str(r.w) == "123456")


def test_forms():
    assert S._form_ab(S.PolyQ.parse("1 + q + q^3")) == (1, 3)
    assert S._form_ab(S.PolyQ.parse("1 + 2*q")) is None
    assert S._form_2a(S.PolyQ.parse("1 + 2*q^2")) == 2
    assert S._form_2a(S.PolyQ.parse("1 + q + q^2")) is None


def test_kl2_suite_includes_patterns(table):
    s = S.verify_kl2_patterns(SuiteConfig(n=5))
    assert s.ok and s.total == 120 + 66
    assert [r.w for r in s.records] == sorted((r.w for r in s.records), key=lambda w: (len(w), w))


def test_unknown_suite_and_long_gate():
    with pytest.raises(S.UsageError, match="unknown suite"):
        S.run_suite("nope", SuiteConfig(n=3))
    with pytest.raises(S.UsageError, match="allow-long"):
        S.run_suite("theorem_main", SuiteConfig(n=8))


def test_failures_are_reported(monkeypatch, table):
    monkeypatch.setitem(S.SUITES, "theorem_main",
                        lambda w, t: (Status.FAIL, {"why": "forced"}) if w == P("321") else (Status.PASS, {}))
    s = S.run_suite("theorem_main", SuiteConfig(n=3))
    assert not s.ok and s.failed == 1 and s.passed == 5
    buf = io.StringIO()
    write_text(s, buf)
    assert 'FAIL theorem_main 321: {"why": "forced"}' in buf.getvalue()
    assert cli.main(["verify", "theorem_main", "--n", "3"]) == 1


# ---- invariants -------------------------------------------------------------

@pytest.mark.invariant
@pytest.mark.parametrize("suite", sorted(S.SUITES))
def test_deterministic_across_jobs(suite, table):
    table(5)
    a = S.run_suite(suite, SuiteConfig(n=5, jobs=1))
    b = S.run_suite(suite, SuiteConfig(n=5, jobs=2))
    assert jsonl(a) == jsonl(b)
    lines = jsonl(a).splitlines()
    head, tail = json.loads(lines[0]), json.loads(lines[-1])
    assert head["record"] == "header" and set(head["checksums"]) == {"six.txt", "sixty_six.txt", "dotted.txt"}
    assert tail == {"record": "summary", "suite": suite, "n": 5, **a.counts()}
    assert a.total == a.passed + a.failed + a.skipped


# ---- command line -----------------------------------------------------------

def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_ops(capsys):
    assert run(capsys, "compute", "kl", "1234", "4231") == (0, "1 + q\n", "")
    code, out, _ = run(capsys, "compute", "cortez", "817396254")
    assert code == 0 and "kappa=5" in out and "v=514398276" in out and "alpha'=8" in out
    code, out, _ = run(capsys, "compute", "ms", "4631725")
    assert code == 0 and len(out.split()) == 2
    code, out, _ = run(capsys, "compute", "klstat", "3412", "--format", "json")
    assert json.loads(out) == {"w": "3412", "kl_stat": 2}
    code, out, _ = run(capsys, "compute", "min3412", "4231")
    assert code == 0 and out.startswith("none")
    code, out, _ = run(capsys, "compute", "coess", "4231", "--format", "json")
    assert json.loads(out)["coessential"] == [{"p": 2, "q": 2, "r": 1, "inclusion": False}]


def test_compute_errors(capsys):
    code, _, err = run(capsys, "compute", "ms", "12x4")
    assert code == 2 and "character 3" in err
    code, _, err = run(capsys, "compute", "cortez", "4231")
    assert code == 2 and "covexillary" in err
    code, _, err = run(capsys, "compute", "kl", "123")
    assert code == 2 and "takes 2" in err
    code, _, err = run(capsys, "verify", "theorem_main")
    assert code == 2 and "--n" in err
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "bogus", "--n", "3"])
    assert exc.value.code == 2


def test_verify_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "ms_crosschecks", "--n", "4")
    assert code == 0 and out.startswith("ms_crosschecks n=4: 24 checked, 24 pass")
    path = tmp_path / "r.jsonl"
    code, out, err = run(capsys, "verify", "corollary", "--n", "4", "--format", "json", "--out", str(path))
    assert code == 0 and out == ""
    recs = [json.loads(x) for x in path.read_text().splitlines()]
    assert len(recs) == 26 and recs[-1]["pass"] == 2


def test_cache_file(tmp_path, capsys):
    path = tmp_path / "s4.jsonl"
    S._TABLES.pop(4, None)
    assert run(capsys, "verify", "theorem_main", "--n", "4", "--cache", str(path))[0] == 0
    assert path.exists()
    S._TABLES.pop(4, None)
    assert run(capsys, "verify", "theorem_main", "--n", "4", "--cache", str(path))[0] == 0
    saved = S._TABLES.pop(5, None)
    code, _, err = run(capsys, "verify", "theorem_main", "--n", "5", "--cache", str(path))
    assert code == 2 and "S_4" in err
    S._TABLES.pop(4, None)
    if saved is not None:
        S._TABLES[5] = saved


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "klatlas", "compute", "kl", "1234", "3412"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "1 + q\n"
