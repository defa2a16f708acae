import json

import pytest

from qmacdo.cli import main
from qmacdo.errors import ConfigError
from qmacdo.report import Check, render_lines, render_table
from qmacdo.suites import SUITES, SuiteConfig, parameter_points, run_suite


def test_check_and_renderers():
    checks = [Check("s", "inst", "r=1", "0", 0.5), Check("s", "inst", "r=2", "x1 + 1", 0.25, {"note": "n"})]
    assert checks[0].ok and not checks[1].ok
    header = {"suite": "s", "identity": "demo", "config": {}}
    lines = render_lines(header, checks).splitlines()
    assert len(lines) == 4
    assert json.loads(lines[-1]) == {"summary": {"suite": "s", "checks": 2, "failed": 1}}
    assert "elapsed" not in lines[1] and "elapsed" in render_lines(header, checks, True)
    assert json.loads(lines[2])["note"] == "n"
    table = render_table(header, checks)
    assert "PASS" in table and "FAIL" in table and table.rstrip().endswith("1/2 checks passed")


def test_config_validation():
    with pytest.raises(ConfigError):
        SuiteConfig("nope").validate()
    with pytest.raises(ConfigError):
        SuiteConfig("commute", n=-1).validate()
    with pytest.raises(ConfigError):
        SuiteConfig("commute", q="1/2").validate()
    with pytest.raises(ConfigError):
        SuiteConfig("commute", q="1/2", t="3", symbolic=True).validate()
    with pytest.raises(ConfigError):
        parameter_points(SuiteConfig("commute", q="2", t="1/2"), 4)


def test_points_are_seeded():
    a = parameter_points(SuiteConfig("commute", seed=4), 6).items
    b = parameter_points(SuiteConfig("commute", seed=4), 6).items
    c = parameter_points(SuiteConfig("commute", seed=5), 6).items
    assert a == b and a != c and len(a) == 2
    pts = parameter_points(SuiteConfig("commute", seed=4), 6)
    assert pts.resample(0, 1) == pts.resample(0, 1)


def test_every_suite_has_an_identity_header():
    header, checks = run_suite(SuiteConfig("newton", n=1, m=1, rmax=2, q="2/3", t="5/2"))
    assert header["suite"] == "newton" and header["identity"]
    assert checks and all(c.ok for c in checks)
    from qmacdo.suites import IDENTITIES, RUNNERS

    assert set(IDENTITIES) == set(SUITES) == set(RUNNERS)


def test_cli_commute_example(capsys):
    assert main(["commute", "--n", "1", "--m", "1", "--rmax", "3", "--q", "2/3", "--t", "5/2"]) == 0
    assert "checks passed" in capsys.readouterr().out


def test_cli_eigen_example(capsys):
    assert main(["eigen", "--n", "1", "--m", "1", "--lam", "2,1", "--r", "2", "--symbolic", "--report", "lines"]) == 0
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    H = [r for r in records if r.get("index") == "H r=2"]
    assert len(H) == 1 and H[0]["residual"] == "0"
    from qmacdo.ring import Ring
    from qmacdo.spectra import G_natural_coeff, spectral_vector

    R = Ring(x=1, y=1)
    expect = G_natural_coeff(2, R).substitute(spectral_vector((2, 1), 1, 1, R))
    assert Ring().parse(H[0]["eigenvalue"]) == Ring()(expect)


def test_cli_kajihara_example(capsys):
    assert main(["kajihara", "--K", "1", "--L", "1", "--order", "3"]) == 0
    assert "form=heine" in capsys.readouterr().out


def test_cli_out_file_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    args = ["wronski", "--n", "1", "--m", "1", "--rmax", "3"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b), "--report", "lines"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out.splitlines()[-1].startswith('{"summary"')


def test_cli_errors(capsys):
    assert main(["commute", "--q", "1", "--t", "2"]) == 2
    assert main(["commute", "--n", "-1"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["eigen", "--lam", "1,2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main([])
    with pytest.raises(SystemExit):
        main(["commute", "--suite", "eigen"])


def test_cli_suite_flag(capsys):
    assert main(["--suite", "independence", "--n", "1", "--m", "1", "--q", "2/3", "--t", "5/2"]) == 0


def test_failing_check_gives_exit_one(monkeypatch, capsys):
    import qmacdo.cli as cli

    def fake(cfg):
        return {"suite": cfg.suite, "identity": "x", "config": {}}, [Check(cfg.suite, "i", "r", "1")]

    monkeypatch.setattr(cli, "run_suite", fake)
    assert main(["newton"]) == 1


def test_thread_cap(monkeypatch):
    from qmacdo.suites import worker_count

    monkeypatch.setenv("QMACDO_THREADS", "1")
    assert worker_count() == 1
