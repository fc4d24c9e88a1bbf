"""Command-line interface: exit codes, JSON reports, option handling."""

import json

import pytest

from geoalg.cli import main


def _json_lines(capsys):
    out = capsys.readouterr().out
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_verify_single_suite(capsys):
    assert main(["verify", "--suite", "goldman", "--n", "3"]) == 0
    reports = _json_lines(capsys)
    assert reports
    assert all(r["status"] == "pass" for r in reports)
    assert {"suite", "case", "status", "left", "right", "ms"} <= set(
        reports[0])


def test_verify_braid_text_format(capsys):
    assert main(["verify", "--suite", "braid", "--format", "text",
                 "--n", "3"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out


def test_verify_rejects_unknown_suite():
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "nope"])


def test_bracket_matches_published_example(capsys):
    assert main(["bracket", "--alg", "an", "--n", "4",
                 "G[1,3,0]", "G[2,4,0]"]) == 0
    rep = _json_lines(capsys)[0]
    assert rep["left"] == "2*G[1,2,0]*G[3,4,0] - 2*G[1,4,0]*G[2,3,0]"


def test_bracket_with_trace_oracle(capsys):
    assert main(["bracket", "--alg", "dn", "--n", "3", "--oracle", "ks",
                 "G[1,2,0]", "G[1,3,1]"]) == 0
    rep = _json_lines(capsys)[0]
    assert rep["status"] == "pass"
    assert rep["left"] == rep["right"]


def test_bracket_oracle_skips_composite_operands(capsys):
    assert main(["bracket", "--alg", "dn", "--n", "3", "--oracle", "ks",
                 "G[1,2,0] + 1", "G[1,3,1]"]) == 0
    rep = _json_lines(capsys)[0]
    assert rep["status"] == "skipped"


def test_braid_word_action(capsys):
    assert main(["braid", "--alg", "an", "--n", "3",
                 "--word", "b12 b23 b12^-1"]) == 0
    reports = _json_lines(capsys)
    assert len(reports) == 3


def test_braid_wrap_token(capsys):
    assert main(["braid", "--alg", "dn", "--n", "3", "--word", "bn1"]) == 0
    assert _json_lines(capsys)


def test_braid_rejects_non_adjacent():
    with pytest.raises(SystemExit) as exc:
        main(["braid", "--alg", "an", "--n", "4", "--word", "b13"])
    assert exc.value.code == 2


def test_centers_output(capsys):
    assert main(["centers", "--alg", "an", "--n", "4"]) == 0
    reports = _json_lines(capsys)
    assert sum(r["case"] != "meta" for r in reports) == 2


def test_reduce_streams(capsys):
    assert main(["reduce", "--dn", "--k", "2"]) == 0
    reports = _json_lines(capsys)
    assert len(reports) == 4


def test_geodesic_at_point(capsys):
    assert main(["geodesic", "--n", "3", "--i", "1", "--j", "2",
                 "--at", "s1=1,s2=1,s3=1"]) == 0
    rep = _json_lines(capsys)[0]
    assert rep["left"] == "3"


def test_stokes_special_point(capsys):
    assert main(["stokes", "--point", "a4star"]) == 0
    reports = _json_lines(capsys)
    assert len(reports) == 4
    assert "4" in reports[0]["left"]


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "geoalg.cfg"
    cfg.write_text("suite=goldman\nn=3\n")
    assert main(["--config", str(cfg), "verify"]) == 0
    reports = _json_lines(capsys)
    assert all(r["suite"] == "goldman" for r in reports)


def test_threaded_suite_order(capsys, monkeypatch):
    monkeypatch.setenv("GEOALG_THREADS", "2")
    assert main(["verify", "--suite", "braid", "--n", "3"]) == 0
    reports = _json_lines(capsys)
    assert reports == sorted(reports, key=lambda r: r["case"])


def test_invalid_subcommand_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
