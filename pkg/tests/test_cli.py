"""Command-line interface: output formats, config parsing, exit codes."""

import os

import pytest

from relaydmt.cli import (
    CSV_HEADER,
    csv_series_names,
    main,
    parse_config,
    read_csv,
    write_csv,
)
from relaydmt.errors import ConfigurationError

SMALL = ["--trials", "300", "--eta-start-db", "0", "--eta-stop-db", "8", "--eta-step-db", "4"]


def _cfg(tmp_path, text, name="exp.cfg"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


FIXED_CFG = """\
# two-antenna relay next to the source
scheme = fixed_adaptive
k = 2
n = 4
relay m=2 mt=2 phi_db=20
r = 2
eta_start_db = 0
eta_stop_db = 8
eta_step_db = 4
trials = 300
seed = 1
"""


# ---------------------------------------------------------------------------
# analytic queries


def test_dmt_mimo_stdout(capsys):
    assert main(["dmt", "mimo", "2", "2"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["(0, 4)", "(1, 1)", "(2, 0)"]


def test_dmt_stc_stdout(capsys):
    assert main(["dmt", "stc", "2", "2", "4"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "(0.5, 11)" in out and "(1, 6)" in out


def test_dmt_direct_hd_stdout(capsys):
    assert main(["dmt", "direct_hd", "1", "1"]) == 0
    assert capsys.readouterr().out.splitlines() == ["(0, 1)", "(0.5, 0)"]


def test_dmt_wrong_arity(capsys):
    assert main(["dmt", "mimo", "2", "2", "4"]) == 2
    assert "takes 2 antenna counts" in capsys.readouterr().err


def test_dmt_out_csv(tmp_path, capsys):
    out = str(tmp_path / "curve.csv")
    assert main(["dmt", "mimo", "2", "2", "--out", out]) == 0
    lines = open(out, encoding="utf-8").read().splitlines()
    assert lines[0].startswith("# relaydmt v")
    assert "series,r,d" in lines
    assert "mimo_2x2,0,4" in lines


def test_effectiveness_stdout(capsys):
    assert main(["effectiveness", "fixed", "2", "2", "4", "2"]) == 0
    assert capsys.readouterr().out.strip() == (
        "omega=1 effective=yes max_gain=2 max_effective_mt=2"
    )
    assert main(["effectiveness", "stc", "1", "2", "2", "2"]) == 0
    assert capsys.readouterr().out.strip() == (
        "omega=0.5 effective=no max_gain=1.5 max_effective_mt=1"
    )
    assert main(["effectiveness", "fixed", "2", "1", "4", "1"]) == 0
    assert capsys.readouterr().out.strip() == (
        "omega=0.5 effective=no max_gain=1 max_effective_mt=0"
    )
    assert main(["effectiveness", "dblast", "1", "2", "1"]) == 0
    assert capsys.readouterr().out.strip() == (
        "omega=1 effective=yes max_gain=2 max_effective_mt=1"
    )


def test_effectiveness_wrong_arity(capsys):
    assert main(["effectiveness", "fixed", "2", "2"]) == 2
    assert main(["effectiveness", "dblast", "2"]) == 2


def test_unknown_figure_id_is_usage_error(capsys):
    assert main(["figure", "9"]) == 2


# ---------------------------------------------------------------------------
# figure runs


def test_figure_csv_series(tmp_path, capsys):
    assert main(["figure", "4", "--out", str(tmp_path)] + SMALL) == 0
    path = capsys.readouterr().out.strip()
    assert path == str(tmp_path / "figure4.csv")
    parsed = read_csv(path)
    assert set(csv_series_names(parsed)) == {
        "direct",
        "composite",
        "adaptive_phi20db",
        "bound_phi20db",
        "adaptive_phi30db",
        "bound_phi30db",
    }
    assert parsed.meta[0].startswith("relaydmt v")
    assert "figure=4" in parsed.meta
    assert any(line.startswith("series adaptive_phi20db:") for line in parsed.meta)
    # 6 series x 3 grid points
    assert len(parsed.rows) == 18


def test_figure_reruns_are_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["figure", "7", "--out", str(a)] + SMALL) == 0
    assert main(["figure", "7", "--out", str(b)] + SMALL) == 0
    assert (a / "figure7.csv").read_bytes() == (b / "figure7.csv").read_bytes()


def test_figure_bytes_ignore_worker_count(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["figure", "6", "--out", str(a), "--workers", "1"] + SMALL) == 0
    assert main(["figure", "6", "--out", str(b), "--workers", "3"] + SMALL) == 0
    assert (a / "figure6.csv").read_bytes() == (b / "figure6.csv").read_bytes()


def test_figure_seed_changes_output(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["figure", "3", "--out", str(a), "--seed", "0"] + SMALL) == 0
    assert main(["figure", "3", "--out", str(b), "--seed", "5"] + SMALL) == 0
    assert (a / "figure3.csv").read_bytes() != (b / "figure3.csv").read_bytes()


def test_figure_honors_output_env_var(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("RELAYDMT_OUT", str(tmp_path / "env"))
    assert main(["figure", "2"] + SMALL) == 0
    path = capsys.readouterr().out.strip()
    assert path == str(tmp_path / "env" / "figure2.csv")
    assert os.path.exists(path)


def test_figure_grid_must_be_regular(tmp_path, capsys):
    args = ["figure", "2", "--out", str(tmp_path), "--trials", "10"]
    args += ["--eta-start-db", "0", "--eta-stop-db", "7", "--eta-step-db", "2"]
    assert main(args) == 3
    assert "whole number" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# config sweeps


def test_sweep_writes_resolved_metadata(tmp_path, capsys):
    cfg = _cfg(tmp_path, FIXED_CFG)
    out = str(tmp_path / "fixed.csv")
    assert main(["sweep", cfg, "--out", out]) == 0
    assert capsys.readouterr().out.strip() == out
    parsed = read_csv(out)
    assert "scheme=fixed_adaptive" in parsed.meta
    assert "relay m=2 mt=2 mr=2 phi_db=20" in parsed.meta
    assert "g=8" in parsed.meta  # default resolved to k * n
    assert "trials=300" in parsed.meta
    assert set(csv_series_names(parsed)) == {
        "adaptive",
        "p_c",
        "direct",
        "composite",
        "p_nu",
        "bound",
    }


def test_sweep_trials_and_seed_overrides(tmp_path):
    cfg = _cfg(tmp_path, FIXED_CFG)
    out1, out2 = str(tmp_path / "s1.csv"), str(tmp_path / "s2.csv")
    assert main(["sweep", cfg, "--out", out1, "--trials", "200", "--seed", "7"]) == 0
    assert main(["sweep", cfg, "--out", out2, "--trials", "200", "--seed", "7"]) == 0
    assert open(out1, "rb").read() == open(out2, "rb").read()
    parsed = read_csv(out1)
    assert "trials=200" in parsed.meta
    assert "seed=7" in parsed.meta


def test_sweep_direct_only_config(tmp_path):
    text = "scheme=direct\nk=2\nn=2\ntrials=200\neta_start_db=0\neta_stop_db=4\neta_step_db=4\n"
    out = str(tmp_path / "d.csv")
    assert main(["sweep", _cfg(tmp_path, text), "--out", out]) == 0
    assert csv_series_names(read_csv(out)) == ["direct"]


def test_sweep_pci_config(tmp_path):
    text = (
        "scheme=pci\nk=2\nn=4\nrelay m=3 mt=1 phi_db=20\nrelay m=3 mt=1 phi_db=20\n"
        "trials=200\neta_start_db=0\neta_stop_db=4\neta_step_db=4\n"
    )
    out = str(tmp_path / "p.csv")
    assert main(["sweep", _cfg(tmp_path, text), "--out", out]) == 0
    assert set(csv_series_names(read_csv(out))) == {
        "p_c_1",
        "p_c_2",
        "p_c_empty_1",
        "p_c_empty_2",
    }


def test_sweep_unknown_relay_key_suggests_fix(tmp_path, capsys):
    text = "scheme=fixed_adaptive\nk=2\nn=4\nrelay m=2 phi=20\n"
    assert main(["sweep", _cfg(tmp_path, text)]) == 3
    err = capsys.readouterr().err
    assert "unknown key 'phi'" in err and "did you mean 'phi_db'?" in err


def test_sweep_missing_config_file(tmp_path, capsys):
    assert main(["sweep", str(tmp_path / "nope.cfg")]) == 3
    assert "cannot read config" in capsys.readouterr().err


def test_sweep_cyclic_needs_sets(tmp_path, capsys):
    text = "scheme=cyclic_adaptive\nk=2\nn=4\nrelay m=4 mt=2 phi_db=20\ntrials=10\n"
    assert main(["sweep", _cfg(tmp_path, text)]) == 3
    assert "needs cyclic_sets" in capsys.readouterr().err


def test_sweep_pci_rejects_cyclic_sets(tmp_path, capsys):
    text = "scheme=pci\nk=2\nn=4\nrelay m=2\ncyclic_sets=2\ntrials=10\n"
    assert main(["sweep", _cfg(tmp_path, text)]) == 3
    assert "does not apply" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# config parsing


def test_parse_config_defaults():
    cfg = parse_config("scheme=direct\nk=2\nn=4\n")
    assert cfg.multiplexing_gain == 1.0
    assert cfg.array_gain == 8.0
    assert (cfg.eta_start_db, cfg.eta_stop_db, cfg.eta_step_db) == (-10.0, 40.0, 2.0)
    assert cfg.trials == 100_000
    assert cfg.seed == 0
    assert cfg.out is None


def test_parse_config_relay_distance_form():
    cfg = parse_config("scheme=fixed_adaptive\nk=2\nn=4\nrelay m=2 distance=0.1 gamma=4\n")
    assert cfg.relays[0].phi_db == pytest.approx(40.0)


def test_parse_config_rejects_conflicting_relay_gain():
    base = "scheme=fixed_adaptive\nk=2\nn=4\n"
    with pytest.raises(ConfigurationError, match="not both"):
        parse_config(base + "relay m=2 phi_db=20 distance=0.1 gamma=4\n")
    with pytest.raises(ConfigurationError, match="go together"):
        parse_config(base + "relay m=2 distance=0.1\n")
    with pytest.raises(ConfigurationError, match="needs m="):
        parse_config(base + "relay mt=2\n")


def test_parse_config_rejects_duplicates_and_unknowns():
    with pytest.raises(ConfigurationError, match="duplicate key 'k'"):
        parse_config("scheme=direct\nk=2\nk=3\nn=4\n")
    with pytest.raises(ConfigurationError, match=":2: unknown key 'etc'"):
        parse_config("scheme=direct\netc=1\n", name="f.cfg")
    with pytest.raises(ConfigurationError, match="missing required key 'n'"):
        parse_config("scheme=direct\nk=2\n")
    with pytest.raises(ConfigurationError, match="unknown scheme 'warp'"):
        parse_config("scheme=warp\nk=2\nn=4\n")
    with pytest.raises(ConfigurationError, match="needs a int"):
        parse_config("scheme=direct\nk=2\nn=4\ntrials=many\n")
    with pytest.raises(ConfigurationError, match="expected key=value"):
        parse_config("scheme=direct\nk=2\nn=4\nbare\n")


# ---------------------------------------------------------------------------
# CSV round trips


def test_csv_round_trip_is_byte_identical(tmp_path):
    path = str(tmp_path / "r.csv")
    rows = [("s", -10.0, 1.0 / 3.0, 0.1234567890123456, 1.0)]
    write_csv(path, ["relaydmt v0", "note line"], rows)
    first = open(path, "rb").read()
    parsed = read_csv(path)
    assert parsed.rows[0][2] == 1.0 / 3.0  # 17 digits round-trip exactly
    write_csv(path, list(parsed.meta), parsed.rows)
    assert open(path, "rb").read() == first


def test_csv_series_names_keep_first_seen_order(tmp_path):
    path = str(tmp_path / "o.csv")
    write_csv(path, [], [("b", 0, 0, 0, 0), ("a", 0, 0, 0, 0), ("b", 2, 0, 0, 0)])
    assert csv_series_names(read_csv(path)) == ["b", "a"]


def test_read_csv_error_positions(tmp_path):
    bad_header = tmp_path / "h.csv"
    bad_header.write_text("series,eta\n", encoding="utf-8")
    with pytest.raises(ConfigurationError, match="h.csv:1: expected header"):
        read_csv(str(bad_header))

    late_comment = tmp_path / "c.csv"
    late_comment.write_text(CSV_HEADER + "\ns,0,0,0,0\n# oops\n", encoding="utf-8")
    with pytest.raises(ConfigurationError, match="c.csv:3: comment after data"):
        read_csv(str(late_comment))

    short_row = tmp_path / "s.csv"
    short_row.write_text(CSV_HEADER + "\ns,0,0\n", encoding="utf-8")
    with pytest.raises(ConfigurationError, match="expected 5 fields, got 3"):
        read_csv(str(short_row))

    bad_float = tmp_path / "f.csv"
    bad_float.write_text(CSV_HEADER + "\ns,zero,0,0,0\n", encoding="utf-8")
    with pytest.raises(ConfigurationError, match="f.csv:2"):
        read_csv(str(bad_float))

    empty = tmp_path / "e.csv"
    empty.write_text("", encoding="utf-8")
    with pytest.raises(ConfigurationError, match="missing header"):
        read_csv(str(empty))
