"""End-to-end runs of the command-line driver."""

import subprocess
import sys

import pytest

from cretan.cli import main
from cretan.files import load_matrix
from cretan.scalar import Scalar


def test_construct_basic_stdout(capsys):
    assert main(["construct", "--order", "9", "--method", "basic"]) == 0
    out = capsys.readouterr().out
    assert "omega 81/49" in out
    assert out.startswith("cretan-matrix 1")


def test_construct_auto_writes_file(tmp_path, capsys):
    target = tmp_path / "m45.cm"
    code = main(["construct", "--order", "45", "--out", str(target)])
    assert code == 0
    m = load_matrix(target)
    assert m.omega == Scalar(81, 0, 0, 4)


def test_construct_sbibd_orders(capsys):
    assert main(["construct", "--order", "13", "--method", "sbibd"]) == 0
    assert "sqrt(3)" in capsys.readouterr().out
    assert main(["construct", "--order", "11", "--method", "sbibd"]) == 0
    out = capsys.readouterr().out
    assert "omega (42-15*sqrt(3))/2" in out


def test_construct_regular_hadamard_exit_codes(capsys):
    assert main(["construct", "--order", "17",
                 "--method", "regular-hadamard"]) == 0
    capsys.readouterr()
    assert main(["construct", "--order", "37",
                 "--method", "regular-hadamard"]) == 0
    capsys.readouterr()
    # fixture for m=5 is not shipped
    assert main(["construct", "--order", "101",
                 "--method", "regular-hadamard"]) == 3
    err = capsys.readouterr().err
    assert "fixture" in err
    assert main(["construct", "--order", "15",
                 "--method", "regular-hadamard"]) == 2


def test_construct_bordered(capsys):
    assert main(["construct", "--order", "8", "--method", "bordered"]) == 0
    out = capsys.readouterr().out
    assert "mode float" in out


def test_construct_kronecker(capsys):
    assert main(["construct", "--order", "15",
                 "--method", "kronecker"]) == 0
    assert "omega 25/4" in capsys.readouterr().out
    assert main(["construct", "--order", "11",
                 "--method", "kronecker"]) == 2


def test_construct_direct_sum(capsys):
    assert main(["construct", "--order", "6",
                 "--method", "direct-sum"]) == 0
    out = capsys.readouterr().out
    assert "omega 9/4" in out and "order 6" in out


def test_construct_conference(capsys):
    assert main(["construct", "--order", "6",
                 "--method", "conference"]) == 0
    assert "mode complex" in capsys.readouterr().out
    assert main(["construct", "--order", "7",
                 "--method", "conference"]) == 2


def test_construct_gh(capsys):
    assert main(["construct", "--order", "9", "--method", "gh"]) == 0
    out = capsys.readouterr().out
    assert "mode group" in out and "kind GH" in out
    assert main(["construct", "--order", "6", "--method", "gh"]) == 0
    capsys.readouterr()
    assert main(["construct", "--order", "10", "--method", "gh"]) == 2


def test_construct_auto_small_orders(capsys):
    assert main(["construct", "--order", "1"]) == 0
    capsys.readouterr()
    assert main(["construct", "--order", "4"]) == 0
    capsys.readouterr()
    assert main(["construct", "--order", "2"]) == 2


def test_render_outputs(tmp_path, capsys):
    svg = tmp_path / "m.svg"
    pgm = tmp_path / "m.pgm"
    assert main(["construct", "--order", "13", "--render", str(svg)]) == 0
    assert svg.read_text().startswith("<svg")
    assert main(["construct", "--order", "13", "--render", str(pgm)]) == 0
    assert pgm.read_text().startswith("P2")
    assert main(["construct", "--order", "13",
                 "--render", str(tmp_path / "m.png")]) == 2


def test_verify_pipeline(tmp_path, capsys):
    f = tmp_path / "ok.cm"
    assert main(["construct", "--order", "9", "--out", str(f)]) == 0
    capsys.readouterr()
    assert main(["verify", str(f)]) == 0
    assert "pass" in capsys.readouterr().out


def test_verify_tampered_file(tmp_path, capsys):
    f = tmp_path / "bad.cm"
    main(["construct", "--order", "9", "--method", "basic",
          "--out", str(f)])
    capsys.readouterr()
    text = f.read_text()
    f.write_text(text.replace("-2/7", "0", 1))
    assert main(["verify", str(f)]) == 1
    out = capsys.readouterr().out
    assert "fail" in out


def test_verify_strict_vs_relaxed(tmp_path, capsys):
    f = tmp_path / "border5.cm"
    main(["construct", "--order", "5", "--method", "regular-hadamard",
          "--out", str(f)])
    capsys.readouterr()
    assert main(["verify", str(f)]) == 0
    assert main(["verify", str(f), "--strict"]) == 1


def test_verify_usage_errors(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "missing.cm")]) == 2
    junk = tmp_path / "junk.cm"
    junk.write_text("not a matrix\n")
    assert main(["verify", str(junk)]) == 2
    err = capsys.readouterr().err
    assert "parse" in err


def test_verify_complex_and_group_files(tmp_path, capsys):
    cf = tmp_path / "conf.cm"
    main(["construct", "--order", "6", "--method", "conference",
          "--out", str(cf)])
    gf = tmp_path / "gh.cm"
    main(["construct", "--order", "6", "--method", "gh", "--out", str(gf)])
    capsys.readouterr()
    assert main(["verify", str(cf)]) == 0
    assert main(["verify", str(gf)]) == 0
    text = gf.read_text().splitlines()
    text[-1] = text[-1].replace("0", "1", 1)
    gf.write_text("\n".join(text) + "\n")
    assert main(["verify", str(gf)]) == 1


def test_catalog_text_and_diff(capsys):
    assert main(["catalog", "--max", "21", "--diff"]) == 0
    out = capsys.readouterr().out
    assert "order  best-method" in out
    assert "conflicts: 0" in out


def test_catalog_structured(capsys):
    import json
    assert main(["catalog", "--max", "15", "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["v_max"] == 15
    assert [e["order"] for e in doc["entries"]] == [3, 5, 7, 9, 11, 13, 15]


def test_bounds_output(capsys):
    assert main(["bounds", "9"]) == 0
    out = capsys.readouterr().out
    assert "19683" in out
    assert "16888.2" in out
    assert main(["bounds", "0"]) == 2


def test_designs_list_and_make(capsys):
    assert main(["designs", "list"]) == 0
    out = capsys.readouterr().out
    assert "(45, 12, 3)" in out and "fixture" in out
    assert main(["designs", "make", "--family", "qr",
                 "--params", "7"]) == 0
    out = capsys.readouterr().out
    assert "params (7, 3, 1)" in out
    assert main(["designs", "make", "--family", "singer",
                 "--params", "2", "3"]) == 0
    assert "params (13, 4, 1)" in capsys.readouterr().out


def test_designs_census_failure(capsys):
    assert main(["designs", "make", "--family", "biquadratic",
                 "--params", "13"]) == 1
    assert "census" in capsys.readouterr().err


def test_designs_usage(capsys):
    assert main(["designs", "make"]) == 2
    assert main(["designs", "make", "--family", "qr", "--params",
                 "5", "6"]) == 2


def test_usage_exit_codes(capsys):
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["--help"]) == 0


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cretan.cli", "bounds", "10"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "73728" in proc.stdout
