import json
import subprocess
import sys

import pytest

from fibtools.cli import render_json, run


def ok(argv):
    status, out, err = run(argv)
    assert status == 0, err
    return out


def test_fib_n_text():
    assert ok(["fib", "n", "50", "--format", "text"]) == "12586269025\n"


def test_fib_methods_agree():
    for method in ("iterative", "fast", "binet"):
        assert ok(["fib", "n", "70", "--method", method]) == "190392490709135\n"


def test_binet_out_of_range_is_domain_error():
    status, out, err = run(["fib", "n", "71", "--method", "binet"])
    assert status == 1 and "70" in err and out == ""


def test_zeck_encode():
    assert ok(["zeck", "encode", "50"]) == "u4 + u7 + u9 = 3 + 13 + 34\n"
    assert ok(["zeck", "decode", "4", "7", "9"]) == "50\n"
    assert ok(["zeck", "code", "4"]) == "1011\n"
    assert ok(["zeck", "code", "--decode", "1011"]) == "4\n"


def test_box_json():
    out = ok(["ta", "box", "--start", "2000-01-17:3.799", "--end", "2000-02-23:2.346", "--format", "json"])
    data = json.loads(out)
    assert data["time_targets"]["T1"] == "2000-03-31"
    assert data["price_targets"]["P1"] == 2.689
    assert '"P1": 2.689' in out


@pytest.mark.parametrize(
    "argv",
    [
        ["ta", "box", "--start", "2000-01-17:3.799", "--end", "2000-02-23:2.346", "--format", "json"],
        ["ta", "retrace", "--start", "2000-01-17:3.799", "--end", "2000-02-23:2.346", "--format", "json"],
        ["ta", "zones", "--pivot", "2001-02-22", "--count", "8", "--format", "json"],
        ["ta", "alternation", "1.453:0.857", "1.664:0.663", "--format", "json"],
        ["fib", "table", "20", "--format", "json"],
        ["nt", "factor", "30", "50", "--format", "json"],
    ],
)
def test_json_roundtrip_and_determinism(argv):
    out = ok(argv)
    assert render_json(json.loads(out)) + "\n" == out
    assert ok(argv) == out


def test_plot_format_and_file(tmp_path):
    argv = ["ta", "box", "--start", "2000-01-17:3.799", "--end", "2000-02-23:2.346"]
    plot = ok(argv + ["--format", "plot"])
    assert plot.startswith("#fibtools-plot")
    target = tmp_path / "box.tsv"
    ok(argv + ["--plot", str(target)])
    assert target.read_text() == plot


def test_usage_errors():
    assert run(["nope"])[0] == 2
    assert run(["fib", "n", "abc"])[0] == 2
    assert run(["fib", "n", "5", "--format", "plot"])[0] == 2
    assert run(["ta", "box", "--start", "bad", "--end", "2000-02-23:2.346"])[0] == 2


def test_domain_errors():
    status, _, err = run(["nt", "theorem7", "17"])
    assert status == 1 and "compositeness" in err
    assert run(["zeck", "encode", "0"])[0] == 1
    assert run(["nt", "divides", "2", "10"])[0] == 1


def test_nt_commands():
    assert ok(["nt", "gcd", "16", "12"]) == "u4 = 3\n"
    assert ok(["nt", "euclid", "21", "13"]).splitlines()[-1] == "steps = 6, gcd = 1"
    assert ok(["nt", "factor", "19"]) == "19 : 4181 = 37 x 113\n"
    assert ok(["nt", "theorem6", "13"]) == "13 | u14 = 377 (p_plus_1)\n"
    assert ok(["nt", "theorem7", "37"]) == "73 | u37: true\n"
    assert ok(["nt", "primitive", "12"]) == "(none)\n"
    assert "29" in ok(["nt", "primitive", "14"]).split()
    assert ok(["nt", "divides", "4", "20"]) == "u4 | u20: true\n4 | 20: true\n"


def test_fib_misc_commands():
    assert ok(["fib", "sum", "8"]) == "54\n"
    assert ok(["fib", "identity", "cassini", "6"]) == "0\n"
    assert ok(["fib", "identity", "growth", "3"]) == "597\n"
    assert ok(["fib", "general", "--alpha", "1", "--beta", "3", "15"]).splitlines()[1] == "sum = 3568"
    assert ok(["fib", "tribonacci", "7"]) == "7\n"
    assert ok(["fib", "table", "20"]).splitlines()[8] == "10\t55\t1.617647"


def test_golden_commands():
    assert json.loads(ok(["golden", "constants", "--format", "json"]))["phi"] == pytest.approx(1.6180339887)
    assert ok(["golden", "section", "0", "1"]).startswith("0.618033988")
    assert "ratio 1.618033988" in ok(["golden", "rect", "1.618033988749895", "1", "--steps", "3"])
    spiral = json.loads(ok(["golden", "spiral", "--theta", "0", "--format", "json"]))
    assert spiral["radius"] == 1.0 and abs(spiral["tangent_angle_deg"] - 72.97) < 0.05
    assert "apex_angle_dm: 38°10'" in ok(["golden", "pyramid"])
    assert "half_base_ratio" in ok(["golden", "pyramid", "--keops"])
    assert run(["golden", "rect", "2", "1"])[0] == 1


def test_ta_commands(tmp_path):
    assert ok(["ta", "retrace", "--start", "2000-01-17:3.799", "--end", "2000-02-23:2.346"]).splitlines()[0] == "0.236\t2.689"
    assert ok(["ta", "targets", "--rule", "2", "--wave1-len", "1.0", "--wave2-base", "10.0"]) == "11.6180\n"
    assert ok(["ta", "zones", "--pivot", "2001-02-22", "--count", "3"]).split() == ["2001-02-23", "2001-02-24", "2001-02-25"]
    assert ok(["ta", "zones", "--pivot", "2001-02-22", "--count", "5", "--paper-list"]).split()[-1] == "2001-03-07"
    lines = ok(["ta", "alternation", "1.453:0.857", "0.663:1.664"]).splitlines()
    assert lines[0] == "0.857 / 1.453 = 0.590 (0.618)"
    assert ok(["ta", "zigzag", "246", "55", "97"]).startswith("0.618 * W = X + Y")
    csv_path = tmp_path / "px.csv"
    csv_path.write_text("date,close\n" + "\n".join(f"2020-01-{d:02d},{c}" for d, c in enumerate([5, 4, 3, 2, 3, 4, 5], 1)))
    assert ok(["ta", "pivots", "--csv", str(csv_path), "--k", "2"]) == "2020-01-04\t2\tbottom\n"
    assert ok(["ta", "pivots", "--csv", str(csv_path), "--format", "plot"]).startswith("#fibtools-plot\tv1\n[series]")
    assert run(["ta", "pivots", "--csv", str(tmp_path / "missing.csv")])[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fibtools", "fib", "n", "20"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "6765\n"
    proc = subprocess.run([sys.executable, "-m", "fibtools", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stderr
