import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from polyannulus.cli import main, read_poly, run, write_poly_json
from polyannulus.fixtures import EXAMPLE1, EXAMPLE2
from polyannulus.poly import make_poly


def _json_file(tmp_path, coeffs, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps({"coeffs": [[float(c.real), float(c.imag)] for c in map(complex, coeffs)]}))
    return str(path)


def _csv_file(tmp_path, coeffs, name="p.csv"):
    path = tmp_path / name
    lines = ["# ascending"] + [f"{complex(c).real!r},{complex(c).imag!r}" for c in coeffs]
    path.write_text("\n".join(lines) + "\n")
    return str(path)


@pytest.fixture
def ex1(tmp_path):
    return _json_file(tmp_path, EXAMPLE1.coeffs)


@pytest.fixture
def ex2(tmp_path):
    return _json_file(tmp_path, EXAMPLE2.coeffs, "ex2.json")


def test_json_round_trip(tmp_path):
    p = make_poly([0.1 + 0.3j, -1 / 3, 2e-300, 1e300j, 7])
    write_poly_json(p, tmp_path / "p.json")
    q = read_poly(tmp_path / "p.json")
    assert np.array_equal(p.coeffs, q.coeffs)


def test_csv_and_json_agree(tmp_path, ex2):
    c = _csv_file(tmp_path, EXAMPLE2.coeffs)
    for cmd in ("bound", "annulus", "spread"):
        a, ca, _ = run([cmd, "--poly", ex2, "--output", "json"])
        b, cb, _ = run([cmd, "--poly", c, "--output", "json"])
        assert ca == cb == 0 and a == b


def test_descending_order(tmp_path, ex1):
    d = _json_file(tmp_path, EXAMPLE1.coeffs[::-1], "desc.json")
    a, _, _ = run(["annulus", "--poly", ex1, "--k", "1"])
    b, _, _ = run(["annulus", "--poly", d, "--order", "desc", "--k", "1"])
    assert a == b


def test_bound_example_cells(ex2):
    doc, code, _ = run(["bound", "--poly", ex2, "--balance-iters", "0", "--output", "json"])
    assert code == 0
    cell = [r for r in doc["table"] if r["k"] == 64 and r["norm"] == "inf" and r["matrix"] == "C1"]
    assert cell[0]["value"] == pytest.approx(4.32, abs=5e-3)
    doc, _, _ = run(["bound", "--poly", ex2, "--balance-iters", "3", "--k", "1", "--output", "json"])
    cell = [r for r in doc["table"]
            if r["norm"] == "inf" and r["matrix"] == "C1" and r["balanced"]]
    assert cell[0]["value"] == pytest.approx(14.74, abs=5e-3)


def test_bound_trivial(tmp_path):
    f = _json_file(tmp_path, [-1, 0, 1])
    doc, code, _ = run(["bound", "--poly", f, "--k", "1", "--norms", "one,inf", "--output", "json"])
    assert code == 0 and all(r["value"] == 1 for r in doc["table"])


def test_annulus_svg(tmp_path, ex1):
    svg = tmp_path / "a.svg"
    doc, code, _ = run(["annulus", "--poly", ex1, "--k", "1", "--balance-iters", "0",
                        "--svg", str(svg), "--output", "json"])
    assert code == 0
    assert doc["annulus"]["r_hi"] == 7
    root = ET.parse(svg).getroot()
    ns = "{http://www.w3.org/2000/svg}"
    circles = root.findall(f"{ns}circle")
    assert root.get("width") == "800" and len(circles) == 2
    assert sorted(float(c.get("r")) for c in circles) == pytest.approx([0.4216, 7], abs=5e-4)
    assert float(root.get("viewBox").split()[2]) == pytest.approx(2 * 1.1 * 7)


def test_annulus_plot_roots(tmp_path, ex1):
    svg = tmp_path / "r.svg"
    doc, code, _ = run(["annulus", "--poly", ex1, "--k", "1", "--svg", str(svg),
                        "--plot-roots", "--output", "json"])
    assert code == 0 and len(doc["roots"]) == 4
    root = ET.parse(svg).getroot()
    assert len(root.findall("{http://www.w3.org/2000/svg}path")) == 4


def test_spread_doc(ex2):
    doc, code, _ = run(["spread", "--poly", ex2, "--k", "64", "--balance-iters", "0",
                        "--norms", "inf", "--output", "json"])
    s = doc["spreads"]
    assert code == 0 and s["asymptotic_flag"]
    assert s["distance_bracket"] == pytest.approx([3.34, 5.30], abs=5e-3)
    assert any("asymptotic" in w for w in doc["warnings"])


def test_roots_and_zero_deflation(tmp_path, ex1):
    doc, code, _ = run(["roots", "--poly", ex1, "--output", "json"])
    assert code == 0
    got = sorted(complex(r["re"], r["im"]).real for r in doc["roots"])
    assert got == pytest.approx([-2, 1, 1, 1], abs=1e-10)
    f = _json_file(tmp_path, [0, 0, -1, 0, 1], "z.json")
    doc, code, _ = run(["annulus", "--poly", f, "--k", "1", "--output", "json"])
    assert code == 0 and doc["zero_roots"] == 2 and doc["warnings"]
    assert doc["annulus"]["r_lo"] == doc["annulus"]["r_hi"] == 1


def test_output_formats(ex2):
    _, _, text = run(["bound", "--poly", ex2, "--k", "1", "--output", "csv"])
    assert text.splitlines()[0] == "matrix,k,norm,balanced,value"
    _, _, text = run(["bound", "--poly", ex2, "--k", "1", "--balance-iters", "0"])
    assert "261" in text and "82" in text


def test_bench_command():
    doc, code, _ = run(["bench", "--name", "lsr1", "--k", "1,100", "--output", "json"])
    assert code == 0
    bal = [r["value"] for r in doc["table"] if r["balanced"]]
    assert bal and all(v == pytest.approx(1e20, rel=5e-3) or v == pytest.approx(1e-40, rel=5e-3)
                       for v in bal)


def _exit(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    return code


def test_exit_codes(tmp_path, ex1, capsys):
    zero = _json_file(tmp_path, [0, 0, 0, 0], "zero.json")
    xn = _json_file(tmp_path, [0, 0, 0, 1], "xn.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    badcsv = tmp_path / "bad.csv"
    badcsv.write_text("# ascending\n1,2,3\n")
    stiff = _json_file(tmp_path, [1] * 30, "stiff.json")
    cases = [
        (["bound", "--poly", ex1, "--k", "1"], 0),
        (["bound", "--poly", str(tmp_path / "missing.json")], 2),
        (["bound", "--poly", str(bad)], 2),
        (["bound", "--poly", str(badcsv)], 2),
        (["bound", "--poly", zero], 2),
        (["bound", "--poly", ex1, "--k", "0"], 2),
        (["bound", "--poly", ex1, "--norms", "two"], 2),
        (["bound", "--poly", ex1, "--balance-iters", "-1"], 2),
        (["bound"], 2),
        (["frobnicate"], 2),
        (["bench", "--name", "wilkinson"], 2),
        (["bound", "--poly", xn], 3),
        (["annulus", "--poly", xn], 3),
        (["roots", "--poly", stiff, "--max-iters", "1"], 4),
    ]
    for argv, want in cases:
        assert _exit(argv, capsys) == want, argv
