import csv
import io
import json
import math

import numpy as np
import pytest

from oscquad.cli import golden_minimize, main, scan
from oscquad.moments import moments
from oscquad.orthopoly import MonicPolynomial, orthogonality_residuals
from oscquad.quadrule import exactness_check, gauss_rule


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_moments_golden_at_zero(capsys):
    code, out, _ = run(capsys, "moments", "--omega", "0", "--kmax", "2")
    assert code == 0
    assert out == (
        "k,re,im,method\n"
        "0,2,0,series\n"
        "1,0,0,series\n"
        "2,0.66666666666666663,0,series\n"
    )


def test_moments_near_pi(capsys):
    code, out, _ = run(capsys, "moments", "--omega", "3.14159265358979", "--kmax", "0")
    assert code == 0
    _, row = rows(out)
    assert abs(complex(float(row[1]), float(row[2]))) <= 1e-14


def test_moments_bound(capsys):
    code, out, _ = run(capsys, "moments", "--omega", "1", "--kmax", "20")
    assert code == 0
    for k, re, im, _ in rows(out)[1:]:
        assert abs(complex(float(re), float(im))) <= 2 / (int(k) + 1)


def test_moments_json(capsys):
    code, out, _ = run(capsys, "moments", "--omega", "2", "--kmax", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    ref = moments(2.0, 3)
    for entry, v in zip(data["values"], ref.values):
        assert complex(entry["re"], entry["im"]) == v


def test_scan_format(capsys):
    code, out, _ = run(capsys, "scan", "--n", "2", "--omega-min", "0.1", "--omega-max", "0.2",
                       "--points", "10")
    assert code == 0
    table = rows(out)
    assert table[0] == ["n", "kind", "omega", "abs_delta", "rel_delta", "verdict"]
    omegas = [float(r[2]) for r in table[1:]]
    assert len(omegas) == 10
    assert all(a < b for a, b in zip(omegas, omegas[1:]))
    assert all(float(r[3]) > 0 for r in table[1:])


def test_scan_refine_finds_pi():
    res = scan(1, 3.0, 3.3, 1000, refine=True)
    assert len(res.minima) == 1
    w, d = res.minima[0]
    assert abs(w - math.pi) <= 1e-8
    assert d <= 1e-10
    # a refined minimum never exceeds its neighbouring grid values
    assert d <= min(r[1] for r in res.rows)


def test_golden_minimize_quadratic():
    x, fx = golden_minimize(lambda t: (t - 0.3) ** 2, 0.0, 1.0)
    assert abs(x - 0.3) <= 1e-10
    assert fx <= 1e-20


def test_scan_parallel_is_byte_identical(capsys):
    argv = ["scan", "--n", "1,3", "--omega-min", "1", "--omega-max", "7", "--points", "60",
            "--refine"]
    _, serial, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--jobs", "2")
    _, again, _ = run(capsys, *argv)
    assert serial == parallel == again


def test_scan_plot_writes_script(tmp_path, capsys):
    out = tmp_path / "fig.csv"
    code, _, _ = run(capsys, "scan", "--n", "2,4", "--omega-min", "0.1", "--omega-max", "5",
                     "--points", "20", "--out", str(out), "--plot")
    assert code == 0
    script = (tmp_path / "fig.gp").read_text()
    assert "fig.csv" in script and "n = 4" in script
    assert rows(out.read_text())[0][0] == "n"


def test_scan_plot_needs_out(capsys):
    code, _, err = run(capsys, "scan", "--n", "2", "--omega-min", "1", "--omega-max", "2",
                       "--points", "5", "--plot")
    assert code == 2 and "--plot" in err


def test_scan_unwritable_path(capsys):
    code, _, err = run(capsys, "scan", "--n", "2", "--omega-min", "1", "--omega-max", "2",
                       "--points", "5", "--out", "/nonexistent/dir/x.csv")
    assert code == 2 and "cannot write" in err


@pytest.mark.parametrize("argv", [
    ["scan", "--n", "2", "--omega-min", "2", "--omega-max", "1", "--points", "5"],
    ["scan", "--n", "2", "--omega-min", "1", "--omega-max", "2", "--points", "1"],
    ["moments", "--omega", "-1", "--kmax", "2"],
    ["certify", "--t", "abc", "--n", "2"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


@pytest.mark.parametrize("argv", [["poly", "--omega", "1", "--n", "0"], ["moments", "--omega", "1"]])
def test_argparse_errors_exit_two(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_certify_text(capsys):
    code, out, _ = run(capsys, "certify", "--t", "0/1", "--n", "2")
    assert code == 0
    assert out == "certified; Δ̂_2 = -4\n"


def test_certify_not_certified(capsys):
    code, out, _ = run(capsys, "certify", "--t", "0", "--n", "1", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"n": 1, "t": "0", "verdict": "not-certified", "coefficients": []}


def test_poly_json_round_trip(capsys):
    code, out, _ = run(capsys, "poly", "--omega", "1.5707963267948966", "--n", "1",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    p = MonicPolynomial.from_dict(data)
    assert p.coeffs[0] == pytest.approx(-0.6366197723675814j, rel=1e-15)
    assert orthogonality_residuals(p)[0] <= 1e-14


def test_poly_json_round_trip_higher_order(capsys):
    code, out, _ = run(capsys, "poly", "--omega", "2.5", "--n", "5", "--format", "json")
    assert code == 0
    p = MonicPolynomial.from_dict(json.loads(out))
    mu = moments(2.5, 9).values
    assert orthogonality_residuals(p, mu).max() <= 1e-9 * np.abs(mu).max()
    # the rule built from the same omega agrees with the in-process one
    assert exactness_check(gauss_rule(p.omega, 5)) <= 1e-9


def test_rule_degenerate_exit(capsys):
    code, _, err = run(capsys, "rule", "--omega", "3.141592653589793", "--n", "1")
    assert code == 3
    assert "degenerate" in err


def test_rule_csv(capsys):
    code, out, _ = run(capsys, "rule", "--omega", "0", "--n", "2")
    assert code == 0
    table = rows(out)
    assert len(table) == 3
    assert float(table[1][1]) == pytest.approx(-1 / math.sqrt(3))


def test_hankel_lists_orders(capsys):
    code, out, _ = run(capsys, "hankel", "--omega", "3.141592653589793", "--n", "1,2")
    assert code == 0
    table = rows(out)
    assert [r[6] for r in table[1:]] == ["degenerate", "exists"]


def test_integrate_check(capsys):
    code, out, _ = run(capsys, "integrate", "--omega", "10", "--n", "8", "--kind", "exponential",
                       "--check", "--format", "json")
    assert code == 0
    assert json.loads(out)["abs_error"] <= 1e-6


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "oscquad", "certify", "--t", "1", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "certified; Δ̂_2 = 4*X^2\n"
