import math

import numpy as np
import pytest

from oscquad.errors import ConvergenceError
from oscquad.integrands import IntegrandSpec
from oscquad.moments import moments
from oscquad.oracle import legendre_reference, oracle_integrate
from oscquad.orthopoly import MonicPolynomial, monic_op
from oscquad.quadrule import (
    CLUSTER_TOL,
    QuadratureRule,
    confluent_rule,
    detect_multiplicity,
    exactness_check,
    gauss_rule,
    integrate,
    polyroots,
    roots,
    simplicity_report,
)


def exp_reference(omega):
    z = 1 + 1j * omega
    return (np.exp(z) - np.exp(-z)) / z


def test_roots_legendre_two():
    r = roots(MonicPolynomial(0.0, np.array([-1 / 3, 0])))
    np.testing.assert_allclose(r, [-0.5773502691896258, 0.5773502691896258], rtol=1e-15)


def test_roots_degree_one():
    r = roots(MonicPolynomial(math.pi / 2, np.array([-2j / math.pi])))
    np.testing.assert_allclose(r, [0.6366197723675814j], rtol=1e-15)


def test_roots_sorted_and_accurate():
    want = np.array([-2.0, -1.0 + 1j, -1.0 + 2j, 0.5, 3.0])
    r = polyroots(np.poly(want)[::-1][:-1])
    assert np.all(np.diff(r.real) >= -1e-12)
    for x in want:
        assert np.min(np.abs(r - x)) <= 1e-12


def test_roots_nonconvergence_reports_residual(monkeypatch):
    import oscquad.quadrule as qr

    monkeypatch.setattr(qr, "MAX_ITER", 1)
    with pytest.raises(ConvergenceError) as info:
        qr.polyroots(np.array([1.0, 2.0, 3.0, 4.0, 5.0]))
    assert info.value.residual > 0


@pytest.mark.parametrize("omega", [0.3, 1.0, math.pi, 10.0, 50.0])
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_root_set_symmetry(omega, n):
    try:
        r = roots(monic_op(omega, n))
    except Exception:
        pytest.skip("p_n not certified")
    mirrored = -np.conj(r)
    for x in mirrored:
        assert np.min(np.abs(r - x)) <= 1e-10


def test_multiplicity_examples():
    nodes, mults = detect_multiplicity([0.1, 0.9], 1e-8)
    assert mults == (1, 1)
    nodes, mults = detect_multiplicity([0.5, 0.5 + 1e-12], 1e-8)
    assert mults == (2,) and nodes[0] == pytest.approx(0.5)
    _, r, _ = legendre_reference(6)
    assert detect_multiplicity(r, 1e-8)[1] == (1,) * 6
    with pytest.raises(ValueError):
        detect_multiplicity([0.0], 0.0)


def test_gauss_rule_legendre_limit():
    rule = gauss_rule(0.0, 2)
    np.testing.assert_allclose(rule.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], rtol=1e-15)
    np.testing.assert_allclose(rule.simple_weights(), [1, 1], rtol=1e-14)
    assert exactness_check(rule) <= 1e-14


def test_gauss_rule_one_point():
    rule = gauss_rule(math.pi / 2, 1)
    assert rule.nodes[0] == pytest.approx(2j / math.pi, rel=1e-15)
    assert rule.simple_weights()[0] == pytest.approx(4 / math.pi, rel=1e-15)


def test_gauss_rule_order_four():
    rule = gauss_rule(1.0, 4)
    assert rule.is_simple
    assert exactness_check(rule) <= 1e-9


def test_exactness_at_pi():
    assert exactness_check(gauss_rule(math.pi, 2)) <= 1e-10


def test_exactness_checker_detects_bad_weight():
    rule = gauss_rule(1.0, 3)
    w = [ws.copy() for ws in rule.weights]
    w[0][0] += 1e-3
    broken = QuadratureRule(rule.omega, rule.n, rule.nodes, rule.multiplicities, tuple(w))
    assert exactness_check(broken) >= 1e-4


@pytest.mark.parametrize("omega", [0.5, 1.0, 10.0])
@pytest.mark.parametrize("n", range(1, 7))
def test_interpolatory_implies_gaussian(omega, n):
    rule = gauss_rule(omega, n)
    mu = moments(omega, 2 * n - 1).values
    assert rule.unfitted_residual <= 1e-9
    assert abs(rule.simple_weights().sum() - mu[0]) <= 1e-12 * abs(mu[0])


def test_confluent_reduces_to_vandermonde():
    rule = gauss_rule(2.0, 3)
    again = confluent_rule(rule.nodes, (1, 1, 1), 2.0)
    np.testing.assert_allclose(again.simple_weights(), rule.simple_weights(), rtol=1e-14)


def test_confluent_double_node_at_origin():
    rule = confluent_rule([0.0], [2], 0.0)
    np.testing.assert_allclose(rule.weights[0], [2, 0], atol=1e-15)
    # fits constants and linears exactly
    f = IntegrandSpec.polynomial([3.0, -1.5])
    assert integrate(rule, f) == pytest.approx(6.0)


def test_confluent_forced_cluster_reports_residual(caplog):
    r = 1 / math.sqrt(3)
    nodes, mults = detect_multiplicity([-r, r], cluster_tol=2.0)
    assert mults == (2,)
    rule = confluent_rule(nodes, mults, 0.0)
    assert rule.unfitted_residual > 0.1
    assert exactness_check(rule) > 0.1
    assert "misses moments" in caplog.text


def test_confluent_singular_system():
    with pytest.raises(ConvergenceError):
        confluent_rule([0.3, 0.3], [1, 1], 1.0)


def test_confluent_uses_derivatives():
    # triple node at 0.2 at omega = 0.7: fits mu_0..mu_2 with f, f', f''
    rule = confluent_rule([0.2], [3], 0.7)
    mu = moments(0.7, 2).values
    for j in range(3):
        assert integrate(rule, IntegrandSpec.monomial(j)) == pytest.approx(mu[j], rel=1e-13)


def test_integrate_monomial():
    rule = gauss_rule(1.0, 4)
    assert abs(integrate(rule, IntegrandSpec.monomial(3)) - moments(1.0, 3)[3]) <= 1e-10


def test_integrate_exponential_order_six():
    ref = exp_reference(10.0)
    val = integrate(gauss_rule(10.0, 6), IntegrandSpec.exponential())
    assert abs(val - ref) <= 1e-6 * abs(ref)


def test_integrate_runge_improves_with_n():
    f = IntegrandSpec.runge(25.0)
    ref = oracle_integrate(f, 1.0)
    e2 = abs(integrate(gauss_rule(1.0, 2), f) - ref)
    e6 = abs(integrate(gauss_rule(1.0, 6), f) - ref)
    assert e6 < e2


@pytest.mark.parametrize("omega", [1.0, 10.0])
def test_exponential_convergence(omega):
    ref = exp_reference(omega)
    errs = [abs(integrate(gauss_rule(omega, n), IntegrandSpec.exponential()) - ref)
            for n in (2, 4, 6, 8)]
    for a, b in zip(errs, errs[1:]):
        assert b <= 10 * a


def test_simplicity_small_omega():
    _, r, _ = legendre_reference(4)
    assert abs(simplicity_report(1e-3, 4) - np.diff(r).min()) <= 1e-2


def test_simplicity_large_omega():
    assert simplicity_report(200.0, 4) > 10 * CLUSTER_TOL


def test_simplicity_order_two():
    assert simplicity_report(1.0, 2) > 0
    assert simplicity_report(1.0, 1) == math.inf
