import math
from fractions import Fraction

import pytest

from manetq.asymptotics import (
    Eta,
    Nu,
    asym_metric,
    asym_p_disc,
    eta_from_params,
    intensive_limit,
    nu_from_params,
)
from manetq.errors import InvalidParameterError, RegimeError
from manetq.exact import MetricKind as M, exact_metric, p_conn_pb


def test_poisson_examples():
    assert asym_p_disc(0, 0.0) == pytest.approx(math.exp(-1), rel=1e-15)
    assert asym_p_disc(0, 20.0) == pytest.approx(1 - math.exp(-20), rel=1e-12)
    assert sum(asym_p_disc(k, -1.0) for k in range(61)) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("eta", [-2, -1, 0, 1, 2])
def test_poisson_normalization(eta):
    total, k = 0.0, 0
    while True:
        term = asym_p_disc(k, eta)
        total += term
        if k > 3 and term < 1e-16:
            break
        k += 1
    assert total == pytest.approx(1, abs=1e-12)


def test_extremes_do_not_overflow():
    assert asym_p_disc(0, -40.0) == 0.0
    assert asym_p_disc(0, -1000.0) == 0.0
    assert asym_p_disc(5, 1e6) == 0.0
    assert asym_p_disc(0, 1e6) == 1.0
    # lam = e^6 ~ 403, so the mass sits near k = 403
    assert asym_p_disc(400, -6.0) == pytest.approx(
        math.exp(400 * 6 - math.lgamma(401) - math.exp(6)), rel=1e-10)
    assert asym_metric(M.REACHABILITY, Eta(-800.0)) == 0.0
    assert asym_metric(M.REACHABILITY, Eta(800.0)) == 1.0


def test_log_space_matches_direct():
    for k in (150, 169, 170):
        direct = math.exp(-2.0 * k) / math.factorial(k) * math.exp(-math.exp(-2.0))
        assert asym_p_disc(k, 2.0) == pytest.approx(direct, rel=1e-12)


def test_row_formulas():
    assert asym_metric(M.CONNECTEDNESS, Eta(1.0)) == pytest.approx(math.exp(-math.exp(-1)))
    assert asym_metric(M.COVERAGE, Nu(1.15129)) == pytest.approx(0.9, abs=1e-5)
    assert asym_metric(M.SEGMENTATION, Nu(2.0)) == pytest.approx(math.exp(-2))
    assert asym_metric(M.VULNERABILITY, Nu(1e-12)) < 1e-9
    assert asym_metric(M.DISCONNECTION, Eta(0.5), k=2) == pytest.approx(asym_p_disc(2, 0.5))
    x = 1.0232596890197405
    assert asym_metric(M.REACHABILITY, Eta(math.log(x))) == pytest.approx(0.9, abs=1e-3)


def test_reachability_monotone():
    grid = [-5 + 0.25 * i for i in range(41)]
    vals = [asym_metric(M.REACHABILITY, Eta(e)) for e in grid]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert asym_metric(M.REACHABILITY, Eta(40)) == pytest.approx(1, abs=1e-12)
    assert asym_metric(M.REACHABILITY, Eta(-40)) < 1e-15


@pytest.mark.parametrize("kind, regime", [
    (M.CONNECTEDNESS, Nu(1.0)),
    (M.REACHABILITY, Nu(1.0)),
    (M.DISCONNECTION, Nu(1.0)),
    (M.COVERAGE, Eta(1.0)),
    (M.SEGMENTATION, Eta(1.0)),
    (M.VULNERABILITY, Eta(1.0)),
    (M.COVEREDNESS, Eta(1.0)),
    (M.COVEREDNESS, Nu(1.0)),
])
def test_regime_mismatch(kind, regime):
    with pytest.raises(RegimeError):
        asym_metric(kind, regime)


def test_nu_must_be_positive():
    with pytest.raises(InvalidParameterError):
        Nu(0.0)
    with pytest.raises(RegimeError):
        intensive_limit(M.CONNECTEDNESS, 1.0)


def test_regime_values_from_params():
    assert eta_from_params((261, Fraction(3, 100))) == pytest.approx(7.83 - math.log(261))
    assert eta_from_params((261, Fraction(3, 100))) == pytest.approx(2.2655, abs=1e-4)
    assert eta_from_params((1, Fraction(7, 3))) == pytest.approx(7 / 3)
    assert nu_from_params((100, Fraction(1, 100))) == 1.0


def _eta_rho(n, eta):
    return Fraction(round((math.log(n) + eta) / n * 10**6), 10**6)


@pytest.mark.parametrize("eta", [-1, 0, 1, 2])
def test_connectedness_error_shrinks(eta):
    errs = [abs(float(p_conn_pb((n, _eta_rho(n, eta)))) - math.exp(-math.exp(-eta)))
            for n in (50, 200, 800)]
    assert errs[0] > errs[1] > errs[2]


@pytest.mark.parametrize("kind", [M.COVERAGE, M.SEGMENTATION, M.VULNERABILITY])
@pytest.mark.parametrize("nu", [0.5, 1, 2, 4])
def test_intensive_error_shrinks(kind, nu):
    errs = []
    for n in (20, 100, 500):
        exact = float(exact_metric(kind, (n, Fraction(nu).limit_denominator(10) / n)))
        errs.append(abs(exact - asym_metric(kind, Nu(nu))))
    assert errs[0] > errs[1] > errs[2]
