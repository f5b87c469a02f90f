import cmath
import math

import numpy as np
import pytest
import scipy.special as sp

from radon_hgf.errors import PoleHit, PoleInC, SlowConvergence
from radon_hgf.oracles import (
    SeriesConfig,
    beta,
    beta_r_closed,
    gamma,
    gamma_r_closed,
    gauss_2f1,
    lauricella_fd,
)
from radon_hgf.rng import RandomStream


def test_gamma_integers_and_half():
    assert abs(gamma(5) - 24.0) < 1e-12
    assert abs(gamma(0.5) - math.sqrt(math.pi)) < 1e-13


def test_gamma_reflection_identity():
    gen = RandomStream(61).generator()
    for _ in range(10):
        z = complex(0.2 + 2.4 * gen.random(), 2.0 * gen.standard_normal())
        lhs = gamma(z) * gamma(1.0 - z)
        rhs = cmath.pi / cmath.sin(cmath.pi * z)
        assert abs(lhs - rhs) < 1e-12 * abs(rhs)


def test_gamma_pole():
    with pytest.raises(PoleHit):
        gamma(-3)


def test_2f1_at_origin():
    assert gauss_2f1(0.8, 1.1, 2.2, 0.0) == pytest.approx(1.0)


def test_2f1_log_identity():
    # 2F1(1,1,2;x) = -log(1-x)/x
    val = gauss_2f1(1.0, 1.0, 2.0, 0.5)
    assert abs(val - 2.0 * math.log(2.0)) < 1e-13


def test_2f1_arcsin_identity():
    # arcsin(x) = x 2F1(1/2, 1/2, 3/2; x^2)
    x = math.sqrt(0.3)
    val = gauss_2f1(0.5, 0.5, 1.5, 0.3)
    assert abs(x * val - math.asin(x)) < 1e-13


def test_2f1_matches_scipy():
    val = gauss_2f1(0.7, 1.3, 2.1, -0.4)
    assert abs(val - sp.hyp2f1(0.7, 1.3, 2.1, -0.4)) < 1e-12


def test_2f1_pole_in_c():
    with pytest.raises(PoleInC):
        gauss_2f1(1.0, 1.0, -2.0, 0.3)


def test_2f1_truncation_guard():
    with pytest.raises(SlowConvergence):
        gauss_2f1(1.0, 1.0, 2.0, 0.95)


def test_lauricella_at_origin():
    assert lauricella_fd(0.8, (0.5, 0.7), 2.0, (0.0, 0.0)) == pytest.approx(1.0)


def test_lauricella_single_variable_is_2f1():
    val = lauricella_fd(0.9, (1.2,), 2.3, (0.4,))
    ref = gauss_2f1(0.9, 1.2, 2.3, 0.4)
    assert abs(val - ref) < 1e-12


def _fd_two_variable_quadrature(a, b1, b2, c, x1, x2, n=80):
    # double-integral representation over the simplex, with v = (1-u) t:
    # the u weight is u^{b1-1} (1-u)^{c-b1-1}, the t weight is
    # t^{b2-1} (1-t)^{c-b1-b2-1}, and the smooth factor is
    # (1 - u x1 - (1-u) t x2)^{-a}.  Built directly on scipy rules,
    # independent of the package's integrators.
    xu, wu = sp.roots_jacobi(n, c - b1 - 1, b1 - 1)
    u = 0.5 * (xu + 1.0)
    wu = wu * 0.5 ** (c - 1.0)
    xt, wt = sp.roots_jacobi(n, c - b1 - b2 - 1, b2 - 1)
    t = 0.5 * (xt + 1.0)
    wt = wt * 0.5 ** (c - b1 - 1.0)
    acc = 0.0
    for ui, wui in zip(u, wu):
        integrand = (1.0 - ui * x1 - (1.0 - ui) * t * x2) ** (-a)
        acc += wui * np.sum(wt * integrand)
    pref = float(sp.gamma(c) / (sp.gamma(b1) * sp.gamma(b2) * sp.gamma(c - b1 - b2)))
    return pref * acc


def test_lauricella_two_variables_vs_quadrature():
    a, b1, b2, c = 0.8, 0.7, 1.1, 3.0
    x1, x2 = 0.2, 0.1
    val = lauricella_fd(a, (b1, b2), c, (x1, x2))
    ref = _fd_two_variable_quadrature(a, b1, b2, c, x1, x2)
    assert abs(val - ref) < 1e-8 * abs(ref)
    # frozen value computed from the quadrature oracle above (n = 80 and
    # n = 120 agree to 6e-15)
    assert abs(val - 1.0734987847633826) < 1e-12


def test_lauricella_tail_stability():
    a, bs, c, xs = 0.8, (0.7, 1.1), 2.3, (0.2, 0.1)
    v1 = lauricella_fd(a, bs, c, xs, SeriesConfig())
    v2 = lauricella_fd(a, bs, c, xs, SeriesConfig(max_terms=4 * 10**4))
    assert abs(v1 - v2) < 1e-13


def test_2f1_tail_stability():
    v1 = gauss_2f1(0.7, 1.3, 2.1, 0.5, SeriesConfig())
    v2 = gauss_2f1(0.7, 1.3, 2.1, 0.5, SeriesConfig(max_terms=4 * 10**4))
    assert abs(v1 - v2) < 1e-14


def test_gamma_r_closed_examples():
    assert abs(gamma_r_closed(1, 2.5) - gamma(2.5)) < 1e-13
    assert abs(gamma_r_closed(2, 3.0) - 2.0 * math.pi) < 1e-12


def test_beta_r_closed_examples():
    assert abs(beta_r_closed(1, 1.5, 2.0) - beta(1.5, 2.0)) < 1e-13
    ref = gamma_r_closed(2, 2.0) ** 2 / gamma_r_closed(2, 4.0)
    assert abs(beta_r_closed(2, 2.0, 2.0) - ref) < 1e-13
