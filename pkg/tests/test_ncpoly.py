from fractions import Fraction as F

import numpy as np

from radon_hgf.jordan import TruncPoly, theta
from radon_hgf.ncpoly import NCPolynomial, theta_symbolic, word_weight
from radon_hgf.rng import RandomStream

THETA3_EXPECTED = {
    (3,): F(1),
    (1, 2): F(-1, 2),
    (2, 1): F(-1, 2),
    (1, 1, 1): F(1, 3),
}


def test_theta1_is_first_generator():
    ts = theta_symbolic(3)
    assert ts.symbolic[0].terms == {(1,): F(1)}


def test_theta3_terms():
    ts = theta_symbolic(4)
    assert ts.symbolic[2].terms == THETA3_EXPECTED


def test_homogeneous_weights():
    ts = theta_symbolic(6)
    for k, poly in enumerate(ts.symbolic, start=1):
        assert poly.is_homogeneous(k)
        for w in poly.terms:
            assert word_weight(w) == k


def test_symbolic_matches_numeric():
    gen = RandomStream(11).generator()
    r, p = 2, 5
    mats = [gen.standard_normal((r, r)) + 1j * gen.standard_normal((r, r))
            for _ in range(p - 1)]
    numeric = theta(TruncPoly.from_list([np.eye(r)] + mats)).numeric
    symbolic = theta_symbolic(p).symbolic
    for k in range(p - 1):
        sym_val = symbolic[k].evaluate(mats)
        assert np.abs(sym_val - numeric[k]).max() < 1e-12


def test_render_text():
    ts = theta_symbolic(3)
    assert ts.symbolic[0].render() == "h1"
    assert ts.symbolic[1].render() == "-1/2 h1^2 + h2"


def test_render_latex():
    ts = theta_symbolic(3)
    out = ts.symbolic[1].render(latex=True)
    assert out == r"-\frac{1}{2} h_{1}^{2} + h_{2}"


def test_canonical_order_is_lexicographic():
    poly = NCPolynomial(2, {(2, 1): F(1), (1, 2): F(1), (1, 1, 1): F(1)})
    words = [w for w, _ in poly.sorted_terms()]
    assert words == [(1, 1, 1), (1, 2), (2, 1)]


def test_zero_coefficients_dropped():
    poly = NCPolynomial(2, {(1,): F(1)}) - NCPolynomial(2, {(1,): F(1)})
    assert poly.terms == {}
    assert poly.render() == "0"
