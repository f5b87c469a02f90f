import numpy as np
import pytest

from radon_hgf.characters import PartitionWeight
from radon_hgf.errors import OnBranchLocus, OutOfDomain, UnpinnedAlpha, UnsupportedPartition
from radon_hgf.grassmann import ChartPoint, CoordMatrix
from radon_hgf.integrands import (
    IntegrandSpec,
    NamedFamily,
    evaluate_frame,
    evaluate_integrand,
    family_of_normal_form,
    named_integrand,
    named_integrand_batch,
)
from radon_hgf.linalg import haar_unitary_batch
from radon_hgf.normal_form import pattern
from radon_hgf.rng import RandomStream


def _herm(r, lo, hi, stream):
    lam = lo + (hi - lo) * stream.generator().random(r)
    v = haar_unitary_batch(r, 1, stream.jump(5))[0]
    return (v * lam) @ v.conj().T


def _spec(lam, r, alpha, xs=()):
    pw = PartitionWeight.from_flat(lam, alpha, 2 * r, r, strict=False)
    z = CoordMatrix(lam, r, pattern(lam, r, xs))
    return IntegrandSpec(pw, z)


def test_gamma_type_integrand():
    # kummer-free block with weight -1 on the exponential part gives
    # exp(-Tr u) (det u)^{a3}
    a3 = 0.7
    spec = _spec((2, 1), 2, (-2 * 2 - a3, -1.0, a3))
    u = _herm(2, 0.4, 1.6, RandomStream(71))
    val = evaluate_integrand(spec, ChartPoint(u))
    ref = np.exp(-np.trace(u)) * np.linalg.det(u) ** a3
    assert abs(val - ref) < 1e-13 * abs(ref)


def test_gaussian_type_integrand():
    spec = _spec((3,), 2, (-4.0, 0.0, 1.0))
    u = _herm(2, -1.0, 1.0, RandomStream(72))
    val = evaluate_integrand(spec, ChartPoint(u))
    ref = np.exp(-0.5 * np.trace(u @ u))
    assert abs(val - ref) < 1e-13 * abs(ref)


def test_scalar_gauss_closed_form():
    a, b, c = 0.9, 1.2, 2.4
    x = 0.3
    alpha = (b - c, a - 1, c - a - 1, -b)
    spec = _spec((1, 1, 1, 1), 1, alpha, (np.array([[x]]),))
    u = 0.2
    val = evaluate_integrand(spec, ChartPoint(np.array([[u]])))
    ref = u ** (a - 1) * (1 - u) ** (c - a - 1) * (1 - u * x) ** (-b)
    assert abs(val - ref) < 1e-14 * abs(ref)


def test_factorization_recombines():
    spec = _spec((2, 1), 2, (-2 * 2 - 0.7, -1.0, 0.7))
    u = _herm(2, 0.4, 1.6, RandomStream(73))
    f, g = spec.parts(ChartPoint(u))
    val = evaluate_integrand(spec, ChartPoint(u))
    assert abs(f * np.exp(g) - val) <= 1e-13 * abs(val)


def test_branch_locus_raises():
    spec = _spec((1, 1, 1), 1, (-1.3, -0.4, -0.3))
    with pytest.raises(OnBranchLocus):
        evaluate_integrand(spec, ChartPoint(np.array([[0.0]])))


def test_frame_homogeneity():
    # scaling the frame by g multiplies the value by (det g)^{-m}
    gen = RandomStream(74).generator()
    spec = _spec((2, 1), 2, (-2 * 2 - 0.7, -1.0, 0.7))
    u = _herm(2, 0.4, 1.6, RandomStream(75))
    t = np.concatenate([np.eye(2), u], axis=1)
    g = np.eye(2) + 0.1 * gen.standard_normal((2, 2))
    while np.linalg.det(g).real <= 0:
        g = np.eye(2) + 0.1 * gen.standard_normal((2, 2))
    v_base = evaluate_frame(spec, t)
    v_scaled = evaluate_frame(spec, g @ t)
    ref = np.linalg.det(g) ** (-4.0) * v_base
    assert abs(v_scaled - ref) < 1e-10 * abs(ref)


def test_named_gauss_at_zero_argument():
    fam = NamedFamily("gauss", {"a": 1.4, "b": 0.9, "c": 3.0}, X=np.zeros((2, 2)))
    u = _herm(2, 0.1, 0.9, RandomStream(76))
    val = named_integrand(fam, u)
    ref = (
        np.linalg.det(u) ** (1.4 - 2)
        * np.linalg.det(np.eye(2) - u) ** (3.0 - 1.4 - 2)
    )
    assert abs(val - ref) < 1e-13 * abs(ref)


def test_named_gamma_scalar():
    fam = NamedFamily("gamma_r", {"a": 2.3})
    val = named_integrand(fam, np.array([[0.7]]))
    assert abs(val - np.exp(-0.7) * 0.7 ** 1.3) < 1e-14


def test_named_airy_scalar():
    fam = NamedFamily("airy", {}, X=np.array([[0.4]]))
    u = 0.6
    val = named_integrand(fam, np.array([[u]]))
    assert abs(val - np.exp(0.4 * u - u**3 / 3.0)) < 1e-14


def test_named_domain_guard():
    fam = NamedFamily("gamma_r", {"a": 2.3})
    with pytest.raises(OutOfDomain):
        named_integrand(fam, np.array([[-0.5]]))
    fam = NamedFamily("beta_r", {"a": 2.0, "b": 2.0})
    with pytest.raises(OutOfDomain):
        named_integrand(fam, np.array([[1.5]]))


def test_named_batch_matches_pointwise():
    fam = NamedFamily("kummer", {"a": 1.6, "c": 3.1}, X=0.4 * np.eye(2))
    s = RandomStream(77)
    us = np.stack([_herm(2, 0.1, 0.9, s.jump(k)) for k in range(6)])
    batch = named_integrand_batch(fam, us)
    for k in range(6):
        assert abs(batch[k] - named_integrand(fam, us[k])) < 1e-13


@pytest.mark.parametrize("lam,tag", [
    ((1, 1, 1, 1), "gauss"),
    ((2, 1, 1), "kummer"),
    ((2, 2), "bessel"),
    ((3, 1), "hermite_weber"),
    ((4,), "airy"),
])
def test_family_tags(lam, tag):
    pins = {
        (1, 1, 1, 1): [0.0, 0.5, 0.6, -1.1],
        (2, 1, 1): [0.0, 1.0, 0.5, 0.6],
        (2, 2): [0.0, 1.0, 0.5, -1.0],
        (3, 1): [0.0, 0.0, 1.0, -2.5],
        (4,): [0.0, 0.0, 0.0, 1.0],
    }[lam]
    lead = {
        (1, 1, 1, 1): [0, 1, 2, 3],
        (2, 1, 1): [0, 2, 3],
        (2, 2): [0, 2],
        (3, 1): [0, 3],
        (4,): [0],
    }[lam]
    pins[lead[0]] = -2.0 - sum(pins[i] for i in lead[1:])
    fam = family_of_normal_form(lam, np.eye(1) * 0.4, pins, 1)
    assert fam.tag == tag
    assert fam.dictionary  # the weight dictionary is recorded


def test_airy_family_records_reflection():
    fam = family_of_normal_form((4,), np.eye(1) * 0.4, [-2.0, 0.0, 0.0, 1.0], 1)
    assert fam.reflect_u
    assert np.allclose(fam.X, -0.4 * np.eye(1))


def test_unpinned_alpha_rejected():
    with pytest.raises(UnpinnedAlpha):
        family_of_normal_form((2, 2), np.eye(1), [-2.5, 1.0, 0.5, -0.5], 1)


def test_unsupported_partition():
    with pytest.raises(UnsupportedPartition):
        family_of_normal_form((5,), np.eye(1), [0, 0, 0, 1.0], 1)
