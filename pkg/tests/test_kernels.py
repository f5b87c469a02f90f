import math

import numpy as np
import pytest

from radon_hgf import _kernels as K
from radon_hgf.rng import RandomStream


def _heine_determinant(wg, lam, r):
    # independent oracle: the symmetrized tensor sum against the squared
    # Vandermonde equals r! times the Hankel moment determinant
    mom = [np.sum(wg * lam**k) for k in range(2 * r)]
    m = np.array([[mom[i + j] for j in range(r)] for i in range(r)])
    return math.factorial(r) * np.linalg.det(m)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_tensor_sum_matches_moment_determinant(r):
    gen = RandomStream(91).generator()
    n = 10
    wg = gen.standard_normal(n) + 1j * gen.standard_normal(n)
    lam = gen.standard_normal(n)
    ref = _heine_determinant(wg, lam, r)
    val = K.tensor_vdm_sum_np(wg, lam, r)
    assert abs(val - ref) <= 1e-10 * max(1.0, abs(ref))


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_numba_and_numpy_paths_agree(r):
    if not K.HAVE_NUMBA:
        pytest.skip("numba path inactive (env flag or missing numba)")
    gen = RandomStream(92).generator()
    n = 12
    wg = gen.standard_normal(n) + 1j * gen.standard_normal(n)
    lam = gen.standard_normal(n)
    a = K.tensor_vdm_sum_np(wg, lam, r)
    b = K.tensor_vdm_sum_nb(wg, lam, r)
    assert abs(a - b) <= 1e-10 * max(1.0, abs(a))


def test_vdm_sq_batch_agree():
    gen = RandomStream(93).generator()
    lams = gen.standard_normal((100, 3))
    a = K.vdm_sq_batch_np(lams)
    if K.HAVE_NUMBA:
        b = K.vdm_sq_batch_nb(lams)
        assert np.abs(a - b).max() < 1e-12
    # spot check one row by hand
    x, y, z = lams[0]
    byhand = ((y - x) * (z - x) * (z - y)) ** 2
    assert abs(a[0] - byhand) < 1e-12 * max(1.0, abs(byhand))


def test_grid_sum_matches_product_form():
    gen = RandomStream(94).generator()
    n, r = 8, 3
    g = gen.standard_normal(n) + 1j * gen.standard_normal(n)
    w = np.abs(gen.standard_normal(n)) + 0.1
    lam = gen.standard_normal(n)
    fgrid = g[:, None, None] * g[None, :, None] * g[None, None, :]
    a = K.tensor_grid_sum_np(fgrid, w, lam)
    ref = K.tensor_vdm_sum_np(w * g, lam, r)
    assert abs(a - ref) < 1e-10 * max(1.0, abs(ref))
    if K.HAVE_NUMBA:
        b = K.tensor_grid_sum_nb(fgrid, w, lam)
        assert abs(a - b) < 1e-10 * max(1.0, abs(a))


def test_active_path_reflects_environment():
    import os

    if os.environ.get("RADON_HGF_PURE_NUMPY", "") not in ("", "0"):
        assert K.ACTIVE == "numpy"
    else:
        assert K.ACTIVE in ("numba", "numpy")
