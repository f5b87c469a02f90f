"""Chart integrands and the named Hermitian-integral families.

The chart integrand of a coordinate matrix factors as a product of
determinant powers (the multivalued part) times the exponential of a
trace polynomial (the confluent part); both handles are exposed so the
factorization itself is testable.  The named families are the concrete
matrix-integral counterparts of the classical hypergeometric kernels,
and ``family_of_normal_form`` records the exact weight dictionary that
identifies them with the table normal forms.
"""

from dataclasses import dataclass, field

import numpy as np

from .characters import PartitionWeight, cpow
from .errors import (
    OnBranchLocus,
    OutOfDomain,
    ShapeMismatch,
    UnpinnedAlpha,
    UnsupportedPartition,
)
from .grassmann import ChartPoint, CoordMatrix
from .jordan import TruncPoly, theta
from .linalg import as_matrix, det, hadamard_bound, inverse
from .ncpoly import theta_symbolic

_BRANCH_RTOL = 1e-12

FAMILY_TAGS = (
    "beta_r",
    "gamma_r",
    "gaussian_r",
    "gauss",
    "kummer",
    "bessel",
    "hermite_weber",
    "airy",
    "lauricella_fd",
)


@dataclass(frozen=True)
class IntegrandSpec:
    """u |-> character of (ubar z) on the standard affine chart."""

    pw: PartitionWeight
    z: CoordMatrix

    def __post_init__(self):
        if self.z.lam != self.pw.lam or self.z.r != self.pw.r:
            raise ShapeMismatch("coordinate matrix and weight partition disagree")
        if self.z.m != 2 * self.z.r:
            raise ShapeMismatch("chart integrands are defined for m = 2r")

    def parts_at_frame(self, t) -> tuple:
        """(power part, trace-exponent) of the integrand at a general r x m frame."""
        t = as_matrix(t)
        z = self.z
        f = 1.0 + 0.0j
        g = 0.0 + 0.0j
        eye = np.eye(z.r, dtype=np.complex128)
        for j, nk in enumerate(z.lam):
            m0 = t @ z.block(j, 0)
            d0 = det(m0)
            if abs(d0) <= _BRANCH_RTOL * max(hadamard_bound(m0), 1e-300):
                raise OnBranchLocus(f"block {j + 1} frame determinant vanishes")
            alpha = self.pw.alpha[j]
            f *= cpow(d0, alpha[0])
            if nk > 1:
                m0_inv = inverse(m0)
                coeffs = [eye] + [m0_inv @ (t @ z.block(j, q)) for q in range(1, nk)]
                th = theta(TruncPoly.from_list(coeffs)).numeric
                for k in range(1, nk):
                    g += alpha[k] * np.trace(th[k - 1])
        return f, g

    def parts(self, point: ChartPoint) -> tuple:
        return self.parts_at_frame(point.ubar)

    def power_part(self, point: ChartPoint) -> complex:
        return self.parts(point)[0]

    def exp_part(self, point: ChartPoint) -> complex:
        return self.parts(point)[1]


def evaluate_integrand(spec: IntegrandSpec, point: ChartPoint) -> complex:
    f, g = spec.parts(point)
    return complex(f * np.exp(g))


def evaluate_frame(spec: IntegrandSpec, t) -> complex:
    f, g = spec.parts_at_frame(t)
    return complex(f * np.exp(g))


@dataclass(frozen=True)
class NamedFamily:
    """One of the closed-form matrix-integral kernels.

    ``dictionary`` records how the parameters were derived (so the weight
    correspondence is visible in results), and ``reflect_u`` marks the
    chain reorientation u -> -u used by the cubic family.
    """

    tag: str
    params: dict
    X: np.ndarray | None = None
    xs: tuple = ()
    dictionary: dict = field(default_factory=dict)
    reflect_u: bool = False

    def scalar_argument(self) -> complex | None:
        """x when X is x * identity (or absent, giving 0), else None."""
        if self.X is None:
            return 0.0 + 0.0j
        r = self.X.shape[0]
        x = complex(np.trace(self.X)) / r
        if np.abs(self.X - x * np.eye(r)).max() <= 1e-12 * max(1.0, abs(x)):
            return x
        return None

    def scalar_arguments(self) -> tuple:
        out = []
        for xm in self.xs:
            r = xm.shape[0]
            x = complex(np.trace(xm)) / r
            if np.abs(xm - x * np.eye(r)).max() > 1e-12 * max(1.0, abs(x)):
                return ()
            out.append(x)
        return tuple(out)


def _hermitian_eigs(u, rtol=1e-10):
    u = as_matrix(u)
    if np.linalg.norm(u - u.conj().T) <= rtol * max(np.linalg.norm(u), 1e-300):
        return np.linalg.eigvalsh(u)
    return None


def _check_domain(tag: str, u):
    eigs = _hermitian_eigs(u)
    if eigs is None:
        return  # complex chains evaluate off the Hermitian slice
    if tag in ("beta_r", "gauss", "kummer", "lauricella_fd"):
        if eigs[0] <= 0.0 or eigs[-1] >= 1.0:
            raise OutOfDomain(f"{tag} needs eigenvalues strictly inside (0, 1)")
    elif tag in ("gamma_r", "bessel"):
        if eigs[0] <= 0.0:
            raise OutOfDomain(f"{tag} needs a positive definite argument")


def _detpow(m, e) -> complex:
    return cpow(det(m), e)


def named_integrand(fam: NamedFamily, u, check_domain: bool = True) -> complex:
    """Pointwise kernel value at an r x r matrix argument."""
    u = as_matrix(u)
    r = u.shape[0]
    if check_domain:
        _check_domain(fam.tag, u)
    eye = np.eye(r, dtype=np.complex128)
    p = fam.params
    x = fam.X if fam.X is not None else np.zeros((r, r), dtype=np.complex128)
    t = fam.tag
    if t == "beta_r":
        return _detpow(u, p["a"] - r) * _detpow(eye - u, p["b"] - r)
    if t == "gamma_r":
        return complex(np.exp(-np.trace(u)) * _detpow(u, p["a"] - r))
    if t == "gaussian_r":
        return complex(np.exp(-0.5 * np.trace(u @ u)))
    if t == "gauss":
        return (
            _detpow(u, p["a"] - r)
            * _detpow(eye - u, p["c"] - p["a"] - r)
            * _detpow(eye - u @ x, -p["b"])
        )
    if t == "kummer":
        return (
            complex(np.exp(np.trace(u @ x)))
            * _detpow(u, p["a"] - r)
            * _detpow(eye - u, p["c"] - p["a"] - r)
        )
    if t == "bessel":
        return complex(
            np.exp(np.trace(u @ x - inverse(u))) * _detpow(u, p["c"] - r)
        )
    if t == "hermite_weber":
        return complex(
            np.exp(np.trace(u @ x - 0.5 * (u @ u))) * _detpow(u, -p["c"] - r)
        )
    if t == "airy":
        return complex(np.exp(np.trace(u @ x - (u @ u @ u) / 3.0)))
    if t == "lauricella_fd":
        acc = _detpow(u, p["a"] - r) * _detpow(eye - u, p["c"] - p["a"] - r)
        for bj, xj in zip(p["bs"], fam.xs):
            acc *= _detpow(eye - u @ xj, -bj)
        return acc
    raise UnsupportedPartition(f"unknown family tag {t!r}")


# ----------------------------------------------------------------------
# batched evaluation (Monte Carlo path)
# ----------------------------------------------------------------------

def _detpow_batch(m, e):
    return np.exp(complex(e) * np.log(np.linalg.det(m)))


def _trace_batch(m):
    return np.einsum("bii->b", m)


def named_integrand_batch(fam: NamedFamily, u) -> np.ndarray:
    """Kernel values over a stacked (batch, r, r) argument."""
    b, r, _ = u.shape
    eye = np.eye(r, dtype=np.complex128)
    p = fam.params
    x = fam.X if fam.X is not None else np.zeros((r, r), dtype=np.complex128)
    t = fam.tag
    if t == "beta_r":
        return _detpow_batch(u, p["a"] - r) * _detpow_batch(eye - u, p["b"] - r)
    if t == "gamma_r":
        return np.exp(-_trace_batch(u)) * _detpow_batch(u, p["a"] - r)
    if t == "gaussian_r":
        return np.exp(-0.5 * _trace_batch(u @ u))
    if t == "gauss":
        return (
            _detpow_batch(u, p["a"] - r)
            * _detpow_batch(eye - u, p["c"] - p["a"] - r)
            * _detpow_batch(eye - u @ x, -p["b"])
        )
    if t == "kummer":
        return (
            np.exp(_trace_batch(u @ x))
            * _detpow_batch(u, p["a"] - r)
            * _detpow_batch(eye - u, p["c"] - p["a"] - r)
        )
    if t == "bessel":
        return np.exp(_trace_batch(u @ x - np.linalg.inv(u))) * _detpow_batch(
            u, p["c"] - r
        )
    if t == "hermite_weber":
        return np.exp(_trace_batch(u @ x - 0.5 * (u @ u))) * _detpow_batch(
            u, -p["c"] - r
        )
    if t == "airy":
        return np.exp(_trace_batch(u @ x - (u @ u @ u) / 3.0))
    if t == "lauricella_fd":
        acc = _detpow_batch(u, p["a"] - r) * _detpow_batch(
            eye - u, p["c"] - p["a"] - r
        )
        for bj, xj in zip(p["bs"], fam.xs):
            acc *= _detpow_batch(eye - u @ xj, -bj)
        return acc
    raise UnsupportedPartition(f"unknown family tag {t!r}")


def chart_integrand_batch(spec: IntegrandSpec, u) -> np.ndarray:
    """Chart integrand over a stacked (batch, r, r) chart coordinate."""
    b, r, _ = u.shape
    z = spec.z
    ubar = np.concatenate(
        [np.broadcast_to(np.eye(r, dtype=np.complex128), (b, r, r)), u], axis=2
    )
    acc = np.ones(b, dtype=np.complex128)
    for j, nk in enumerate(z.lam):
        m0 = ubar @ z.block(j, 0)
        alpha = spec.pw.alpha[j]
        acc *= _detpow_batch(m0, alpha[0])
        if nk > 1:
            m0_inv = np.linalg.inv(m0)
            coeffs = [m0_inv @ (ubar @ z.block(j, q)) for q in range(1, nk)]
            sym = theta_symbolic(nk).symbolic
            expo = np.zeros(b, dtype=np.complex128)
            for k in range(1, nk):
                th = np.zeros((b, r, r), dtype=np.complex128)
                for word, c in sym[k - 1].sorted_terms():
                    prod = np.broadcast_to(
                        np.eye(r, dtype=np.complex128), (b, r, r)
                    ).copy()
                    for letter in word:
                        prod = prod @ coeffs[letter - 1]
                    th += complex(c) * prod
                expo += alpha[k] * _trace_batch(th)
            acc *= np.exp(expo)
    return acc


# ----------------------------------------------------------------------
# normal-form correspondence
# ----------------------------------------------------------------------

_PINS = {
    (2, 1, 1): {1: 1.0},
    (2, 2): {1: 1.0, 3: -1.0},
    (3, 1): {1: 0.0, 2: 1.0},
    (4,): {1: 0.0, 2: 0.0, 3: 1.0},
}


def family_of_normal_form(lam, x, alpha, r: int) -> NamedFamily:
    """Named family whose kernel equals the chart integrand of the primary
    table form, with the weight dictionary recorded.

    alpha is the flat weight 4-tuple; the confluent partitions require the
    pinned entries (positions are 0-based within the flat tuple).
    """
    lam = tuple(lam)
    alpha = tuple(complex(a) for a in alpha)
    if len(alpha) != 4:
        raise UnpinnedAlpha("flat weight must have four entries")
    x = as_matrix(x) if x is not None else np.zeros((r, r), dtype=np.complex128)
    pins = _PINS.get(lam, {})
    for pos, val in pins.items():
        if abs(alpha[pos] - val) > 1e-12:
            raise UnpinnedAlpha(
                f"partition {lam} requires alpha_{pos + 1} = {val}, got {alpha[pos]}"
            )
    if lam == (1, 1, 1, 1):
        a = alpha[1] + r
        b = -alpha[3]
        c = alpha[1] + alpha[2] + 2 * r
        return NamedFamily(
            "gauss",
            {"a": a, "b": b, "c": c},
            X=x,
            dictionary={"a": "alpha_2 + r", "b": "-alpha_4",
                        "c": "alpha_2 + alpha_3 + 2r", "X": "x"},
        )
    if lam == (2, 1, 1):
        a = alpha[2] + r
        c = alpha[2] + alpha[3] + 2 * r
        return NamedFamily(
            "kummer",
            {"a": a, "c": c},
            X=x,
            dictionary={"a": "alpha_3 + r", "c": "alpha_3 + alpha_4 + 2r",
                        "X": "x", "pin": "alpha_2 = 1"},
        )
    if lam == (2, 2):
        c = alpha[2] + r
        return NamedFamily(
            "bessel",
            {"c": c},
            X=x,
            dictionary={"c": "alpha_3 + r", "X": "x",
                        "pin": "alpha_2 = 1, alpha_4 = -1"},
        )
    if lam == (3, 1):
        c = -alpha[3] - r
        return NamedFamily(
            "hermite_weber",
            {"c": c},
            X=x,
            dictionary={"c": "-alpha_4 - r", "X": "x",
                        "pin": "alpha_2 = 0, alpha_3 = 1"},
        )
    if lam == (4,):
        return NamedFamily(
            "airy",
            {},
            X=-x,
            reflect_u=True,
            dictionary={"X": "-x", "pin": "alpha_2 = alpha_3 = 0, alpha_4 = 1",
                        "reflect_u": "kernel equals the chart integrand at -U"},
        )
    raise UnsupportedPartition(f"no named family for partition {lam}")
