"""Homogeneous coordinates, affine charts, and the open stratum Z_lambda.

A coordinate matrix is an m x N full-rank complex matrix whose columns are
grouped into r-wide blocks according to a partition: block j holds the
columns of the j-th group, sub-indexed by the truncation degree q.  The
weight-2 subdiagram minors decide membership in the stratum where the
orbit normal forms exist.
"""

from dataclasses import dataclass

import numpy as np

from .characters import GroupElement, _validate_partition
from .errors import BadIndexSet, NotInZLambda, ShapeMismatch, SingularFrame
from .jordan import TruncPoly
from .linalg import as_matrix, det, hadamard_bound

RANK_RTOL = 1e-10
MINOR_RTOL = 1e-10


@dataclass(frozen=True)
class CoordMatrix:
    lam: tuple
    r: int
    entries: np.ndarray

    def __post_init__(self):
        lam = _validate_partition(self.lam)
        object.__setattr__(self, "lam", lam)
        e = as_matrix(self.entries)
        object.__setattr__(self, "entries", e)
        n = sum(lam)
        if e.shape[1] != n * self.r:
            raise ShapeMismatch(
                f"expected {n * self.r} columns for partition {lam} at r={self.r}"
            )
        if e.shape[0] > e.shape[1]:
            raise ShapeMismatch("coordinate matrix must have rank equal to row count")
        s = np.linalg.svd(e, compute_uv=False)
        if s[-1] <= RANK_RTOL * s[0]:
            raise ShapeMismatch("coordinate matrix is rank deficient")

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def N(self) -> int:
        return self.entries.shape[1]

    @property
    def n(self) -> int:
        return sum(self.lam)

    @property
    def ell(self) -> int:
        return len(self.lam)

    def _block_start(self, j: int) -> int:
        return self.r * sum(self.lam[:j])

    def block(self, j: int, q: int) -> np.ndarray:
        """m x r column block z_q^{(j)} (0-based block j, degree q)."""
        if not (0 <= j < self.ell) or not (0 <= q < self.lam[j]):
            raise BadIndexSet(f"no block ({j}, {q}) in partition {self.lam}")
        start = self._block_start(j) + q * self.r
        return self.entries[:, start : start + self.r]

    def with_entries(self, entries) -> "CoordMatrix":
        return CoordMatrix(self.lam, self.r, entries)


@dataclass(frozen=True)
class ChartPoint:
    """Affine coordinates u on the chart where the leading r x r frame is 1."""

    u: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "u", as_matrix(self.u))

    @property
    def r(self) -> int:
        return self.u.shape[0]

    @property
    def m(self) -> int:
        return self.u.shape[0] + self.u.shape[1]

    @property
    def ubar(self) -> np.ndarray:
        return np.concatenate([np.eye(self.r, dtype=np.complex128), self.u], axis=1)


def plucker(t, J) -> complex:
    """Minor det(t_{j_1}, ..., t_{j_r}) for a strictly increasing 1-based J."""
    t = as_matrix(t)
    r, m = t.shape
    J = tuple(int(j) for j in J)
    if len(J) != r:
        raise BadIndexSet(f"index set must have size {r}")
    if any(j < 1 or j > m for j in J) or any(
        J[i] >= J[i + 1] for i in range(len(J) - 1)
    ):
        raise BadIndexSet("index set must be strictly increasing within [1, m]")
    cols = [j - 1 for j in J]
    return det(t[:, cols])


def tau_factor(t_prime, m: int) -> complex:
    """Density factor (det t')^m on the standard chart."""
    t_prime = as_matrix(t_prime)
    d = det(t_prime)
    if abs(d) <= 1e-12 * max(hadamard_bound(t_prime), 1e-300):
        raise SingularFrame("frame determinant vanishes")
    return complex(d**m)


@dataclass(frozen=True)
class SubdiagramMu:
    """Weight-2 subdiagram: two distinct blocks or one block at depth two."""

    mu: tuple
    kind: str  # "two-distinct-blocks" | "one-block-depth-two"

    def columns(self):
        """Block/degree pairs whose column blocks form the minor."""
        if self.kind == "two-distinct-blocks":
            i, j = [k for k, v in enumerate(self.mu) if v == 1]
            return (i, 0), (j, 0)
        (i,) = [k for k, v in enumerate(self.mu) if v == 2]
        return (i, 0), (i, 1)


def subdiagrams(lam) -> list:
    """All weight-2 subdiagrams of the partition."""
    lam = _validate_partition(lam)
    ell = len(lam)
    out = []
    for i in range(ell):
        for j in range(i + 1, ell):
            mu = [0] * ell
            mu[i] = mu[j] = 1
            out.append(SubdiagramMu(tuple(mu), "two-distinct-blocks"))
    for i in range(ell):
        if lam[i] >= 2:
            mu = [0] * ell
            mu[i] = 2
            out.append(SubdiagramMu(tuple(mu), "one-block-depth-two"))
    return out


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    failing: tuple

    def __bool__(self) -> bool:
        return self.member


def z_lambda_member(z: CoordMatrix, rtol: float = MINOR_RTOL) -> MembershipResult:
    """Test the weight-2 subdiagram minors of a 2r x nr coordinate matrix.

    Minors are compared against their Hadamard bound, so the test is
    scale-free.
    """
    if z.m != 2 * z.r:
        raise ShapeMismatch("subdiagram minors need m = 2r")
    failing = []
    for mu in subdiagrams(z.lam):
        (i, qi), (j, qj) = mu.columns()
        zmu = np.concatenate([z.block(i, qi), z.block(j, qj)], axis=1)
        bound = hadamard_bound(zmu)
        if bound == 0.0 or abs(det(zmu)) <= rtol * bound:
            failing.append(mu)
    return MembershipResult(not failing, tuple(failing))


def require_member(z: CoordMatrix):
    res = z_lambda_member(z)
    if not res.member:
        raise NotInZLambda(
            f"weight-2 minors vanish: {[m.mu for m in res.failing]}",
            witnesses=list(res.failing),
        )


def general_Z_member(z: CoordMatrix, rtol: float = MINOR_RTOL) -> bool:
    """Every leading block z_0^{(k)} has full column rank r."""
    for j in range(z.ell):
        s = np.linalg.svd(z.block(j, 0), compute_uv=False)
        if s[0] == 0.0 or s[-1] <= rtol * s[0]:
            return False
    return True


def apply_group(z: CoordMatrix, g=None, h: GroupElement | None = None) -> CoordMatrix:
    """Left GL(m) action and right block-group action, g z h.

    The right action mixes columns within a block by the Toeplitz rule
    new z_q = sum_{s + k = q} z_s h_k.
    """
    e = z.entries
    if g is not None:
        e = as_matrix(g) @ e
    if h is not None:
        if h.lam != z.lam:
            raise ShapeMismatch("group element blocks do not match the partition")
        cols = []
        zg = z.with_entries(e) if g is not None else z
        for j, nk in enumerate(z.lam):
            hb = h.blocks[j]
            for q in range(nk):
                acc = np.zeros((z.m, z.r), dtype=np.complex128)
                for s in range(q + 1):
                    acc += zg.block(j, s) @ hb.coeffs[q - s]
                cols.append(acc)
        e = np.concatenate(cols, axis=1)
    return z.with_entries(e)


def block_scalar_element(lam, r: int, factors) -> GroupElement:
    """Element with constant coefficient ``factors[k]`` and no higher terms."""
    blocks = []
    for nk, f in zip(lam, factors):
        tp = TruncPoly.unit(r, nk)
        coeffs = (as_matrix(f),) + tp.coeffs[1:]
        blocks.append(TruncPoly(coeffs))
    return GroupElement(tuple(blocks))
