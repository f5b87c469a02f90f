"""Orbit normal forms of coordinate matrices under GL(2r) x H_lambda.

Each reduction follows a fixed pivot recipe: invert the designated pair
of leading column blocks, then solve for the block-group coefficients
that clear the remaining columns.  No alternative pivots are tried, so a
failed inversion means the input is outside the open stratum and
surfaces as NotInZLambda.  The recovered residual parameters x are the
effective variables of the hypergeometric families.
"""

from dataclasses import dataclass

import numpy as np

from .characters import GroupElement
from .errors import DegenerateOrbit, NotInZLambda, ShapeMismatch, SingularMatrix
from .grassmann import CoordMatrix, apply_group, require_member, z_lambda_member
from .jordan import TruncPoly, trunc_mul
from .linalg import inverse

RESIDUAL_RTOL = 1e-10


@dataclass(frozen=True)
class NormalFormResult:
    g: np.ndarray
    h: GroupElement
    x: tuple
    form_id: str
    residual: float

    def reduced(self, z: CoordMatrix) -> CoordMatrix:
        return apply_group(z, g=self.g, h=self.h)


def _blocks_row(r, top, bottom):
    def mat(entry):
        if isinstance(entry, str):
            if entry == "I":
                return np.eye(r, dtype=np.complex128)
            if entry == "-I":
                return -np.eye(r, dtype=np.complex128)
            if entry == "0":
                return np.zeros((r, r), dtype=np.complex128)
            raise ValueError(entry)
        return np.asarray(entry, dtype=np.complex128)

    top_row = np.concatenate([mat(s) for s in top], axis=1)
    bot_row = np.concatenate([mat(s) for s in bottom], axis=1)
    return np.concatenate([top_row, bot_row], axis=0)


def pattern(lam, r, xs=(), variant: int = 1) -> np.ndarray:
    """Table pattern for the given partition (and variant for lam |- 4)."""
    lam = tuple(lam)
    xs = tuple(np.asarray(x, dtype=np.complex128) for x in xs)
    if lam == (1, 1, 1):
        return _blocks_row(r, ["I", "0", "I"], ["0", "I", "-I"])
    if lam == (2, 1):
        return _blocks_row(r, ["I", "0", "0"], ["0", "I", "I"])
    if lam == (3,):
        return _blocks_row(r, ["I", "0", "0"], ["0", "I", "0"])
    if lam == (1, 1, 1, 1):
        (x,) = xs
        return _blocks_row(r, ["I", "0", "I", "I"], ["0", "I", "-I", -x])
    if lam == (2, 1, 1):
        (x,) = xs
        if variant == 1:
            return _blocks_row(r, ["I", "0", "0", "I"], ["0", x, "I", "-I"])
        if variant == 2:
            return _blocks_row(r, ["I", "0", "0", "I"], ["0", "I", "I", -x])
        if variant == 3:
            return _blocks_row(r, ["I", "0", "0", x], ["0", "I", "I", "-I"])
    if lam == (2, 2):
        (x,) = xs
        if variant == 1:
            return _blocks_row(r, ["I", "0", "0", "I"], ["0", x, "I", "0"])
        if variant == 2:
            return _blocks_row(r, ["I", "0", "0", x], ["0", "I", "I", "0"])
    if lam == (3, 1):
        (x,) = xs
        if variant == 1:
            return _blocks_row(r, ["I", "0", "0", "0"], ["0", "I", x, "I"])
        if variant == 2:
            return _blocks_row(r, ["I", x, "0", "0"], ["0", "-I", "0", "I"])
        if variant == 3:
            return _blocks_row(r, ["I", "0", "0", x], ["0", "I", "0", "-I"])
    if lam == (4,):
        (x,) = xs
        return _blocks_row(r, ["I", "0", "0", "0"], ["0", "I", "0", x])
    if all(n == 1 for n in lam) and len(lam) >= 3:
        n = len(lam)
        if len(xs) != n - 3:
            raise ShapeMismatch("one residual parameter per column beyond the third")
        top = ["I", "0"] + ["I"] * (n - 2)
        bottom = ["0", "I", "-I"] + [-x for x in xs]
        return _blocks_row(r, top, bottom)
    raise ShapeMismatch(f"no table pattern for partition {lam} variant {variant}")


class _Reduction:
    """Accumulates left GL(2r) and right block-group moves."""

    def __init__(self, z: CoordMatrix):
        self.z = z
        self.g = np.eye(z.m, dtype=np.complex128)
        self.hblocks = [TruncPoly.unit(z.r, nk) for nk in z.lam]

    def left(self, g):
        self.z = apply_group(self.z, g=g)
        self.g = g @ self.g

    def right_block(self, j, coeffs):
        r, nk = self.z.r, self.z.lam[j]
        coeffs = list(coeffs) + [np.zeros((r, r))] * (nk - len(coeffs))
        tp = TruncPoly.from_list(coeffs)
        blocks = [
            tp if k == j else TruncPoly.unit(self.z.r, n)
            for k, n in enumerate(self.z.lam)
        ]
        self.z = apply_group(self.z, h=GroupElement(tuple(blocks)))
        self.hblocks[j] = trunc_mul(self.hblocks[j], tp)

    def upper(self, j, q):
        return self.z.block(j, q)[: self.z.r, :]

    def lower(self, j, q):
        return self.z.block(j, q)[self.z.r :, :]

    def result(self, xs, form_id, target) -> NormalFormResult:
        final = self.z.entries
        scale = max(1.0, float(np.abs(target).max()), float(np.abs(final).max()))
        residual = float(np.abs(final - target).max()) / scale
        if residual > RESIDUAL_RTOL:
            raise DegenerateOrbit(
                f"reduction residual {residual:.2e} exceeds tolerance for {form_id}"
            )
        if not z_lambda_member(self.z).member:
            raise DegenerateOrbit(
                f"reduced form violates the table nondegeneracy conditions ({form_id})"
            )
        return NormalFormResult(
            g=self.g,
            h=GroupElement(tuple(self.hblocks)),
            x=tuple(xs),
            form_id=form_id,
            residual=residual,
        )


def _pivot_inverse(mat, what):
    try:
        return inverse(mat)
    except SingularMatrix as exc:
        raise NotInZLambda(f"designated pivot {what} is singular") from exc


def _shear(r, beta):
    g = np.eye(2 * r, dtype=np.complex128)
    g[:r, r:] = beta
    return g


def _row_scale(r, s):
    g = np.eye(2 * r, dtype=np.complex128)
    g[r:, r:] = s
    return g


def _check_shape(z: CoordMatrix, n: int):
    if z.m != 2 * z.r:
        raise ShapeMismatch("normal forms need m = 2r")
    if z.n != n:
        raise ShapeMismatch(f"partition weight must be {n}")


def reduce3(z: CoordMatrix) -> NormalFormResult:
    """Normal form for partitions of 3; the table has no residual parameters."""
    _check_shape(z, 3)
    require_member(z)
    r = z.r
    red = _Reduction(z)
    lam = z.lam
    if lam == (1, 1, 1):
        g1 = _pivot_inverse(
            np.concatenate([z.block(0, 0), z.block(1, 0)], axis=1), "(z1, z2)"
        )
        red.left(g1)
        v0, v1 = red.upper(2, 0), red.lower(2, 0)
        h3 = _pivot_inverse(v0, "v0")
        h2 = -v1 @ h3
        red.left(_row_scale(r, _pivot_inverse(h2, "h2")))
        red.right_block(1, [h2])
        red.right_block(2, [h3])
    elif lam == (2, 1):
        g1 = _pivot_inverse(
            np.concatenate([z.block(0, 0), z.block(1, 0)], axis=1), "(z0^(1), z0^(2))"
        )
        red.left(g1)
        v0, v1 = red.upper(0, 1), red.lower(0, 1)
        red.right_block(0, [np.eye(r), -v0])
        red.left(_row_scale(r, _pivot_inverse(v1, "v1")))
        red.right_block(1, [v1])
    elif lam == (3,):
        g1 = _pivot_inverse(
            np.concatenate([z.block(0, 0), z.block(0, 1)], axis=1), "(z0, z1)"
        )
        red.left(g1)
        v0, v1 = red.upper(0, 2), red.lower(0, 2)
        red.left(_shear(r, v1))
        red.right_block(0, [np.eye(r), -v1, -v0])
    else:
        raise ShapeMismatch(f"unsupported partition {lam}")
    target = pattern(lam, r)
    return red.result((), f"{_fmt(lam)}/x", target)


def reduce4(z: CoordMatrix, variant: int = 1) -> NormalFormResult:
    """Normal form for partitions of 4; variant selects the table column."""
    _check_shape(z, 4)
    require_member(z)
    r = z.r
    lam = z.lam
    eye = np.eye(r, dtype=np.complex128)
    if lam in ((1, 1, 1, 1), (4,)) and variant != 1:
        raise ShapeMismatch(f"partition {lam} has a single table form")
    if variant not in (1, 2, 3) or (lam == (2, 2) and variant == 3):
        raise ShapeMismatch(f"no variant {variant} for partition {lam}")
    red = _Reduction(z)
    if lam == (1, 1, 1, 1):
        g1 = _pivot_inverse(
            np.concatenate([z.block(0, 0), z.block(1, 0)], axis=1), "(z1, z2)"
        )
        red.left(g1)
        v0, v1 = red.upper(2, 0), red.lower(2, 0)
        h3 = _pivot_inverse(v0, "v0")
        h2 = -v1 @ h3
        red.left(_row_scale(r, _pivot_inverse(h2, "h2")))
        red.right_block(1, [h2])
        red.right_block(2, [h3])
        w0 = red.upper(3, 0)
        red.right_block(3, [_pivot_inverse(w0, "w0")])
        x = -red.lower(3, 0)
        xs = (x,)
    elif lam == (2, 1, 1):
        g1 = _pivot_inverse(
            np.concatenate([z.block(0, 0), z.block(1, 0)], axis=1), "(z0^(1), z0^(2))"
        )
        red.left(g1)
        a, c = red.upper(0, 1), red.lower(0, 1)
        red.right_block(0, [eye, -a])
        b, d = red.upper(2, 0), red.lower(2, 0)
        if variant == 1:
            red.right_block(2, [_pivot_inverse(b, "b")])
            e = red.lower(2, 0)
            s = -_pivot_inverse(e, "e")
            red.left(_row_scale(r, s))
            red.right_block(1, [_pivot_inverse(s, "s")])
            xs = (red.lower(0, 1),)
        elif variant == 2:
            red.right_block(2, [_pivot_inverse(b, "b")])
            s = _pivot_inverse(c, "c")
            red.left(_row_scale(r, s))
            red.right_block(1, [c])
            xs = (-red.lower(2, 0),)
        else:
            s = _pivot_inverse(c, "c")
            red.left(_row_scale(r, s))
            red.right_block(1, [c])
            sd = red.lower(2, 0)
            red.right_block(2, [-_pivot_inverse(sd, "d")])
            xs = (red.upper(2, 0),)
    elif lam == (2, 2):
        g1 = _pivot_inverse(
            np.concatenate([z.block(0, 0), z.block(1, 0)], axis=1), "(z0^(1), z0^(2))"
        )
        red.left(g1)
        a = red.upper(0, 1)
        red.right_block(0, [eye, -a])
        d = red.lower(1, 1)
        red.right_block(1, [eye, -d])
        b = red.upper(1, 1)
        if variant == 1:
            red.right_block(1, [_pivot_inverse(b, "b")])
            red.left(_row_scale(r, b))
            xs = (red.lower(0, 1),)
        else:
            c = red.lower(0, 1)
            red.left(_row_scale(r, _pivot_inverse(c, "c")))
            red.right_block(1, [c])
            xs = (red.upper(1, 1),)
    elif lam == (3, 1):
        g1 = _pivot_inverse(
            np.concatenate([z.block(0, 0), z.block(0, 1)], axis=1), "(z0, z1)"
        )
        red.left(g1)
        p, v = red.upper(0, 2), red.lower(0, 2)
        q, w = red.upper(1, 0), red.lower(1, 0)
        w_inv = _pivot_inverse(w, "w")
        if variant == 1:
            beta = -q @ w_inv
            red.left(_shear(r, beta))
            red.right_block(1, [w_inv])
            h2 = beta @ beta - p - beta @ v
            red.right_block(0, [eye, -beta, h2])
            xs = (red.lower(0, 2),)
        elif variant == 2:
            beta = -q @ w_inv
            red.left(_shear(r, beta))
            red.left(_row_scale(r, -eye))
            red.right_block(1, [-w_inv])
            red.right_block(0, [eye, -v, -p])
            xs = (red.upper(0, 1),)
        else:
            red.left(_shear(r, v))
            red.right_block(0, [eye, -v, -p])
            sw = red.lower(1, 0)
            red.right_block(1, [-_pivot_inverse(sw, "w")])
            xs = (red.upper(1, 0),)
    else:  # lam == (4,)
        g1 = _pivot_inverse(
            np.concatenate([z.block(0, 0), z.block(0, 1)], axis=1), "(z0, z1)"
        )
        red.left(g1)
        p, v = red.upper(0, 2), red.lower(0, 2)
        q, w = red.upper(0, 3), red.lower(0, 3)
        red.left(_shear(r, v))
        h3 = v @ p + p @ v + v @ v @ v - q - v @ w
        red.right_block(0, [eye, -v, -p, h3])
        xs = (red.lower(0, 3),)
    target = pattern(lam, r, xs, variant)
    return red.result(xs, f"{_fmt(lam)}/x{variant}", target)


def reduce_ones(z: CoordMatrix) -> NormalFormResult:
    """All-ones partition, n >= 3: residual parameters x_4, ..., x_n."""
    if any(nk != 1 for nk in z.lam):
        raise ShapeMismatch("reduce_ones needs the all-ones partition")
    if z.n < 3:
        raise ShapeMismatch("need at least three blocks")
    if z.m != 2 * z.r:
        raise ShapeMismatch("normal forms need m = 2r")
    require_member(z)
    r = z.r
    red = _Reduction(z)
    g1 = _pivot_inverse(
        np.concatenate([z.block(0, 0), z.block(1, 0)], axis=1), "(z1, z2)"
    )
    red.left(g1)
    v0, v1 = red.upper(2, 0), red.lower(2, 0)
    h3 = _pivot_inverse(v0, "v0")
    h2 = -v1 @ h3
    red.left(_row_scale(r, _pivot_inverse(h2, "h2")))
    red.right_block(1, [h2])
    red.right_block(2, [h3])
    xs = []
    for j in range(3, z.n):
        wj = red.upper(j, 0)
        red.right_block(j, [_pivot_inverse(wj, f"w{j + 1}")])
        xs.append(-red.lower(j, 0))
    target = pattern(z.lam, r, xs)
    return red.result(tuple(xs), f"(1^{z.n})/x", target)


def _fmt(lam) -> str:
    return "(" + ",".join(str(n) for n in lam) + ")"
