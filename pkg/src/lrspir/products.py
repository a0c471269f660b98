"""Matrix products on F_{q^r}^r and their blockwise extensions to F_{q^r}^N.

Vectors of length N = g*r are plain flat lists read as g consecutive blocks
of length r.  With ``M(x)`` the r x r matrix whose column j holds the
coordinates of ``x_j`` in the basis, ``x ⋆ y = M^{-1}(M(x) M(y))``.
"""

from __future__ import annotations

from typing import Sequence

from . import linalg
from .errors import BlockMismatch, InvalidDimension
from .galois import Basis


def mat_rep(basis: Basis, x: Sequence[int]) -> list[list[int]]:
    """r x r matrix over F_q; column j is the coordinate vector of x_j."""
    r = len(basis)
    if len(x) != r:
        raise BlockMismatch(f"expected a block of length {r}")
    cols = [basis.decompose(xj) for xj in x]
    return [[cols[j][i] for j in range(r)] for i in range(r)]


def mat_rep_inv(basis: Basis, M: Sequence[Sequence[int]]) -> list[int]:
    r = len(basis)
    return [basis.compose([M[i][j] for i in range(r)]) for j in range(r)]


def star(basis: Basis, x: Sequence[int], y: Sequence[int]) -> list[int]:
    """x ⋆ y computed as sum_i x_i * y^i, where y = sum_i beta_i y^i."""
    K = basis.field
    r = len(basis)
    if len(x) != r or len(y) != r:
        raise BlockMismatch(f"expected blocks of length {r}")
    out = [0] * r
    for j, yj in enumerate(y):
        coords = basis.decompose(yj)
        acc = 0
        for xi, c in zip(x, coords):
            if c and xi:
                acc = K.add(acc, K.mul(xi, c))
        out[j] = acc
    return out


def star_by_matrices(basis: Basis, x: Sequence[int], y: Sequence[int]) -> list[int]:
    """The defining route M^{-1}(M(x) M(y)); slower, kept as a cross-check."""
    Fq = basis.field.base
    return mat_rep_inv(basis, linalg.mat_mul(Fq, mat_rep(basis, x), mat_rep(basis, y)))


def _blocks(basis, x, y):
    r = len(basis)
    if len(x) != len(y) or len(x) % r:
        raise BlockMismatch(f"lengths {len(x)} and {len(y)} are not matching multiples of r={r}")
    return [(x[p:p + r], y[p:p + r]) for p in range(0, len(x), r)]


def cw_product(basis: Basis, x: Sequence[int], y: Sequence[int]) -> list[int]:
    """Coordinate-wise matrix product x * y: blockwise ⋆."""
    out = []
    for xb, yb in _blocks(basis, x, y):
        out.extend(star(basis, xb, yb))
    return out


def inner_product(basis: Basis, x: Sequence[int], y: Sequence[int]) -> list[int]:
    """Inner matrix product x · y = sum_j x_j ⋆ y_j, a length-r vector."""
    K = basis.field
    acc = [0] * len(basis)
    for xb, yb in _blocks(basis, x, y):
        acc = [K.add(a, b) for a, b in zip(acc, star(basis, xb, yb))]
    return acc


def code_product_span(code1, code2) -> list[list[int]]:
    """Generator (reduced rows) of the F_{q^r}-span of all row_i(G1) * row_j(G2).

    Both codes must share field, evaluation points and basis.
    """
    if code1.k < 1 or code2.k < 0:
        raise InvalidDimension("need k1 >= 1 and k2 >= 0")
    if code1.basis != code2.basis or list(code1.a) != list(code2.a):
        raise InvalidDimension("codes use different evaluation data")
    K = code1.field
    rows = [cw_product(code1.basis, g1, g2) for g1 in code1.generator for g2 in code2.generator]
    R, rk = linalg.rref_rank(K, rows)
    return R[:rk]
