"""Skew polynomials F_{q^r}[x; sigma] and their operator evaluations.

A skew polynomial multiplies by the rule ``x * beta = sigma(beta) * x``.  It
is evaluated through the operators ``D_a^i(beta) = sigma^i(beta) * N_i(a)``
where ``N_i(a) = sigma^(i-1)(a) ... sigma(a) a`` and ``N_0(a) = 1``.
"""

from __future__ import annotations

from typing import Sequence

from .galois import Basis, ExtField


class SkewPoly:
    """Immutable skew polynomial; ``coeffs`` are low degree first, trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ExtField, coeffs: Sequence[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, field, i, coeff=1):
        return cls(field, [0] * i + [coeff])

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        a = a + (0,) * (n - len(a))
        b = b + (0,) * (n - len(b))
        return SkewPoly(F, [F.add(x, y) for x, y in zip(a, b)])

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        F = self.field
        return self + SkewPoly(F, [F.neg(x) for x in other.coeffs])

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        return skew_mul(self, other)

    def scale(self, a: int) -> "SkewPoly":
        """Left multiplication by the constant ``a``."""
        return SkewPoly(self.field, [self.field.mul(a, c) for c in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, SkewPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"SkewPoly({list(self.coeffs)})"

    def serialize(self) -> str:
        return " ".join(self.field.serialize(c) for c in self.coeffs)

    @classmethod
    def parse(cls, field, text: str) -> "SkewPoly":
        return cls(field, [field.parse(t) for t in text.split()])


def skew_mul(F: SkewPoly, G: SkewPoly) -> SkewPoly:
    """(FG)_m = sum over i+j=m of F_i * sigma^i(G_j)."""
    K = F.field
    if F.is_zero() or G.is_zero():
        return SkewPoly(K)
    out = [0] * (len(F.coeffs) + len(G.coeffs) - 1)
    for i, fi in enumerate(F.coeffs):
        if not fi:
            continue
        for j, gj in enumerate(G.coeffs):
            if gj:
                out[i + j] = K.add(out[i + j], K.mul(fi, K.frob(gj, i)))
    return SkewPoly(K, out)


def norm_i(K: ExtField, a: int, i: int) -> int:
    n = 1
    for e in range(i):
        n = K.mul(K.frob(a, e), n)
    return n


def op_eval(F: SkewPoly, a: int, beta: int) -> int:
    """F^{D_a}(beta) = sum_i F_i sigma^i(beta) N_i(a)."""
    K = F.field
    acc = 0
    s = beta  # sigma^i(beta)
    n = 1     # N_i(a)
    a_i = a   # sigma^i(a)
    for i, fi in enumerate(F.coeffs):
        if fi:
            acc = K.add(acc, K.mul(fi, K.mul(s, n)))
        s = K.frob(s)
        n = K.mul(a_i, n)
        a_i = K.frob(a_i)
    return acc


def total_eval(F: SkewPoly, a_vec: Sequence[int], basis: Basis | Sequence[int]) -> list[int]:
    """Concatenation over the groups of (F^{D_a_j}(beta_1), ..., F^{D_a_j}(beta_r))."""
    return [op_eval(F, a, b) for a in a_vec for b in basis]


def random_skew(K: ExtField, max_deg_exclusive: int, rng) -> SkewPoly:
    """Uniform element of the space of polynomials with degree < ``max_deg_exclusive``."""
    return SkewPoly(K, [K.random(rng) for _ in range(max_deg_exclusive)])
