"""Linearized Reed-Solomon codes with generic erasure decoding."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Collection, Sequence

from . import linalg
from .errors import (
    DimensionMismatch,
    FormatError,
    Inconsistent,
    InvalidK,
    TooManyGroups,
    Undecodable,
)
from .galois import Basis, ExtField, parse_field_descriptor
from .skew import SkewPoly, total_eval


@dataclass(frozen=True, eq=False)
class LrsCode:
    field: ExtField
    g: int
    k: int
    gamma: int
    basis: Basis
    a: tuple
    generator: list = field(repr=False)

    @property
    def r(self) -> int:
        return self.field.r

    @property
    def N(self) -> int:
        return self.g * self.field.r

    def encode(self, msg: Sequence[int]) -> list[int]:
        return encode(self, msg)

    def descriptor(self) -> str:
        K = self.field
        head = K.descriptor() + f"g={self.g}\nk={self.k}\ngamma={K.serialize(self.gamma)}\nbeta={self.basis.serialize()}\n"
        return head + linalg.format_matrix(K, self.generator, self.N)


def lrs_generator(K: ExtField, g: int, k: int, gamma: int | None = None, basis: Basis | None = None) -> LrsCode:
    """Row i of the generator is the total evaluation of x^i, i < k."""
    if g < 1 or g >= K.q:
        raise TooManyGroups(f"need 1 <= g < q, got g={g}, q={K.q}")
    N = g * K.r
    if not 0 <= k <= N:
        raise InvalidK(f"k={k} outside 0..{N}")
    if gamma is None:
        gamma = K.primitive
    elif K.order_of(gamma) != K.order - 1:
        raise FormatError("gamma is not primitive")
    if basis is None:
        basis = K.polynomial_basis()
    a = tuple(K.pow(gamma, j) for j in range(g))
    G = [total_eval(SkewPoly.monomial(K, i), a, basis) for i in range(k)]
    return LrsCode(K, g, k, gamma, basis, a, G)


def encode(code: LrsCode, msg: Sequence[int]) -> list[int]:
    if len(msg) != code.k:
        raise DimensionMismatch(f"message length {len(msg)} != k={code.k}")
    return linalg.vec_mat(code.field, msg, code.generator, code.N)


def is_mds(code: LrsCode) -> bool:
    return linalg.all_k_subsets_full_rank(code.field, code.generator)


def erasure_decode(F, generator, received: Sequence[int], erased: Collection[int]) -> list[int]:
    """Recover msg with msg*G = received on the unerased positions.

    Uses the k lowest-indexed unerased positions, then re-encodes and checks
    agreement on every unerased position.
    """
    k = len(generator)
    n = len(received)
    erased = set(erased)
    avail = [j for j in range(n) if j not in erased]
    if len(avail) < k:
        raise Undecodable(f"only {len(avail)} unerased positions for k={k}")
    if k == 0:
        return []
    S = avail[:k]
    sub = linalg.columns(generator, S)
    try:
        msg = linalg.solve_square(F, linalg.transpose(sub), [received[j] for j in S])
    except linalg.Singular:
        raise Undecodable(f"positions {S} do not form an information set") from None
    check = linalg.vec_mat(F, msg, generator)
    if any(check[j] != received[j] for j in avail):
        raise Inconsistent("re-encoded word disagrees with received symbols")
    return msg


def parse_code_descriptor(text: str) -> tuple[LrsCode, list[str]]:
    """Parse a code descriptor; returns the code and unconsumed lines."""
    lines = [ln for ln in (l.split("#", 1)[0].strip() for l in text.splitlines()) if ln]
    kv = {}
    while lines and "=" in lines[0]:
        key, val = lines.pop(0).split("=", 1)
        kv[key.strip()] = val.strip()
    try:
        K = parse_field_descriptor("\n".join(f"{k}={kv[k]}" for k in ("q", "r", "modulus") if k in kv))
        g, k = int(kv["g"]), int(kv["k"])
        gamma = K.parse(kv["gamma"])
        basis = Basis.parse(K, kv["beta"])
    except KeyError as exc:
        raise FormatError(f"missing key {exc}") from None
    G, rest = linalg.read_matrix(K, lines)
    code = lrs_generator(K, g, k, gamma, basis)
    if G != code.generator:
        raise FormatError("stored generator does not match the parameters")
    return code, rest
