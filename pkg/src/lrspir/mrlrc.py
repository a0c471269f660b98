"""Maximally recoverable LRC: an LRS outer code times diag(A, ..., A).

Coordinates of the global code split into g consecutive local groups of
size r + delta - 1.  ``A`` is a systematic generator of a local MDS code
over F_q, so the first r coordinates of every group reproduce the outer
codeword exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Collection, Sequence

from . import linalg
from .codes import LrsCode, lrs_generator, parse_code_descriptor
from .errors import (
    BudgetExceeded,
    ConstructionFailed,
    DimensionMismatch,
    FieldTooSmall,
    FormatError,
    InvalidK,
    RankDeficient,
    TooManyGroups,
    Uncorrectable,
)
from .galois import Basis, ExtField, PrimeField

DEFAULT_AUDIT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class LocalCode:
    r: int
    delta: int
    A: list  # r x (r + delta - 1) over F_q, first r columns the identity

    @property
    def length(self) -> int:
        return self.r + self.delta - 1


def make_local_code(base: PrimeField | int, r: int, delta: int) -> LocalCode:
    """Systematic generalized RS code over F_q on the points 0..r+delta-2."""
    Fq = base if isinstance(base, PrimeField) else PrimeField(base)
    if r < 1 or delta < 1:
        raise ValueError("need r >= 1 and delta >= 1")
    n_loc = r + delta - 1
    if Fq.q < n_loc:
        raise FieldTooSmall(f"q={Fq.q} < r+delta-1={n_loc}")
    V = [[Fq.pow(p, i) for p in range(n_loc)] for i in range(r)]
    A = linalg.mat_mul(Fq, linalg.inverse(Fq, linalg.columns(V, range(r))), V)
    if linalg.columns(A, range(r)) != linalg.identity(r) or not linalg.all_k_subsets_full_rank(Fq, A):
        raise ConstructionFailed("local generator is not systematic MDS")
    return LocalCode(r, delta, A)


def check_local_generator(Fq: PrimeField, r: int, delta: int, A) -> LocalCode:
    """Validate a user-supplied local generator."""
    if len(A) != r or any(len(row) != r + delta - 1 for row in A):
        raise DimensionMismatch(f"local generator must be {r} x {r + delta - 1}")
    if linalg.columns(A, range(r)) != linalg.identity(r):
        raise FormatError("local generator is not systematic")
    if not linalg.all_k_subsets_full_rank(Fq, A):
        raise FormatError("local generator is not MDS")
    return LocalCode(r, delta, [list(row) for row in A])


@dataclass(frozen=True, eq=False)
class MrLrc:
    outer: LrsCode
    local: LocalCode
    G_glob: list = field(repr=False)

    @property
    def field(self) -> ExtField:
        return self.outer.field

    @property
    def g(self) -> int:
        return self.outer.g

    @property
    def r(self) -> int:
        return self.local.r

    @property
    def delta(self) -> int:
        return self.local.delta

    @property
    def k(self) -> int:
        return self.outer.k

    @property
    def N(self) -> int:
        return self.outer.N

    @property
    def n(self) -> int:
        return self.g * self.local.length

    @property
    def global_parities(self) -> int:
        return self.N - self.k

    @property
    def groups(self) -> list[list[int]]:
        L = self.local.length
        return [list(range(j * L, (j + 1) * L)) for j in range(self.g)]

    @property
    def systematic_positions(self) -> list[int]:
        """Union of the first r coordinates of each group."""
        return [p for grp in self.groups for p in grp[: self.r]]

    def descriptor(self) -> str:
        Fq = self.field.base
        return self.outer.descriptor() + f"delta={self.delta}\n" + linalg.format_matrix(Fq, self.local.A)


def block_diag_product(K: ExtField, G_out, local: LocalCode) -> list[list[int]]:
    """G_out times diag_g(A), computed group by group."""
    r = local.r
    out = []
    for row in G_out:
        new = []
        for p in range(0, len(row), r):
            new.extend(linalg.vec_mat(K, row[p:p + r], local.A))
        out.append(new)
    return out


def build_construction1(q: int, r: int, delta: int, g: int, k: int, *, modulus=None,
                        gamma=None, basis_elems=None, local_generator=None) -> MrLrc:
    Fq = PrimeField(q)
    if g >= q:
        raise TooManyGroups(f"need q > g, got q={q}, g={g}")
    if q < r + delta - 1:
        raise FieldTooSmall(f"need q >= r+delta-1, got q={q}")
    if not 1 <= k <= g * r:
        raise InvalidK(f"k={k} outside 1..{g * r}")
    K = ExtField(Fq, r, modulus)
    basis = Basis(K, basis_elems) if basis_elems is not None else None
    outer = lrs_generator(K, g, k, gamma, basis)
    if local_generator is None:
        local = make_local_code(Fq, r, delta)
    else:
        local = check_local_generator(Fq, r, delta, local_generator)
    return MrLrc(outer, local, block_diag_product(K, outer.generator, local))


def encode_global(C: MrLrc, X) -> tuple[list[list[int]], list[list[int]]]:
    """Y = X G_glob (stored) and Z = X G_out (the non-redundant part)."""
    K = C.field
    if any(len(row) != C.k for row in X):
        raise DimensionMismatch(f"message rows must have length k={C.k}")
    Y = [linalg.vec_mat(K, row, C.G_glob, C.n) for row in X]
    Z = [linalg.vec_mat(K, row, C.outer.generator, C.N) for row in X]
    return Y, Z


def _local_repair(C: MrLrc, seg, erased_local):
    K = C.field
    r = C.r
    P = [i for i in range(C.local.length) if i not in erased_local][:r]
    AP = linalg.columns(C.local.A, P)
    u = linalg.solve_square(K, linalg.transpose(AP), [seg[i] for i in P])
    return linalg.vec_mat(K, u, C.local.A)


def repair(C: MrLrc, row: Sequence[int], erased: Collection[int]) -> list[int]:
    """Fill in erased coordinates of a stored codeword.

    Groups with at most delta-1 erasures are repaired from their own
    coordinates.  Anything left is decoded through the global code using
    r available coordinates per group (fewer where a group has fewer).
    """
    K = C.field
    if len(row) != C.n:
        raise DimensionMismatch(f"row length {len(row)} != n={C.n}")
    erased = set(erased)
    out = list(row)
    remaining = set()
    for grp in C.groups:
        lost = [i for i, p in enumerate(grp) if p in erased]
        if not lost:
            continue
        if len(lost) <= C.delta - 1:
            fixed = _local_repair(C, [out[p] for p in grp], set(lost))
            for i, p in enumerate(grp):
                out[p] = fixed[i]
        else:
            remaining.update(grp[i] for i in lost)
    if not remaining:
        return out

    avail = [[p for p in grp if p not in remaining] for grp in C.groups]
    if sum(min(C.r, len(a)) for a in avail) < C.k:
        raise Uncorrectable("fewer than k independent coordinates survive", phase="global")
    S = _choose_positions(C, avail)
    if S is None:
        raise Uncorrectable("no admissible coordinate choice has rank k", phase="global")
    _, pivots = linalg.rref(K, linalg.columns(C.G_glob, S))
    cols = [S[i] for i in pivots]
    msg = linalg.solve_square(K, linalg.transpose(linalg.columns(C.G_glob, cols)), [out[p] for p in cols])
    return linalg.vec_mat(K, msg, C.G_glob)


def _choose_positions(C: MrLrc, avail):
    K = C.field
    greedy = [p for a in avail for p in a[: C.r]]
    if linalg.rank(K, linalg.columns(C.G_glob, greedy)) == C.k:
        return greedy
    for choice in product(*(combinations(a, min(C.r, len(a))) for a in avail)):
        S = [p for part in choice for p in part]
        if linalg.rank(K, linalg.columns(C.G_glob, S)) == C.k:
            return S
    return None


@dataclass
class MrAudit:
    passed: bool
    checks: int
    witness_delta: tuple | None = None
    witness_subset: tuple | None = None

    def __bool__(self):
        return self.passed


def audit_cost(C: MrLrc) -> int:
    return comb(C.local.length, C.r) ** C.g * comb(C.N, C.k)


def audit_mr(C: MrLrc, budget: int = DEFAULT_AUDIT_BUDGET) -> MrAudit:
    """Every choice of r coordinates per group must restrict to an MDS code."""
    cost = audit_cost(C)
    if cost > budget:
        raise BudgetExceeded(f"{cost} subset checks exceed budget {budget}")
    K = C.field
    checks = 0
    for choice in product(*(combinations(grp, C.r) for grp in C.groups)):
        delta_set = tuple(p for part in choice for p in part)
        M = linalg.columns(C.G_glob, delta_set)
        try:
            bad = linalg.find_singular_subset(K, M)
        except RankDeficient:
            bad = tuple(range(C.k))
        checks += comb(C.N, C.k)
        if bad is not None:
            return MrAudit(False, checks, delta_set, tuple(delta_set[i] for i in bad))
    return MrAudit(True, checks)


def local_distance_ok(C: MrLrc) -> bool:
    """Each group restriction has distance >= delta iff A's r-column minors are all nonzero."""
    return linalg.all_k_subsets_full_rank(C.field.base, C.local.A)


def parse_mrlrc_descriptor(text: str) -> tuple[MrLrc, list[str]]:
    outer, lines = parse_code_descriptor(text)
    if not lines or not lines[0].startswith("delta="):
        raise FormatError("missing delta= line")
    delta = int(lines.pop(0).split("=", 1)[1])
    Fq = outer.field.base
    A, rest = linalg.read_matrix(Fq, lines)
    local = check_local_generator(Fq, outer.r, delta, A)
    return MrLrc(outer, local, block_diag_product(outer.field, outer.generator, local)), rest
