"""Private retrieval from the non-redundant part of an MR-LRC database.

Servers are local groups.  Each query to server j is a random codeword block
of C_{N,rt} plus, in the blocks of the wanted file, a 0/1 diagonal mask that
picks out a few coordinates.  Responses are inner matrix products, so the
random part of the total response lands in C_{N,k+rt-1} and dies under its
parity-check matrix, leaving a small known-support system.

All indices here (servers, files, iterations, folds, coordinates) are
0-based.  File rows are ordered file-major: row ``l*b + v`` of the stored
matrix is fold v of file l, and query blocks follow the same order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import lcm
from typing import Sequence

from . import linalg
from .codes import LrsCode, erasure_decode, lrs_generator
from .errors import (
    BlockMismatch,
    CollusionTooLarge,
    IndexOutOfRange,
    InvalidParameter,
    MissingRound,
    SingularSupport,
)
from .galois import Basis
from .products import inner_product, mat_rep_inv
from .skew import random_skew


@dataclass(frozen=True)
class PirParams:
    g: int
    r: int
    q: int
    k: int
    t: int
    m: int
    N: int
    c: int
    b: int
    s: int
    chunk_h: int

    @property
    def scheme1(self) -> bool:
        """No folding needed: c divides k."""
        return self.b == 1

    @property
    def collusion_dim(self) -> int:
        return self.r * self.t

    def describe(self) -> str:
        return (f"g={self.g} r={self.r} q={self.q} k={self.k} t={self.t} m={self.m} "
                f"N={self.N} c={self.c} b={self.b} s={self.s} chunk_h={self.chunk_h}")


def derive_params(g: int, r: int, q: int, k: int, t: int, m: int) -> PirParams:
    for name, v in (("g", g), ("r", r), ("q", q), ("k", k), ("t", t), ("m", m)):
        if v < 1:
            raise InvalidParameter(f"{name} must be positive, got {v}")
    N = g * r
    if k + r * t > N:
        raise CollusionTooLarge(f"k + rt = {k + r * t} exceeds N = {N}")
    c = N - k - r * t + 1
    L = lcm(c, k)
    b, s = L // k, L // c
    h = k // s
    assert b * k == s * c and h * s == k and h * b == c
    return PirParams(g, r, q, k, t, m, N, c, b, s, h)


def rate(params: PirParams) -> Fraction:
    R = Fraction(params.b * params.k, params.N * params.s)
    assert R == Fraction(params.N - params.k - params.r * params.t + 1, params.N)
    return R


def fold_support(params: PirParams, u: int, v: int) -> list[int]:
    """Coordinates J_u^v carrying fold v of the wanted file in iteration u."""
    h, N = params.chunk_h, params.N
    start = h * (v + u)
    return [(start + x) % N for x in range(h)]


def round_support(params: PirParams, u: int) -> list[int]:
    S = [p for v in range(params.b) for p in fold_support(params, u, v)]
    assert len(set(S)) == params.c
    return S


def mask_matrix(params: PirParams, j: int, J) -> list[list[int]]:
    """Diagonal 0/1 matrix selecting server j's coordinates that lie in J."""
    r = params.r
    J = set(J)
    return [[1 if a == b and j * r + a in J else 0 for b in range(r)] for a in range(r)]


def mask_block(basis: Basis, params: PirParams, j: int, J) -> list[int]:
    return mat_rep_inv(basis, mask_matrix(params, j, J))


def server_respond(basis: Basis, z_j: Sequence[Sequence[int]], q_j: Sequence[int]) -> list[int]:
    """Inner matrix product of the server's bm x r share with its query."""
    flat = [x for row in z_j for x in row]
    if len(flat) != len(q_j):
        raise BlockMismatch(f"share has {len(flat)} symbols, query {len(q_j)}")
    return inner_product(basis, flat, q_j)


@dataclass
class QueryRound:
    u: int
    queries: list          # per server, flat length r*b*m
    codewords: list        # m*b masking codewords of C_{N,rt}
    supports: list         # J_u^v for each fold v


@dataclass
class RoundResult:
    syndrome: list
    chunks: list           # b lists of chunk_h symbols


class PirScheme:
    """Query generation and reconstruction for one outer code and (t, m)."""

    def __init__(self, outer: LrsCode, t: int, m: int):
        K = outer.field
        self.outer = outer
        self.field = K
        self.basis = outer.basis
        self.params = derive_params(outer.g, outer.r, K.q, outer.k, t, m)
        p = self.params
        self.mask_code = lrs_generator(K, p.g, p.r * p.t, outer.gamma, outer.basis)
        self.product_code = lrs_generator(K, p.g, p.k + p.r * p.t - 1, outer.gamma, outer.basis)
        self.H = linalg.null_space(K, self.product_code.generator, p.N)
        assert len(self.H) == p.c

    def _check_indices(self, i, u):
        p = self.params
        if not 0 <= i < p.m:
            raise IndexOutOfRange(f"file index {i} outside 0..{p.m - 1}")
        if not 0 <= u < p.s:
            raise IndexOutOfRange(f"iteration {u} outside 0..{p.s - 1}")

    def sample_codewords(self, rng) -> list[list[int]]:
        p = self.params
        K = self.field
        out = []
        for _ in range(p.m * p.b):
            F = random_skew(K, p.r * p.t, rng)
            msg = list(F.coeffs) + [0] * (p.r * p.t - len(F.coeffs))
            out.append(self.mask_code.encode(msg))
        return out

    def assemble_queries(self, i: int, u: int, codewords) -> QueryRound:
        """Deterministic part of query generation given the masking codewords."""
        self._check_indices(i, u)
        p = self.params
        K = self.field
        r = p.r
        supports = [fold_support(p, u, v) for v in range(p.b)]
        queries = []
        for j in range(p.g):
            qj = []
            for d in codewords:
                qj.extend(d[j * r:(j + 1) * r])
            for v, J in enumerate(supports):
                blk = (i * p.b + v) * r
                e = mask_block(self.basis, p, j, J)
                for x in range(r):
                    qj[blk + x] = K.add(qj[blk + x], e[x])
            queries.append(qj)
        return QueryRound(u, queries, codewords, supports)

    def gen_queries(self, i: int, u: int, rng) -> QueryRound:
        self._check_indices(i, u)
        return self.assemble_queries(i, u, self.sample_codewords(rng))

    def syndrome(self, total: Sequence[int]) -> list[int]:
        K = self.field
        out = []
        for hrow in self.H:
            acc = 0
            for x, h in zip(total, hrow):
                if x and h:
                    acc = K.add(acc, K.mul(x, h))
            out.append(acc)
        return out

    def reconstruct_round(self, total: Sequence[int], u: int) -> RoundResult:
        p = self.params
        if len(total) != p.N:
            raise BlockMismatch(f"total response has length {len(total)}, expected {p.N}")
        syn = self.syndrome(total)
        S = round_support(p, u)
        try:
            vals = linalg.solve_square(self.field, linalg.columns(self.H, S), syn)
        except linalg.Singular:
            raise SingularSupport(f"parity columns {S} are singular") from None
        h = p.chunk_h
        return RoundResult(syn, [vals[v * h:(v + 1) * h] for v in range(p.b)])

    def reconstruct_file(self, chunks_by_round) -> list[list[int]]:
        """Stack the b recovered rows of the file from all s rounds of chunks."""
        p = self.params
        if len(chunks_by_round) != p.s or any(c is None for c in chunks_by_round):
            raise MissingRound(f"need all {p.s} rounds")
        rows = []
        for v in range(p.b):
            received = [0] * p.N
            known = set()
            for u, chunks in enumerate(chunks_by_round):
                for pos, val in zip(fold_support(p, u, v), chunks[v]):
                    received[pos] = val
                    known.add(pos)
            assert len(known) == p.k
            erased = [x for x in range(p.N) if x not in known]
            rows.append(erasure_decode(self.field, self.outer.generator, received, erased))
        return rows

    def noise(self, Z, codewords) -> list[int]:
        """sum over (l, v) of z^{l,v} * d^{l,v}; lies in C_{N,k+rt-1}."""
        from .products import cw_product

        K = self.field
        acc = [0] * self.params.N
        for zrow, d in zip(Z, codewords):
            acc = [K.add(a, b) for a, b in zip(acc, cw_product(self.basis, zrow, d))]
        return acc


@dataclass
class PrivacyAudit:
    passed: bool
    per_set: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def colluding_coordinates(params: PirParams, T) -> list[int]:
    r = params.r
    return [j * r + x for j in sorted(T) for x in range(r)]


def audit_privacy_exact(params: PirParams, mask_code: LrsCode, sets=None) -> PrivacyAudit:
    """For each colluding set T, the masking code restricted to T's coordinates
    must have full rank rt, making the colluders' view uniform for every file."""
    K = mask_code.field
    rt = params.r * params.t
    if sets is None:
        sets = combinations(range(params.g), params.t)
    res = {}
    for T in sets:
        T = tuple(T)
        sub = linalg.columns(mask_code.generator, colluding_coordinates(params, T))
        res[T] = linalg.rank(K, sub) == rt if sub else rt == 0
    return PrivacyAudit(all(res.values()), res)


def colluder_query_distribution(scheme: PirScheme, i: int, u: int, T) -> Counter:
    """Exact distribution of the colluders' queries, by enumerating all randomness."""
    p = scheme.params
    K = scheme.field
    rt = p.r * p.t
    per_word = [scheme.mask_code.encode(list(msg)) for msg in product(K.elements(), repeat=rt)]
    counts = Counter()
    for words in product(per_word, repeat=p.m * p.b):
        qr = scheme.assemble_queries(i, u, list(words))
        counts[tuple(tuple(qr.queries[j]) for j in sorted(T))] += 1
    return counts
