import random
from fractions import Fraction
from math import lcm

import pytest

from lrspir import linalg
from lrspir.codes import lrs_generator
from lrspir.errors import CollusionTooLarge, IndexOutOfRange, InvalidParameter, MissingRound
from lrspir.galois import ExtField, PrimeField
from lrspir.pir import (
    PirScheme, audit_privacy_exact, derive_params, fold_support, mask_block, mask_matrix,
    rate, round_support, server_respond,
)
from lrspir.products import inner_product, mat_rep
from lrspir.storesim import init_database, random_files

from conftest import GRID


def test_rate_example():
    p = derive_params(4, 2, 5, 2, 2, 1)
    assert (p.N, p.c, p.b, p.s, p.chunk_h) == (8, 3, 3, 2, 1)
    assert rate(p) == Fraction(3, 8)


@pytest.mark.parametrize("p", GRID, ids=lambda p: "q{}g{}r{}d{}k{}t{}".format(*p))
def test_params_consistent(p):
    q, g, r, _, k, t = p
    P = derive_params(g, r, q, k, t, 3)
    N = g * r
    c = N - k - r * t + 1
    assert P.c == c and P.b == lcm(c, k) // k and P.s == lcm(c, k) // c
    assert P.b * k == P.s * c
    # each fold of each file is fully covered once across the s rounds
    for v in range(P.b):
        seen = sorted(x for u in range(P.s) for x in fold_support(P, u, v))
        assert len(set(seen)) == k
    for u in range(P.s):
        assert len(set(round_support(P, u))) == c


def test_param_errors():
    with pytest.raises(CollusionTooLarge):
        derive_params(3, 2, 5, 3, 2, 1)
    with pytest.raises(InvalidParameter):
        derive_params(3, 2, 5, 0, 1, 1)


def test_mask_block_is_projection():
    K = ExtField(PrimeField(5), 2)
    B = K.polynomial_basis()
    P = derive_params(3, 2, 5, 2, 1, 1)
    assert mask_matrix(P, 1, [3]) == [[0, 0], [0, 1]]
    e = mask_block(B, P, 1, [2, 3])
    assert mat_rep(B, e) == linalg.identity(2)
    rng = random.Random(0)
    x = [K.random(rng) for _ in range(2)]
    # x * E selects the coordinates of x (relative to the basis) on J
    e1 = mask_block(B, P, 1, [3])
    got = inner_product(B, x, e1)
    assert mat_rep(B, got) == [[0, c] for c in [row[1] for row in mat_rep(B, x)]]


def _scheme_and_db(p, m=2, seed=0):
    from lrspir.mrlrc import build_construction1

    q, g, r, delta, k, t = p
    C = build_construction1(q, r, delta, g, k)
    scheme = PirScheme(C.outer, t, m)
    files = random_files(C, m, scheme.params.b, random.Random(seed))
    return scheme, init_database(C, files, t), files


@pytest.mark.parametrize("p", GRID[::3], ids=lambda p: "q{}g{}r{}d{}k{}t{}".format(*p))
def test_noise_lies_in_product_code(p):
    scheme, db, _ = _scheme_and_db(p)
    rng = random.Random(1)
    words = scheme.sample_codewords(rng)
    noise = scheme.noise(db.Z(), words)
    assert scheme.syndrome(noise) == [0] * scheme.params.c
    assert linalg.in_row_space(scheme.field, scheme.product_code.generator, noise)


def test_round_recovers_interference_free_symbols():
    scheme, db, files = _scheme_and_db((5, 4, 2, 2, 2, 2))
    p = scheme.params
    rng = random.Random(2)
    i = 1
    for u in range(p.s):
        qr = scheme.gen_queries(i, u, rng)
        total = [x for j in range(p.g) for x in server_respond(scheme.basis, db.z_shares[j], qr.queries[j])]
        res = scheme.reconstruct_round(total, u)
        Z = db.Z()
        for v in range(p.b):
            zrow = Z[i * p.b + v]
            assert res.chunks[v] == [zrow[x] for x in fold_support(p, u, v)]


def test_reconstruct_file_needs_every_round():
    scheme, _, _ = _scheme_and_db((5, 4, 2, 2, 2, 2))
    with pytest.raises(MissingRound):
        scheme.reconstruct_file([None] * scheme.params.s)


def test_index_checks():
    scheme, _, _ = _scheme_and_db((5, 3, 1, 1, 1, 1))
    with pytest.raises(IndexOutOfRange):
        scheme.gen_queries(2, 0, random.Random(0))
    with pytest.raises(IndexOutOfRange):
        scheme.gen_queries(0, scheme.params.s, random.Random(0))


def test_privacy_audit_detects_bad_mask_code():
    # a rank-deficient masking code: only the x^0 row, repeated generator for rt = 2
    K = ExtField(PrimeField(5), 2)
    P = derive_params(3, 2, 5, 1, 1, 1)
    good = lrs_generator(K, 3, 2)
    assert audit_privacy_exact(P, good)
    bad = lrs_generator(K, 3, 2)
    object.__setattr__(bad, "generator", [good.generator[0], good.generator[0]])
    res = audit_privacy_exact(P, bad)
    assert not res and not any(res.per_set.values())


def test_single_fold_when_c_divides_k():
    # c | k: b = 1 and round u reads the consecutive block c*u .. c*u + c - 1
    P = derive_params(6, 1, 7, 4, 1, 2)
    assert (P.c, P.b, P.s) == (2, 1, 2) and P.scheme1
    for u in range(P.s):
        assert round_support(P, u) == list(range(P.c * u, P.c * u + P.c))
    from lrspir.storesim import run_retrieval

    scheme, db, files = _scheme_and_db((7, 6, 1, 1, 4, 1), m=2, seed=4)
    for i in range(2):
        assert run_retrieval(db, i, seed=i)[0] == files[i]
