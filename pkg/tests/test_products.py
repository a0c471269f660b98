import random

import pytest

from lrspir import linalg
from lrspir.codes import lrs_generator
from lrspir.errors import BlockMismatch, InvalidDimension
from lrspir.galois import Basis, ExtField, PrimeField
from lrspir.products import (
    code_product_span, cw_product, inner_product, mat_rep, mat_rep_inv, star, star_by_matrices,
)
from lrspir.skew import random_skew, total_eval

K = ExtField(PrimeField(5), 2)
K3 = ExtField(PrimeField(7), 3)


def random_basis(F, rng):
    while True:
        try:
            return Basis(F, [F.random(rng) for _ in range(F.r)])
        except Exception:
            continue


@pytest.mark.parametrize("F", [K, K3])
def test_mat_rep_roundtrip_and_identity(F):
    rng = random.Random(0)
    B = random_basis(F, rng)
    assert mat_rep(B, list(B)) == linalg.identity(F.r)
    for _ in range(50):
        x = [F.random(rng) for _ in range(F.r)]
        assert mat_rep_inv(B, mat_rep(B, x)) == x


@pytest.mark.parametrize("F", [K, K3])
def test_star_matches_matrix_route(F):
    rng = random.Random(1)
    B = random_basis(F, rng)
    for _ in range(200):
        x = [F.random(rng) for _ in range(F.r)]
        y = [F.random(rng) for _ in range(F.r)]
        assert star(B, x, y) == star_by_matrices(B, x, y)


def test_star_basis_is_identity():
    rng = random.Random(2)
    B = random_basis(K3, rng)
    for _ in range(30):
        x = [K3.random(rng) for _ in range(3)]
        assert star(B, x, list(B)) == x
        assert star(B, list(B), x) == x


def test_star_associative_not_commutative():
    rng = random.Random(3)
    B = random_basis(K3, rng)
    noncomm = False
    for _ in range(100):
        x, y, z = ([K3.random(rng) for _ in range(3)] for _ in range(3))
        assert star(B, star(B, x, y), z) == star(B, x, star(B, y, z))
        noncomm |= star(B, x, y) != star(B, y, x)
    assert noncomm


def test_block_mismatch():
    B = K.polynomial_basis()
    with pytest.raises(BlockMismatch):
        cw_product(B, [1, 2, 3], [1, 2, 3])
    with pytest.raises(BlockMismatch):
        inner_product(B, [1, 2], [1, 2, 3, 4])
    with pytest.raises(BlockMismatch):
        star(B, [1], [1, 2])


def test_inner_product_is_sum_of_blocks():
    rng = random.Random(4)
    B = random_basis(K, rng)
    x = [K.random(rng) for _ in range(6)]
    y = [K.random(rng) for _ in range(6)]
    cw = cw_product(B, x, y)
    expect = [K.add(K.add(cw[i], cw[2 + i]), cw[4 + i]) for i in range(2)]
    assert inner_product(B, x, y) == expect


def test_product_theorem_random():
    rng = random.Random(5)
    code = lrs_generator(K3, 4, 1)
    for _ in range(100):
        F, G = random_skew(K3, 5, rng), random_skew(K3, 6, rng)
        lhs = total_eval(F * G, code.a, code.basis)
        rhs = cw_product(code.basis, total_eval(F, code.a, code.basis), total_eval(G, code.a, code.basis))
        assert lhs == rhs


def test_product_span_r1_is_classical_rs():
    # r = 1: LRS collapses to RS on points gamma^j, products follow the Schur rule
    F = ExtField(PrimeField(5), 1)
    pts = [pow(2, j, 5) for j in range(4)]
    for k1 in range(1, 5):
        for k2 in range(1, 5):
            c1, c2 = lrs_generator(F, 4, k1), lrs_generator(F, 4, k2)
            kk = min(k1 + k2 - 1, 4)
            vander = [[pow(p, i, 5) for p in pts] for i in range(kk)]
            assert linalg.row_space_equal(F, code_product_span(c1, c2), vander)


def test_product_span_with_zero_code():
    c1, c0 = lrs_generator(K, 3, 2), lrs_generator(K, 3, 0)
    assert code_product_span(c1, c0) == []


def test_product_span_rejects_mismatched_codes():
    c1 = lrs_generator(K, 3, 2)
    c2 = lrs_generator(K, 2, 2)
    with pytest.raises(InvalidDimension):
        code_product_span(c1, c2)
    with pytest.raises(InvalidDimension):
        code_product_span(lrs_generator(K, 3, 0), c1)
