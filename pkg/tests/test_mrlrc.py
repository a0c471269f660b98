import random

import pytest

from lrspir import linalg
from lrspir.errors import BudgetExceeded, FieldTooSmall, FormatError, InvalidK, TooManyGroups, Uncorrectable
from lrspir.galois import PrimeField
from lrspir.mrlrc import (
    audit_cost, audit_mr, build_construction1, check_local_generator, encode_global,
    local_distance_ok, make_local_code, parse_mrlrc_descriptor, repair,
)

from oracles import admissible


def test_local_code_is_systematic_grs():
    F = PrimeField(5)
    L = make_local_code(F, 2, 2)
    assert [row[:2] for row in L.A] == linalg.identity(2)
    # third column lies on the degree < 2 polynomial through points 0,1: f(2) = 2 f(1) - f(0)
    assert [row[2] for row in L.A] == [4, 2]
    with pytest.raises(FieldTooSmall):
        make_local_code(F, 4, 3)


def test_check_local_generator():
    F = PrimeField(5)
    with pytest.raises(FormatError):
        check_local_generator(F, 2, 2, [[1, 0, 1], [0, 1, 0]])
    with pytest.raises(FormatError):
        check_local_generator(F, 2, 2, [[0, 1, 1], [1, 0, 1]])


def test_construction_shape():
    C = build_construction1(5, 2, 2, 3, 3)
    assert (C.n, C.N, C.k, C.global_parities) == (9, 6, 3, 3)
    assert C.groups == [[0, 1, 2], [3, 4, 5], [6, 7, 8]]
    assert C.systematic_positions == [0, 1, 3, 4, 6, 7]
    for grow, orow in zip(C.G_glob, C.outer.generator):
        assert [grow[p] for p in C.systematic_positions] == orow
    assert local_distance_ok(C)


def test_construction_errors():
    with pytest.raises(TooManyGroups):
        build_construction1(5, 2, 2, 5, 2)
    with pytest.raises(FieldTooSmall):
        build_construction1(5, 3, 4, 3, 2)
    with pytest.raises(InvalidK):
        build_construction1(5, 2, 2, 3, 0)


def test_audit_budget():
    C = build_construction1(7, 2, 2, 5, 4)
    assert audit_cost(C) == 3 ** 5 * 210
    with pytest.raises(BudgetExceeded):
        audit_mr(C, budget=1000)


def test_repair_exhaustive_small():
    # every erasure pattern of a small code: repair succeeds iff admissible
    C = build_construction1(5, 2, 2, 3, 3)
    K = C.field
    rng = random.Random(0)
    Y, _ = encode_global(C, [[K.random(rng) for _ in range(3)]])
    y = Y[0]
    for mask in range(1 << C.n):
        erased = {j for j in range(C.n) if mask >> j & 1}
        damaged = [0 if j in erased else v for j, v in enumerate(y)]
        if admissible(C, erased):
            assert repair(C, damaged, erased) == y
        else:
            with pytest.raises(Uncorrectable):
                repair(C, damaged, erased)


def test_encode_global_rows():
    C = build_construction1(5, 1, 2, 3, 2)
    Y, Z = encode_global(C, [[1, 2], [3, 4]])
    assert [[row[p] for p in C.systematic_positions] for row in Y] == Z


def test_descriptor_roundtrip():
    C = build_construction1(7, 3, 2, 3, 3)
    D, rest = parse_mrlrc_descriptor(C.descriptor())
    assert D.G_glob == C.G_glob and rest == []
