import random

import pytest

from toda.exact import (
    GF,
    Mat,
    ZZ,
    block,
    diagonalize,
    invert,
    is_unimodular,
    nullspace,
    solve_matrix,
    split_epi_section,
    split_mono,
)


def mat(ring, rows):
    return Mat(ring, len(rows), len(rows[0]) if rows else 0, rows)


def random_mat(rng, ring, r, c, lo=-3, hi=3):
    if ring.is_field:
        return Mat(ring, r, c, [[rng.randrange(ring.p) for _ in range(c)] for _ in range(r)])
    return Mat(ring, r, c, [[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)])


def check_diag(A):
    dg = diagonalize(A)
    assert dg.U @ A @ dg.V == dg.D
    assert dg.U @ dg.Uinv == Mat.identity(A.ring, A.rows)
    assert dg.V @ dg.Vinv == Mat.identity(A.ring, A.cols)
    # diagonal, divisibility chain
    for i in range(A.rows):
        for j in range(A.cols):
            if i != j:
                assert dg.D.entry(i, j) == 0
    inv = dg.invariants
    for i in range(len(inv) - 1):
        if inv[i] and inv[i + 1]:
            assert inv[i + 1] % inv[i] == 0
        if inv[i] == 0:
            assert inv[i + 1] == 0
    return dg


def test_known_smith_forms():
    dg = check_diag(mat(ZZ, [[2, 4], [6, 8]]))
    assert dg.invariants == [2, 4]
    dg = check_diag(mat(ZZ, [[2]]))
    assert dg.invariants == [2]
    dg = check_diag(mat(ZZ, [[1, 0], [0, 1]]))
    assert dg.U == Mat.identity(ZZ, 2)
    assert dg.V == Mat.identity(ZZ, 2)


def test_diagonalize_random():
    rng = random.Random(7)
    for ring in (ZZ, GF(2), GF(5)):
        for _ in range(40):
            r, c = rng.randrange(0, 5), rng.randrange(0, 5)
            check_diag(random_mat(rng, ring, r, c))


def test_identity_block_is_left_alone():
    # cokernel bases of standard inclusions must be the complementary
    # standard vectors, in order
    for ring in (ZZ, GF(3)):
        F = block(ring, [[Mat.identity(ring, 2)], [Mat.zero(ring, 3, 2)]])
        s = split_mono(F)
        assert s is not None
        want = block(ring, [[Mat.zero(ring, 3, 2), Mat.identity(ring, 3)]])
        assert s.P == want
        F2 = block(ring, [[Mat.zero(ring, 3, 2)], [Mat.identity(ring, 2)]])
        s2 = split_mono(F2)
        assert s2.P == block(ring, [[Mat.identity(ring, 3), Mat.zero(ring, 3, 2)]])


def test_split_mono_identities():
    rng = random.Random(3)
    for ring in (ZZ, GF(2), GF(7)):
        found = 0
        while found < 10:
            m, k = rng.randrange(1, 5), rng.randrange(0, 4)
            if k > m:
                continue
            F = random_mat(rng, ring, m, k, -2, 2)
            s = split_mono(F)
            if s is None:
                continue
            found += 1
            eye_k = Mat.identity(ring, k)
            eye_m = Mat.identity(ring, m)
            assert s.R @ F == eye_k
            assert (s.P @ F).is_zero()
            assert s.P @ s.T == Mat.identity(ring, m - k)
            assert F @ s.R + s.T @ s.P == eye_m


def test_solve_and_nullspace():
    rng = random.Random(11)
    for ring in (ZZ, GF(2), GF(5)):
        for _ in range(30):
            r, c = rng.randrange(1, 5), rng.randrange(1, 5)
            A = random_mat(rng, ring, r, c)
            x = random_mat(rng, ring, c, 1)
            b = A @ x
            sol = solve_matrix(A, b)
            assert sol is not None
            assert A @ sol == b
            for v in nullspace(A):
                assert (A @ v).is_zero()


def test_solve_unsolvable():
    A = mat(ZZ, [[2]])
    assert solve_matrix(A, mat(ZZ, [[1]])) is None
    assert solve_matrix(A, mat(ZZ, [[4]])) is not None


def test_nullspace_is_integer_lattice_basis():
    # x + 2y = 0 over Z has basis (2, -1) up to sign, not (1, -1/2)
    A = mat(ZZ, [[1, 2]])
    ns = nullspace(A)
    assert len(ns) == 1
    v = [ns[0].entry(0, 0), ns[0].entry(1, 0)]
    assert sorted(map(abs, v)) == [1, 2]


def test_invert_and_unimodular():
    A = mat(ZZ, [[1, 1], [0, 1]])
    assert is_unimodular(A)
    assert A @ invert(A) == Mat.identity(ZZ, 2)
    assert not is_unimodular(mat(ZZ, [[2, 0], [0, 1]]))


def test_split_epi_section():
    for ring in (ZZ, GF(3)):
        F = block(ring, [[Mat.identity(ring, 2), Mat.zero(ring, 2, 1)]])
        S = split_epi_section(F)
        assert F @ S == Mat.identity(ring, 2)


def test_determinism():
    rng = random.Random(5)
    A = random_mat(rng, ZZ, 4, 4)
    d1 = diagonalize(A)
    d2 = diagonalize(A)
    assert d1.U == d2.U and d1.V == d2.V and d1.D == d2.D
