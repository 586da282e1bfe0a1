import random
from fractions import Fraction

import numpy as np
import pytest

from derizero import ExactMatrix, GF, QQ, kernel_basis, rref, solve
from derizero.linalg import DimensionMismatch, inverse, rank


def test_rref_identity():
    m = ExactMatrix.identity(QQ, 2)
    res = rref(m)
    assert res.reduced == m
    assert res.pivot_columns == [0, 1]
    assert res.rank == 2


def test_rref_zero():
    m = ExactMatrix.zeros(QQ, 2, 2)
    res = rref(m)
    assert res.reduced == m
    assert res.pivot_columns == []
    assert res.rank == 0


def test_rref_over_f2():
    m = ExactMatrix.from_rows(GF(2), [[1, 1], [1, 1]])
    res = rref(m)
    assert res.reduced.data.tolist() == [[1, 1], [0, 0]]
    assert res.rank == 1


def test_rref_transform_multiplies_back():
    rng = random.Random(0)
    for field in (QQ, GF(5)):
        for _ in range(10):
            rows = [[rng.randint(-4, 4) for _ in range(4)] for _ in range(3)]
            m = ExactMatrix.from_rows(field, rows)
            res = rref(m)
            assert (res.transform @ m) == res.reduced
            # transform invertible
            assert rank(res.transform) == m.rows


def test_rref_idempotent():
    rng = random.Random(1)
    for _ in range(10):
        rows = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(4)]
        m = ExactMatrix.from_rows(QQ, rows)
        red = rref(m).reduced
        assert rref(red).reduced == red


def test_rank_transpose():
    rng = random.Random(2)
    for field in (QQ, GF(2), GF(7)):
        for _ in range(10):
            rows = [[rng.randint(0, 6) for _ in range(5)] for _ in range(3)]
            m = ExactMatrix.from_rows(field, rows)
            assert rank(m) == rank(m.transpose())


def test_solve_identity():
    a = ExactMatrix.identity(QQ, 2)
    x = solve(a, [3, 5])
    assert x.data[:, 0].tolist() == [Fraction(3), Fraction(5)]


def test_solve_inconsistent():
    a = ExactMatrix.zeros(QQ, 2, 2)
    assert solve(a, [1, 0]) is None


def test_solve_exact_residual():
    rng = random.Random(3)
    for field in (QQ, GF(3)):
        for _ in range(20):
            a = ExactMatrix.from_rows(
                field, [[rng.randint(-3, 3) for _ in range(3)]
                        for _ in range(4)])
            target = [rng.randint(-3, 3) for _ in range(4)]
            x = solve(a, target)
            if x is None:
                continue
            b = ExactMatrix.from_rows(field, [[t] for t in target])
            assert (a @ x) == b  # no tolerance: exact arithmetic


def test_solve_dimension_mismatch():
    a = ExactMatrix.identity(QQ, 2)
    with pytest.raises(DimensionMismatch):
        solve(a, [1, 2, 3])


def test_kernel_single_relation():
    a = ExactMatrix.from_rows(QQ, [[1, 1]])
    basis = kernel_basis(a)
    assert len(basis) == 1
    v = basis[0].data[:, 0]
    assert v[0] == -v[1] and v[0] != 0


def test_kernel_annihilated_and_independent():
    rng = random.Random(4)
    for field in (QQ, GF(2)):
        for _ in range(10):
            a = ExactMatrix.from_rows(
                field, [[rng.randint(0, 4) for _ in range(5)]
                        for _ in range(3)])
            basis = kernel_basis(a)
            for v in basis:
                assert (a @ v).is_zero()
            if basis:
                stacked = ExactMatrix.from_rows(
                    field, [v.data[:, 0] for v in basis])
                assert rank(stacked) == len(basis)
            assert len(basis) + rank(a) == a.cols


def test_kernel_injective_is_empty():
    a = ExactMatrix.from_rows(QQ, [[1, 0], [0, 1], [1, 1]])
    assert kernel_basis(a) == []


def test_inverse():
    a = ExactMatrix.from_rows(QQ, [[2, 1], [1, 1]])
    inv = inverse(a)
    assert (a @ inv) == ExactMatrix.identity(QQ, 2)


def test_rational_entries_normalized():
    m = ExactMatrix.from_rows(QQ, [["2/4", "-3/6"]])
    assert m.data[0, 0] == Fraction(1, 2)
    assert m.data[0, 1] == Fraction(-1, 2)
