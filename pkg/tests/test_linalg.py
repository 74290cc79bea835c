"""Exact linear algebra against independent oracles."""

import random
from fractions import Fraction

import pytest

from tubes.linalg import (det_exact, kernel_basis, maximal_minors,
                          poly_div_exact, rank, rref_rows, solve_columns)
from tubes.poly import MultiPoly
from tubes.scalars import GaussianRational

from oracles import cofactor_det, fraction_rank, random_poly


def test_kernel_zero_matrix():
    m = [[Fraction(0)] * 3 for _ in range(3)]
    assert len(kernel_basis(m)) == 3


def test_kernel_identity():
    m = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    assert kernel_basis(m) == []


def test_kernel_against_row_reduction_oracle():
    rng = random.Random(1105)
    for _ in range(25):
        rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(8)]
                for _ in range(5)]
        basis = kernel_basis(rows)
        expected_dim = 8 - fraction_rank(rows)
        assert len(basis) == expected_dim
        for vec in basis:
            for row in rows:
                assert sum(a * b for a, b in zip(row, vec)) == 0
        # vectors are independent
        assert fraction_rank(basis) == len(basis)


def test_rank_matches_oracle():
    rng = random.Random(77)
    for _ in range(25):
        rows = [[Fraction(rng.randint(-5, 5)) for _ in range(6)] for _ in range(4)]
        assert rank(rows) == fraction_rank(rows)


def test_det_diag():
    vs = ("x", "y")
    x = MultiPoly.var(vs, "x")
    y = MultiPoly.var(vs, "y")
    one = MultiPoly.const(vs, 1)
    zero = MultiPoly.zero(vs)
    m = [[x, zero, zero, zero],
         [zero, y, zero, zero],
         [zero, zero, one, zero],
         [zero, zero, zero, one]]
    assert det_exact(m) == x * y


def test_det_against_cofactor_oracle():
    rng = random.Random(40814)
    vs = ("x", "y")
    for _ in range(100):
        m = [[random_poly(rng, vs, max_degree=2, max_terms=3) for _ in range(4)]
             for _ in range(4)]
        assert det_exact(m) == cofactor_det(m)


def test_det_cofactor_oracle_size_five():
    rng = random.Random(515)
    vs = ("x", "y")
    for _ in range(5):
        m = [[random_poly(rng, vs, max_degree=1, max_terms=2) for _ in range(5)]
             for _ in range(5)]
        assert det_exact(m) == cofactor_det(m)


def test_det_requires_square():
    vs = ("x",)
    x = MultiPoly.var(vs, "x")
    with pytest.raises(ValueError):
        det_exact([[x, x]])


def test_poly_div_exact_and_inexact():
    vs = ("x", "y")
    x = MultiPoly.var(vs, "x")
    y = MultiPoly.var(vs, "y")
    f = (x + y) * (x - y) * (x + 2)
    assert poly_div_exact(f, x + y) == (x - y) * (x + 2)
    with pytest.raises(ValueError):
        poly_div_exact(x * y + 1, x + y)


def test_solve_columns_consistency():
    cols = [[GaussianRational(1), GaussianRational(0)],
            [GaussianRational(1), GaussianRational(1)]]
    target = [GaussianRational(3), GaussianRational(2)]
    sol = solve_columns(cols, target)
    assert sol is not None
    assert sol[0] == GaussianRational(1) and sol[1] == GaussianRational(2)
    assert solve_columns([[GaussianRational(0), GaussianRational(0)]],
                         [GaussianRational(1), GaussianRational(0)]) is None


def test_rref_rows_span():
    rows = [[GaussianRational(1), GaussianRational(2)],
            [GaussianRational(2), GaussianRational(4)]]
    assert len(rref_rows(rows)) == 1


def test_maximal_minors_count():
    vs = ("x",)
    x = MultiPoly.var(vs, "x")
    one = MultiPoly.const(vs, 1)
    m = [[x, one, x], [one, x, one]]
    assert len(maximal_minors(m)) == 3
