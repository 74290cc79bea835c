"""Exact linear algebra.

Rational matrices go through fraction-free Bareiss elimination on
integer-scaled rows, which keeps intermediate entries as single big
integers instead of fractions with growing denominators. Polynomial
matrices use Bareiss with exact polynomial division. A small generic
Gaussian solver covers systems over GaussianRational.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence

from .poly import MultiPoly
from .scalars import ONE, ZERO, GaussianRational

RatMatrix = Sequence[Sequence[Fraction]]


def _rows_to_int(matrix: RatMatrix) -> List[List[int]]:
    rows = []
    for row in matrix:
        fr = [Fraction(x) for x in row]
        denoms = lcm(*(f.denominator for f in fr)) if fr else 1
        rows.append([int(f * denoms) for f in fr])
    return rows


def _bareiss(rows: List[List[int]]):
    """In-place fraction-free echelon reduction; returns pivot columns."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(n):
        pivot_row = None
        for i in range(r, m):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        for i in range(r + 1, m):
            if not any(rows[i][c:]):
                continue
            for j in range(c + 1, n):
                q, rem = divmod(rows[r][c] * rows[i][j] - rows[i][c] * rows[r][j], prev)
                if rem:
                    raise ArithmeticError("fraction-free elimination lost exactness")
                rows[i][j] = q
            rows[i][c] = 0
        prev = rows[r][c]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def rank(matrix: RatMatrix) -> int:
    rows = _rows_to_int(matrix)
    if not rows or not rows[0]:
        return 0
    return len(_bareiss(rows))


def kernel_basis(matrix: RatMatrix) -> List[List[Fraction]]:
    """Basis of the exact null space of a rational matrix.

    Vectors are normalized to primitive integer form with positive
    leading entry, ordered by their free column. The count always
    equals #columns - rank.
    """
    rows = _rows_to_int(matrix)
    if not rows:
        return []
    n = len(rows[0])
    pivots = _bareiss(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(n) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            pc = pivots[k]
            s = sum((Fraction(rows[k][j]) * v[j] for j in range(pc + 1, n)), Fraction(0))
            v[pc] = -s / rows[k][pc]
        basis.append(_primitive(v))
    return basis


def _primitive(vector: List[Fraction]) -> List[Fraction]:
    denoms = lcm(*(f.denominator for f in vector))
    ints = [int(f * denoms) for f in vector]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return [Fraction(0)] * len(vector)
    lead = next(x for x in ints if x)
    sign = 1 if lead > 0 else -1
    return [Fraction(sign * x, g) for x in ints]


def solve_columns(columns: Sequence[Sequence[GaussianRational]],
                  target: Sequence[GaussianRational]) -> Optional[List[GaussianRational]]:
    """Solve sum_i x_i * columns[i] = target exactly, or return None.

    Plain Gaussian elimination over the Gaussian rationals; sizes in
    this package are small so pivots need no magnitude heuristics.
    """
    ncols = len(columns)
    nrows = len(target)
    aug = [[GaussianRational.coerce(columns[j][i]) for j in range(ncols)]
           + [GaussianRational.coerce(target[i])] for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if aug[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols]:
            return None  # inconsistent
    solution = [ZERO] * ncols
    for row_idx, c in enumerate(pivots):
        solution[c] = aug[row_idx][ncols]
    return solution


def gaussian_rank(matrix: Sequence[Sequence[GaussianRational]]) -> int:
    rows = [list(map(GaussianRational.coerce, row)) for row in matrix]
    if not rows:
        return 0
    n = len(rows[0])
    r = 0
    for c in range(n):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def rref_rows(rows: Sequence[Sequence[GaussianRational]]) -> List[List[GaussianRational]]:
    """Reduced row-echelon basis of the row span (zero rows dropped)."""
    work = [list(map(GaussianRational.coerce, row)) for row in rows]
    if not work:
        return []
    n = len(work[0])
    r = 0
    for c in range(n):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return [row for row in work[:r]]


def invert_gaussian_matrix(matrix: Sequence[Sequence[GaussianRational]]):
    """Exact inverse of a square GaussianRational matrix, or None."""
    n = len(matrix)
    aug = [[GaussianRational.coerce(matrix[i][j]) for j in range(n)]
           + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if aug[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            return None
        aug[c], aug[pivot_row] = aug[pivot_row], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


# ------------------------------------------------------------------ polynomial

def poly_div_exact(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Exact division f / g; raises if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    quotient = MultiPoly.zero(f.vars)
    rem = f
    g_exps, g_coeff = g.leading()
    while not rem.is_zero():
        r_exps, r_coeff = rem.leading()
        q_exps = tuple(a - b for a, b in zip(r_exps, g_exps))
        if any(k < 0 for k in q_exps):
            raise ValueError("inexact polynomial division")
        q_term = MultiPoly.zero(f.vars)
        q_term.terms = {q_exps: r_coeff / g_coeff}
        quotient = quotient + q_term
        rem = rem - q_term * g
    return quotient


def det_exact(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Exact determinant of a square polynomial matrix (Bareiss)."""
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ValueError("determinant requires a nonempty square matrix")
    variables = matrix[0][0].vars
    rows = []
    for row in matrix:
        for entry in row:
            if entry.vars != variables:
                raise ValueError("matrix entries must share a variable tuple")
        rows.append(list(row))
    one = MultiPoly.const(variables, 1)
    prev = one
    sign = 1
    for c in range(n - 1):
        pivot_row = None
        for i in range(c, n):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            return MultiPoly.zero(variables)
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                num = rows[c][c] * rows[i][j] - rows[i][c] * rows[c][j]
                rows[i][j] = poly_div_exact(num, prev)
            rows[i][c] = MultiPoly.zero(variables)
        prev = rows[c][c]
    return rows[n - 1][n - 1] * sign


def maximal_minors(matrix: Sequence[Sequence[MultiPoly]]) -> List[MultiPoly]:
    """All maximal minors of an n x m polynomial matrix (n <= m)."""
    from itertools import combinations

    n = len(matrix)
    m = len(matrix[0]) if n else 0
    if m < n:
        raise ValueError("expected at least as many columns as rows")
    minors = []
    for cols in combinations(range(m), n):
        minors.append(det_exact([[matrix[i][j] for j in cols] for i in range(n)]))
    return minors
