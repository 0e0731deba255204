"""
Exact linear algebra over the rationals.

Rank uses fraction-free (Bareiss) elimination on integer rows; rational input is
scaled to integers row by row first. Bases are computed from the reduced row
echelon form over `Fraction`.
"""

import math
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

Number = Union[int, Fraction]
Matrix = List[List[Number]]
Vector = List[Fraction]


def _integer_rows(rows: Sequence[Sequence[Number]]) -> List[List[int]]:
    """Scale every row by the lcm of its denominators"""
    out = []
    for row in rows:
        denominators = [Fraction(x).denominator for x in row]
        scale = math.lcm(*denominators) if denominators else 1
        out.append([int(Fraction(x) * scale) for x in row])
    return out


def rank(rows: Sequence[Sequence[Number]]) -> int:
    """Exact rank by fraction-free elimination"""
    m = _integer_rows(rows)
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    piv_r = 0
    prev_pivot = 1
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c] != 0:
                break
        else:
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
        pivot = m[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            for c in range(piv_c + 1, n_cols):
                # Bareiss step, division is exact
                m[r][c] = (pivot * m[r][c] - m[r][piv_c] * m[piv_r][c]) // prev_pivot
            m[r][piv_c] = 0
        prev_pivot = pivot
        piv_r += 1
    return piv_r


def rref(rows: Sequence[Sequence[Number]]) -> Tuple[List[Vector], List[int]]:
    """Reduced row echelon form and pivot columns"""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c] != 0:
                break
        else:
            continue
        m[piv_r], m[i_row] = m[i_row], m[piv_r]
        fp = m[piv_r][piv_c]
        m[piv_r] = [x / fp for x in m[piv_r]]
        for r in range(n_rows):
            fr = m[r][piv_c]
            if r == piv_r or fr == 0:
                continue
            m[r] = [a - fr * b for a, b in zip(m[r], m[piv_r])]
        pivots.append(piv_c)
        piv_r += 1
    return m, pivots


def nullspace_basis(rows: Sequence[Sequence[Number]]) -> List[Vector]:
    """Basis of {v : A v = 0}, one vector per free column"""
    if not rows:
        return []
    n_cols = len(rows[0])
    m, pivots = rref(rows)
    free_vars = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for free in free_vars:
        v = [Fraction(0)] * n_cols
        v[free] = Fraction(1)
        for r, piv_c in enumerate(pivots):
            v[piv_c] = -m[r][free]
        basis.append(v)
    return basis


def column_space_basis(rows: Sequence[Sequence[Number]]) -> List[Vector]:
    """Pivot columns of A, which span its column space"""
    if not rows:
        return []
    _, pivots = rref(rows)
    return [[Fraction(row[c]) for row in rows] for c in pivots]


def transpose(vectors: Sequence[Sequence[Number]]) -> Matrix:
    return [list(col) for col in zip(*vectors)]


def mat_vec(rows: Sequence[Sequence[Number]], v: Sequence[Number]) -> Vector:
    return [sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in rows]


def in_column_space(rows: Sequence[Sequence[Number]], v: Sequence[Number]) -> bool:
    """Whether `v` is a combination of the columns of A"""
    augmented = [list(row) + [x] for row, x in zip(rows, v)]
    return rank(augmented) == rank(rows)


def is_zero(v: Sequence[Number]) -> bool:
    return all(x == 0 for x in v)
