"""Exact rational and polynomial-matrix linear algebra.

Rational matrices are lists of lists with int/Fraction entries.  The
elimination routines clear denominators and run fraction-free (Bareiss)
row reduction over the integers, so intermediate values stay integral;
solutions and nullspace vectors are reported as exact rationals.

Polynomial matrices (entries :class:`courant.poly.Poly`) get the small
dense helpers needed for structure transport: product, determinant via
Laplace expansion, and the adjugate used to invert a matrix whose
determinant is a nonzero constant.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .poly import Poly

Vec = List[Fraction]
Mat = List[List[Fraction]]


def _clear_denominators(row: Sequence) -> List[int]:
    fracs = [Fraction(v) for v in row]
    lcm = 1
    for v in fracs:
        lcm = lcm * v.denominator // gcd(lcm, v.denominator)
    return [int(v * lcm) for v in fracs]


def _bareiss_echelon(matrix: List[List[int]]) -> Tuple[List[List[int]], List[int]]:
    """Fraction-free row echelon form; returns (rows, pivot column list)."""
    m = [row[:] for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: List[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[r], m[pivot_row] = m[pivot_row], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rational_det(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant; the empty 0x0 matrix has determinant 1."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    scale = Fraction(1)
    rows = []
    for row in matrix:
        fracs = [Fraction(v) for v in row]
        lcm = 1
        for v in fracs:
            lcm = lcm * v.denominator // gcd(lcm, v.denominator)
        scale /= lcm
        rows.append([int(v * lcm) for v in fracs])
    # fraction-free elimination tracking row swaps
    sign = 1
    prev = 1
    for c in range(n - 1):
        pivot_row = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                rows[i][j] = (rows[c][c] * rows[i][j] - rows[i][c] * rows[c][j]) // prev
            rows[i][c] = 0
        prev = rows[c][c]
    return scale * sign * rows[n - 1][n - 1]


def nullspace(matrix: Sequence[Sequence], ncols: int) -> List[Vec]:
    """Basis of the right nullspace, each vector scaled so its first
    nonzero entry is 1; ordered by ascending free column."""
    rows = [_clear_denominators(row) for row in matrix if any(Fraction(v) for v in row)]
    if not rows:
        return [
            [Fraction(1) if j == i else Fraction(0) for j in range(ncols)]
            for i in range(ncols)
        ]
    ech, pivots = _bareiss_echelon(rows)
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis: List[Vec] = []
    for free in free_cols:
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        # back-substitute pivot entries
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            s = Fraction(0)
            for j in range(c + 1, ncols):
                if vec[j]:
                    s += Fraction(ech[r][j]) * vec[j]
            vec[c] = -s / ech[r][c]
        first = next(v for v in vec if v)
        basis.append([v / first for v in vec])
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> Optional[Vec]:
    """One exact solution of ``matrix @ x = rhs`` or None if inconsistent."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    aug = [_clear_denominators(list(row) + [b]) for row, b in zip(matrix, rhs)]
    if not aug:
        return [Fraction(0)] * ncols
    ech, pivots = _bareiss_echelon(aug)
    if ncols in pivots:
        return None  # pivot in the augmented column
    x = [Fraction(0)] * ncols
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        s = Fraction(ech[r][ncols])
        for j in range(c + 1, ncols):
            if x[j]:
                s -= Fraction(ech[r][j]) * x[j]
        x[c] = s / ech[r][c]
    return x


# -- polynomial matrices ------------------------------------------------


def poly_mat_zero(nvars: int, nrows: int, ncols: int) -> List[List[Poly]]:
    zero = Poly.zero(nvars)
    return [[zero for _ in range(ncols)] for _ in range(nrows)]


def poly_mat_identity(nvars: int, n: int) -> List[List[Poly]]:
    one = Poly.const(nvars, 1)
    zero = Poly.zero(nvars)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def poly_mat_from_rational(nvars: int, matrix: Sequence[Sequence]) -> List[List[Poly]]:
    return [[Poly.const(nvars, v) for v in row] for row in matrix]


def poly_mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def poly_mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def poly_mat_mul(a, b):
    nrows, inner, ncols = len(a), len(b), len(b[0]) if b else 0
    if a and len(a[0]) != inner:
        raise ValueError("matrix shape mismatch")
    out = []
    for i in range(nrows):
        row = []
        for j in range(ncols):
            acc = None
            for k in range(inner):
                if a[i][k] and b[k][j]:
                    term = a[i][k] * b[k][j]
                    acc = term if acc is None else acc + term
            row.append(acc if acc is not None else _zero_like(a, b))
        out.append(row)
    return out


def _zero_like(a, b):
    if a and a[0]:
        return Poly.zero(a[0][0].nvars)
    if b and b[0]:
        return Poly.zero(b[0][0].nvars)
    raise ValueError("cannot infer variable count for empty product")


def poly_mat_vec(a, v):
    out = []
    for row in a:
        acc = None
        for x, y in zip(row, v):
            if x and y:
                term = x * y
                acc = term if acc is None else acc + term
        out.append(acc if acc is not None else (row[0].__class__.zero(row[0].nvars) if row else None))
    return out


def poly_mat_transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def poly_mat_scale(a, c):
    return [[x.scale(c) for x in row] for row in a]


def poly_mat_diff(a, index: int):
    return [[x.diff(index) for x in row] for row in a]


def poly_mat_eq(a, b) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def poly_mat_det(a) -> Poly:
    """Determinant by Laplace expansion; fine for the small fiber sizes here."""
    n = len(a)
    if n == 0:
        raise ValueError("cannot infer variable count of an empty determinant")
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    nvars = a[0][0].nvars
    if n == 1:
        return a[0][0]

    def minor_det(rows: Tuple[int, ...], cols: Tuple[int, ...]) -> Poly:
        if len(rows) == 1:
            return a[rows[0]][cols[0]]
        total = Poly.zero(nvars)
        r = rows[0]
        for pos, c in enumerate(cols):
            entry = a[r][c]
            if not entry:
                continue
            sub = minor_det(rows[1:], cols[:pos] + cols[pos + 1:])
            term = entry * sub
            total = total + term if pos % 2 == 0 else total - term
        return total

    return minor_det(tuple(range(n)), tuple(range(n)))


def poly_mat_adjugate(a) -> List[List[Poly]]:
    n = len(a)
    nvars = a[0][0].nvars
    if n == 1:
        return [[Poly.const(nvars, 1)]]
    adj = poly_mat_zero(nvars, n, n)
    idx = tuple(range(n))
    for i in range(n):
        rows = idx[:i] + idx[i + 1:]
        for j in range(n):
            cols = idx[:j] + idx[j + 1:]
            minor = [[a[r][c] for c in cols] for r in rows]
            d = poly_mat_det(minor)
            adj[j][i] = d if (i + j) % 2 == 0 else -d
    return adj


def poly_mat_inverse_constant_det(a) -> List[List[Poly]]:
    """Inverse of a polynomial matrix whose determinant is a nonzero constant.

    Raises ValueError when the determinant is non-constant or zero, since
    the inverse would then leave the polynomial ring.
    """
    det = poly_mat_det(a)
    if not det.is_constant():
        raise ValueError("matrix determinant is not constant: %s" % det)
    value = det.constant_value()
    if value == 0:
        raise ValueError("matrix is singular")
    adj = poly_mat_adjugate(a)
    inv_det = Fraction(1) / value
    return [[entry.scale(inv_det) for entry in row] for row in adj]
