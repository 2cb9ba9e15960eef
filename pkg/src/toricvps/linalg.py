"""Exact rational and complex floating linear algebra kernels.

Exact routines work over Python Fractions with fraction-free (Bareiss)
elimination, so ranks and kernels of the dimension-counting matrices are
certified, not numerical. Floating routines wrap LAPACK through numpy with
a relative singular-value threshold.

All functions are pure; matrices are treated as immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

import numpy as np

Rational = Fraction


class SingularSystemError(ValueError):
    pass


@dataclass(frozen=True)
class RationalMatrix:
    """Dense rational matrix, entries in row-major order."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(Fraction(x) for x in r)
        return cls(nrows, ncols, tuple(flat))

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def to_rows(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def to_numpy(self, dtype=complex) -> np.ndarray:
        return np.array([[dtype(x) for x in self.row(i)] for i in range(self.rows)]
                        ) if self.rows else np.zeros((0, self.cols), dtype=dtype)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix.from_rows(
            [[self.at(i, j) for i in range(self.rows)] for j in range(self.cols)]
        ) if self.rows and self.cols else RationalMatrix(self.cols, self.rows, ())


def _integer_rows(m: RationalMatrix) -> list:
    """Row-scale to integers (does not change rank or right kernel)."""
    out = []
    for i in range(m.rows):
        row = m.row(i)
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def _bareiss_echelon(rows: list) -> tuple:
    """Fraction-free Gaussian elimination on integer rows.

    Returns (echelon rows, pivot column list). Intermediate entries stay
    integral and are bounded by minors of the input (Bareiss pivoting).
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        pivots.append(c)
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
    return m, pivots


def rank_exact(m: RationalMatrix) -> int:
    """Rank over the rationals, by fraction-free elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    _, pivots = _bareiss_echelon(_integer_rows(m))
    return len(pivots)


def kernel_exact(m: RationalMatrix) -> list:
    """Basis of the exact right null space, as lists of Fractions.

    An empty matrix (0 rows) returns the full standard basis.
    """
    ncols = m.cols
    if ncols == 0:
        return []
    if m.rows == 0:
        basis = []
        for j in range(ncols):
            v = [Fraction(0)] * ncols
            v[j] = Fraction(1)
            basis.append(v)
        return basis
    ech, pivots = _bareiss_echelon(_integer_rows(m))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        # back substitution on the echelon rows
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum((Fraction(ech[r][j]) * v[j] for j in range(pc + 1, ncols)), Fraction(0))
            v[pc] = -s / ech[r][pc]
        basis.append(v)
    return basis


def solve_exact(m: RationalMatrix, b: Sequence) -> Optional[list]:
    """One exact solution of m x = b, or None when inconsistent."""
    if len(b) != m.rows:
        raise ValueError("rhs length mismatch")
    aug_rows = [m.row(i) + [Fraction(b[i])] for i in range(m.rows)]
    aug = RationalMatrix.from_rows(aug_rows) if m.rows else None
    if m.rows == 0:
        return [Fraction(0)] * m.cols
    ech, pivots = _bareiss_echelon(_integer_rows(aug))
    if m.cols in pivots:  # pivot in the augmented column
        return None
    x = [Fraction(0)] * m.cols
    for r in range(len(pivots) - 1, -1, -1):
        pc = pivots[r]
        s = Fraction(ech[r][m.cols])
        s -= sum((Fraction(ech[r][j]) * x[j] for j in range(pc + 1, m.cols)), Fraction(0))
        x[pc] = s / ech[r][pc]
    return x


def det_exact(m: RationalMatrix) -> Fraction:
    """Exact determinant (square matrices)."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    rows = m.to_rows()
    dens = Fraction(1)
    int_rows = []
    for row in rows:
        den = lcm(*(x.denominator for x in row))
        dens *= den
        int_rows.append([int(x * den) for x in row])
    # Bareiss with sign tracking; the final pivot is the determinant.
    a = int_rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], 1) / dens


# ---------------------------------------------------------------------------
# floating point
# ---------------------------------------------------------------------------

def complex_matrix(rows) -> np.ndarray:
    """Validate and return a complex floating matrix (finite entries only)."""
    a = np.atleast_2d(np.asarray(rows, dtype=complex))
    if not np.all(np.isfinite(a)):
        raise ValueError("non-finite entry in complex matrix")
    return a


def svd_values(m) -> np.ndarray:
    """Singular values in descending order."""
    a = complex_matrix(m)
    if a.size == 0:
        return np.zeros(0)
    return np.linalg.svd(a, compute_uv=False)


def numeric_rank(m, tau: float = 1e-8) -> int:
    """Number of singular values above tau * sigma_max (0 for a zero matrix)."""
    if tau <= 0:
        raise ValueError("tau must be positive")
    s = svd_values(m)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tau * s[0]))


def nullspace_numeric(m, tau: float = 1e-8) -> np.ndarray:
    """Orthonormal basis of the numeric right null space (rows = basis vectors)."""
    a = complex_matrix(m)
    if a.shape[0] == 0:
        return np.eye(a.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(a)
    if s.size == 0 or s[0] == 0.0:
        rank = 0
    else:
        rank = int(np.sum(s > tau * s[0]))
    return vh[rank:].conj()


def least_squares(m, b) -> tuple:
    """Minimum-norm least squares solution and residual 2-norm."""
    a = complex_matrix(m)
    if a.shape[0] < 1:
        raise ValueError("least_squares needs at least one row")
    rhs = np.asarray(b, dtype=complex).reshape(-1)
    x, _, _, _ = np.linalg.lstsq(a, rhs, rcond=None)
    res = float(np.linalg.norm(a @ x - rhs))
    return x, res


def roots_univariate(coeffs) -> tuple:
    """Roots of sum_i coeffs[i] * z^i via companion-matrix eigenvalues.

    Vanishing leading coefficients are deflated and counted separately:
    they are the roots at infinity of the associated binary form (points of
    type [0:1] when z = s1/s0). Returns (finite roots, count at infinity).
    The zero polynomial is rejected.
    """
    c = np.asarray(coeffs, dtype=complex).reshape(-1)
    if c.size == 0 or not np.any(c != 0):
        raise ValueError("zero polynomial has no well-defined roots")
    scale = float(np.max(np.abs(c)))
    degree = c.size - 1
    top = degree
    while top > 0 and abs(c[top]) <= 1e-14 * scale:
        top -= 1
    at_infinity = degree - top
    if top == 0:
        return np.zeros(0, dtype=complex), at_infinity
    finite = np.roots(c[: top + 1][::-1])
    return finite, at_infinity
