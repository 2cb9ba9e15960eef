"""Sylvester's catalecticant algorithm for binary forms.

A binary dual form of degree d is the functional it defines on degree-d
forms in (s0, s1), stored as its value vector on the monomial basis
s0^(d-k) s1^k. Values carry the plain-derivative factorials (the dual of
x0^5 has values (120, 0, ..., 0)), so the degree-k catalecticant is the
pure Hankel matrix values[i+j] and is exactly the transpose of the
degree-(d-k) one.

The decomposition scan raises k from 1 until a square-free kernel element
exists, which handles planted low-rank forms without a separate code
path. For generic odd degree d = 2d'-1 the kernel at k = d' is a single
square-free form (the unique d'-secant); for generic even degree d = 2d'
the kernel at k = d'+1 is a pencil and a pencil parameter selects the
member, one decomposition per parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from . import linalg


class DegenerateFormError(ValueError):
    """Chosen kernel element is not square-free (repeated root)."""

    def __init__(self, message, repeated_factor=None):
        super().__init__(message)
        self.repeated_factor = repeated_factor


@dataclass(frozen=True)
class BinaryDualForm:
    """Functional on binary degree-d forms, as its monomial value vector."""

    degree: int
    values: tuple

    @classmethod
    def make(cls, degree: int, values) -> "BinaryDualForm":
        vals = tuple(complex(v) if not isinstance(v, (Fraction, int)) else v
                     for v in values)
        if len(vals) != degree + 1:
            raise ValueError("value vector must have length degree+1")
        return cls(degree, vals)

    def as_array(self) -> np.ndarray:
        return np.array([complex(v) for v in self.values])


def dual_of_power(point, d: int) -> BinaryDualForm:
    """Dual form of l^d for l = p*x0 + q*x1, point = [p:q].

    Its value on s0^(d-m) s1^m is d! p^(d-m) q^m.
    """
    p, q = point
    fact = factorial(d)
    return BinaryDualForm.make(d, [fact * p ** (d - m) * q ** m for m in range(d + 1)])


def reconstruct(points, coeffs, d: int) -> BinaryDualForm:
    """Sum of coefficient-weighted duals of d-th powers of the points."""
    total = np.zeros(d + 1, dtype=complex)
    for pt, c in zip(points, coeffs):
        total += complex(c) * dual_of_power(pt, d).as_array()
    return BinaryDualForm.make(d, total)


def binary_catalecticant(F: BinaryDualForm, k: int) -> np.ndarray:
    """Hankel matrix of the degree-k action, shape (d-k+1) x (k+1)."""
    d = F.degree
    if not 0 <= k <= d:
        raise ValueError("k out of range")
    v = F.as_array()
    return np.array([[v[i + j] for j in range(k + 1)] for i in range(d - k + 1)])


def normalize_point(pt) -> tuple:
    """Representative with the largest-modulus coordinate set to 1."""
    p, q = complex(pt[0]), complex(pt[1])
    if abs(p) >= abs(q):
        return (1.0 + 0j, q / p)
    return (p / q, 1.0 + 0j)


def point_distance(a, b) -> float:
    """Chordal distance |a0 b1 - a1 b0| / (|a| |b|) between P^1 points."""
    a0, a1 = complex(a[0]), complex(a[1])
    b0, b1 = complex(b[0]), complex(b[1])
    na = np.hypot(abs(a0), abs(a1))
    nb = np.hypot(abs(b0), abs(b1))
    return abs(a0 * b1 - a1 * b0) / (na * nb)


def _roots_of_kernel_form(g: np.ndarray) -> list:
    """Projective roots of sum_j g[j] s0^(k-j) s1^j, as points [p:q].

    Finite roots of g(1, z) give [1:z]; deflated leading coefficients give
    roots at [0:1].
    """
    finite, at_inf = linalg.roots_univariate(g)
    pts = [(1.0 + 0j, z) for z in finite]
    pts.extend((0.0j, 1.0 + 0j) for _ in range(at_inf))
    return [normalize_point(p) for p in pts]


@dataclass(frozen=True)
class BinaryDecomposition:
    points: tuple
    coeffs: tuple
    kernel_degree: int
    residual: float


def sylvester_decompose(F: BinaryDualForm, pencil_parameter=None,
                        tau: float = 1e-8, separation: float = 1e-7
                        ) -> BinaryDecomposition:
    """Decompose F as a sum of duals of d-th powers of distinct points."""
    d = F.degree
    varr = F.as_array()
    if not np.any(varr != 0):
        raise ValueError("zero dual form")
    alpha, beta = (1.0, 0.0) if pencil_parameter is None else pencil_parameter
    for k in range(1, d):
        m = binary_catalecticant(F, k)
        scale = np.max(np.abs(m))
        ns = linalg.nullspace_numeric(m / scale, tau)
        if ns.shape[0] == 0:
            continue
        if ns.shape[0] == 1:
            g = ns[0]
        else:
            # pencil of kernel forms; basis ordered with the most reliable
            # (smallest singular value) direction first
            g = complex(alpha) * ns[-1] + complex(beta) * ns[-2]
        pts = _roots_of_kernel_form(g)
        seps = [point_distance(pts[i], pts[j])
                for i in range(len(pts)) for j in range(i + 1, len(pts))]
        if seps and min(seps) < separation:
            if ns.shape[0] == 1:
                continue  # actual-rank scan: try a larger k
            i, j = min(((i, j) for i in range(len(pts))
                        for j in range(i + 1, len(pts))),
                       key=lambda ij: point_distance(pts[ij[0]], pts[ij[1]]))
            raise DegenerateFormError(
                f"kernel member at k={k} has a repeated factor near {pts[i]}",
                repeated_factor=pts[i])
        vdm = np.array([dual_of_power(p, d).as_array() for p in pts]).T
        coeffs, res = linalg.least_squares(vdm, varr)
        rel = res / float(np.linalg.norm(varr))
        if rel > 1e-6:
            if ns.shape[0] == 1:
                continue
            raise DegenerateFormError(
                f"pencil member at k={k} does not reconstruct F (rel {rel:.2e})")
        return BinaryDecomposition(tuple(pts), tuple(coeffs), k, rel)
    raise DegenerateFormError("no square-free kernel element found up to k=d-1")
