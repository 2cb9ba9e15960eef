"""Z^2-graded Cox rings of P1xP1 and the Hirzebruch surface F1.

The Cox ring T = C[t0,t1,u0,u1] carries the Picard grading; its graded
dual S = C[x0,x1,y0,y1] is acted on by differentiation, t_i = d/dx_i and
u_i = d/dy_i (plain derivatives, no divided-power normalization; in
characteristic zero all rank statements agree with the divided-power
convention and the adjoint identity (g'.g)(f) = g'(g(f)) pins the
bookkeeping).

Gradings:
  P1xP1: t0,t1 -> (1,0), u0,u1 -> (0,1)          (bidegree)
  F1:    t0 -> (1,0) = E, t1 -> (1,1) = E+F, u0,u1 -> (0,1) = F

Monomials of a graded piece are ordered lexicographically descending on
the exponent vector (e_t0, e_t1, e_u0, e_u1), so every matrix built from
them is reproducible bit for bit.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

Degree = tuple  # (a, b): bidegree on P1xP1, coefficients of a*E + b*F on F1

P1XP1 = "p1xp1"
F1 = "f1"

_T_NAMES = ("t0", "t1", "u0", "u1")
_S_NAMES = ("x0", "x1", "y0", "y1")


@dataclass(frozen=True)
class SurfaceRing:
    """Descriptor of the graded Cox ring of one of the two surfaces."""

    surface: str

    def __post_init__(self):
        if self.surface not in (P1XP1, F1):
            raise ValueError(f"unknown surface {self.surface!r}")

    @property
    def weights(self) -> tuple:
        if self.surface == P1XP1:
            return ((1, 0), (1, 0), (0, 1), (0, 1))
        return ((1, 0), (1, 1), (0, 1), (0, 1))

    def variable_names(self, side: str) -> tuple:
        return _T_NAMES if side == "T" else _S_NAMES

    def degree_of(self, exponents: Sequence[int]) -> Degree:
        w = self.weights
        a = sum(e * w[i][0] for i, e in enumerate(exponents))
        b = sum(e * w[i][1] for i, e in enumerate(exponents))
        return (a, b)


@lru_cache(maxsize=None)
def _ring(surface: str) -> SurfaceRing:
    return SurfaceRing(surface)


def p1xp1() -> SurfaceRing:
    return _ring(P1XP1)


def f1() -> SurfaceRing:
    return _ring(F1)


def is_effective(ring: SurfaceRing, deg: Degree) -> bool:
    """A class is effective exactly when its monomial set is nonempty."""
    a, b = deg
    return a >= 0 and b >= 0


@lru_cache(maxsize=None)
def _monomials_cached(surface: str, deg: Degree) -> tuple:
    a, b = deg
    if a < 0 or b < 0:
        return ()
    exps = []
    if surface == P1XP1:
        for e0 in range(a + 1):
            for e2 in range(b + 1):
                exps.append((e0, a - e0, e2, b - e2))
    else:
        # t0^(a-j) t1^j u0^r u1^s with r + s = b - j
        for j in range(min(a, b) + 1):
            for r in range(b - j + 1):
                exps.append((a - j, j, r, b - j - r))
    return tuple(sorted(exps, reverse=True))


def monomials(ring: SurfaceRing, deg: Degree) -> tuple:
    """Exponent vectors of the graded piece, lex descending."""
    return _monomials_cached(ring.surface, (int(deg[0]), int(deg[1])))


def dim(ring: SurfaceRing, deg: Degree) -> int:
    """Dimension of the graded piece, by closed form.

    (a+1)(b+1) on P1xP1; sum_{j=0}^{min(a,b)} (b-j+1) on F1. A
    non-effective class has dimension 0.
    """
    a, b = deg
    if a < 0 or b < 0:
        return 0
    if ring.surface == P1XP1:
        return (a + 1) * (b + 1)
    return sum(b - j + 1 for j in range(min(a, b) + 1))


def monomial_name(ring: SurfaceRing, side: str, exp: Sequence[int]) -> str:
    names = ring.variable_names(side)
    parts = []
    for n, e in zip(names, exp):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class MultiForm:
    """Homogeneous element of a graded piece of T or S.

    terms maps exponent 4-vectors to scalars (Fraction for the exact mode,
    complex for the floating mode); zero coefficients are never stored.
    """

    ring: SurfaceRing
    side: str  # "T" or "S"
    degree: Degree
    terms: tuple  # sorted tuple of (exponent tuple, scalar)

    def __post_init__(self):
        if self.side not in ("T", "S"):
            raise ValueError("side must be 'T' or 'S'")

    @classmethod
    def make(cls, ring: SurfaceRing, side: str, degree: Degree,
             coeffs: Mapping) -> "MultiForm":
        degree = (int(degree[0]), int(degree[1]))
        items = []
        for exp, c in coeffs.items():
            exp = tuple(int(e) for e in exp)
            if c == 0:
                continue
            if ring.degree_of(exp) != degree:
                raise ValueError(f"exponent {exp} is not of degree {degree}")
            items.append((exp, c))
        return cls(ring, side, degree, tuple(sorted(items, reverse=True)))

    def coeff(self, exp) -> object:
        exp = tuple(exp)
        for e, c in self.terms:
            if e == exp:
                return c
        return 0

    def term_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_exact(self) -> bool:
        return all(isinstance(c, (Fraction, int)) for _, c in self.terms)

    def map_coeffs(self, fn) -> "MultiForm":
        return MultiForm.make(self.ring, self.side, self.degree,
                              {e: fn(c) for e, c in self.terms})

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{monomial_name(self.ring, self.side, e)}"
                          for e, c in self.terms)


def form(ring: SurfaceRing, side: str, degree: Degree, coeffs: Mapping) -> MultiForm:
    return MultiForm.make(ring, side, degree, coeffs)


def to_complex(g: MultiForm) -> MultiForm:
    return g.map_coeffs(complex)


def add(g: MultiForm, h: MultiForm) -> MultiForm:
    if (g.ring, g.side, g.degree) != (h.ring, h.side, h.degree):
        raise ValueError("incompatible forms in add")
    out = g.term_dict()
    for e, c in h.terms:
        out[e] = out.get(e, 0) + c
    return MultiForm.make(g.ring, g.side, g.degree, out)


def scale(g: MultiForm, s) -> MultiForm:
    return g.map_coeffs(lambda c: c * s)


def multiply(g: MultiForm, h: MultiForm) -> MultiForm:
    """Product inside T or inside S; degrees add."""
    if g.ring != h.ring or g.side != h.side:
        raise ValueError("ring/side mismatch in multiply")
    deg = (g.degree[0] + h.degree[0], g.degree[1] + h.degree[1])
    out = {}
    for e1, c1 in g.terms:
        for e2, c2 in h.terms:
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return MultiForm.make(g.ring, g.side, deg, out)


def diff_apply(g: MultiForm, f: MultiForm) -> MultiForm:
    """Apply g in T_B to f in S_A as a differential operator; lands in S_{A-B}.

    Plain derivatives: t^beta acting on x^alpha gives
    prod_i alpha_i!/(alpha_i - beta_i)! * x^(alpha-beta).
    """
    if g.ring != f.ring:
        raise ValueError("ring mismatch in diff_apply")
    if g.side != "T" or f.side != "S":
        raise ValueError("diff_apply needs g in T and f in S")
    deg = (f.degree[0] - g.degree[0], f.degree[1] - g.degree[1])
    out = {}
    for beta, cg in g.terms:
        for alpha, cf in f.terms:
            if any(a < b for a, b in zip(alpha, beta)):
                continue
            w = 1
            for a, b in zip(alpha, beta):
                for v in range(a, a - b, -1):
                    w *= v
            e = tuple(a - b for a, b in zip(alpha, beta))
            out[e] = out.get(e, 0) + cg * cf * w
    return MultiForm.make(g.ring, f.side, deg, out)


def pairing(g: MultiForm, f: MultiForm):
    """Full apolarity pairing of g in T_A against f in S_A (a scalar)."""
    if g.degree != f.degree:
        raise ValueError("pairing needs equal degrees")
    fterms = f.term_dict()
    total = 0
    for beta, cg in g.terms:
        cf = fterms.get(beta)
        if cf is None:
            continue
        w = 1
        for b in beta:
            w *= factorial(b)
        total += cg * cf * w
    return total


def in_irrelevant_locus(ring: SurfaceRing, point: Sequence) -> bool:
    c0, c1, c2, c3 = point
    return (c0 == 0 and c1 == 0) or (c2 == 0 and c3 == 0)


def evaluate(g: MultiForm, point: Sequence):
    """Evaluate at Cox coordinates; the point must avoid the irrelevant locus."""
    if in_irrelevant_locus(g.ring, point):
        raise ValueError("point lies in the irrelevant locus")
    total = 0
    for exp, c in g.terms:
        v = c
        for coord, e in zip(point, exp):
            if e:
                v = v * coord ** e
        total += v
    return total


def random_form(ring: SurfaceRing, side: str, deg: Degree, seed: int) -> MultiForm:
    """Seeded random form with integer coefficients in [-99, 99].

    Small integers keep exact elimination fast; genericity is certified
    downstream by dimension-profile checks, never assumed.
    """
    rng = random.Random(seed)
    coeffs = {}
    for exp in monomials(ring, deg):
        coeffs[exp] = Fraction(rng.randint(-99, 99))
    return MultiForm.make(ring, side, deg, coeffs)


def coefficient_vector(g: MultiForm, order: Iterable = None) -> list:
    order = monomials(g.ring, g.degree) if order is None else tuple(order)
    d = g.term_dict()
    return [d.get(e, 0) for e in order]


def form_from_vector(ring: SurfaceRing, side: str, deg: Degree, vec) -> MultiForm:
    order = monomials(ring, deg)
    if len(vec) != len(order):
        raise ValueError("coefficient vector length mismatch")
    return MultiForm.make(ring, side, deg, dict(zip(order, vec)))


# ---------------------------------------------------------------------------
# power forms of surface points (the Segre-Veronese style embedding)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _power_weights(surface: str, deg: Degree) -> tuple:
    a, b = deg
    ws = []
    for e in _monomials_cached(surface, deg):
        w = (factorial(a) * factorial(b)) // (
            factorial(e[0]) * factorial(e[1]) * factorial(e[2]) * factorial(e[3]))
        ws.append(w)
    return tuple(ws)


def power_form(ring: SurfaceRing, point: Sequence, deg: Degree) -> MultiForm:
    """The image of a surface point in S_deg (its power form).

    On P1xP1 this is literally l1^a * l2^b for the point's linear factors.
    For every g in T_deg, pairing(g, power_form(p)) = a! b! g(p) on both
    surfaces, which is the identity the apolarity tests rely on.
    """
    if in_irrelevant_locus(ring, point):
        raise ValueError("point lies in the irrelevant locus")
    exps = monomials(ring, deg)
    ws = _power_weights(ring.surface, tuple(deg))
    coeffs = {}
    for e, w in zip(exps, ws):
        v = w
        for coord, k in zip(point, e):
            if k:
                v = v * coord ** k
        coeffs[e] = v
    return MultiForm.make(ring, "S", deg, coeffs)


def power_vector(ring: SurfaceRing, point: Sequence, deg: Degree) -> list:
    """Coefficient vector of power_form in the fixed monomial order."""
    exps = monomials(ring, deg)
    ws = _power_weights(ring.surface, tuple(deg))
    out = []
    for e, w in zip(exps, ws):
        v = w
        for coord, k in zip(point, e):
            if k:
                v = v * coord ** k
        out.append(v)
    return out


def power_jacobian(ring: SurfaceRing, point: Sequence, deg: Degree) -> list:
    """The four partial derivatives of power_vector w.r.t. the Cox coordinates.

    Returns a list of 4 columns (each a list over the monomial order); their
    span is the affine tangent space of the cone over the embedded surface.
    """
    exps = monomials(ring, deg)
    ws = _power_weights(ring.surface, tuple(deg))
    cols = []
    for m in range(4):
        col = []
        for e, w in zip(exps, ws):
            k = e[m]
            if k == 0:
                col.append(0)
                continue
            v = w * k
            for idx, (coord, kk) in enumerate(zip(point, e)):
                p = kk - 1 if idx == m else kk
                if p:
                    v = v * coord ** p
            col.append(v)
        cols.append(col)
    return cols


# ---------------------------------------------------------------------------
# JSON form files
# ---------------------------------------------------------------------------

def _scalar_to_json(c) -> dict:
    if isinstance(c, (Fraction, int)):
        fr = Fraction(c)
        return {"num": str(fr.numerator), "den": str(fr.denominator)}
    c = complex(c)
    return {"re": c.real, "im": c.imag}


def _scalar_from_json(d):
    if "num" in d:
        return Fraction(int(d["num"]), int(d["den"]))
    return complex(d["re"], d["im"])


def form_to_json(g: MultiForm) -> dict:
    terms = []
    for e, c in g.terms:
        entry = {"exp": list(e)}
        entry.update(_scalar_to_json(c))
        terms.append(entry)
    return {"surface": g.ring.surface, "side": g.side,
            "degree": list(g.degree), "terms": terms}


def form_from_json(d: Mapping) -> MultiForm:
    ring = _ring(d["surface"])
    coeffs = {}
    for entry in d["terms"]:
        coeffs[tuple(entry["exp"])] = _scalar_from_json(entry)
    return MultiForm.make(ring, d["side"], tuple(d["degree"]), coeffs)


def save_form(g: MultiForm, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(form_to_json(g), fh, indent=1, sort_keys=True)


def load_form(path: str) -> MultiForm:
    with open(path) as fh:
        return form_from_json(json.load(fh))
