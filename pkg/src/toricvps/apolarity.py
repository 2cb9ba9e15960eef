"""Catalecticant maps, orthogonal ideals and apolarity tests.

The catalecticant of f in S_A at degree B is the matrix of the
differentiation map T_B -> S_{A-B}, g |-> g(f). Rows are indexed by the
monomials of T_{A-B} (the dual coordinates on S_{A-B} under the
differentiation pairing); with this normalization the matrix at B is
exactly the transpose of the matrix at A-B. Its kernel is the orthogonal
component I_{f,B}; when A-B is not effective the component is all of T_B.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np

from . import linalg
from . import multigraded as mg
from .linalg import RationalMatrix
from .seeding import derive_seed


class GenericityError(ValueError):
    """A random form failed its expected-dimension profile."""


class InternalInconsistencyError(AssertionError):
    """The two apolarity tests disagreed beyond tolerance."""


@dataclass(frozen=True)
class Catalecticant:
    """Matrix of the degree-B differentiation map against f."""

    f: mg.MultiForm
    degree: mg.Degree
    matrix: object  # RationalMatrix (exact f) or complex ndarray
    row_exps: tuple  # monomials of T_{A-B}
    col_exps: tuple  # monomials of T_B

    @property
    def exact(self) -> bool:
        return isinstance(self.matrix, RationalMatrix)


def _pairing_entry(fcoeffs: Mapping, exp: tuple):
    c = fcoeffs.get(exp)
    if c is None:
        return 0
    w = 1
    for e in exp:
        w *= math.factorial(e)
    return c * w


def catalecticant(f: mg.MultiForm, B: mg.Degree) -> Catalecticant:
    if f.side != "S":
        raise ValueError("catalecticant expects f in S")
    A = f.degree
    B = (int(B[0]), int(B[1]))
    rowdeg = (A[0] - B[0], A[1] - B[1])
    cols = mg.monomials(f.ring, B)
    rows = mg.monomials(f.ring, rowdeg) if mg.is_effective(f.ring, rowdeg) else ()
    fc = f.term_dict()
    entries = [[_pairing_entry(fc, tuple(r + c for r, c in zip(re, ce)))
                for ce in cols] for re in rows]
    if f.is_exact():
        m = (RationalMatrix.from_rows(entries) if rows
             else RationalMatrix(0, len(cols), ()))
    else:
        m = np.array(entries, dtype=complex) if rows else np.zeros((0, len(cols)), dtype=complex)
    return Catalecticant(f, B, m, tuple(rows), tuple(cols))


def orthogonal_component(f: mg.MultiForm, B: mg.Degree, tau: float = 1e-8) -> list:
    """Basis of I_{f,B} = ker phi_{f,B}, as forms in T_B."""
    cat = catalecticant(f, B)
    if cat.exact:
        vecs = linalg.kernel_exact(cat.matrix)
    else:
        vecs = list(linalg.nullspace_numeric(cat.matrix, tau))
    return [mg.form_from_vector(f.ring, "T", cat.degree, list(v)) for v in vecs]


def orthogonal_dimension(f: mg.MultiForm, B: mg.Degree) -> int:
    cat = catalecticant(f, B)
    ncols = len(cat.col_exps)
    if cat.exact:
        return ncols - linalg.rank_exact(cat.matrix)
    return ncols - linalg.numeric_rank(cat.matrix) if cat.matrix.shape[0] else ncols


def expected_orthogonal_dimension(ring: mg.SurfaceRing, A: mg.Degree, B: mg.Degree) -> int:
    """Kernel dimension of a maximal-rank map T_B -> S_{A-B}."""
    rowdeg = (A[0] - B[0], A[1] - B[1])
    return max(0, mg.dim(ring, B) - mg.dim(ring, rowdeg))


def _stack_exact(vectors: Sequence[Sequence]) -> RationalMatrix:
    return RationalMatrix.from_rows([list(v) for v in vectors])


def span_dimension_exact(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return linalg.rank_exact(_stack_exact(vectors))


def subspace_contained_exact(inner: Sequence[Sequence], outer: Sequence[Sequence]) -> bool:
    """inner subseteq span(outer), by rank of the stacked bases."""
    if not inner:
        return True
    if not outer:
        return False
    r_outer = span_dimension_exact(outer)
    return span_dimension_exact(list(outer) + list(inner)) == r_outer


def generation_check(f: mg.MultiForm, degrees: Sequence[mg.Degree]) -> dict:
    """Check that the given orthogonal components generate up to degree A.

    For every effective C <= A, compares sum_B T_{C-B} * I_{f,B} (B ranging
    over the generator degrees strictly below C) against I_{f,C}. Degrees
    in the generator list report as generators; failures are entries, not
    exceptions.
    """
    ring = f.ring
    A = f.degree
    gens = {(int(d[0]), int(d[1])): [mg.coefficient_vector(g) for g in
                                     orthogonal_component(f, d)]
            for d in degrees}
    gen_forms = {d: [mg.form_from_vector(ring, "T", d, v) for v in vs]
                 for d, vs in gens.items()}
    report = {"degree": list(A), "entries": []}
    ok = True
    for ca in range(A[0] + 1):
        for cb in range(A[1] + 1):
            C = (ca, cb)
            target = [mg.coefficient_vector(g) for g in orthogonal_component(f, C)]
            if C in gens:
                report["entries"].append({
                    "degree": list(C), "status": "generator",
                    "dim": len(target)})
                continue
            below = [B for B in gens
                     if B[0] <= ca and B[1] <= cb and B != C]
            products = []
            order = mg.monomials(ring, C)
            for B in below:
                mult_deg = (ca - B[0], cb - B[1])
                for mexp in mg.monomials(ring, mult_deg):
                    mono = mg.MultiForm.make(ring, "T", mult_deg, {mexp: Fraction(1)})
                    for g in gen_forms[B]:
                        products.append(mg.coefficient_vector(mg.multiply(mono, g), order))
            span_dim = span_dimension_exact(products)
            contained = subspace_contained_exact(products, target)
            success = span_dim == len(target) and contained
            ok = ok and success
            report["entries"].append({
                "degree": list(C), "status": "pass" if success else "fail",
                "dim_span": span_dim, "dim_target": len(target)})
    report["ok"] = ok
    return report


# ---------------------------------------------------------------------------
# point schemes
# ---------------------------------------------------------------------------

def same_surface_point(ring: mg.SurfaceRing, p, q, tol: float = 0.0) -> bool:
    """Equality of two Cox-coordinate points modulo the torus action."""
    p = list(p)
    q = list(q)

    def iszero(x):
        return abs(x) <= tol if tol else x == 0

    if ring.surface == mg.P1XP1:
        cross1 = p[0] * q[1] - p[1] * q[0]
        cross2 = p[2] * q[3] - p[3] * q[2]
        s1 = max(abs(p[0]) + abs(p[1]), 1) * max(abs(q[0]) + abs(q[1]), 1)
        s2 = max(abs(p[2]) + abs(p[3]), 1) * max(abs(q[2]) + abs(q[3]), 1)
        return abs(cross1) <= tol * s1 and abs(cross2) <= tol * s2 if tol \
            else cross1 == 0 and cross2 == 0
    # F1: q ~ (l*p0, l*m*p1, m*p2, m*p3)
    cross_u = p[2] * q[3] - p[3] * q[2]
    su = max(abs(p[2]) + abs(p[3]), 1) * max(abs(q[2]) + abs(q[3]), 1)
    if (abs(cross_u) > tol * su) if tol else cross_u != 0:
        return False
    # on the exceptional curve t0 = 0 the fiber coordinate is free
    if iszero(p[0]) or iszero(q[0]):
        return iszero(p[0]) and iszero(q[0])
    # off E: compare t1/t0 weighted by the u-scale
    # lambda = q0/p0; mu from u; check q1 == lambda*mu*p1
    mu_num, mu_den = (q[2], p[2]) if not iszero(p[2]) else (q[3], p[3])
    lhs = q[1] * p[0] * mu_den
    rhs = p[1] * q[0] * mu_num
    s = max(abs(lhs), abs(rhs), 1)
    return abs(lhs - rhs) <= tol * s if tol else lhs == rhs


@dataclass(frozen=True)
class PointScheme:
    """Finite reduced scheme of surface points in Cox coordinates."""

    ring: mg.SurfaceRing
    points: tuple

    @classmethod
    def make(cls, ring: mg.SurfaceRing, points, tol: float = 0.0,
             check_distinct: bool = True) -> "PointScheme":
        pts = tuple(tuple(c for c in p) for p in points)
        for p in pts:
            if mg.in_irrelevant_locus(ring, p):
                raise ValueError(f"point {p} lies in the irrelevant locus")
        if check_distinct:
            for i in range(len(pts)):
                for j in range(i + 1, len(pts)):
                    if same_surface_point(ring, pts[i], pts[j], tol):
                        raise ValueError(f"points {i} and {j} coincide on the surface")
        return cls(ring, pts)

    def __len__(self):
        return len(self.points)

    def is_exact(self) -> bool:
        return all(isinstance(c, (Fraction, int)) for p in self.points for c in p)


def evaluation_matrix(scheme: PointScheme, B: mg.Degree):
    """#points x dim T_B matrix of monomial values at the points."""
    exps = mg.monomials(scheme.ring, B)
    rows = []
    for p in scheme.points:
        row = []
        for e in exps:
            v = 1
            for coord, k in zip(p, e):
                if k:
                    v = v * coord ** k
            row.append(v)
        rows.append(row)
    return rows, exps


def scheme_ideal_component(scheme: PointScheme, B: mg.Degree,
                           tau: float = 1e-8) -> list:
    """Basis of I_{Gamma,B}: forms of degree B vanishing on the scheme."""
    rows, exps = evaluation_matrix(scheme, B)
    if scheme.is_exact():
        vecs = linalg.kernel_exact(RationalMatrix.from_rows(rows)) if rows else \
            linalg.kernel_exact(RationalMatrix(0, len(exps), ()))
    else:
        a = np.array(rows, dtype=complex)
        norms = np.linalg.norm(a, axis=1)
        norms[norms == 0] = 1.0
        vecs = list(linalg.nullspace_numeric(a / norms[:, None], tau))
    return [mg.form_from_vector(scheme.ring, "T", B, list(v)) for v in vecs]


@dataclass(frozen=True)
class ApolarityVerdict:
    apolar: bool
    pairing_test: bool
    span_test: bool
    witness: dict


def _pairing_norm_vector(f: mg.MultiForm) -> np.ndarray:
    order = mg.monomials(f.ring, f.degree)
    fc = f.term_dict()
    return np.array([complex(_pairing_entry(fc, e)) for e in order])


def is_apolar(scheme: PointScheme, f: mg.MultiForm,
              tol: Optional[float] = None) -> ApolarityVerdict:
    """Both apolarity tests: annihilator pairing and span membership.

    (i) every basis element g of I_{Gamma,A} satisfies g(f) = 0;
    (ii) stacking the power vectors of the points with f's coefficient
    vector does not raise the rank. The two are equivalent linear algebra
    (span(nu_A(Gamma))^perp = I_{Gamma,A}); disagreement is a hard error.
    """
    ring = scheme.ring
    A = f.degree
    exact = scheme.is_exact() and f.is_exact() and tol is None
    if exact:
        ideal = scheme_ideal_component(scheme, A)
        values = [mg.pairing(g, f) for g in ideal]
        test1 = all(v == 0 for v in values)
        pvecs = [mg.power_vector(ring, p, A) for p in scheme.points]
        r0 = span_dimension_exact(pvecs)
        r1 = span_dimension_exact(pvecs + [mg.coefficient_vector(f)])
        test2 = r0 == r1
        witness = {"max_pairing": 0 if test1 else 1, "rank_points": r0,
                   "rank_with_f": r1}
    else:
        tol = 1e-8 if tol is None else tol
        ideal = scheme_ideal_component(scheme, A, tau=tol)
        fpair = _pairing_norm_vector(f)
        fscale = float(np.linalg.norm(fpair))
        worst = 0.0
        for g in ideal:
            gv = np.array([complex(c) for c in mg.coefficient_vector(g)])
            val = abs(complex(np.dot(gv, fpair)))
            worst = max(worst, val / (np.linalg.norm(gv) * fscale))
        test1 = worst <= tol
        pmat = np.array([[complex(c) for c in mg.power_vector(ring, p, A)]
                         for p in scheme.points])
        norms = np.linalg.norm(pmat, axis=1)
        pmat = pmat / norms[:, None]
        fvec = np.array([complex(c) for c in mg.coefficient_vector(f)])
        fvec = fvec / np.linalg.norm(fvec)
        r0 = linalg.numeric_rank(pmat, tol)
        r1 = linalg.numeric_rank(np.vstack([pmat, fvec]), tol)
        test2 = r0 == r1
        _, lsq_res = linalg.least_squares(pmat.T, fvec)
        witness = {"max_pairing": worst, "rank_points": r0, "rank_with_f": r1,
                   "span_residual": lsq_res}
    if test1 != test2:
        raise InternalInconsistencyError(
            f"apolarity tests disagree: pairing={test1} span={test2} ({witness})")
    return ApolarityVerdict(test1 and test2, test1, test2, witness)


def apolarity_lemma_check(scheme: PointScheme, f: mg.MultiForm) -> dict:
    """Verify the apolarity equivalence by direct containment checks.

    Left side: I_{Gamma,B} subseteq I_{f,B} for every effective B <= A.
    Right side: I_{Gamma,A} subseteq H_f. Exact scalars only.
    """
    if not (scheme.is_exact() and f.is_exact()):
        raise ValueError("apolarity_lemma_check needs exact scalars")
    A = f.degree
    lhs = True
    failures = []
    for ba in range(A[0] + 1):
        for bb in range(A[1] + 1):
            B = (ba, bb)
            ideal = [mg.coefficient_vector(g) for g in scheme_ideal_component(scheme, B)]
            orth = [mg.coefficient_vector(g) for g in orthogonal_component(f, B)]
            if not subspace_contained_exact(ideal, orth):
                lhs = False
                failures.append(B)
    ideal_A = scheme_ideal_component(scheme, A)
    rhs = all(mg.pairing(g, f) == 0 for g in ideal_A)
    return {"graded_containment": lhs, "degree_A_containment": rhs,
            "equivalent": lhs == rhs, "failed_degrees": failures}


# ---------------------------------------------------------------------------
# certified-general random forms
# ---------------------------------------------------------------------------

def general_form(ring: mg.SurfaceRing, deg: mg.Degree, seed: int,
                 profile=None, max_tries: int = 8):
    """Seeded random form passing its genericity profile, with reseeding.

    profile(f) must raise GenericityError for a bad draw; default profile
    checks that every orthogonal component B <= A has the maximal-rank
    dimension. Returns (form, tries used).
    """
    if profile is None:
        def profile(f):
            A = f.degree
            for ba in range(A[0] + 1):
                for bb in range(A[1] + 1):
                    got = orthogonal_dimension(f, (ba, bb))
                    want = expected_orthogonal_dimension(ring, A, (ba, bb))
                    if got != want:
                        raise GenericityError(
                            f"dim I_f,{(ba, bb)} = {got}, expected {want}")
    last = None
    for i in range(max_tries):
        s = seed if i == 0 else derive_seed(seed, "reseed", i)
        f = mg.random_form(ring, "S", deg, s)
        try:
            profile(f)
            return f, i + 1
        except GenericityError as exc:
            last = exc
    raise GenericityError(f"no general form after {max_tries} tries: {last}")


# ---------------------------------------------------------------------------
# JSON scheme files
# ---------------------------------------------------------------------------

def scheme_to_json(scheme: PointScheme) -> dict:
    return {"surface": scheme.ring.surface,
            "points": [{"cox": [mg._scalar_to_json(c) for c in p]}
                       for p in scheme.points]}


def scheme_from_json(d: Mapping) -> PointScheme:
    ring = mg._ring(d["surface"])
    pts = [tuple(mg._scalar_from_json(c) for c in entry["cox"])
           for entry in d["points"]]
    return PointScheme.make(ring, pts, tol=1e-12 if any(
        isinstance(c, complex) for p in pts for c in p) else 0.0)


def save_scheme(scheme: PointScheme, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(scheme_to_json(scheme), fh, indent=1, sort_keys=True)


def load_scheme(path: str) -> PointScheme:
    with open(path) as fh:
        return scheme_from_json(json.load(fh))
