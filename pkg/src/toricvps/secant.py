"""Generic ranks and powersum-variety dimensions, with Terracini certification.

The generic rank of a bidegree-(a,b) form on P1xP1 is ceil((a+1)(b+1)/3),
except in the defective family (2,2d) (applied symmetrically to (2d,2))
where it is 2d+2. The dimension of the variety of minimal decompositions
is 3 in the defective family and 3(ceil(x) - x), x = (a+1)(b+1)/3,
otherwise; equivalently 3r - 1 - (ab+a+b) for the generic rank r.

Terracini's lemma turns both statements into exact rank computations:
the affine span of the tangent spaces of the cone over the embedded
surface at k random points has dimension min(3k, dim S_A) unless k is
defective. Everything here is computed over the rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import ceil
from typing import Optional, Sequence

from . import multigraded as mg
from .linalg import RationalMatrix, rank_exact
from .seeding import derive_seed


def rank_formula(a: int, b: int) -> int:
    """Generic rank of a bidegree-(a,b) form, a,b >= 1."""
    if a < 1 or b < 1:
        raise ValueError("rank_formula needs a,b >= 1")
    if a == 2 and b % 2 == 0:
        return b + 2
    if b == 2 and a % 2 == 0:
        return a + 2
    return ceil((a + 1) * (b + 1) / 3)


def vps_dimension(a: int, b: int) -> int:
    """Dimension of the variety of rank-many powersum decompositions."""
    if (a == 2 and b % 2 == 0) or (b == 2 and a % 2 == 0):
        return 3
    n = (a + 1) * (b + 1)
    return 3 * ceil(n / 3) - n


def vps_dimension_from_rank(r: int, a: int, b: int) -> int:
    """Incidence-variety count: 3r - 1 - (ab + a + b)."""
    return 3 * r - 1 - (a * b + a + b)


def _random_surface_points(ring: mg.SurfaceRing, k: int, seed: int) -> list:
    rng = random.Random(seed)
    pts = []
    while len(pts) < k:
        cand = tuple(rng.randint(-9, 9) for _ in range(4))
        if mg.in_irrelevant_locus(ring, cand):
            continue
        if any(_same_int_point(ring, cand, p) for p in pts):
            continue
        pts.append(cand)
    return pts


def _same_int_point(ring, p, q) -> bool:
    from .apolarity import same_surface_point
    from fractions import Fraction
    return same_surface_point(ring, tuple(map(Fraction, p)), tuple(map(Fraction, q)))


def terracini_dimension(ring: mg.SurfaceRing, deg: mg.Degree, k: int,
                        seed: int = 0) -> int:
    """Exact affine dimension of the span of k generic tangent spaces.

    Stacks, per random point, the four coordinate partials of the power
    form map; the rank equals dim(sigma_k) + 1 for general points.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    pts = _random_surface_points(ring, k, seed)
    rows = []
    for p in pts:
        rows.extend(mg.power_jacobian(ring, p, deg))
    return rank_exact(RationalMatrix.from_rows(rows))


@dataclass(frozen=True)
class RankCertificate:
    surface: str
    degree: tuple
    formula_rank: Optional[int]
    terracini_dims: dict
    verified_rank: Optional[int]
    defective_ks: tuple
    ambient_dim: int
    agrees: bool

    def to_json(self) -> dict:
        return {"surface": self.surface, "degree": list(self.degree),
                "formula_rank": self.formula_rank,
                "terracini_dims": {str(k): v for k, v in sorted(self.terracini_dims.items())},
                "verified_rank": self.verified_rank,
                "defective_ks": list(self.defective_ks),
                "ambient_dim": self.ambient_dim, "agrees": self.agrees}


def certify_rank(ring: mg.SurfaceRing, deg: mg.Degree,
                 seeds: Sequence[int] = (0, 1, 2), k_max: Optional[int] = None
                 ) -> RankCertificate:
    """Terracini scan over k = 1..(formula rank + 1), maxima over seeds.

    A formula/Terracini mismatch is reported in the certificate (agrees
    flag), not raised. On F1 there is no closed formula; the certificate
    carries the Terracini value only.
    """
    n = mg.dim(ring, deg)
    formula: Optional[int] = None
    if ring.surface == mg.P1XP1:
        formula = rank_formula(deg[0], deg[1])
    if k_max is None:
        k_max = (formula + 1) if formula is not None else ceil(n / 3) + 2
    dims = {}
    verified = None
    defective = []
    for k in range(1, k_max + 1):
        best = 0
        for s in seeds:
            best = max(best, terracini_dimension(ring, deg, k,
                                                 derive_seed(s, "terracini", k)))
            if best == min(3 * k, n):
                break
        dims[k] = best
        if best < min(3 * k, n):
            defective.append(k)
        if verified is None and best == n:
            verified = k
    agrees = formula is None or verified == formula
    return RankCertificate(ring.surface, tuple(deg), formula, dims, verified,
                           tuple(defective), n, agrees)
