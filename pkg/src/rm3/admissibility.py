"""Admissibility tests for weight sets and bases in a totally real cubic field.

Two independent routes decide admissibility of a basis:

* ``no_half_space``: 0 lies in the relative interior of the convex hull of
  the Q-images.  Real positive relations among the embedded Q-images exist
  exactly when rational ones do (the embedding of a Q-basis is an
  invertible real matrix, so the real relation space is the realification
  of the rational one).  The test is therefore a rational LP.
* ``is_rational_positive``: ratios of r_i/s_i (s the trace-dual basis) are
  rational and each r_i/s_i is totally positive.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import mpmath

from .exactmath import lp_positive_relation, nullspace_left, primitive_integer_vector
from .numberfield import FieldElement, ZeroElement, dual_basis, qmap


class NotAdmissible(ValueError):
    pass


class NotRationalPositive(ValueError):
    pass


class ZeroWeight(ZeroElement):
    pass


def q_vectors(weights: Sequence[FieldElement]) -> list[tuple[int, ...]]:
    """Q-images as primitive integer vectors (positive rescaling keeps cones intact)."""
    out = []
    for w in weights:
        if w.is_zero():
            raise ZeroWeight("weights must be nonzero")
        out.append(primitive_integer_vector(qmap(w).coords))
    return out


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _det3(a, b, c):
    return _dot(a, _cross(b, c))


def int_rank(vectors: Sequence[Sequence[int]]) -> int:
    vs = [tuple(v) for v in vectors if any(v)]
    if not vs:
        return 0
    crosses = [c for i, a in enumerate(vs) for b in vs[i + 1:] if any(c := _cross(a, b))]
    if not crosses:
        return 1
    return 3 if any(_dot(c, v) for c in crosses for v in vs) else 2


@dataclass(frozen=True)
class ConeProfile:
    """Exact shape of the cone spanned by integer vectors in Z^3.

    ``functionals`` are the nonzero linear forms (inside the span) that are
    nonnegative on every generator and vanish on two independent generators
    (one in the planar case).  They cut out the cone inside its span; an
    empty tuple means the cone is the whole span.
    """

    span_rank: int
    lineality_rank: int
    functionals: tuple
    normal: Optional[tuple]  # normal of the span when span_rank == 2
    generators: tuple

    @property
    def is_subspace(self) -> bool:
        return self.span_rank == self.lineality_rank

    def in_span(self, x) -> bool:
        if self.span_rank == 3:
            return True
        if self.span_rank == 2:
            return _dot(self.normal, x) == 0
        return self.span_rank == 1 and not any(_cross(self.generators[0], x))

    def contains(self, x) -> bool:
        if not self.in_span(x):
            return False
        if self.span_rank == 1:
            return self.lineality_rank == 1 or _dot(self.generators[0], x) >= 0
        return all(_dot(f, x) >= 0 for f in self.functionals)

    def in_relative_interior(self, x) -> bool:
        if not self.in_span(x):
            return False
        if self.span_rank == 1:
            return self.lineality_rank == 1 or _dot(self.generators[0], x) > 0
        return all(_dot(f, x) > 0 for f in self.functionals)


def _candidates(vs, normal):
    out = set()
    if normal is None:
        for i, a in enumerate(vs):
            for b in vs[i + 1:]:
                c = _cross(a, b)
                if any(c):
                    c = primitive_integer_vector(c)
                    out.add(c)
                    out.add(tuple(-x for x in c))
    else:
        for a in vs:
            c = primitive_integer_vector(_cross(normal, a))
            out.add(c)
            out.add(tuple(-x for x in c))
    return out


@lru_cache(maxsize=1 << 16)
def _profile(vs: tuple) -> ConeProfile:
    rank = int_rank(vs)
    if rank == 0:
        raise ValueError("cone of zero vectors")
    if rank == 1:
        base = vs[0]
        signs = {_dot(base, v) > 0 for v in vs}
        return ConeProfile(1, 1 if len(signs) == 2 else 0, (), None, vs)
    normal = None
    if rank == 2:
        normal = next(primitive_integer_vector(c) for i, a in enumerate(vs)
                      for b in vs[i + 1:] if any(c := _cross(a, b)))
    valid = tuple(sorted(f for f in _candidates(vs, normal) if all(_dot(f, v) >= 0 for v in vs)))
    lineal = [v for v in vs if all(_dot(f, v) == 0 for f in valid)]
    return ConeProfile(rank, int_rank(lineal), valid, normal, vs)


def cone_profile(vectors: Sequence[Sequence[int]]) -> ConeProfile:
    key = tuple(sorted(set(primitive_integer_vector(v) for v in vectors if any(v))))
    return _profile(key)


def relint_contains_origin(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff some strictly positive combination of the vectors vanishes."""
    return cone_profile(vectors).is_subspace


def relint_contains_origin_lp(vectors: Sequence[Sequence[int]]) -> bool:
    """Same question answered by an exact simplex feasibility problem."""
    return lp_positive_relation([tuple(v) for v in vectors]) is not None


def no_half_space(weights: Sequence[FieldElement]) -> bool:
    """Is 0 in the relative interior of conv{Q(w)}?"""
    if not weights:
        raise ValueError("need at least one weight")
    return relint_contains_origin(q_vectors(weights))


def no_half_space_lp(weights: Sequence[FieldElement]) -> bool:
    if not weights:
        raise ValueError("need at least one weight")
    return relint_contains_origin_lp(q_vectors(weights))


def is_rational_positive(r: Sequence[FieldElement]) -> bool:
    s = dual_basis(r)
    rho = [ri / si for ri, si in zip(r, s)]
    for i in range(3):
        for j in range(i + 1, 3):
            if not (rho[i] / rho[j]).is_rational():
                return False
    return all(x.is_totally_positive() for x in rho)


def _normalise_sign(v: Sequence[int]) -> tuple[int, ...]:
    first = next((x for x in v if x), 0)
    return tuple(-x for x in v) if first < 0 else tuple(v)


def admissibility_coefficients(r: Sequence[FieldElement]) -> tuple[int, int, int]:
    """Primitive integers c with sum c_i / r_i = 0, first nonzero entry positive."""
    if not no_half_space(r):
        raise NotAdmissible("basis is not admissible")
    inv = [x.inverse().coords for x in r]
    kernel = nullspace_left(inv)
    if len(kernel) != 1:
        raise NotAdmissible("the reciprocals do not satisfy a unique rational relation")
    c = _normalise_sign(primitive_integer_vector(kernel[0]))
    # cross-check against the proportionality c ~ N(r_i) s_i / r_i
    s = dual_basis(r)
    v = [ri.norm() * si / ri for ri, si in zip(r, s)]
    for i in range(3):
        if not (v[i] * c[0] - v[0] * c[i]).is_zero():
            raise ArithmeticError("coefficient proportionality check failed")
    return c


@dataclass(frozen=True)
class AdmissibleBasis:
    r: tuple[FieldElement, FieldElement, FieldElement]
    s: tuple[FieldElement, FieldElement, FieldElement]
    c: tuple[int, int, int]
    q_ratios: tuple[Fraction, Fraction, Fraction]

    @classmethod
    def of(cls, r: Sequence[FieldElement]) -> "AdmissibleBasis":
        r = tuple(r)
        if not is_rational_positive(r):
            raise NotAdmissible("basis is not rational and positive")
        s = dual_basis(r)
        rho = [ri / si for ri, si in zip(r, s)]
        q = tuple((x / rho[0]).coords[0] for x in rho)
        return cls(r, s, admissibility_coefficients(r), q)


@dataclass(frozen=True)
class RecIntersection:
    """Scaled bases r~ = a r and s~ = s / a with a^(j) = sqrt(s_1^(j) / r_1^(j)).

    ``q_ratios`` are q_i = (r_i/s_i)/(r_1/s_1); then s~_i = r~_i / q_i, so the
    scaled basis r~ is orthogonal in R^3.
    """

    scale: tuple
    q_ratios: tuple[Fraction, Fraction, Fraction]
    r_scaled: tuple
    s_scaled: tuple
    orthogonality_defect: float


def rec_intersection(r: Sequence[FieldElement], dps: int = 40) -> RecIntersection:
    if not is_rational_positive(r):
        raise NotRationalPositive("basis is not rational and positive")
    basis = AdmissibleBasis.of(r)
    with mpmath.workdps(dps):
        r_emb = [x.embeddings_mp(dps) for x in basis.r]
        s_emb = [x.embeddings_mp(dps) for x in basis.s]
        a = tuple(mpmath.sqrt(s_emb[0][j] / r_emb[0][j]) for j in range(3))
        rt = [tuple(a[j] * v[j] for j in range(3)) for v in r_emb]
        st = [tuple(v[j] / a[j] for j in range(3)) for v in s_emb]
        defect = mpmath.mpf(0)
        for i in range(3):
            for k in range(3):
                if i != k:
                    defect = max(defect, abs(mpmath.fsum(rt[i][j] * rt[k][j] for j in range(3))))
            # proportionality s~_i = r~_i / q_i
            q = basis.q_ratios[i]
            qm = mpmath.mpf(q.numerator) / q.denominator
            for j in range(3):
                defect = max(defect, abs(st[i][j] * qm - rt[i][j]))
        return RecIntersection(a, basis.q_ratios, tuple(rt), tuple(st), float(defect))
