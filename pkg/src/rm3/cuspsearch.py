"""Cusp computations: the hyperelliptic search in Omega M_3(4)^hyp and the (3,1) verifier.

Hyperelliptic cusps: normalise the stable form to
``sum r_i (1/(z - x_i) - 1/(z + x_i)) dz`` with a fourfold zero at 0 and
``x_1 = 1``.  The two coefficient equations leave a cubic in ``x_2``; for
every root the product ``P = prod R_i^{a_i}`` of the cross-ratios raised to
the exponents must be a root of unity.  A triple with no such root cannot
carry a cusp, whatever the extension class.

(3,1) cusps: ``omega = z^3 dz / prod (z - x_i)(z - y_i)`` with ``y_i =
zeta_i x_i``.  Acceptance is checked in two ways that must agree.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .admissibility import NotAdmissible, no_half_space
from .crossratio import InternalMismatch, exponents
from .exactmath import rank
from .ideals import FieldRecord
from .numberfield import (CubicField, Extension, ExtensionElement, FieldElement, is_root_of_unity,
                          roots_in_field)

log = logging.getLogger(__name__)

Scalar = Union[FieldElement, ExtensionElement]


class DegenerateAll(ValueError):
    """Every root of the cubic gives a degenerate configuration."""


class UnsupportedCyclotomicOrder(ValueError):
    pass


# ---------------------------------------------------------------- polynomials over F (constant first)


def _padd(a, b, zero):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) for i in range(n)]


def _pmul(a, b, zero):
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _pscale(a, c):
    return [x * c for x in a]


def _trim(a):
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def hyp4_cubic(r: Sequence[FieldElement]) -> list[FieldElement]:
    """Cubic in x_2 (constant first) after x_1 = 1 and eliminating x_3.

    With d = r_1 x_2 + r_2 and x_3 = -r_3 x_2 / d, the second coefficient
    equation times d^2 is x_2 times this cubic.
    """
    r1, r2, r3 = r
    zero = r1.field.zero
    one = r1.field.one
    d = [r2, r1]
    d2 = _pmul(d, d, zero)
    x2 = [zero, one]
    x2sq = [zero, zero, one]
    # r1 (x2^2 d^2 + r3^2 x2^2)
    t1 = _pscale(_padd(_pmul(x2sq, d2, zero), _pscale(x2sq, r3 * r3), zero), r1)
    # r2 x2 (r3^2 x2^2 + d^2)
    t2 = _pscale(_pmul(x2, _padd(_pscale(x2sq, r3 * r3), d2, zero), zero), r2)
    # r3 x3 (1 + x2^2) d^2 = -r3^2 x2 d (1 + x2^2)
    t3 = _pscale(_pmul(_pmul(x2, d, zero), [one, zero, one], zero), -(r3 * r3))
    quartic = _padd(_padd(t1, t2, zero), t3, zero)
    if not quartic[0].is_zero():
        raise InternalMismatch("x_2 = 0 should solve the eliminated equation")
    return _trim(quartic[1:])


# ---------------------------------------------------------------- hyperelliptic candidates


@dataclass
class Hyp4Candidate:
    triple: tuple
    x: tuple  # (1, x_2, x_3)
    where: str  # "F" or the defining polynomial of F[u]
    conjugates: int  # number of roots of the cubic this candidate stands for
    P: Optional[Scalar] = None
    order: Optional[int] = None  # root-of-unity order of P when it is one
    rejection: Optional[str] = None  # machine-readable degeneracy reason

    @property
    def is_hit(self) -> bool:
        return self.order is not None

    def describe(self) -> dict:
        def fmt(v):
            if isinstance(v, FieldElement):
                return v.format()
            return "[" + ";".join(c.format() for c in v.coeffs) + "]"

        out = {"where": self.where, "conjugates": self.conjugates, "x": [fmt(v) for v in self.x]}
        if self.rejection:
            out["rejected"] = self.rejection
        else:
            out["P_order"] = self.order
        return out


def _degeneracy(x: Sequence[Scalar], d: Scalar) -> Optional[str]:
    if d.is_zero():
        return "x3-pole"
    for i in range(3):
        if x[i].is_zero():
            return f"x{i + 1}-zero"
    for i in range(3):
        for j in range(i + 1, 3):
            if (x[i] - x[j]).is_zero():
                return f"x{i + 1}=x{j + 1}"
            if (x[i] + x[j]).is_zero():
                return f"x{i + 1}=-x{j + 1}"
    return None


def cross_ratios(x: Sequence[Scalar]) -> tuple:
    """R_i = ((x_{i+1} + x_{i+2}) / (x_{i+1} - x_{i+2}))^2."""
    out = []
    for i in range(3):
        a, b = x[(i + 1) % 3], x[(i + 2) % 3]
        q = (a + b) / (a - b)
        out.append(q * q)
    return tuple(out)


def hyp4_equations(r: Sequence[FieldElement], x: Sequence[Scalar]) -> tuple:
    """Left-hand sides of the two coefficient equations."""
    e1 = sum((x[(i + 1) % 3] * x[(i + 2) % 3] * r[i] for i in range(3)), x[0] * 0)
    e2 = sum((x[i] * (x[(i + 1) % 3] ** 2 + x[(i + 2) % 3] ** 2) * r[i] for i in range(3)), x[0] * 0)
    return e1, e2


def hyp4_residue_identity(r: Sequence[FieldElement], x: Sequence[Scalar]) -> bool:
    """sum 2 r_i x_i prod_{j != i}(z^2 - x_j^2) is a multiple of z^4."""
    # in w = z^2 the numerator is sum 2 r_i x_i (w - a_j)(w - a_k), a = x^2
    a = [v * v for v in x]
    c0 = sum((x[i] * a[(i + 1) % 3] * a[(i + 2) % 3] * r[i] for i in range(3)), x[0] * 0)
    c1 = sum((x[i] * (a[(i + 1) % 3] + a[(i + 2) % 3]) * r[i] for i in range(3)), x[0] * 0)
    c2 = sum((x[i] * r[i] for i in range(3)), x[0] * 0)
    return c0.is_zero() and c1.is_zero() and not c2.is_zero()


def _candidate(r, a, x2: Scalar, where: str, conj: int) -> Hyp4Candidate:
    r1, r2, r3 = r
    one = x2 * 0 + 1
    d = x2 * r1 + r2
    if d.is_zero():
        return Hyp4Candidate(tuple(r), (one, x2, None), where, conj, rejection="x3-pole")
    x3 = -(x2 * r3) / d
    x = (one, x2, x3)
    reason = _degeneracy(x, d)
    if reason:
        return Hyp4Candidate(tuple(r), x, where, conj, rejection=reason)
    e1, e2 = hyp4_equations(r, x)
    if not (e1.is_zero() and e2.is_zero()):
        raise InternalMismatch("root of the cubic does not solve the coefficient equations")
    R = cross_ratios(x)
    P = one
    for Ri, ai in zip(R, a):
        P = P * Ri ** ai
    return Hyp4Candidate(tuple(r), x, where, conj, P=P, order=is_root_of_unity(P))


def hyp4_candidates(r: Sequence[FieldElement]) -> list[Hyp4Candidate]:
    """All solutions of the normalised coefficient equations for the residues r.

    Roots of the cubic outside F are represented once per irreducible factor
    by the generator of F[u]/(factor); the verdict holds for every conjugate.
    Raises DegenerateAll when the cubic has roots but all are degenerate.
    """
    r = tuple(r)
    if not no_half_space(r):
        raise NotAdmissible("triple is not admissible")
    a = exponents(r)
    cubic = hyp4_cubic(r)
    if len(cubic) <= 1:
        return []
    roots, cofactor = roots_in_field(cubic)
    out = []
    seen = []
    for x2 in roots:
        if any((x2 - y).is_zero() for y in seen):
            continue
        seen.append(x2)
        out.append(_candidate(r, a, x2, "F", 1))
    if len(cofactor) > 2:
        ext = Extension(r[0].field, cofactor, name="u", check=False)
        desc = "F[u]/(" + ";".join(c.format() for c in ext.modulus) + ")"
        out.append(_candidate(r, a, ext.gen, desc, ext.degree))
    if out and all(c.rejection for c in out):
        raise DegenerateAll(", ".join(c.rejection for c in out))
    return out


# ---------------------------------------------------------------- the search


@dataclass
class Hyp4Line:
    disc: int
    record: int
    cls: int
    triple: tuple
    status: str  # no-solution | degenerate-only | non-unity | HIT | error
    candidates: list = field(default_factory=list)
    error: str = ""

    def tsv(self) -> str:
        tri = ";".join(x.format() for x in self.triple) if self.triple else "-"
        extra = ""
        if self.status == "HIT":
            hits = [c for c in self.candidates if c.is_hit]
            extra = " ".join(f"x=({';'.join(c.describe()['x'])}) order={c.order} where={c.where}" for c in hits)
        elif self.status == "error":
            extra = self.error
        return f"{self.disc}\t{self.record}\t{self.cls}\t{tri}\t{self.status}\t{extra}".rstrip("\t")

    def to_dict(self) -> dict:
        return {
            "disc": self.disc, "record": self.record, "class": self.cls,
            "triple": [x.format() for x in self.triple] if self.triple else None,
            "status": self.status,
            "candidates": [c.describe() for c in self.candidates],
            **({"error": self.error} if self.error else {}),
        }


@dataclass
class Hyp4Report:
    lines: list

    @property
    def hits(self) -> list:
        return [ln for ln in self.lines if ln.status == "HIT"]

    @property
    def failures(self) -> list:
        return [ln for ln in self.lines if ln.status == "error"]


def triple_status(r: Sequence[FieldElement]) -> tuple[str, list]:
    try:
        cands = hyp4_candidates(r)
    except DegenerateAll:
        return "degenerate-only", []
    if not cands:
        return "no-solution", []
    if any(c.is_hit for c in cands):
        return "HIT", cands
    return "non-unity", cands


def _search_record(record: FieldRecord, seed: int = 0) -> list:
    from .enumerate import enumerate_2dim

    lines = []
    try:
        for ci, ideal in enumerate(record.classes):
            res = enumerate_2dim(ideal, record.units, seed=seed)
            for s in res.six_strata():
                triple = s.weights
                status, cands = triple_status(triple)
                lines.append(Hyp4Line(record.disc, record.index, ci, triple, status, cands))
    except Exception as exc:  # per-row failure is reported, not fatal
        log.warning("hyp4 search failed on %s: %s", record.record_id, exc)
        lines.append(Hyp4Line(record.disc, record.index, -1, (), "error",
                              error=f"{type(exc).__name__}: {exc}"))
    return lines


def hyp4_search(records: Iterable[FieldRecord], max_disc: Optional[int] = None, seed: int = 0,
                jobs: int = 1) -> Hyp4Report:
    recs = [r for r in records if max_disc is None or r.disc <= max_disc]
    if jobs > 1 and len(recs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_search_record, recs, [seed] * len(recs)))
    else:
        chunks = [_search_record(r, seed) for r in recs]
    return Hyp4Report([ln for chunk in chunks for ln in chunk])


# ---------------------------------------------------------------- (3,1) cusps


def _cyclotomic_ext(field_: CubicField, orders: Sequence[int]) -> tuple[Extension, int]:
    if any(m not in (1, 2, 3, 4, 6) for m in orders):
        raise UnsupportedCyclotomicOrder(f"orders {tuple(orders)}")
    has3 = any(m in (3, 6) for m in orders)
    has4 = any(m == 4 for m in orders)
    if has3 and has4:
        raise UnsupportedCyclotomicOrder("orders 3 or 6 mixed with 4")
    k = 3 if has3 else 4 if has4 else 1
    return Extension.cyclotomic(field_, k), k


def _root_of_unity(ext: Extension, k: int, order: int, power: int) -> ExtensionElement:
    """exp(2 pi i power/order) inside F(zeta_k), zeta_k the generator."""
    power %= order
    g = ext.gen if k > 1 else ext.one
    if order == 1:
        return ext.one
    if order == 2:
        return ext(-1) ** power
    if order == k:
        return g ** power
    if order == 6 and k == 3:
        return (-(g * g)) ** power
    raise UnsupportedCyclotomicOrder(f"order {order} in Q(zeta_{k})")


@dataclass
class Cusp31Candidate:
    """Points x_i, y_i = zeta_i x_i with p = 0, q = infinity, and residues r."""

    x: tuple
    zetas: tuple  # ((order, power), ...) for zeta_1..zeta_3
    residues: tuple

    def __post_init__(self):
        self.x = tuple(self.x)
        self.zetas = tuple((int(m), int(p) % int(m)) for m, p in self.zetas)
        self.residues = tuple(self.residues)
        if len(self.x) != 3 or len(self.zetas) != 3 or len(self.residues) != 3:
            raise ValueError("need three points, three roots of unity and three residues")
        if any(p == 0 for _, p in self.zetas):
            raise ValueError("zeta_i = 1 collapses x_i and y_i")
        field_ = self.residues[0].field
        if rank([v.coords for v in self.residues]) != 3:
            raise ValueError("residues are not a basis of F over Q")
        self.ext, k = _cyclotomic_ext(field_, [m for m, _ in self.zetas])
        xs = [self.ext(v) for v in self.x]
        ys = [_root_of_unity(self.ext, k, m, p) * xv for (m, p), xv in zip(self.zetas, xs)]
        pts = xs + ys
        if any(v.is_zero() for v in pts):
            raise ValueError("a pole sits at the zero of order three")
        for i in range(6):
            for j in range(i + 1, 6):
                if (pts[i] - pts[j]).is_zero():
                    raise ValueError("marked points are not distinct")
        self.xs, self.ys = tuple(xs), tuple(ys)


def d_polynomial_values(c: Cusp31Candidate) -> tuple:
    """D_i(x) for i = 1..3."""
    out = []
    xs, ys = c.xs, c.ys
    for i in range(3):
        zi = ys[i] / xs[i]
        a = c.ext.one
        b = c.ext.one
        for j in range(3):
            if j != i:
                a = a * (xs[i] - xs[j]) * (xs[i] - ys[j])
                b = b * (ys[i] - xs[j]) * (ys[i] - ys[j])
        out.append(zi ** 3 * a - b)
    return tuple(out)


def _residues_at_x(c: Cusp31Candidate) -> tuple:
    xs, ys = c.xs, c.ys
    out = []
    for i in range(3):
        den = xs[i] - ys[i]
        for j in range(3):
            if j != i:
                den = den * (xs[i] - xs[j]) * (xs[i] - ys[j])
        out.append(xs[i] ** 3 / den)
    return tuple(out)


def _proportional(u: Sequence[Scalar], v: Sequence[Scalar]) -> bool:
    return all((u[i] * v[0] - u[0] * v[i]).is_zero() for i in range(3))


def _route_a(c: Cusp31Candidate) -> tuple[bool, list]:
    reasons = []
    d = d_polynomial_values(c)
    for i, v in enumerate(d):
        if not v.is_zero():
            reasons.append(f"D{i + 1}!=0")
    if not reasons and not _proportional(_residues_at_x(c), [c.ext(r) for r in c.residues]):
        reasons.append("residues-not-proportional")
    return not reasons, reasons


def _ext_poly_mul(a, b, ext):
    out = [ext(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def partial_fraction_numerator(c: Cusp31Candidate) -> list:
    """Coefficients (constant first) of sum r_i (x_i - y_i) prod_{j != i}(z - x_j)(z - y_j)."""
    ext = c.ext
    total = [ext(0)] * 6
    for i in range(3):
        term = [ext(c.residues[i]) * (c.xs[i] - c.ys[i])]
        for j in range(3):
            if j != i:
                term = _ext_poly_mul(term, [-c.xs[j], ext.one], ext)
                term = _ext_poly_mul(term, [-c.ys[j], ext.one], ext)
        total = [t + (term[k] if k < len(term) else ext(0)) for k, t in enumerate(total)]
    return total


def _route_b(c: Cusp31Candidate) -> tuple[bool, list]:
    n = partial_fraction_numerator(c)
    if not n[5].is_zero():
        raise InternalMismatch("z^5 coefficient must vanish identically")
    reasons = [f"z^{k}!=0" for k in (0, 1, 2, 4) if not n[k].is_zero()]
    if n[3].is_zero():
        reasons.append("z^3=0")
    return not reasons, reasons


@dataclass
class Cusp31Verdict:
    accepted: bool
    route_a: bool
    route_b: bool
    torsion_order: int
    on_line_L: bool
    reasons: list

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def verify31_cusp(c: Cusp31Candidate) -> Cusp31Verdict:
    ok_a, why_a = _route_a(c)
    ok_b, why_b = _route_b(c)
    if ok_a != ok_b:
        raise InternalMismatch(f"routes disagree: a={why_a} b={why_b}")
    p = 1
    for m, _ in c.zetas:
        p = p * m // math.gcd(p, m)
    torsion_ok = all((xv ** p - yv ** p).is_zero() for xv, yv in zip(c.xs, c.ys))
    if not torsion_ok:
        raise InternalMismatch("x_i^p != y_i^p for a root of unity of order dividing p")
    on_l = (c.xs[0] + c.xs[1] + c.xs[2]).is_zero()
    return Cusp31Verdict(ok_a, ok_a, ok_b, p, on_l, why_a + [w for w in why_b if w not in why_a])


# ---------------------------------------------------------------- the line L


class _MPoly:
    """Polynomial in x1, x2, x3 with coefficients in an extension of F."""

    def __init__(self, ext: Extension, terms: Optional[dict] = None):
        self.ext = ext
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def var(cls, ext, i, coeff=None):
        e = [0, 0, 0]
        e[i] = 1
        return cls(ext, {tuple(e): coeff if coeff is not None else ext.one})

    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t[k] + v if k in t else v
        return _MPoly(self.ext, t)

    def __neg__(self):
        return _MPoly(self.ext, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, _MPoly):
            return _MPoly(self.ext, {k: v * other for k, v in self.terms.items()})
        t: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                t[k] = t[k] + v1 * v2 if k in t else v1 * v2
        return _MPoly(self.ext, t)

    def is_zero(self) -> bool:
        return not self.terms

    def degree_in(self, i: int) -> int:
        return max((k[i] for k in self.terms), default=-1)

    def coeff_in(self, i: int, d: int) -> "_MPoly":
        t = {}
        for k, v in self.terms.items():
            if k[i] == d:
                kk = list(k)
                kk[i] = 0
                t[tuple(kk)] = v
        return _MPoly(self.ext, t)

    def times_var_power(self, i: int, d: int) -> "_MPoly":
        t = {}
        for k, v in self.terms.items():
            kk = list(k)
            kk[i] += d
            t[tuple(kk)] = v
        return _MPoly(self.ext, t)


def d_polynomials(ext: Extension, zetas: Sequence[ExtensionElement]) -> list:
    x = [_MPoly.var(ext, i) for i in range(3)]
    out = []
    for i in range(3):
        a = _MPoly(ext, {(0, 0, 0): zetas[i] ** 3})
        b = _MPoly(ext, {(0, 0, 0): ext.one})
        for j in range(3):
            if j != i:
                a = a * (x[i] - x[j]) * (x[i] - x[j] * zetas[j])
                b = b * (x[i] * zetas[i] - x[j]) * (x[i] * zetas[i] - x[j] * zetas[j])
        out.append(a - b)
    return out


def divide_by_line(poly: _MPoly) -> tuple:
    """Quotient and remainder of poly by x1 + x2 + x3, dividing in x3."""
    ext = poly.ext
    n = poly.degree_in(2)
    if n < 0:
        return poly, poly
    rho = -(_MPoly.var(ext, 0) + _MPoly.var(ext, 1))
    coeffs = [poly.coeff_in(2, d) for d in range(n + 1)]
    q = [None] * n
    acc = coeffs[n]
    for k in range(n - 1, -1, -1):
        q[k] = acc
        acc = coeffs[k] + rho * acc
    quotient = _MPoly(ext)
    for k, c in enumerate(q):
        quotient = quotient + c.times_var_power(2, k)
    return quotient, acc


@dataclass
class LineLReport:
    divisible: tuple  # P | D_k for k = 1..3
    points: list  # (1, x_2, x_3) in F on L whose residues match
    verdicts: list


def line_L_points(field_: CubicField, residues: Optional[Sequence[FieldElement]] = None,
                  power: int = 1) -> LineLReport:
    """Divisibility of each D_k by x1 + x2 + x3 for zeta_i = exp(2 pi i power/3),
    and the points of L over F whose residues are proportional to ``residues``."""
    if power % 3 == 0:
        raise UnsupportedCyclotomicOrder("zeta must be a primitive cube root of unity")
    ext = Extension.cyclotomic(field_, 3)
    z = ext.gen ** (power % 3)
    ds = d_polynomials(ext, [z, z, z])
    divisible = []
    for d in ds:
        quotient, rem = divide_by_line(d)
        if not rem.is_zero():
            divisible.append(False)
            continue
        check = quotient * (_MPoly.var(ext, 0) + _MPoly.var(ext, 1) + _MPoly.var(ext, 2)) - d
        if not check.is_zero():
            raise InternalMismatch("quotient times divisor does not reproduce D_k")
        divisible.append(True)
    points, verdicts = [], []
    if residues is not None:
        for x2 in _residue_matches_on_L(field_, ext, z, tuple(residues)):
            cand = Cusp31Candidate((field_.one, x2, -field_.one - x2), ((3, power),) * 3, residues)
            v = verify31_cusp(cand)
            if v.accepted:
                points.append(cand.x)
                verdicts.append(v)
    return LineLReport(tuple(divisible), points, verdicts)


def _residue_matches_on_L(field_, ext, z, r) -> list:
    """x_2 in F with (1, x_2, -1 - x_2) on L and residues proportional to r."""
    # residue at x_i is x_i^3 / ((1 - z) x_i prod_{j != i}(x_i - x_j)(x_i - z x_j)); work with
    # numerators of rho_i r_1 - rho_1 r_i as polynomials in x_2 over F(zeta)
    one = ext.one
    X = [[one], [ext(0), one], [-one, -one]]  # x_1, x_2, x_3 as polynomials in x_2

    def pmul(a, b):
        return _ext_poly_mul(a, b, ext)

    def psub(a, b):
        n = max(len(a), len(b))
        return [(a[i] if i < len(a) else ext(0)) - (b[i] if i < len(b) else ext(0)) for i in range(n)]

    nums, dens = [], []
    for i in range(3):
        num = pmul(pmul(X[i], X[i]), X[i])
        den = pmul([one - z], X[i])
        for j in range(3):
            if j != i:
                den = pmul(den, psub(X[i], X[j]))
                den = pmul(den, psub(X[i], [z * c for c in X[j]]))
        nums.append(num)
        dens.append(den)
    eqs = []
    for i in (1, 2):
        lhs = pmul(pmul(nums[i], dens[0]), [ext(r[0])])
        rhs = pmul(pmul(nums[0], dens[i]), [ext(r[i])])
        eqs.append(psub(lhs, rhs))
    # a root in F kills each F-component separately
    comps = []
    for e in eqs:
        for part in range(ext.degree):
            comps.append(_trim([c.coeffs[part] for c in e]))
    comps = [c for c in comps if c]
    if not comps:
        return []
    comps.sort(key=len)
    roots, _ = roots_in_field(comps[0])
    out = []
    for x2 in roots:
        if any((x2 - y).is_zero() for y in out):
            continue
        if all(_eval(c, x2).is_zero() for c in comps):
            out.append(x2)
    return out


def _eval(coeffs, x):
    acc = x.field.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def veech_triple(field_: CubicField) -> tuple:
    v = field_.gen
    return (field_.one, v * v + v - 2, v * v - 2)
