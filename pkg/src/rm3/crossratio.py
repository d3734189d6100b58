"""Cross-ratio equations cutting out eigenform loci inside boundary strata.

Exponents come from two independent formulas that must agree.  Extension
classes are symmetric rational matrices ``T`` written in a Z-basis ``b`` of
the lattice, i.e. the tensor sum T_jk b_j (x) b_k; they pair with
s (x) s' through the trace form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .admissibility import NotAdmissible, admissibility_coefficients, no_half_space
from .exactmath import hnf, primitive_integer_vector, smith_invariants, solve_left
from .ideals import FractionalIdeal
from .numberfield import FieldElement, dual_basis


class InternalMismatch(ArithmeticError):
    """Two independent computations of the same quantity disagree."""


class WholeStratum(ValueError):
    """The eigenform locus is the whole stratum; there is no equation."""


class UnsupportedPattern(ValueError):
    pass


def _sign_normalise(v: Sequence[int]) -> tuple[int, ...]:
    first = next((x for x in v if x), 0)
    return tuple(-x for x in v) if first < 0 else tuple(v)


def _primitive_from_field(b: Sequence[FieldElement]) -> tuple[int, int, int]:
    ratios = []
    for x in b:
        q = x / b[0]
        if not q.is_rational():
            raise NotAdmissible("exponent candidates are not proportional over Q")
        ratios.append(q.coords[0])
    return _sign_normalise(primitive_integer_vector(ratios))


def exponents_from_norms(r: Sequence[FieldElement]) -> tuple[int, int, int]:
    """Primitive multiple of b_i = N(r_i) (s_i / r_i)^2."""
    s = dual_basis(r)
    b = [ri.norm() * (si / ri) ** 2 for ri, si in zip(r, s)]
    return _primitive_from_field(b)


def exponents_from_coefficients(r: Sequence[FieldElement]) -> tuple[int, int, int]:
    """Primitive multiple of b'_i = c_i^2 / N(r_i)."""
    c = admissibility_coefficients(r)
    return _sign_normalise(primitive_integer_vector([Fraction(ci * ci) / ri.norm() for ci, ri in zip(c, r)]))


def exponents(r: Sequence[FieldElement]) -> tuple[int, int, int]:
    """Cross-ratio exponents (a_1, a_2, a_3), coprime, first nonzero entry positive."""
    r = tuple(r)
    if len(r) != 3 or not no_half_space(r):
        raise NotAdmissible("basis is not admissible")
    a = exponents_from_norms(r)
    a2 = exponents_from_coefficients(r)
    if a != a2:
        raise InternalMismatch(f"exponent formulas disagree: {a} vs {a2}")
    # defining property: sum a_i s_{i+1} s_{i+2} = 0
    s = dual_basis(r)
    total = sum((s[(i + 1) % 3] * s[(i + 2) % 3] * a[i] for i in range(3)), r[0].field.zero)
    if not total.is_zero():
        raise InternalMismatch("exponents do not annihilate the multiplication tensors")
    return a


# ---------------------------------------------------------------- extension classes


@dataclass(frozen=True)
class ExtensionClass:
    T: tuple  # symmetric 3x3 of Fractions
    basis: Optional[tuple] = None  # Z-basis of the lattice; None means the stratum basis r

    def __post_init__(self):
        t = tuple(tuple(Fraction(v) for v in row) for row in self.T)
        if len(t) != 3 or any(len(row) != 3 for row in t):
            raise ValueError("T must be 3x3")
        if any(t[i][j] != t[j][i] for i in range(3) for j in range(3)):
            raise ValueError("T must be symmetric")
        object.__setattr__(self, "T", t)

    @classmethod
    def zero(cls, basis=None) -> "ExtensionClass":
        return cls(((0, 0, 0),) * 3, basis)

    def __add__(self, other: "ExtensionClass") -> "ExtensionClass":
        return ExtensionClass(tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.T, other.T)),
                              self.basis)

    def pair(self, x: FieldElement, y: FieldElement, r: Sequence[FieldElement]) -> Fraction:
        """<T, x (x) y> = sum T_jk Tr(b_j x) Tr(b_k y)."""
        b = self.basis if self.basis is not None else tuple(r)
        px = [(bj * x).trace() for bj in b]
        py = [(bk * y).trace() for bk in b]
        return sum((self.T[j][k] * px[j] * py[k] for j in range(3) for k in range(3)), Fraction(0))


def multiplication_class(x: FieldElement, basis: Sequence[FieldElement]) -> ExtensionClass:
    """The element of Lambda^1 given by multiplication by x, written in ``basis``."""
    dual = dual_basis(basis)
    t = tuple(tuple((x * dual[j] * dual[k]).trace() for k in range(3)) for j in range(3))
    return ExtensionClass(t, tuple(basis))


def _to_root_of_unity(u: Fraction) -> tuple[int, int]:
    u = u - math.floor(u)
    return u.denominator, u.numerator


def zeta(T: ExtensionClass, r: Sequence[FieldElement], s: Optional[Sequence[FieldElement]] = None,
         a: Optional[Sequence[int]] = None) -> tuple[int, int]:
    """zeta = exp(2 pi i u), u = <T, sum a_i s_{i+1} (x) s_{i+2}>, returned as (order, power)."""
    r = tuple(r)
    s = tuple(s) if s is not None else dual_basis(r)
    a = tuple(a) if a is not None else exponents(r)
    u = sum((a[i] * T.pair(s[(i + 1) % 3], s[(i + 2) % 3], r) for i in range(3)), Fraction(0))
    return _to_root_of_unity(u)


# ---------------------------------------------------------------- equations


@dataclass(frozen=True)
class CrossRatioEquation:
    stratum_case: str
    exponents: tuple[int, int, int]
    zeta_order: int
    zeta_power: int
    triple: tuple  # the admissible basis (r_1, r_2, r_3) the equation is computed from

    def text(self) -> str:
        a1, a2, a3 = self.exponents
        rhs = "1" if self.zeta_order == 1 else f"exp(2 pi i {self.zeta_power}/{self.zeta_order})"
        if self.stratum_case == "[6]":
            lhs = f"R1^{a1} R2^{a2} R3^{a3}"
        elif self.stratum_case == "[4]x2[4]":
            lhs = f"R1^{a1} R3^{a3}"
        else:
            lhs = f"(Ru Rv)^{a1} (Ru/(1-Ru) Rv/(1-Rv))^{a3}"
        return f"{lhs} = {rhs}"

    def to_dict(self) -> dict:
        return {
            "case": self.stratum_case,
            "exponents": list(self.exponents),
            "zeta": [self.zeta_power, self.zeta_order],
            "triple": [x.format() for x in self.triple],
            "equation": self.text(),
        }


def _triple_for_444(weights: Sequence[FieldElement]) -> tuple:
    """An admissible basis among three of the four cusp weights on one component."""
    for drop in (3, 2, 1, 0):
        tri = tuple(w for k, w in enumerate(weights) if k != drop)
        try:
            dual_basis(tri)
        except Exception:
            continue
        if no_half_space(tri):
            return tri
    raise InternalMismatch("no admissible triple among the four weights")


def equation_for(S, T: Optional[ExtensionClass] = None) -> CrossRatioEquation:
    """The cross-ratio equation of an admissible stratum of codimension-one span."""
    code = S.pattern_code()
    if code not in ("[6]", "[4]x2[4]", "[4]x4[4]"):
        if S.is_admissible() and S.span_codim() == 0:
            raise WholeStratum(f"{code}: span has full rank")
        raise UnsupportedPattern(code)
    if not S.is_admissible():
        raise NotAdmissible(f"{code} stratum is not admissible")
    if S.span_codim() == 0:
        raise WholeStratum(f"{code}: span has full rank")
    el = S.ctx.element
    if code == "[6]":
        triple = tuple(el(w) for _, _, w in S.edges)
    elif code == "[4]x2[4]":
        loops = {t: w for t, h, w in S.edges if t == h}
        link = next(w if t == 0 else tuple(-x for x in w) for t, h, w in S.edges if t != h)
        triple = (el(loops[0]), el(link), el(loops[1]))
    else:
        at0 = [el(w) if h == 0 else -el(w) for t, h, w in S.edges]
        triple = _triple_for_444(at0)
    a = exponents(triple)
    if code == "[4]x4[4]" and sum(a) != 0:
        raise InternalMismatch(f"exponents {a} of a [4]x4[4] stratum do not sum to zero")
    T = T if T is not None else ExtensionClass.zero()
    order, power = zeta(T, triple, a=a)
    stored = (a[0], 0, a[2]) if code == "[4]x2[4]" else a
    return CrossRatioEquation(code, stored, order, power, triple)


# ---------------------------------------------------------------- the extension group


def _sym_basis():
    out = []
    for j in range(3):
        for k in range(j, 3):
            m = [[0] * 3 for _ in range(3)]
            m[j][k] = m[k][j] = 1
            out.append(m)
    return out


def _integer_left_kernel(m) -> list[list[int]]:
    h, u = hnf(m)
    return [list(u[i]) for i in range(len(h)) if not any(h[i])]


def extension_group(I: FractionalIdeal, O: FractionalIdeal) -> tuple[int, ...]:
    """Invariant factors of {T : [M_x, T](I^dual) in I for x in O} / (Lambda^1 + Sym_Z(I)).

    T maps I^dual to F by b*_m -> sum_j T_jm b_j.  Multiplication by x has
    matrix B (column convention, basis b) on I and B^t on I^dual, so the
    commutator is B T - T B^t.  The group is the saturation of the image of
    Sym_Z(I) modulo the image itself.
    """
    b = I.basis
    bd = dual_basis(b)
    mats = []
    for x in O.basis:
        B = [[(x * b[j] * bd[l]).trace() for j in range(3)] for l in range(3)]
        if any(v.denominator != 1 for row in B for v in row):
            raise ValueError("O does not act on I")
        mats.append([[int(v) for v in row] for row in B])
    images = []
    for E in _sym_basis():
        vec = []
        for B in mats:
            for l in range(3):
                for m in range(3):
                    vec.append(sum(B[l][j] * E[j][m] - E[l][j] * B[m][j] for j in range(3)))
        images.append(vec)
    n = len(images[0])
    transposed = [[images[i][c] for i in range(len(images))] for c in range(n)]
    kernel = _integer_left_kernel(transposed)
    if not kernel:
        return ()
    sat = _integer_left_kernel([[row[c] for row in kernel] for c in range(n)])
    coords = []
    for v in images:
        c = solve_left(sat, v)
        if c is None or any(Fraction(x).denominator != 1 for x in c):
            raise InternalMismatch("image of Sym_Z is not inside its saturation")
        coords.append([int(x) for x in c])
    inv = smith_invariants(coords)
    return tuple(d for d in inv)
