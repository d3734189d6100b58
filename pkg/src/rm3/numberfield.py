"""Exact arithmetic in totally real cubic fields and one-step extensions of them.

Elements carry rational coordinates in the power basis 1, t, t^2.  Real
embeddings are isolated by rational intervals (ascending order) that are
refined by exact bisection whenever a sign has to be decided.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

import mpmath

from .exactmath import (
    RationalPoly,
    as_fraction,
    cyclotomic,
    cyclotomic_orders,
    det,
    discriminant,
    euler_phi,
    inverse,
    rref,
)


class NumberFieldError(ValueError):
    pass


class NotIrreducible(NumberFieldError):
    pass


class NotTotallyReal(NumberFieldError):
    pass


class ZeroElement(NumberFieldError):
    pass


class NotABasis(NumberFieldError):
    pass


def _interval_poly(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of a polynomial's range over [lo, hi] (Horner with intervals)."""
    a = b = Fraction(0)
    for c in reversed(coeffs):
        products = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(products) + c, max(products) + c
    return a, b


class CubicField:
    """Q[t]/(f) for a monic irreducible integer cubic f with three real roots."""

    START_BITS = 32

    def __init__(self, poly: Iterable, name: str = "t"):
        f = poly if isinstance(poly, RationalPoly) else RationalPoly(poly)
        if f.degree != 3 or f.lead != 1 or any(c.denominator != 1 for c in f.coeffs):
            raise NumberFieldError("defining polynomial must be a monic integer cubic")
        if f.rational_roots():
            raise NotIrreducible(f"{f} has a rational root")
        d = discriminant(f)
        if d <= 0:
            raise NotTotallyReal(f"discriminant {d} is not positive")
        self.poly = f
        self.discriminant = int(d)
        self.name = name
        a0, a1, a2 = f.coeffs[:3]
        # t^3 = -a0 - a1 t - a2 t^2
        self._t3 = (-a0, -a1, -a2)
        self._t4 = (Fraction(0), -a0, -a1)
        self._t4 = tuple(x + (-a2) * y for x, y in zip(self._t4, self._t3))
        self._intervals = self._isolate()
        self._refined: dict[tuple[int, int], tuple[Fraction, Fraction]] = {}

    # -- construction helpers -------------------------------------------------

    def _isolate(self) -> list[tuple[Fraction, Fraction]]:
        with mpmath.workdps(40):
            roots = sorted(mpmath.re(r) for r in mpmath.polyroots([float(c) for c in reversed(self.poly.coeffs)],
                                                                    maxsteps=200, extraprec=200))
        out = []
        radius = Fraction(1, 2 ** 20)
        while True:
            out = []
            for r in roots:
                mid = Fraction(str(r))
                lo, hi = mid - radius, mid + radius
                if self.poly(lo) * self.poly(hi) >= 0:
                    break
                out.append((lo, hi))
            else:
                if all(out[i][1] < out[i + 1][0] for i in range(2)):
                    return out
            radius /= 2
            if radius < Fraction(1, 2 ** 200):
                raise NotTotallyReal("could not isolate three real roots")

    def __eq__(self, other):
        return isinstance(other, CubicField) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return f"CubicField({self.poly}, disc={self.discriminant})"

    # -- embeddings -----------------------------------------------------------

    @property
    def embedding_intervals(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple(self._intervals)

    def root_interval(self, j: int, bits: int) -> tuple[Fraction, Fraction]:
        """Isolating interval of the j-th root (0-based, ascending) of width <= 2^-bits."""
        key = (j, bits)
        if key in self._refined:
            return self._refined[key]
        lo, hi = self._intervals[j]
        width = Fraction(1, 2 ** bits)
        flo = self.poly(lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            fm = self.poly(mid)
            if fm == 0:
                lo = hi = mid
                break
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        self._refined[key] = (lo, hi)
        return lo, hi

    @cached_property
    def roots_float(self) -> tuple[float, float, float]:
        return tuple(float((lo + hi) / 2) for lo, hi in (self.root_interval(j, 60) for j in range(3)))

    def roots_mp(self, dps: int) -> tuple:
        bits = int(dps * 3.33) + 20
        with mpmath.workdps(dps + 10):
            return tuple(mpmath.mpf((lo + hi).numerator) / (lo + hi).denominator / 2
                         for lo, hi in (self.root_interval(j, bits) for j in range(3)))

    # -- elements -------------------------------------------------------------

    def __call__(self, coords) -> "FieldElement":
        if isinstance(coords, FieldElement):
            return coords
        if isinstance(coords, (int, Fraction)):
            return FieldElement(self, (coords, 0, 0))
        return FieldElement(self, coords)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, (1, 0, 0))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0, 0, 0))

    @property
    def gen(self) -> "FieldElement":
        return FieldElement(self, (0, 1, 0))

    def parse(self, text: str) -> "FieldElement":
        """Parse ``a/b,c/d,e/f`` power-basis coordinates."""
        parts = [p for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated coordinates, got {text!r}")
        return FieldElement(self, tuple(Fraction(p.strip()) for p in parts))

    def _mul(self, a, b) -> tuple[Fraction, Fraction, Fraction]:
        a0, a1, a2 = a
        b0, b1, b2 = b
        c0 = a0 * b0
        c1 = a0 * b1 + a1 * b0
        c2 = a0 * b2 + a1 * b1 + a2 * b0
        c3 = a1 * b2 + a2 * b1
        c4 = a2 * b2
        t3, t4 = self._t3, self._t4
        return (c0 + c3 * t3[0] + c4 * t4[0],
                c1 + c3 * t3[1] + c4 * t4[1],
                c2 + c3 * t3[2] + c4 * t4[2])

    @cached_property
    def trace_gram(self):
        """Tr(t^(i+j)) for the power basis."""
        basis = [FieldElement(self, tuple(int(i == k) for k in range(3))) for i in range(3)]
        return tuple(tuple((x * y).trace() for y in basis) for x in basis)


class FieldElement:
    __slots__ = ("field", "coords", "_hash")

    def __init__(self, field: CubicField, coords):
        self.field = field
        self.coords = tuple(as_fraction(c) for c in coords)
        if len(self.coords) != 3:
            raise ValueError("a cubic field element has three coordinates")
        self._hash = None

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise NumberFieldError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, (other, 0, 0))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._mul(self.coords, other.coords))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a / other for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.coords == (as_fraction(other), 0, 0)
        return isinstance(other, FieldElement) and self.field == other.field and self.coords == other.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coords)
        return self._hash

    def __repr__(self):
        return f"FieldElement({self.format()})"

    def __str__(self):
        return str(RationalPoly(self.coords)).replace("x", self.field.name)

    def format(self) -> str:
        return ",".join(str(c) for c in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return self.coords[1] == 0 and self.coords[2] == 0

    def mult_matrix(self):
        """Rows are the coordinates of self * t^i."""
        f = self.field
        row0 = self.coords
        row1 = f._mul(self.coords, (0, 1, 0))
        row2 = f._mul(row1, (0, 1, 0))
        return (row0, row1, row2)

    def trace(self) -> Fraction:
        m = self.mult_matrix()
        return m[0][0] + m[1][1] + m[2][2]

    def norm(self) -> Fraction:
        return det(self.mult_matrix())

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroElement("inverse of zero")
        inv = inverse(self.mult_matrix())
        return FieldElement(self.field, inv[0])

    def charpoly(self) -> RationalPoly:
        m = self.mult_matrix()
        tr = m[0][0] + m[1][1] + m[2][2]
        minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0]
                  + m[0][0] * m[2][2] - m[0][2] * m[2][0]
                  + m[1][1] * m[2][2] - m[1][2] * m[2][1])
        return RationalPoly((-det(m), minors, -tr, 1))

    # -- embeddings -----------------------------------------------------------

    def embedding_interval(self, j: int, bits: int = 32) -> tuple[Fraction, Fraction]:
        lo, hi = self.field.root_interval(j, bits)
        return _interval_poly(self.coords, lo, hi)

    def sign_at(self, j: int) -> int:
        """Exact sign of the j-th real embedding (0-based, ascending roots)."""
        if j not in (0, 1, 2):
            raise IndexError("embedding index must be 0, 1 or 2")
        if self.is_zero():
            return 0
        bits = CubicField.START_BITS
        while True:
            lo, hi = self.embedding_interval(j, bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def signs(self) -> tuple[int, int, int]:
        return tuple(self.sign_at(j) for j in range(3))

    def is_totally_positive(self) -> bool:
        return all(s > 0 for s in self.signs())

    def embeddings(self) -> tuple[float, float, float]:
        c0, c1, c2 = (float(c) for c in self.coords)
        return tuple(c0 + r * (c1 + r * c2) for r in self.field.roots_float)

    def embeddings_mp(self, dps: int = 50) -> tuple:
        roots = self.field.roots_mp(dps)
        with mpmath.workdps(dps + 10):
            cs = [mpmath.mpf(c.numerator) / c.denominator for c in self.coords]
            return tuple(cs[0] + r * (cs[1] + r * cs[2]) for r in roots)


def qmap(x: FieldElement) -> FieldElement:
    """Q(x) = N(x)/x, the product of the two other conjugates of x."""
    if x.is_zero():
        raise ZeroElement("Q is undefined at 0")
    return x.inverse() * x.norm()


def trace_form(r: Sequence[FieldElement]):
    return tuple(tuple((a * b).trace() for b in r) for a in r)


def dual_basis(r: Sequence[FieldElement]) -> tuple[FieldElement, FieldElement, FieldElement]:
    """The basis s with Tr(r_i s_j) = delta_ij."""
    if len(r) != 3:
        raise NotABasis("need three elements")
    g = trace_form(r)
    if det(g) == 0:
        raise NotABasis("trace form is degenerate on these elements")
    ginv = inverse(g)
    field = r[0].field
    return tuple(sum((r[k] * ginv[i][k] for k in range(3)), field.zero) for i in range(3))


# ---------------------------------------------------------------- extensions


class Extension:
    """The algebra F[u]/(g(u)) for a monic g over F of degree 1..3.

    ``g`` must be irreducible over F; this is verified at construction by
    checking that g has no root in F (sufficient for degree <= 3).
    """

    def __init__(self, base: CubicField, modulus: Sequence, name: str = "u", check: bool = True):
        coeffs = [base(c) if not isinstance(c, FieldElement) else c for c in modulus]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if len(coeffs) < 2 or len(coeffs) > 4:
            raise NumberFieldError("modulus must have degree 1, 2 or 3")
        lead = coeffs[-1]
        coeffs = [c / lead for c in coeffs]
        self.base = base
        self.modulus = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.name = name
        if check and self.degree > 1 and roots_in_field(self.modulus)[0]:
            raise NotIrreducible("modulus has a root in the base field")

    @classmethod
    def cyclotomic(cls, base: CubicField, k: int, name: str = "z") -> "Extension":
        if k not in (1, 2, 3, 4, 6):
            raise NumberFieldError(f"unsupported cyclotomic order {k}")
        phi = cyclotomic(k)
        # Phi_k for k in {3,4,6} has no real root, so it stays irreducible
        # over a totally real field; no root search needed.
        return cls(base, [base(c) for c in phi.coeffs], name=name, check=False)

    @property
    def absolute_degree(self) -> int:
        return 3 * self.degree

    def __call__(self, coeffs) -> "ExtensionElement":
        if isinstance(coeffs, ExtensionElement):
            return coeffs
        if isinstance(coeffs, (int, Fraction, FieldElement)):
            coeffs = [coeffs]
        cs = [self.base(c) if not isinstance(c, FieldElement) else c for c in coeffs]
        return ExtensionElement(self, self._reduce(cs))

    @property
    def gen(self) -> "ExtensionElement":
        return self([0, 1]) if self.degree > 1 else self([-self.modulus[0]])

    @property
    def one(self) -> "ExtensionElement":
        return self([1])

    def _reduce(self, cs: list) -> tuple:
        cs = list(cs)
        d = self.degree
        zero = self.base.zero
        while len(cs) > d:
            top = cs.pop()
            if top.is_zero():
                continue
            shift = len(cs) - d
            for i in range(d):
                cs[shift + i] = cs[shift + i] - top * self.modulus[i]
        cs += [zero] * (d - len(cs))
        return tuple(cs)

    def __eq__(self, other):
        return isinstance(other, Extension) and self.base == other.base and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.base, self.modulus))


class ExtensionElement:
    __slots__ = ("ext", "coeffs")

    def __init__(self, ext: Extension, coeffs: tuple):
        self.ext = ext
        self.coeffs = coeffs

    def _coerce(self, other) -> "ExtensionElement":
        if isinstance(other, ExtensionElement):
            return other
        return self.ext(other)

    def __add__(self, other):
        other = self._coerce(other)
        return ExtensionElement(self.ext, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return ExtensionElement(self.ext, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        zero = self.ext.base.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return ExtensionElement(self.ext, self.ext._reduce(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.ext.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, ExtensionElement):
            other = self.ext(other)
        return self.ext == other.ext and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"ExtensionElement({[c.format() for c in self.coeffs]})"

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def in_base(self) -> Optional[FieldElement]:
        if all(c.is_zero() for c in self.coeffs[1:]):
            return self.coeffs[0]
        return None

    def rational_vector(self) -> tuple[Fraction, ...]:
        return tuple(x for c in self.coeffs for x in c.coords)

    def _mult_matrix(self):
        rows = []
        base = self.ext.base
        for i in range(self.ext.degree):
            for k in range(3):
                mono = [base.zero] * i + [FieldElement(base, tuple(int(k == m) for m in range(3)))]
                rows.append((self * self.ext(mono)).rational_vector())
        return rows

    def inverse(self) -> "ExtensionElement":
        if self.is_zero():
            raise ZeroElement("inverse of zero")
        m = self._mult_matrix()
        inv = inverse(m)
        # row 0 of the inverse expresses 1 * self^-1 in the rational basis
        vec = inv[0]
        base = self.ext.base
        cs = [FieldElement(base, vec[3 * i:3 * i + 3]) for i in range(self.ext.degree)]
        return ExtensionElement(self.ext, tuple(cs))

    def norm_to_base(self) -> FieldElement:
        """Determinant of multiplication as an F-linear map."""
        d = self.ext.degree
        base = self.ext.base
        cols = []
        for i in range(d):
            mono = self * self.ext([base.zero] * i + [base.one])
            cols.append(mono.coeffs)
        return _det_field([[cols[j][i] for j in range(d)] for i in range(d)], base)

    def complex_values(self, dps: int = 50) -> list:
        """All 3*deg complex embeddings (base embedding j, then each root of g^(j))."""
        out = []
        with mpmath.workdps(dps + 10):
            for j in range(3):
                g = [c.embeddings_mp(dps)[j] for c in self.ext.modulus]
                roots = mpmath.polyroots(list(reversed(g)), maxsteps=400, extraprec=4 * dps)
                cs = [c.embeddings_mp(dps)[j] for c in self.coeffs]
                for rho in roots:
                    acc = mpmath.mpc(0)
                    for c in reversed(cs):
                        acc = acc * rho + c
                    out.append(acc)
        return out


def _det_field(m, base: CubicField) -> FieldElement:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = base.zero
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det_field(minor, base)
        total = total + term if j % 2 == 0 else total - term
    return total


def minpoly_over_Q(z) -> RationalPoly:
    """Minimal polynomial over Q of a field or extension element."""
    if isinstance(z, (int, Fraction)):
        return RationalPoly((-as_fraction(z), 1))
    if isinstance(z, FieldElement):
        vec = lambda e: e.coords  # noqa: E731
        one = z.field.one
    else:
        vec = ExtensionElement.rational_vector
        one = z.ext.one
    powers = [vec(one)]
    cur = one
    while True:
        cur = cur * z
        powers.append(vec(cur))
        # look for a relation sum c_k z^k = 0 with c_last = 1
        red, piv = rref(list(zip(*powers)))
        last = len(powers) - 1
        if last not in piv:
            rel = [Fraction(0)] * len(powers)
            rel[last] = Fraction(1)
            for row, c in zip(red, piv):
                rel[c] = -row[last]
            return RationalPoly(rel)


def is_root_of_unity(z, max_phi: int = 18) -> Optional[int]:
    """Order k of z if z is a root of unity with phi(k) <= max_phi, else None."""
    if isinstance(z, (FieldElement, ExtensionElement)) and z.is_zero() or (
            isinstance(z, (int, Fraction)) and z == 0):
        raise ZeroElement("0 is not a root of unity")
    mp = minpoly_over_Q(z)
    if any(c.denominator != 1 for c in mp.coeffs) or abs(mp.coeffs[0]) != 1:
        return None
    for k in cyclotomic_orders(max_phi):
        if euler_phi(k) == mp.degree and cyclotomic(k) == mp:
            return k
    return None


def roots_in_field(g: Sequence, max_tries: int = 3) -> tuple[list[FieldElement], tuple]:
    """Roots in F of a polynomial with F-coefficients (constant first).

    Roots are located numerically at each real embedding, matched across
    embeddings, reconstructed as rational coordinates and verified exactly.
    Returns (roots with multiplicity, cofactor coefficients).
    """
    coeffs = [c for c in g]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if not coeffs:
        raise ZeroElement("zero polynomial")
    field = coeffs[0].field
    found: list[FieldElement] = []
    while len(coeffs) > 1:
        root = _find_one_root(field, coeffs, max_tries)
        if root is None:
            break
        found.append(root)
        coeffs = _divide_linear(coeffs, root)
    return found, tuple(coeffs)


def _divide_linear(coeffs: list, root: FieldElement) -> list:
    """Synthetic division by (u - root); remainder must be zero."""
    n = len(coeffs) - 1
    out = [None] * n
    acc = coeffs[n]
    for k in range(n - 1, -1, -1):
        out[k] = acc
        acc = coeffs[k] + acc * root
    if not acc.is_zero():
        raise ArithmeticError("not a root")
    return out


def _eval(coeffs, x):
    acc = x.field.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _find_one_root(field: CubicField, coeffs: list, max_tries: int) -> Optional[FieldElement]:
    # exact shortcut for degree 1
    if len(coeffs) == 2:
        return -coeffs[0] / coeffs[1]
    dps, bound = 60, 2 ** 64
    for _ in range(max_tries):
        with mpmath.workdps(dps):
            thetas = field.roots_mp(dps)
            real_roots = []
            for j in range(3):
                g = [c.embeddings_mp(dps)[j] for c in coeffs]
                rts = mpmath.polyroots(list(reversed(g)), maxsteps=500, extraprec=4 * dps)
                tol = mpmath.mpf(10) ** (-dps // 3)
                real_roots.append([mpmath.re(r) for r in rts if abs(mpmath.im(r)) < tol * (1 + abs(r))])
            vand = mpmath.matrix([[1, t, t * t] for t in thetas])
            for combo in itertools.product(*real_roots):
                try:
                    sol = mpmath.lu_solve(vand, mpmath.matrix(list(combo)))
                except ZeroDivisionError:
                    continue
                cand = FieldElement(field, tuple(Fraction(mpmath.nstr(v, dps - 5, strip_zeros=False))
                                                 .limit_denominator(bound) for v in sol))
                if _eval(coeffs, cand).is_zero():
                    return cand
        dps *= 2
        bound *= 2
    return None
