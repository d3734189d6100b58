"""Rank-3 lattices in a cubic field, their coefficient rings, unit actions and the field table.

A lattice is stored canonically as ``(1/den) * rowspan(H)`` where ``H`` is the
row Hermite normal form of a primitive integer matrix and ``den`` is minimal,
so equality of lattices is equality of stored forms.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .exactmath import (
    RationalPoly,
    as_fraction,
    common_denominator,
    det,
    hnf,
    inverse,
    transpose,
    vecmat,
)
from .numberfield import CubicField, FieldElement, dual_basis, roots_in_field


class IdealError(ValueError):
    pass


class RootNotInField(IdealError):
    pass


class SeedFailed(IdealError):
    pass


class ParseError(IdealError):
    pass


class VerificationFailed(IdealError):
    def __init__(self, record_id: str, reason: str):
        super().__init__(f"{record_id}: {reason}")
        self.record_id = record_id
        self.reason = reason


def _canonical(rows) -> tuple[int, tuple[tuple[int, ...], ...]]:
    rows = [[as_fraction(v) for v in row] for row in rows]
    den = common_denominator(v for row in rows for v in row)
    ints = [[int(v * den) for v in row] for row in rows]
    h, _ = hnf(ints)
    h = [[int(v) for v in row] for row in h if any(row)]
    if len(h) != 3:
        raise IdealError("lattice generators do not have rank 3")
    g = 0
    for row in h:
        for v in row:
            g = math.gcd(g, v)
    # make the integer matrix primitive, shrinking the denominator
    g = math.gcd(g, den)
    return den // g, tuple(tuple(v // g for v in row) for row in h)


class FractionalIdeal:
    """A full-rank Z-lattice in a cubic field (not necessarily an ideal of anything)."""

    def __init__(self, field: CubicField, generators: Iterable):
        gens = []
        for g in generators:
            gens.append(g.coords if isinstance(g, FieldElement) else tuple(as_fraction(c) for c in g))
        self.field = field
        self.den, self.hnf_rows = _canonical(gens)

    @classmethod
    def from_hnf(cls, field: CubicField, rows, den: int = 1) -> "FractionalIdeal":
        return cls(field, [[Fraction(v, den) for v in row] for row in rows])

    def __eq__(self, other):
        return (isinstance(other, FractionalIdeal) and self.field == other.field
                and self.den == other.den and self.hnf_rows == other.hnf_rows)

    def __hash__(self):
        return hash((self.den, self.hnf_rows))

    def __repr__(self):
        return f"FractionalIdeal({self.format()})"

    def format(self) -> str:
        return "<" + ", ".join(str(b) for b in self.basis) + ">"

    @cached_property
    def basis_matrix(self):
        return tuple(tuple(Fraction(v, self.den) for v in row) for row in self.hnf_rows)

    @cached_property
    def basis(self) -> tuple[FieldElement, FieldElement, FieldElement]:
        return tuple(FieldElement(self.field, row) for row in self.basis_matrix)

    @cached_property
    def _inv(self):
        return inverse(self.basis_matrix)

    def coordinates(self, x: FieldElement) -> tuple[Fraction, ...]:
        return vecmat(x.coords, self._inv)

    def contains(self, x: FieldElement) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(x))

    def element(self, n: Sequence[int]) -> FieldElement:
        return FieldElement(self.field, vecmat([as_fraction(v) for v in n], self.basis_matrix))

    def scale(self, lam) -> "FractionalIdeal":
        lam = self.field(lam)
        return FractionalIdeal(self.field, [b * lam for b in self.basis])

    def __mul__(self, other) -> "FractionalIdeal":
        if isinstance(other, FractionalIdeal):
            return FractionalIdeal(self.field, [a * b for a in self.basis for b in other.basis])
        return self.scale(other)

    __rmul__ = __mul__

    def __le__(self, other: "FractionalIdeal") -> bool:
        return all(other.contains(b) for b in self.basis)

    def index_in(self, other: "FractionalIdeal") -> Fraction:
        """[other : self] as a rational (volume ratio)."""
        return abs(det(self.basis_matrix) / det(other.basis_matrix))

    def volume(self) -> Fraction:
        return abs(det(self.basis_matrix))

    def discriminant(self) -> Fraction:
        return det(tuple(tuple((a * b).trace() for b in self.basis) for a in self.basis))

    def action_matrix(self, x: FieldElement):
        """Rational matrix U with x*b_i = sum_j U_ij b_j."""
        return tuple(self.coordinates(x * b) for b in self.basis)

    def is_stable_under(self, x: FieldElement) -> bool:
        return all(c.denominator == 1 for row in self.action_matrix(x) for c in row)

    @cached_property
    def q_form(self):
        """Symmetric F-valued bilinear form B with Q(sum n_i b_i) = sum n_i n_j B_ij."""
        from .numberfield import qmap

        b = self.basis
        qs = [qmap(x) for x in b]
        out = [[None] * 3 for _ in range(3)]
        for i in range(3):
            out[i][i] = qs[i]
            for j in range(i + 1, 3):
                v = (qmap(b[i] + b[j]) - qs[i] - qs[j]) / 2
                out[i][j] = out[j][i] = v
        return tuple(tuple(row) for row in out)

    @cached_property
    def _q_coeffs(self):
        """Integer coefficient tensor for fast Q-images: coords = sum n_i n_j T[i][j] / D."""
        form = self.q_form
        d = common_denominator(c for row in form for e in row for c in e.coords)
        tensor = tuple(tuple(tuple(int(c * d) for c in form[i][j].coords) for j in range(3)) for i in range(3))
        return tensor

    def q_image_int(self, n: Sequence[int]) -> tuple[int, int, int]:
        """Positive integer multiple of the power coordinates of Q(element(n))."""
        t = self._q_coeffs
        out = [0, 0, 0]
        for i in range(3):
            ni = n[i]
            if not ni:
                continue
            for j in range(3):
                nj = n[j]
                if nj:
                    p = ni * nj
                    tij = t[i][j]
                    out[0] += p * tij[0]
                    out[1] += p * tij[1]
                    out[2] += p * tij[2]
        return tuple(out)

    @cached_property
    def dual(self) -> "FractionalIdeal":
        return inverse_different(self)


def lattice_intersection(field: CubicField, lats: Sequence[FractionalIdeal]) -> FractionalIdeal:
    """Intersection via duality: (L1 ∩ L2)* = L1* + L2* for the coordinate dot product."""
    duals = []
    for lat in lats:
        duals.extend(transpose(inverse(lat.basis_matrix)))
    dual_sum = FractionalIdeal(field, duals)
    return FractionalIdeal(field, transpose(inverse(dual_sum.basis_matrix)))


def inverse_different(ideal: FractionalIdeal) -> FractionalIdeal:
    """{x : Tr(x y) in Z for all y in I}, spanned by the trace-dual basis."""
    return FractionalIdeal(ideal.field, dual_basis(ideal.basis))


class Order(FractionalIdeal):
    """A lattice that is a ring containing 1."""

    def __init__(self, field: CubicField, generators: Iterable):
        super().__init__(field, generators)
        if not self.contains(field.one):
            raise IdealError("an order must contain 1")
        for a in self.basis:
            for b in self.basis:
                if not self.contains(a * b):
                    raise IdealError("lattice is not closed under multiplication")

    @classmethod
    def of(cls, lattice: FractionalIdeal) -> "Order":
        return cls(lattice.field, lattice.basis)


def coefficient_ring(ideal: FractionalIdeal) -> Order:
    """{a in F : a I ⊆ I} = intersection over basis elements b of b^-1 I."""
    parts = [ideal.scale(b.inverse()) for b in ideal.basis]
    return Order.of(lattice_intersection(ideal.field, parts))


# ---------------------------------------------------------------- units


@dataclass(frozen=True)
class UnitSystem:
    """Generators of the unit group of the coefficient ring, modulo ±1."""

    units: tuple[FieldElement, ...]

    def verify(self, ideal: FractionalIdeal) -> None:
        if len(self.units) != 2:
            raise IdealError("a cubic unit system needs two units")
        for u in self.units:
            if abs(u.norm()) != 1:
                raise IdealError(f"{u} has norm {u.norm()}")
            if not ideal.is_stable_under(u) or not ideal.is_stable_under(u.inverse()):
                raise IdealError(f"{u} does not stabilise the lattice")
        logs = self.log_matrix()
        if abs(logs[0][0] * logs[1][1] - logs[0][1] * logs[1][0]) < 1e-9:
            raise IdealError("units are multiplicatively dependent")

    def log_matrix(self) -> tuple[tuple[float, float], tuple[float, float]]:
        """log|u^(j)| for j = 0, 1 (the third is minus their sum)."""
        return tuple(tuple(math.log(abs(e)) for e in u.embeddings()[:2]) for u in self.units)

    def regulator(self) -> float:
        m = self.log_matrix()
        return abs(m[0][0] * m[1][1] - m[0][1] * m[1][0])


# ---------------------------------------------------------------- seeds


def _basis_one_mu_nu(order: FractionalIdeal) -> tuple[FieldElement, FieldElement]:
    """Elements mu, nu with order = <1, mu, nu> (requires 1 in order)."""
    proj = [row[1:] for row in order.basis_matrix]
    den = common_denominator(v for row in proj for v in row)
    h, u = hnf([[int(v * den) for v in row] for row in proj])
    # rows 0, 1 of h span the projection of the order onto the t, t^2 coordinates
    return order.element(u[0]), order.element(u[1])


def index_form(mu: FieldElement, nu: FieldElement) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Coefficients (A, B, C, D) of the index form A x^3 + B x^2 y + C x y^2 + D y^3.

    F(x, y) is the determinant of the coordinates of 1, g, g^2 in the basis
    1, mu, nu, where g = x nu - y mu; its square is disc(g)/disc(<1,mu,nu>).
    """
    field = mu.field
    basis = (field.one, mu, nu)
    binv = inverse(tuple(b.coords for b in basis))

    def value(x, y):
        g = nu * x - mu * y
        cg = vecmat(g.coords, binv)
        cg2 = vecmat((g * g).coords, binv)
        return cg[1] * cg2[2] - cg[2] * cg2[1]

    a = value(1, 0)
    d = value(0, 1)
    s = value(1, 1) - a - d       # B + C
    t = value(1, -1) - a + d      # C - B
    return a, (s - t) / 2, (s + t) / 2, d


def monogenetic_seed(field: CubicField, order: FractionalIdeal,
                     mu: Optional[FieldElement] = None, nu: Optional[FieldElement] = None
                     ) -> tuple[FractionalIdeal, FieldElement, tuple]:
    """Lattice <1, a, a^2> whose coefficient ring is ``order``, with a a root of the index form."""
    if mu is None or nu is None:
        mu, nu = _basis_one_mu_nu(order)
    form = index_form(mu, nu)
    poly = RationalPoly(tuple(reversed(form)))  # F(X, 1) = A X^3 + B X^2 + C X + D
    coeffs = [field(c) for c in poly.coeffs]
    roots, _ = roots_in_field(coeffs)
    for alpha in roots:
        if alpha.is_rational():
            continue
        lat = FractionalIdeal(field, [field.one, alpha, alpha * alpha])
        if coefficient_ring(lat) == order:
            return lat, alpha, form
    raise RootNotInField(f"index form {form} has no root generating the field with the right order")


def seed_admissible_basis(field: CubicField, order: FractionalIdeal,
                          mu: Optional[FieldElement] = None, nu: Optional[FieldElement] = None
                          ) -> tuple[FractionalIdeal, tuple[FieldElement, FieldElement, FieldElement]]:
    """An ideal <1, a, a^2> in some class of ``order`` with admissible basis (a', 1-a', a'(a'-1))."""
    from .admissibility import no_half_space

    lat, alpha, _ = monogenetic_seed(field, order, mu, nu)

    def triple(b):
        return (b, 1 - b, b * (b - 1))

    # integer shifts first: need N(b) < 0 and N(1 - b) < 0
    p = lambda k: (alpha + k).norm()  # noqa: E731
    bound = int(max(abs(x) for x in alpha.embeddings())) + 2
    for k in sorted(range(-bound, bound + 1), key=abs):
        if p(k) < 0 and p(k - 1) > 0:
            r = triple(alpha + k)
            if no_half_space(r):
                return lat, r
    # otherwise a Moebius image (a alpha + b)/(c alpha + d) with ad - bc = ±1
    # spans a lattice similar to <1, alpha, alpha^2>
    for size in range(1, 6):
        for a, b, c, d in itertools.product(range(-size, size + 1), repeat=4):
            if abs(a * d - b * c) != 1 or c == 0:
                continue
            beta = (alpha * a + b) / (alpha * c + d)
            if beta.norm() < 0 and (1 - beta).norm() < 0:
                r = triple(beta)
                if no_half_space(r):
                    return FractionalIdeal(field, [field.one, beta, beta * beta]), r
    raise SeedFailed("no admissible seed triple found")


# ---------------------------------------------------------------- field table


@dataclass
class FieldRecord:
    disc: int
    poly: tuple[int, int, int, int]
    h: int
    order_rows: tuple
    order_den: int
    class_rows: tuple
    units_raw: tuple
    source: str
    index: int = 0  # position among fields sharing this discriminant
    field: CubicField = dc_field(default=None, repr=False)

    @property
    def record_id(self) -> str:
        return f"D={self.disc}#{self.index}"

    @cached_property
    def maximal_order(self) -> Order:
        return Order(self.field, [[Fraction(v, self.order_den) for v in row] for row in self.order_rows])

    @cached_property
    def classes(self) -> tuple[FractionalIdeal, ...]:
        return tuple(FractionalIdeal.from_hnf(self.field, rows, den) for rows, den in self.class_rows)

    @cached_property
    def units(self) -> UnitSystem:
        return UnitSystem(tuple(FieldElement(self.field, u) for u in self.units_raw))

    def verify(self) -> None:
        rid = self.record_id
        if self.field.discriminant % self.disc:
            raise VerificationFailed(rid, f"polynomial discriminant {self.field.discriminant} "
                                          f"is not a multiple of {self.disc}")
        try:
            order = self.maximal_order
        except IdealError as exc:
            raise VerificationFailed(rid, f"order: {exc}") from exc
        if order.discriminant() != self.disc:
            raise VerificationFailed(rid, f"order discriminant {order.discriminant()} != {self.disc}")
        if len(self.class_rows) != self.h:
            raise VerificationFailed(rid, f"{len(self.class_rows)} classes listed, h = {self.h}")
        for k, ideal in enumerate(self.classes):
            if coefficient_ring(ideal) != order:
                raise VerificationFailed(rid, f"class {k}: coefficient ring is not the maximal order")
            try:
                self.units.verify(ideal)
            except IdealError as exc:
                raise VerificationFailed(rid, f"units on class {k}: {exc}") from exc
        if not self.units.units or any(not order.contains(u) for u in self.units.units):
            raise VerificationFailed(rid, "units are not integral")

    @property
    def regulator(self) -> float:
        return self.units.regulator()

    def to_json(self) -> str:
        return json.dumps({
            "disc": self.disc,
            "poly": list(self.poly),
            "h": self.h,
            "order": {"basis": [list(r) for r in self.order_rows], "den": self.order_den},
            "classes": [{"basis": [list(r) for r in rows], "den": den} for rows, den in self.class_rows],
            "units": [[str(c) for c in u] for u in self.units_raw],
            "source": self.source,
        }, separators=(",", ":"))


def parse_record(line: str) -> FieldRecord:
    try:
        obj = json.loads(line)
        poly = tuple(int(c) for c in obj["poly"])
        if len(poly) != 4:
            raise ValueError("poly needs four coefficients")
        order = obj["order"]
        classes = tuple((tuple(tuple(int(v) for v in row) for row in c["basis"]), int(c["den"]))
                        for c in obj["classes"])
        units = tuple(tuple(Fraction(str(c)) for c in u) for u in obj["units"])
        rec = FieldRecord(
            disc=int(obj["disc"]),
            poly=poly,
            h=int(obj["h"]),
            order_rows=tuple(tuple(int(v) for v in row) for row in order["basis"]),
            order_den=int(order["den"]),
            class_rows=classes,
            units_raw=units,
            source=str(obj.get("source", "")),
        )
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise ParseError(f"bad record: {exc}") from exc
    return rec


def default_table_path() -> Path:
    return Path(__file__).with_name("data") / "fields.jsonl"


def load_field_table(path=None, verify: bool = True, max_disc: Optional[int] = None,
                     strict: bool = True) -> tuple[list[FieldRecord], list[VerificationFailed]]:
    """Parse and (optionally) verify every record.

    Returns (accepted records, rejections).  With ``strict`` a rejection is
    raised instead of collected.
    """
    path = Path(path) if path is not None else default_table_path()
    text = path.read_text(encoding="utf-8")
    records, failures = [], []
    seen: dict[int, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rec = parse_record(line)
        except ParseError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
        rec.index = seen.get(rec.disc, 0)
        seen[rec.disc] = rec.index + 1
        if max_disc is not None and rec.disc > max_disc:
            continue
        try:
            rec.field = CubicField(rec.poly, name="x")
            if verify:
                rec.verify()
        except (VerificationFailed,) as exc:
            if strict:
                raise
            failures.append(exc)
            continue
        except ValueError as exc:
            err = VerificationFailed(rec.record_id, str(exc))
            if strict:
                raise err from exc
            failures.append(err)
            continue
        records.append(rec)
    return records, failures
