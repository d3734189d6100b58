"""Exact rational foundations: polynomials, integer/rational matrices, and LP feasibility.

Rationals are :class:`fractions.Fraction`.  Matrices are tuples of row tuples.
Nothing in this module touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Rational = Fraction
Matrix = tuple  # tuple[tuple[Fraction | int, ...], ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else abs(a or b)


def common_denominator(values: Iterable) -> int:
    d = 1
    for v in values:
        d = lcm(d, as_fraction(v).denominator)
    return d


def primitive_integer_vector(vec: Sequence) -> tuple[int, ...]:
    """Positive multiple of ``vec`` with coprime integer entries (zero stays zero)."""
    d = common_denominator(vec)
    ints = [int(as_fraction(v) * d) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


# ---------------------------------------------------------------- polynomials


class RationalPoly:
    """Univariate polynomial with rational coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "RationalPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, RationalPoly):
            other = RationalPoly((other,))
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        s = "".join(f" {sgn} {b}" for sgn, b in terms).strip()
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __add__(self, other):
        other = _poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_poly(other))

    def __rsub__(self, other):
        return _poly(other) - self

    def __mul__(self, other):
        other = _poly(other)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result, base = RationalPoly((1,)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "RationalPoly") -> tuple["RationalPoly", "RationalPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - other.degree, 1)
        lead = other.lead
        while len(rem) - 1 >= other.degree and any(rem):
            shift = len(rem) - 1 - other.degree
            f = rem[-1] / lead
            q[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= f * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return RationalPoly(q), RationalPoly(rem)

    def __floordiv__(self, other):
        return self.divmod(_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_poly(other))[1]

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RationalPoly":
        return RationalPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> "RationalPoly":
        if self.is_zero():
            return self
        return RationalPoly(c / self.lead for c in self.coeffs)

    def gcd(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self, _poly(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def content_free(self) -> "RationalPoly":
        """Primitive integer multiple with positive leading coefficient."""
        return RationalPoly(primitive_integer_vector(self.coeffs)) if self.coeffs else self

    def compose(self, inner: "RationalPoly") -> "RationalPoly":
        acc = RationalPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def rational_roots(self) -> list[Fraction]:
        """All rational roots (rational root theorem on the primitive form)."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        ints = primitive_integer_vector(self.coeffs)
        roots = []
        k = 0
        while ints[k] == 0:
            k += 1
        if k:
            roots.append(Fraction(0))
        ints = ints[k:]
        if len(ints) == 1:
            return roots
        p = RationalPoly(ints)
        for num in _divisors(abs(ints[0])):
            for den in _divisors(abs(ints[-1])):
                for s in (1, -1):
                    r = Fraction(s * num, den)
                    if r not in roots and p(r) == 0:
                        roots.append(r)
        return sorted(roots)


def _poly(p) -> RationalPoly:
    return p if isinstance(p, RationalPoly) else RationalPoly((p,))


def _divisors(n: int) -> list[int]:
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def discriminant(f: RationalPoly) -> Fraction:
    """Discriminant via the resultant with the derivative."""
    n = f.degree
    res = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res / f.lead


def resultant(f: RationalPoly, g: RationalPoly) -> Fraction:
    """Resultant from the Sylvester determinant."""
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return Fraction(0)
    size = m + n
    if size == 0:
        return Fraction(1)
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + list(reversed(f.coeffs)) + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + list(reversed(g.coeffs)) + [Fraction(0)] * (size - n - 1 - i))
    return det(rows)


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


_CYCLO: dict[int, RationalPoly] = {}


def cyclotomic(k: int) -> RationalPoly:
    """The k-th cyclotomic polynomial by exact division of x^k - 1."""
    if k not in _CYCLO:
        p = RationalPoly([-1] + [0] * (k - 1) + [1])
        for d in _divisors(k):
            if d < k:
                p = p // cyclotomic(d)
        _CYCLO[k] = p
    return _CYCLO[k]


def cyclotomic_orders(max_phi: int) -> list[int]:
    """All k with phi(k) <= max_phi (phi(k) >= sqrt(k/2) bounds the search)."""
    return [k for k in range(1, 2 * max_phi * max_phi + 3) if euler_phi(k) <= max_phi]


# ---------------------------------------------------------------- matrices


def mat(rows) -> Matrix:
    return tuple(tuple(as_fraction(v) for v in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(m) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a, b) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a)


def vecmat(v, m) -> tuple:
    """Row vector times matrix."""
    n = len(m[0]) if m else 0
    return tuple(sum((v[i] * m[i][j] for i in range(len(v))), Fraction(0)) for j in range(n))


def det(m) -> Fraction:
    a = [list(map(as_fraction, row)) for row in m]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return d


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    a = [list(map(as_fraction, row)) for row in m]
    pivots = []
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(m) -> int:
    return len(rref(m)[1]) if m else 0


def inverse(m) -> Matrix:
    n = len(m)
    aug = [list(map(as_fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def solve_left(m, target) -> Optional[tuple]:
    """Solve x·m = target (x a row vector); None if inconsistent."""
    mt = transpose(m)
    aug = [list(row) + [as_fraction(t)] for row, t in zip(mt, target)]
    red, piv = rref(aug)
    nvars = len(m)
    if nvars in piv:
        return None
    x = [Fraction(0)] * nvars
    for row, c in zip(red, piv):
        x[c] = row[-1]
    return tuple(x)


def nullspace_left(m) -> list[tuple]:
    """Basis of {x : x·m = 0}."""
    mt = transpose(m)
    red, piv = rref(mt)
    nvars = len(m)
    free = [c for c in range(nvars) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * nvars
        x[f] = Fraction(1)
        for row, c in zip(red, piv):
            x[c] = -row[f]
        basis.append(tuple(x))
    return basis


def is_integral(m) -> bool:
    return all(as_fraction(v).denominator == 1 for row in m for v in row)


def hnf(m) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form of an integer matrix.

    Returns (H, U) with H = U·M, U unimodular, H upper triangular in echelon
    form with positive pivots, entries above each pivot reduced into [0, pivot),
    zero rows at the bottom.
    """
    if not is_integral(m):
        raise ValueError("hnf needs an integral matrix")
    a = [[int(v) for v in row] for row in m]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # gcd-combine rows r.. on column c
        for i in range(r + 1, nrows):
            if a[i][c] == 0:
                continue
            x, y = a[r][c], a[i][c]
            g, s, t = _xgcd(x, y)
            p, q = x // g, y // g
            a[r], a[i] = ([s * v + t * w for v, w in zip(a[r], a[i])],
                          [-q * v + p * w for v, w in zip(a[r], a[i])])
            u[r], u[i] = ([s * v + t * w for v, w in zip(u[r], u[i])],
                          [-q * v + p * w for v, w in zip(u[r], u[i])])
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-v for v in a[r]]
            u[r] = [-v for v in u[r]]
        piv = a[r][c]
        for i in range(r):
            f = a[i][c] // piv
            if f:
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
                u[i] = [v - f * w for v, w in zip(u[i], u[r])]
        r += 1
    return mat(a), mat(u)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def smith_invariants(m) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... (length min(rows, cols), zeros last)."""
    if not is_integral(m):
        raise ValueError("smith_invariants needs an integral matrix")
    a = [[int(v) for v in row] for row in m]
    nr = len(a)
    nc = len(a[0]) if a else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [v - q * w for v, w in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
                        a[t], a[i] = a[i], a[t]
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
                        for row in a:
                            row[t], row[j] = row[j], row[t]
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            a[t] = [v + w for v, w in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
        t += 1
    diag += [0] * (min(nr, nc) - len(diag))
    return tuple(diag)


# ---------------------------------------------------------------- exact LP


def _feasible_nonneg(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Find x >= 0 with sum_k x_k * columns[k] == target, by phase-I simplex.

    Bland's rule on an exact rational tableau; returns None when infeasible.
    """
    m = len(target)
    n = len(columns)
    rows = []
    for i in range(m):
        row = [as_fraction(columns[k][i]) for k in range(n)]
        b = as_fraction(target[i])
        if b < 0:
            row = [-v for v in row]
            b = -b
        rows.append(row + [Fraction(int(i == j)) for j in range(m)] + [b])
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise sum of artificials, i.e. maximise -sum(a)
    # reduced costs for the current basis
    cost = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(n):
            cost[j] += row[j]
        cost[width] += row[width]
    while True:
        enter = next((j for j in range(width) if cost[j] > 0 and j not in basis), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[width] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded cannot happen in phase I; guard anyway
            break
        i = best[1]
        piv = rows[i][enter]
        rows[i] = [v / piv for v in rows[i]]
        for k in range(m):
            if k != i and rows[k][enter] != 0:
                f = rows[k][enter]
                rows[k] = [v - f * w for v, w in zip(rows[k], rows[i])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [v - f * w for v, w in zip(cost, rows[i])]
        basis[i] = enter
    if cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rows[i][width]
    return x


def lp_in_cone(target: Sequence, generators: Sequence[Sequence]) -> Optional[tuple[Fraction, ...]]:
    """Nonnegative weights alpha with sum alpha_k g_k == target, or None."""
    target = [as_fraction(t) for t in target]
    if not generators:
        return () if all(t == 0 for t in target) else None
    dims = {len(g) for g in generators}
    if dims != {len(target)}:
        raise ValueError("dimension mismatch")
    if all(t == 0 for t in target):
        return tuple(Fraction(0) for _ in generators)
    x = _feasible_nonneg(generators, target)
    return None if x is None else tuple(x)


def lp_positive_relation(vectors: Sequence[Sequence]) -> Optional[tuple[Fraction, ...]]:
    """Strictly positive weights lambda with sum lambda_k v_k == 0, or None.

    Homogeneity lets us ask for lambda_k >= 1: write lambda = 1 + mu with
    mu >= 0, so sum mu_k v_k = -sum v_k is a plain cone-membership problem.
    The returned weights all satisfy lambda_k >= 1.
    """
    if not vectors:
        raise ValueError("need at least one vector")
    dim = len(vectors[0])
    if any(len(v) != dim for v in vectors):
        raise ValueError("dimension mismatch")
    vs = [[as_fraction(c) for c in v] for v in vectors]
    shift = [-sum((v[i] for v in vs), Fraction(0)) for i in range(dim)]
    mu = lp_in_cone(shift, vs)
    if mu is None:
        return None
    return tuple(1 + m for m in mu)
