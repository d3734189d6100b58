import random
from fractions import Fraction

import pytest

from rm3.exactmath import RationalPoly, inverse
from rm3.numberfield import (CubicField, Extension, NotABasis, NotIrreducible, NotTotallyReal, ZeroElement,
                             dual_basis, is_root_of_unity, minpoly_over_Q, qmap, roots_in_field, trace_form)


def _rand_element(F, rng, size=5):
    while True:
        x = F([Fraction(rng.randint(-size, size), rng.randint(1, 3)) for _ in range(3)])
        if not x.is_zero():
            return x


def test_discriminants(f49, f81):
    assert f49.discriminant == 49
    assert f81.discriminant == 81


def test_bad_polynomials():
    with pytest.raises(NotIrreducible):
        CubicField([0, 0, -1, 1])
    with pytest.raises(NotTotallyReal):
        CubicField([-2, 0, 0, 1])


def test_signs(f49):
    v = f49.gen
    assert f49.zero.signs() == (0, 0, 0)
    assert f49.one.signs() == (1, 1, 1)
    # embeddings are ordered by increasing real root; the smallest is about -1.80
    assert v.sign_at(0) == -1
    assert abs(v.embeddings()[0] + 1.8019) < 1e-3


def test_field_arithmetic(f49):
    rng = random.Random(1)
    for _ in range(50):
        a, b, c = (_rand_element(f49, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * a.inverse() == f49.one
        assert (a * b).norm() == a.norm() * b.norm()
        assert (a + b).trace() == a.trace() + b.trace()
        assert qmap(a) * a == f49(a.norm())


def test_parse_and_format(f49):
    x = f49.parse("1/2, -3, 0")
    assert x.coords == (Fraction(1, 2), -3, 0)
    assert f49.parse(x.format()) == x
    with pytest.raises(ValueError):
        f49.parse("1,2")


def test_zero_inverse(f49):
    with pytest.raises(ZeroElement):
        f49.zero.inverse()


def test_dual_basis_of_power_basis(f49):
    v = f49.gen
    r = (f49.one, v, v * v)
    s = dual_basis(r)
    gram = trace_form(r)
    ginv = inverse(gram)
    for i in range(3):
        expected = sum((r[j] * ginv[i][j] for j in range(3)), f49.zero)
        assert s[i] == expected
        for j in range(3):
            assert (r[i] * s[j]).trace() == (1 if i == j else 0)


def test_dual_basis_rejects_dependent(f49):
    v = f49.gen
    with pytest.raises(NotABasis):
        dual_basis((f49.one, v, v + 1))


def test_minpoly(f49):
    v = f49.gen
    assert minpoly_over_Q(f49(Fraction(3, 2))) == RationalPoly((Fraction(-3, 2), 1))
    assert minpoly_over_Q(v) == f49.poly
    # theta^2 for theta^3 + theta^2 - 2 theta - 1: resultant gives x^3 - 5x^2 + 6x - 1
    assert minpoly_over_Q(v * v) == RationalPoly((-1, 6, -5, 1))


def test_kronecker_small(f49):
    assert is_root_of_unity(1) == 1
    assert is_root_of_unity(-1) == 2
    assert is_root_of_unity(2) is None
    assert is_root_of_unity(Fraction(1, 2)) is None
    assert is_root_of_unity(f49.gen) is None
    for k in (3, 4, 6):
        z = Extension.cyclotomic(f49, k).gen
        assert is_root_of_unity(z) == k
    with pytest.raises(ZeroElement):
        is_root_of_unity(0)


def test_golden_ratio_is_not_torsion(f49):
    ext = Extension(f49, [-1, -1, 1])
    phi = ext.gen
    assert phi * phi == phi + 1
    assert is_root_of_unity(phi) is None


def test_roots_in_field_constructed(f49):
    v = f49.gen
    one, zero = f49.one, f49.zero
    # (t - v)(t^2 + 1)
    g = [-v, one, -v, one]
    roots, cof = roots_in_field(g)
    assert roots == [v]
    assert [c / cof[-1] for c in cof] == [one, zero, one]


def test_roots_in_field_none(f49):
    one, zero = f49.one, f49.zero
    roots, cof = roots_in_field([one, zero, one])
    assert roots == [] and len(cof) == 3


def test_roots_in_field_all(f49):
    v = f49.gen
    a, b, c = v, v * v - 2, -v + 3
    one = f49.one
    g = [-(a * b * c), a * b + b * c + a * c, -(a + b + c), one]
    roots, cof = roots_in_field(g)
    assert sorted(x.format() for x in roots) == sorted(x.format() for x in (a, b, c))
    assert len(cof) == 1


def test_extension_arithmetic(f49):
    ext = Extension.cyclotomic(f49, 3)
    z = ext.gen
    assert z * z * z == ext.one
    assert z * z + z + ext.one == ext([0])
    w = z + f49.gen
    assert w * w.inverse() == ext.one
    with pytest.raises(NotIrreducible):
        Extension(f49, [-(f49.gen * f49.gen), 0, 1])
