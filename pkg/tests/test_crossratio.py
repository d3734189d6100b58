import itertools
import random
from fractions import Fraction

import pytest

from rm3.crossratio import (ExtensionClass, WholeStratum, equation_for, exponents, exponents_from_coefficients,
                            exponents_from_norms, extension_group, multiplication_class, zeta)
from rm3.ideals import Order
from rm3.numberfield import dual_basis
from rm3.strata import LatticeContext, make_stratum


@pytest.fixture(scope="module")
def rec49(by_disc):
    return by_disc[49][0]


@pytest.fixture(scope="module")
def ctx49(rec49):
    return LatticeContext(rec49.classes[0], rec49.units)


def test_veech_exponents(veech):
    assert exponents(veech) == (1, 1, 1)


def test_t234_horizontal_routes_agree(f81):
    v = f81.gen
    r = (-v * v - v, v + 1, -2 * v * v - 3 * v + 2)
    a = exponents(r)
    assert exponents_from_norms(r) == exponents_from_coefficients(r) == a
    assert a[0] > 0 or (a[0] == 0 and a[1] > 0)


def test_exponents_scale_and_permute(veech, f49):
    v = f49.gen
    base = exponents(veech)
    for lam in (v, 3 * v - 1):
        assert exponents([lam * x for x in veech]) == base
    for perm in itertools.permutations(range(3)):
        a = exponents([veech[i] for i in perm])
        b = tuple(base[i] for i in perm)
        assert a in (b, tuple(-x for x in b))


def test_zeta_trivial_classes(veech, rec49):
    assert zeta(ExtensionClass.zero(), veech) == (1, 0)
    basis = rec49.classes[0].basis
    rng = random.Random(2)
    for _ in range(10):
        m = [[0] * 3 for _ in range(3)]
        for j in range(3):
            for k in range(j, 3):
                m[j][k] = m[k][j] = rng.randint(-4, 4)
        assert zeta(ExtensionClass(m, basis), veech) == (1, 0)


def test_zeta_half_integral(veech, rec49):
    basis = rec49.classes[0].basis
    s = dual_basis(veech)
    for vec in ((1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 2)):
        T = ExtensionClass([[Fraction(a * b, 2) for b in vec] for a in vec], basis)
        # direct pairing: u = 1/2 sum_i (v . Tr(b s_{i+1})) (v . Tr(b s_{i+2}))
        lin = [sum(c * (bj * si).trace() for c, bj in zip(vec, basis)) for si in s]
        u = sum(Fraction(lin[(i + 1) % 3] * lin[(i + 2) % 3], 2) for i in range(3))
        expected = (1, 0) if u.denominator == 1 else (2, 1)
        assert zeta(T, veech) == expected
    assert zeta(ExtensionClass([[0, 0, 0], [0, Fraction(1, 2), 0], [0, 0, 0]], basis), veech) == (2, 1)


def test_multiplication_classes_are_invisible(veech, rec49, f49):
    basis = rec49.classes[0].basis
    for x in (f49.one, f49.gen, f49.gen ** 2 - 3):
        assert zeta(multiplication_class(x, basis), veech) == (1, 0)


def test_extension_class_validation():
    with pytest.raises(ValueError):
        ExtensionClass([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    a = ExtensionClass([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    assert (a + a).T[0][0] == 2


def test_equation_veech(ctx49, veech):
    s = make_stratum(ctx49, [(0, 0, x) for x in veech])
    eq = equation_for(s)
    assert eq.stratum_case == "[6]"
    assert eq.exponents == (1, 1, 1) and eq.zeta_order == 1
    assert eq.text() == "R1^1 R2^1 R3^1 = 1"
    assert eq.to_dict()["zeta"] == [0, 1]


def test_equation_two_two(ctx49, veech):
    six = make_stratum(ctx49, [(0, 0, x) for x in veech])
    found = 0
    for d in six.degenerations():
        if d.pattern_code() != "[4]x2[4]" or not d.is_admissible():
            continue
        eq = equation_for(d)
        assert eq.exponents[1] == 0 and eq.exponents[0] != 0 and eq.exponents[2] != 0
        found += 1
    assert found


def test_equation_whole_stratum(by_disc, f81):
    rec = by_disc[81][0]
    v = f81.gen
    w = (f81.one, v * v + v - 3, 3 - v * v, v * v - 2)
    s = make_stratum(LatticeContext(rec.classes[0], rec.units),
                     [(0, 0, w[1]), (0, 1, w[0]), (0, 1, -w[2]), (0, 1, -w[3])])
    with pytest.raises(WholeStratum):
        equation_for(s)


def test_equation_four_four_961(by_disc):
    rec = by_disc[961][0]
    F = rec.field
    x = F.gen
    r1, r2, r3 = 4 - x / 2 - x * x / 2, 5 + x / 2 - x * x / 2, F.one
    s = make_stratum(LatticeContext(rec.classes[0], rec.units),
                     [(0, 1, r1), (0, 1, r2), (0, 1, r3), (0, 1, -(r1 + r2 + r3))])
    eq = equation_for(s)
    assert eq.stratum_case == "[4]x4[4]"
    assert sum(eq.exponents) == 0 and any(eq.exponents)


def test_extension_group_maximal(table):
    for rec in table[:12]:
        O = rec.maximal_order
        for I in rec.classes:
            assert all(d == 1 for d in extension_group(I, O))


def test_extension_group_grows_on_suborder(rec49, f49):
    O = rec49.maximal_order
    sub = Order(f49, [f49.one] + [2 * b for b in O.basis])
    big = extension_group(O, sub)
    size = 1
    for d in big:
        size *= d
    assert size > 1
    assert big == (2, 2, 2)
