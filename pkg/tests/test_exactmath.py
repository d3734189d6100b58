import itertools
import random
from fractions import Fraction

import pytest

from rm3.exactmath import (RationalPoly, cyclotomic, det, discriminant, hnf, identity, inverse,
                           is_integral, lp_in_cone, lp_positive_relation, matmul, nullspace_left,
                           primitive_integer_vector, rank, resultant, smith_invariants, solve_left)


def test_hnf_identity():
    h, u = hnf(identity(3))
    assert [list(r) for r in h] == [list(r) for r in identity(3)]
    assert [list(r) for r in u] == [list(r) for r in identity(3)]


def test_hnf_already_reduced():
    h, u = hnf([[2, 0], [0, 3]])
    assert [list(r) for r in h] == [[2, 0], [0, 3]]
    assert [list(r) for r in u] == [[1, 0], [0, 1]]


def test_hnf_small():
    m = [[2, 4], [1, 3]]
    h, u = hnf(m)
    assert abs(det(h)) == 2
    assert [list(r) for r in matmul(u, m)] == [list(r) for r in h]
    assert abs(det(u)) == 1


def test_hnf_random_shape():
    rng = random.Random(5)
    for _ in range(50):
        m = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(4)]
        h, u = hnf(m)
        assert [list(r) for r in matmul(u, m)] == [list(r) for r in h]
        assert abs(det(u)) == 1
        # echelon with positive pivots and reduced entries above them
        col = -1
        for i, row in enumerate(h):
            nz = [j for j, v in enumerate(row) if v]
            if not nz:
                assert all(not any(r) for r in h[i:])
                break
            p = nz[0]
            assert p > col and row[p] > 0
            assert all(0 <= above[p] < row[p] for above in h[:i])
            col = p


def test_smith():
    assert smith_invariants(identity(3)) == (1, 1, 1)
    assert smith_invariants([[2, 0], [0, 4]]) == (2, 4)
    assert smith_invariants([[2, 0], [0, 3]]) == (1, 6)


def test_smith_matches_determinant():
    rng = random.Random(11)
    for _ in range(30):
        m = [[rng.randint(-6, 6) for _ in range(3)] for _ in range(3)]
        d = det(m)
        if d == 0:
            continue
        inv = smith_invariants(m)
        prod = 1
        for x in inv:
            prod *= x
        assert prod == abs(d)
        assert all(inv[i + 1] % inv[i] == 0 for i in range(len(inv) - 1))


def test_positive_relation():
    lam = lp_positive_relation([(1, 0), (-1, 0)])
    assert lam is not None and lam[0] == lam[1] > 0
    assert lp_positive_relation([(1, 0), (0, 1)]) is None
    lam = lp_positive_relation([(1,), (-2,), (1,)])
    assert lam is not None and all(x > 0 for x in lam)
    assert lam[0] - 2 * lam[1] + lam[2] == 0


def test_in_cone():
    assert lp_in_cone((0, 0), [(1, 2), (3, 4)]) == (0, 0)
    assert lp_in_cone((1, 1), [(1, 0), (0, 1)]) == (1, 1)
    assert lp_in_cone((-1, 0), [(1, 0), (0, 1)]) is None


def test_in_cone_agrees_with_enumeration():
    # cone generated by integer vectors; brute-force small nonnegative combinations
    gens = [(1, 0, 1), (0, 1, 1), (-1, 1, 0), (1, -1, 2)]
    reach = set()
    for c in itertools.product(range(3), repeat=4):
        reach.add(tuple(sum(ci * g[j] for ci, g in zip(c, gens)) for j in range(3)))
    for t in reach:
        sol = lp_in_cone(t, gens)
        assert sol is not None and all(x >= 0 for x in sol)
        assert tuple(sum(x * g[j] for x, g in zip(sol, gens)) for j in range(3)) == t


def test_linear_algebra():
    m = [[1, 2, 3], [0, 1, 4], [5, 6, 0]]
    inv = inverse(m)
    assert [list(r) for r in matmul(m, inv)] == [list(r) for r in identity(3)]
    assert rank([[1, 2], [2, 4]]) == 1
    x = solve_left(m, (1, 1, 1))
    assert tuple(sum(x[i] * m[i][j] for i in range(3)) for j in range(3)) == (1, 1, 1)
    assert solve_left([[1, 2], [2, 4]], (1, 0)) is None
    ker = nullspace_left([[1, 2], [2, 4]])
    assert len(ker) == 1 and ker[0][0] * 1 + ker[0][1] * 2 == 0
    assert is_integral([[1, 2]]) and not is_integral([[Fraction(1, 2)]])


def test_primitive_vector():
    assert primitive_integer_vector([Fraction(1, 2), Fraction(1, 3), 0]) == (3, 2, 0)
    assert primitive_integer_vector([0, 0]) == (0, 0)
    assert primitive_integer_vector([-4, 6]) == (-2, 3)


def test_polynomials():
    x = RationalPoly.x()
    f = x ** 3 + x ** 2 - 2 * x - 1
    assert discriminant(f) == 49
    assert discriminant(x ** 3 - 3 * x + 1) == 81
    q, r = (x ** 3 - 1).divmod(x - 1)
    assert r.is_zero() and q == x ** 2 + x + 1
    assert (x ** 2 - 1).gcd(x ** 2 + 2 * x + 1) == x + 1
    assert resultant(x - 2, x ** 2 - 4) == 0
    assert (2 * x ** 3 - x ** 2 - 5 * x + 2).rational_roots() == []
    assert sorted((2 * x ** 2 - 3 * x + 1).rational_roots()) == [Fraction(1, 2), Fraction(1)]


@pytest.mark.parametrize("k,coeffs", [(1, (-1, 1)), (2, (1, 1)), (3, (1, 1, 1)), (4, (1, 0, 1)),
                                      (6, (1, -1, 1)), (12, (1, 0, -1, 0, 1))])
def test_cyclotomic(k, coeffs):
    assert cyclotomic(k) == RationalPoly(coeffs)
