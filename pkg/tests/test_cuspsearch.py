import pytest

from rm3.crossratio import exponents
from rm3.cuspsearch import (Cusp31Candidate, Hyp4Report, UnsupportedCyclotomicOrder, _candidate, cross_ratios,
                            d_polynomial_values, hyp4_candidates, hyp4_cubic, hyp4_equations,
                            hyp4_residue_identity, hyp4_search, line_L_points, partial_fraction_numerator,
                            triple_status, veech_triple, verify31_cusp)
from rm3.enumerate import enumerate_2dim
from rm3.numberfield import roots_in_field


@pytest.fixture(scope="module")
def t234(f81):
    v = f81.gen
    r = (-v * v - v, v + 1, -2 * v * v - 3 * v + 2)
    x = (f81.one, 2 - v * v, v * v - 3)
    return x, r


def test_veech_triple_helper(f49, veech):
    assert veech_triple(f49) == veech


def test_cubic_has_the_veech_root(veech, f49):
    v = f49.gen
    roots, _ = roots_in_field(hyp4_cubic(veech))
    assert -v * v - v + 1 in roots


def test_veech_unique_hit(veech, f49):
    v = f49.gen
    cands = hyp4_candidates(veech)
    hits = [c for c in cands if c.is_hit]
    assert len(hits) == 1
    h = hits[0]
    assert h.x == (f49.one, -v * v - v + 1, v * v + v - 2)
    assert h.P == 1 and h.order == 1
    e1, e2 = hyp4_equations(veech, h.x)
    assert e1.is_zero() and e2.is_zero()
    assert hyp4_residue_identity(veech, h.x)
    R = cross_ratios(h.x)
    assert R[0] * R[1] * R[2] == f49.one


def test_every_candidate_solves_the_equations(veech):
    for c in hyp4_candidates(veech):
        if c.rejection:
            continue
        e1, e2 = hyp4_equations(veech, c.x)
        assert e1.is_zero() and e2.is_zero()


def test_pole_is_degenerate(veech):
    r1, r2, _ = veech
    c = _candidate(veech, exponents(veech), -r2 / r1, "F", 1)
    assert c.rejection == "x3-pole" and not c.is_hit


def test_disc_81_has_no_hit(by_disc):
    rec = by_disc[81][0]
    res = enumerate_2dim(rec.classes[0], rec.units)
    assert res.six_count >= 1
    for s in res.six_strata():
        status, _ = triple_status(s.weights)
        assert status != "HIT"


def test_search_small(table):
    rep = hyp4_search(table, max_disc=100)
    assert [ln.disc for ln in rep.hits] == [49]
    assert not rep.failures
    assert rep.hits[0].tsv().split("\t")[4] == "HIT"


def test_search_empty():
    rep = hyp4_search([], max_disc=100)
    assert isinstance(rep, Hyp4Report) and rep.lines == []


def test_t234_accepted(t234):
    x, r = t234
    verdict = verify31_cusp(Cusp31Candidate(x, ((3, 1),) * 3, r))
    assert verdict.accepted and verdict.route_a and verdict.route_b
    assert verdict.torsion_order == 3 and verdict.on_line_L
    assert verdict.reasons == []


def test_t234_perturbed_rejected(t234):
    x, r = t234
    bad = (x[0], x[1] + 1, x[2])
    c = Cusp31Candidate(bad, ((3, 1),) * 3, r)
    verdict = verify31_cusp(c)
    assert not verdict.accepted and not verdict.route_b
    assert any(not d.is_zero() for d in d_polynomial_values(c))
    assert not verdict.on_line_L


def test_numerator_shape(t234):
    x, r = t234
    n = partial_fraction_numerator(Cusp31Candidate(x, ((3, 1),) * 3, r))
    assert [k for k, c in enumerate(n) if not c.is_zero()] == [3]


def test_trivial_zeta_rejected(t234):
    x, r = t234
    with pytest.raises(ValueError):
        Cusp31Candidate(x, ((1, 0),) * 3, r)


def test_mixed_orders_unsupported(t234):
    x, r = t234
    with pytest.raises(UnsupportedCyclotomicOrder):
        Cusp31Candidate(x, ((3, 1), (4, 1), (3, 1)), r)


def test_line_L(f81, t234):
    x, r = t234
    report = line_L_points(f81, r)
    assert all(report.divisible)
    assert [tuple(p) for p in report.points] == [x]
    assert all(v.accepted for v in report.verdicts)
