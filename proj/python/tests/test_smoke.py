from fractions import Fraction

import pytest

import ffrad


def test_field_arithmetic():
    f = ffrad.Field(9)
    assert (f.p, f.e, f.q) == (3, 2, 9)
    assert f.irreducible_poly == [1, 0, 1]
    for a in range(1, 9):
        assert f.mul(a, f.inv(a)) == 1
    with pytest.raises(ffrad.FfradError):
        f.inv(0)
    with pytest.raises(ffrad.FfradError):
        ffrad.Field(6)


def test_counting_and_enumeration():
    assert ffrad.gaussian_binomial(4, 2, 2) == 35
    subspaces = ffrad.enumerate_grassmannian(3, 3, 1)
    assert len(subspaces) == 13
    assert len({s.serialize() for s in subspaces}) == 13
    g = ffrad.Subspace.parse(subspaces[4].serialize())
    assert g == subspaces[4]
    assert ffrad.sample_uniform_subspace(5, 3, 2, seed=3).dim == 2


def test_radial_projection_of_a_line():
    E = ffrad.PointSet(3, 2, [(0, 0), (1, 0), (2, 0)])
    assert len(E) == 3 and (1, 0) in E
    assert ffrad.radial_projection(E, (0, 0)) == [[1, 0]]
    assert len(ffrad.radial_projection(E, (0, 1))) == 3
    T = ffrad.exceptional_set(E, 1)
    assert T == E
    assert ffrad.exceptional_set(E, Fraction(3, 2), strict=True) == E
    assert sum(ffrad.radial_sizes(E)) == 3 * 1 + 6 * 3


def test_quotient_projection():
    E = ffrad.random_subset(3, 3, 10, seed=5)
    gamma = ffrad.Subspace.span(3, 3, [(0, 0, 1)])
    image = ffrad.project(E, gamma)
    assert image.n == 2
    assert 1 <= len(image) <= 9
    assert isinstance(ffrad.collision_count(E, gamma), int)


def test_reports_use_fractions():
    E = ffrad.random_subset(5, 2, 12, seed=1)
    r = ffrad.check_weak_bound(E, Fraction(3, 2))
    assert r["preconditions_met"] and r["holds"]
    assert isinstance(r["lhs"], Fraction) and r["rhs"] == Fraction(5 * 12, 1) / Fraction(1, 2)
    assert r["C"] == Fraction(3, 2)
    r = ffrad.check_expectation_identity(E, 0)
    assert r["lhs"] == r["rhs"] == ffrad.collision_expectation(2, 0, 5, 12)
    r = ffrad.check_lemma31(E, E, 1, seed=2)
    assert r["holds"]
    r = ffrad.check_full_dim(E, 1, 1)
    assert r["preconditions_met"] is False and r["holds"] is None


def test_pipeline_and_experiment():
    E = ffrad.random_subset(5, 3, 20, seed=8)
    trace = ffrad.reduction_pipeline(E, "conjecture", 2, seed=4)
    assert trace["all_relations_hold"]
    out = ffrad.run_experiment("expectation", q=[2, 3], n=[2, 3], k=[0], sizes=[4], trials=2, seed=9)
    assert out["summary"]["violations"] == 0
    assert out["summary"]["checked"] == 8
    again = ffrad.run_experiment("expectation", q=[2, 3], n=[2, 3], k=[0], sizes=[4], trials=2, seed=9, jobs=3)
    assert again == out
    with pytest.raises(ffrad.ConfigInvalid):
        ffrad.run_experiment("weak-bound", q=[6], n=[2], sizes=[3], params=[2])


def test_pointset_text_round_trip():
    E = ffrad.random_subset(4, 2, 7, seed=11)
    assert ffrad.PointSet.from_text(E.to_text()) == E
    with pytest.raises(ffrad.ParseError):
        ffrad.PointSet.from_text("# q=3 n=2\n0,5\n")
