#include "ffrad/errors.hpp"
#include "ffrad/generators.hpp"
#include "ffrad/theorems.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace ffrad;

namespace {
AmbientSpace space_of(std::uint32_t q, int n)
{
    return AmbientSpace(Field::create(q), n);
}

PointSet x_axis_3()
{
    auto s = space_of(3, 2);
    return PointSet::from_points(s, {Point{0, 0}, Point{1, 0}, Point{2, 0}});
}
}  // namespace

TEST_CASE("theorem ids round-trip")
{
    for (auto id : {TheoremId::LargeESC, TheoremId::FullDimLargeESC, TheoremId::RadialConjecture,
                    TheoremId::WeakProjBound, TheoremId::Lemma31, TheoremId::ExpectationIdentity,
                    TheoremId::MarkovFraction})
        CHECK(parse_theorem_id(to_string(id)) == id);
    CHECK(parse_theorem_id("weak-bound") == TheoremId::WeakProjBound);
    CHECK_FALSE(parse_theorem_id("nope").has_value());
}

TEST_CASE("exceptional_set worked examples")
{
    auto E = x_axis_3();
    CHECK(exceptional_set(E, Rational(1), false) == E);
    CHECK(exceptional_set(E, Rational(4), false) == PointSet::full(E.space()));
    CHECK(exceptional_set(E, Rational(0), true).empty());
    CHECK(exceptional_set(E, Rational(3, 2), true) == E);
    CHECK(exceptional_set(E, Rational(1), true).empty());
    CHECK_THROWS_AS(exceptional_set(PointSet(E.space()), Rational(1), false), PreconditionViolated);
}

TEST_CASE("exceptional_set is monotone and independent of the thread count")
{
    SeededRng rng(5);
    auto s = space_of(7, 3);
    for (int t = 0; t < 5; ++t) {
        auto E = random_subset(s, 20 + rng.below(60), rng);
        auto prev = exceptional_set(E, Rational(0), false);
        for (int thr = 1; thr <= 60; thr += 3) {
            auto cur = exceptional_set(E, Rational(thr), false);
            CHECK(prev.is_subset_of(cur));
            CHECK(exceptional_set(E, Rational(thr), false, 4) == cur);
            prev = cur;
        }
    }
}

TEST_CASE("weak projection bound")
{
    auto E = x_axis_3();
    auto r = check_weak_bound(E, Rational(2));
    REQUIRE(r.preconditions_met);
    CHECK(r.lhs == 3);
    CHECK(r.rhs == 9);
    CHECK(r.holds == true);
    CHECK_FALSE(check_weak_bound(E, Rational(3)).preconditions_met);
    CHECK_FALSE(check_weak_bound(E, Rational(1)).preconditions_met);
    auto single = PointSet::from_points(E.space(), {Point{1, 1}});
    auto r1 = check_weak_bound(single, Rational(3, 2));
    CHECK_FALSE(r1.preconditions_met);
    CHECK_FALSE(r1.holds.has_value());
}

TEST_CASE("large ESC checker")
{
    auto s = space_of(3, 2);
    SeededRng rng(1);
    CHECK_FALSE(check_largeESC(random_subset(s, 5, rng), 1).preconditions_met);

    auto s8 = space_of(8, 2);
    for (int t = 0; t < 30; ++t) {
        auto E = random_subset(s8, 48, rng);
        auto r = check_largeESC(E, 2);
        REQUIRE(r.preconditions_met);
        CHECK(r.rhs == Rational(12 * 8 * 2, 48));
        CHECK(r.holds == true);
        auto r0 = check_largeESC(E, 0);
        CHECK(r0.lhs == 0);
        CHECK(r0.holds == true);
    }
    CHECK_FALSE(check_largeESC(random_subset(s8, 48, rng), 3).preconditions_met);
}

TEST_CASE("full-dimensional large ESC checker")
{
    SeededRng rng(2);
    // 30 q^k <= |E| <= q^(k+1) forces q >= 30.
    auto s8 = space_of(8, 3);
    auto r = check_fullDim(random_subset(s8, 240, rng), 2, 1);
    CHECK_FALSE(r.preconditions_met);
    CHECK_FALSE(check_fullDim(random_subset(space_of(5, 3), 100, rng), 1, 2).preconditions_met);

    auto s31 = AmbientSpace(Field::create(31), 2);
    for (int t = 0; t < 5; ++t) {
        auto E = random_subset(s31, 930 + rng.below(32), rng);
        for (std::uint64_t M : {0u, 1u, 7u}) {
            auto rep = check_fullDim(E, M, 1);
            REQUIRE(rep.preconditions_met);
            CHECK(rep.holds == true);
            if (M == 0)
                CHECK(rep.lhs == 0);
        }
        CHECK_FALSE(check_fullDim(E, 8, 1).preconditions_met);
    }
}

TEST_CASE("radial conjecture checker")
{
    auto r = check_radial_conjecture(x_axis_3(), 1);
    REQUIRE(r.preconditions_met);
    CHECK(r.lhs == 0);
    CHECK(r.rhs == 30);
    CHECK(r.holds == true);

    SeededRng rng(3);
    auto s = space_of(8, 4);
    for (int t = 0; t < 3; ++t) {
        auto g = sample_uniform_subspace(s, 2, rng);
        auto E = plane_subset(s, g, s.point_at(rng.below(s.size())), 60, rng);
        auto rep = check_radial_conjecture(E, 2);
        REQUIRE(rep.preconditions_met);
        CHECK(rep.holds == true);
    }
    CHECK_FALSE(check_radial_conjecture(random_subset(space_of(3, 2), 4, rng), 1).preconditions_met);
    CHECK_FALSE(check_radial_conjecture(x_axis_3(), 2).preconditions_met);
}

TEST_CASE("collision expectation formula")
{
    CHECK(collision_expectation(3, 1, 3, 0) == 0);
    CHECK(collision_expectation(3, 1, 3, 1) == 0);
    CHECK(collision_expectation(3, 2, 3, 20) == 0);
    CHECK(collision_expectation(2, 0, 2, 4) == 2);
    CHECK(collision_expectation(3, 1, 3, 7) == Rational(2 * 21, 26));
    CHECK_THROWS_AS(collision_expectation(2, 2, 2, 1), InvalidRange);
    CHECK_THROWS_AS(collision_expectation(2, 0, 2, 5), InvalidRange);

    // Independent route: average pair collisions over oracle subspaces.
    auto s = space_of(2, 2);
    BigInt sum = 0;
    auto subs = oracle::all_subspaces(s, 1);
    for (const auto& g : subs) {
        const auto c = oracle::colliding_pairs(PointSet::full(s), g);
        CHECK(c == 2);
        sum += c;
    }
    CHECK(Rational(sum, subs.size()) == 2);
}

TEST_CASE("expectation identity")
{
    auto s = space_of(2, 2);
    CHECK(check_expectation_identity(PointSet(s), 0).holds == true);
    auto full = check_expectation_identity(PointSet::full(s), 0);
    CHECK(full.lhs == 2);
    CHECK(full.rhs == 2);

    auto s3 = space_of(3, 3);
    SeededRng rng(6);
    for (int t = 0; t < 10; ++t) {
        auto X = random_subset(s3, 7, rng);
        auto r = check_expectation_identity(X, 1);
        CHECK(r.holds == true);
        // Same average via the pair-counting oracle over oracle lines.
        BigInt sum = 0;
        auto lines = oracle::all_subspaces(s3, 1);
        for (const auto& g : lines)
            sum += oracle::colliding_pairs(X, g);
        CHECK(Rational(sum, lines.size()) == r.lhs);
    }
    CHECK_THROWS_AS(check_expectation_identity(PointSet(s3), 1, 5), BudgetExceeded);
}

TEST_CASE("Markov condition and fraction")
{
    auto s = space_of(2, 2);
    for (const auto& qm : quotient_maps_for(s, 0)) {
        CHECK(markov_condition(qm, PointSet(s)));
        CHECK(markov_condition(qm, PointSet::full(s)));
    }
    auto r = check_markov_fraction(PointSet::full(s), 0);
    CHECK(r.lhs == 3);
    CHECK(r.rhs == Rational(9, 4));
    CHECK(r.holds == true);
    CHECK(check_markov_fraction(PointSet(s), 0).holds == true);

    auto s3 = space_of(3, 3);
    SeededRng rng(7);
    for (const auto& qm : quotient_maps_for(s3, 2))
        CHECK(markov_condition(qm, random_subset(s3, 27, rng)));
    for (int t = 0; t < 20; ++t)
        CHECK(check_markov_fraction(random_subset(s3, 10, rng), 1).holds == true);
}

TEST_CASE("find_good_subspace")
{
    SeededRng rng(10);
    auto s = space_of(3, 3);
    auto A = random_subset(s, 8, rng), B = random_subset(s, 8, rng);
    auto id = find_good_subspace(A, B, 2, rng);
    CHECK(id.gamma.dim() == 0);
    CHECK(id.trials == 1);
    CHECK(id.projected_a == 8);

    auto empty = find_good_subspace(PointSet(s), PointSet(s), 1, rng);
    CHECK(empty.trials == 1);

    std::uint64_t trials = 0;
    const int runs = 1000;
    for (int i = 0; i < runs; ++i) {
        SeededRng r(SeededRng::derive(99, static_cast<std::uint64_t>(i)));
        auto a = random_subset(s, 8, r), b = random_subset(s, 8, r);
        auto good = find_good_subspace(a, b, 1, r);
        QuotientMap qm(good.gamma);
        CHECK(5 * project_set(qm, a).size() >= a.size());
        CHECK(5 * project_set(qm, b).size() >= b.size());
        trials += good.trials;
    }
    CHECK(double(trials) / runs <= 2.0);

    CHECK_THROWS_AS(find_good_subspace(random_subset(s, 10, rng), A, 1, rng), PreconditionViolated);
    CHECK_THROWS_AS(find_good_subspace(A, B, 3, rng), PreconditionViolated);
}

TEST_CASE("lemma report wraps the search")
{
    SeededRng rng(12);
    auto s = space_of(4, 3);
    auto r = check_lemma31(random_subset(s, 15, rng), random_subset(s, 12, rng), 1, rng);
    REQUIRE(r.preconditions_met);
    CHECK(r.holds == true);
    CHECK(r.lhs >= Rational(1, 5));
    CHECK(r.trials.has_value());
    CHECK_FALSE(check_lemma31(random_subset(s, 17, rng), PointSet(s), 1, rng).preconditions_met);
}

TEST_CASE("tightness of the k-plane family")
{
    SeededRng rng(13);
    for (auto [q, k] : {std::pair{3u, 1}, {3u, 2}, {5u, 1}, {4u, 2}})
        for (int n : {k + 1, k + 2}) {
            auto s = space_of(q, n);
            auto g = sample_uniform_subspace(s, k, rng);
            auto E = full_plane(g, s.point_at(rng.below(s.size())));
            const auto in_plane = lines_through_point(q, k);
            RadialCounter counter(E);
            for (auto y : E)
                CHECK(counter.count(y) == in_plane);
            CHECK(exceptional_set(E, Rational(in_plane), false).size() >= E.size());
        }
}

TEST_CASE("reduction pipeline")
{
    SeededRng rng(14);
    // Preconditions of the full-dimensional statement are unreachable below q = 30.
    auto s8 = space_of(8, 3);
    CHECK_THROWS_AS(reduction_pipeline(random_subset(s8, 240, rng), PipelineMode::full_dim(2, 1), rng),
                    PreconditionViolated);
    CHECK_THROWS_AS(reduction_pipeline(PointSet(s8), PipelineMode::conjecture(1), rng), PreconditionViolated);

    // A reachable cell: q = 31, n = 3, k = 1.
    auto s31 = AmbientSpace(Field::create(31), 3);
    auto E = random_subset(s31, 940, rng);
    auto tr = reduction_pipeline(E, PipelineMode::full_dim(7, 1), rng);
    CHECK(tr.source_report.holds == true);
    CHECK(tr.all_relations_hold());
    CHECK(tr.containment_checked == tr.t_size);
    CHECK(5 * tr.projected_e >= tr.e_size);

    // Conjecture mode with k = n - 1: the quotient is the identity.
    auto s5 = space_of(5, 3);
    auto g = sample_uniform_subspace(s5, 2, rng);
    auto P = plane_subset(s5, g, s5.zero(), 20, rng);
    auto id = reduction_pipeline(P, PipelineMode::conjecture(2), rng);
    CHECK(id.projected_e == id.e_size);
    CHECK(id.projected_t == id.t_size);
    CHECK(id.gamma == "G(5,3,0):");
    CHECK(id.all_relations_hold());

    // Lemma-only run outside the theorem's range still verifies containment.
    auto F = random_subset(s8, 60, rng);
    auto relaxed = reduction_pipeline(F, PipelineMode::full_dim(40, 1), rng, kDefaultMaxTrials, 1, false);
    CHECK_FALSE(relaxed.source_report.preconditions_met);
    CHECK(relaxed.all_relations_hold());
}
