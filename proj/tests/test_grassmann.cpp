#include "ffrad/errors.hpp"
#include "ffrad/grassmann.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace ffrad;

namespace {
AmbientSpace space_of(std::uint32_t q, int n)
{
    return AmbientSpace(Field::create(q), n);
}

oracle::IndexSet members(const Subspace& s)
{
    oracle::IndexSet out;
    for (const auto& x : s.elements())
        out.push_back(s.space().index_of(x));
    std::sort(out.begin(), out.end());
    return out;
}
}  // namespace

TEST_CASE("gaussian_binomial worked values")
{
    for (int n = 0; n <= 5; ++n)
        CHECK(gaussian_binomial(n, 0, 7) == 1);
    CHECK(gaussian_binomial(3, 1, 3) == 13);
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(4, 4, 5) == 1);
    CHECK_THROWS_AS(gaussian_binomial(3, 4, 2), InvalidRange);
    CHECK_THROWS_AS(gaussian_binomial(3, -1, 2), InvalidRange);
    CHECK_THROWS_AS(gaussian_binomial(3, 1, 1), InvalidRange);
    // Exact at sizes where 64-bit overflows: [20 choose 10]_7.
    BigInt big = gaussian_binomial(20, 10, 7);
    CHECK(big > BigInt(std::numeric_limits<std::uint64_t>::max()));
    CHECK(big == gaussian_binomial(20, 10, 7));
}

TEST_CASE("count_containing")
{
    CHECK(count_containing(4, 2, 2, 3) == 1);
    CHECK(count_containing(3, 2, 1, 2) == 3);
    CHECK(count_containing(4, 2, 0, 3) == gaussian_binomial(4, 2, 3));
    CHECK_THROWS_AS(count_containing(3, 1, 2, 2), InvalidRange);

    // Filter the full enumeration for subspaces containing a fixed one.
    for (auto [q, n] : {std::pair{2u, 4}, {3u, 3}}) {
        auto s = space_of(q, n);
        for (int l = 0; l <= n; ++l)
            for (int k = l; k <= n; ++k) {
                auto fixed = enumerate_grassmannian(s, l).front();
                std::uint64_t hits = 0;
                for (const auto& g : enumerate_grassmannian(s, k)) {
                    bool inside = true;
                    for (const auto& v : fixed.basis())
                        inside &= g.contains(v);
                    hits += inside;
                }
                CHECK(BigInt(hits) == count_containing(n, k, l, q));
            }
    }
}

TEST_CASE("enumeration matches the brute-force subspace oracle")
{
    for (auto [q, n] : {std::pair{2u, 2}, {2u, 3}, {2u, 4}, {3u, 2}, {3u, 3}, {4u, 2}, {5u, 2}}) {
        auto s = space_of(q, n);
        for (int k = 0; k <= n; ++k) {
            CAPTURE(q);
            CAPTURE(n);
            CAPTURE(k);
            std::set<oracle::IndexSet> seen;
            for (const auto& g : enumerate_grassmannian(s, k)) {
                CHECK(g.dim() == k);
                seen.insert(members(g));
            }
            CHECK(seen == oracle::all_subspaces(s, k));
            CHECK(BigInt(seen.size()) == gaussian_binomial(n, k, q));
        }
    }
}

TEST_CASE("enumeration order and small listings")
{
    auto s = space_of(2, 2);
    auto lines = enumerate_grassmannian(s, 1);
    REQUIRE(lines.size() == 3);
    std::set<std::vector<Elem>> got;
    for (const auto& g : lines)
        got.insert(g.matrix());
    CHECK(got == std::set<std::vector<Elem>>{{1, 0}, {0, 1}, {1, 1}});
    // Pivot pattern {0} first (free entry 0 then 1), then pattern {1}.
    CHECK(lines[0].matrix() == std::vector<Elem>{1, 0});
    CHECK(lines[1].matrix() == std::vector<Elem>{1, 1});
    CHECK(lines[2].matrix() == std::vector<Elem>{0, 1});

    auto zero = enumerate_grassmannian(space_of(3, 3), 0);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0] == Subspace::zero(space_of(3, 3)));
    CHECK(enumerate_grassmannian(space_of(3, 3), 1).size() == 13);
}

TEST_CASE("enumeration budget")
{
    CHECK_THROWS_AS(GrassmannianStream(space_of(5, 4), 2, 100), BudgetExceeded);
    CHECK_NOTHROW(GrassmannianStream(space_of(5, 4), 2, 806));
}

TEST_CASE("enumeration counts over the counting grid")
{
    for (std::uint32_t q : {2u, 3u, 4u, 5u})
        for (int n = 1; n <= 4; ++n)
            for (int k = 0; k <= n; ++k) {
                GrassmannianStream stream(space_of(q, n), k);
                std::uint64_t count = 0;
                while (auto g = stream.next())
                    ++count;
                CHECK(BigInt(count) == gaussian_binomial(n, k, q));
            }
}

TEST_CASE("RREF canonical form")
{
    auto s = space_of(5, 4);
    SeededRng rng(11);
    for (int t = 0; t < 200; ++t) {
        const int k = static_cast<int>(rng.below(5));
        auto g = sample_uniform_subspace(s, k, rng);
        REQUIRE(g.dim() == k);
        // Same subspace from a scrambled spanning set.
        std::vector<Point> gens;
        for (int i = 0; i < k + 2; ++i) {
            Point v = s.zero();
            for (const auto& b : g.basis())
                v = s.add(v, s.scale(static_cast<Elem>(rng.below(5)), b));
            gens.push_back(v);
        }
        for (const auto& b : g.basis())
            gens.push_back(s.scale(3, b));
        CHECK(Subspace::span(s, gens) == g);
        CHECK(Subspace::from_rref(s, k, g.matrix()) == g);
        const auto& piv = g.pivots();
        for (int r = 0; r < k; ++r) {
            CHECK(g.at(r, piv[r]) == 1);
            for (int r2 = 0; r2 < k; ++r2)
                if (r2 != r)
                    CHECK(g.at(r2, piv[r]) == 0);
        }
        CHECK(Subspace::parse(g.serialize()) == g);
    }
    CHECK_THROWS_AS(Subspace::from_rref(space_of(2, 2), 1, {1, 2}), IndexOutOfRange);
    CHECK_THROWS_AS(Subspace::from_rref(space_of(3, 2), 1, {2, 0}), InvalidRange);
    CHECK_THROWS_AS(Subspace::from_rref(space_of(3, 2), 2, {1, 1, 1, 1}), InvalidRange);
    CHECK_THROWS_AS(Subspace::parse("G(3,2,1):1,0,0"), ParseError);
    CHECK(Subspace::parse("G(3,2,0):") == Subspace::zero(space_of(3, 2)));
    CHECK(Subspace::span(space_of(3, 2), {Point{2, 2}}).serialize() == "G(3,2,1):1,1");
}

TEST_CASE("sample_uniform_subspace is uniform on G(3,1) over F_3")
{
    auto s = space_of(3, 3);
    SeededRng rng(2024);
    CHECK(sample_uniform_subspace(s, 0, rng) == Subspace::zero(s));
    CHECK(sample_uniform_subspace(s, 3, rng) == Subspace::full(s));

    std::map<std::vector<Elem>, int> freq;
    for (const auto& g : enumerate_grassmannian(s, 1))
        freq[g.matrix()] = 0;
    const int draws = 13000;
    for (int i = 0; i < draws; ++i)
        ++freq.at(sample_uniform_subspace(s, 1, rng).matrix());
    REQUIRE(freq.size() == 13);
    const double sd = std::sqrt(draws * (1.0 / 13) * (12.0 / 13));
    for (auto& [m, c] : freq)
        CHECK(std::abs(c - 1000.0) <= 5 * sd);
}

TEST_CASE("extend_to_complement")
{
    auto s = space_of(2, 2);
    CHECK(extend_to_complement(Subspace::zero(s)) == std::vector<Point>{Point{1, 0}, Point{0, 1}});
    CHECK(extend_to_complement(Subspace::full(s)).empty());
    CHECK(extend_to_complement(Subspace::span(s, {Point{1, 1}})) == std::vector<Point>{Point{0, 1}});

    auto s4 = space_of(3, 4);
    SeededRng rng(5);
    for (int t = 0; t < 50; ++t) {
        auto g = sample_uniform_subspace(s4, static_cast<int>(rng.below(5)), rng);
        auto gens = g.basis();
        for (auto& v : extend_to_complement(g))
            gens.push_back(v);
        CHECK(Subspace::span(s4, gens).dim() == 4);
        CHECK(gens.size() == 4);
    }
}

TEST_CASE("q-Pascal identity used by the expectation count")
{
    // [n, n-k-1]_q (q^(n-k-1) - 1) == (q^n - 1) [n-1, n-k-2]_q
    for (std::uint32_t q : {2u, 3u, 4u, 5u})
        for (int n = 2; n <= 4; ++n)
            for (int k = 0; k <= n - 2; ++k) {
                BigInt lhs = gaussian_binomial(n, n - k - 1, q) * (big_pow(q, n - k - 1) - 1);
                BigInt rhs = (big_pow(q, n) - 1) * gaussian_binomial(n - 1, n - k - 2, q);
                CHECK(lhs == rhs);
            }
}
