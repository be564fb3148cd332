#include "ffrad/errors.hpp"
#include "ffrad/gf.hpp"

#include <doctest.h>

using namespace ffrad;

TEST_CASE("field_new on a prime")
{
    auto f = Field::create(5);
    CHECK(f->p() == 5);
    CHECK(f->e() == 1);
    CHECK(f->q() == 5);
    CHECK(f->irreducible_poly().empty());
}

TEST_CASE("field_new(4) uses x^2 + x + 1")
{
    auto f = Field::create(4);
    CHECK(f->p() == 2);
    CHECK(f->e() == 2);
    // Over F_2 the monic quadratics are x^2, x^2+1, x^2+x, x^2+x+1; only the
    // last has no root in {0, 1}.
    CHECK(f->irreducible_poly() == std::vector<Elem>{1, 1, 1});
}

TEST_CASE("field_new(8) and field_new(9) pick the smallest irreducible")
{
    // x^3 + x + 1 (lower coefficients 1,1,0) precedes x^3 + x^2 + 1.
    CHECK(Field::create(8)->irreducible_poly() == std::vector<Elem>{1, 1, 0, 1});
    // Over F_3: x^2+1 has no root (0->1, 1->2, 2->2), and it is the first candidate with c0 != 0.
    CHECK(Field::create(9)->irreducible_poly() == std::vector<Elem>{1, 0, 1});
}

TEST_CASE("field_new rejects non prime powers and oversize fields")
{
    CHECK_THROWS_AS(Field::create(6), NotPrimePower);
    CHECK_THROWS_AS(Field::create(12), NotPrimePower);
    CHECK_THROWS_AS(Field::create(1), NotPrimePower);
    CHECK_THROWS_AS(Field::create(0), NotPrimePower);
    CHECK_THROWS_AS(Field::create(128), Unsupported);
    CHECK_NOTHROW(Field::create(128, 128));
    CHECK(is_prime_power(49));
    CHECK_FALSE(is_prime_power(50));
}

TEST_CASE("small worked values")
{
    CHECK(Field::create(5)->add(3, 4) == 2);

    // x * (x + 1) = x^2 + x = (x + 1) + x = 1 modulo x^2 + x + 1.
    auto f4 = Field::create(4);
    CHECK(f4->mul(2, 3) == 1);

    auto f7 = Field::create(7);
    Elem found = 0;
    for (Elem b = 1; b < 7; ++b)
        if ((3 * b) % 7 == 1)
            found = b;
    CHECK(found == 5);
    CHECK(f7->inv(3) == found);
    CHECK_THROWS_AS(f7->inv(0), DivisionByZero);
}

TEST_CASE("field axioms hold exhaustively for every supported order")
{
    for (std::uint32_t q = 2; q <= kDefaultMaxFieldOrder; ++q) {
        if (!is_prime_power(q))
            continue;
        CAPTURE(q);
        auto f = Field::create(q);
        bool ok = true;
        for (Elem a = 0; a < q && ok; ++a) {
            ok &= f->add(a, 0) == a && f->mul(a, 1) == a && f->add(a, f->neg(a)) == 0;
            if (a)
                ok &= f->mul(a, f->inv(a)) == 1 && f->pow(a, q - 1) == 1;
            for (Elem b = 0; b < q && ok; ++b) {
                ok &= f->add(a, b) == f->add(b, a) && f->mul(a, b) == f->mul(b, a);
                ok &= f->sub(f->add(a, b), b) == a;
                for (Elem c = 0; c < q && ok; ++c) {
                    ok &= f->add(f->add(a, b), c) == f->add(a, f->add(b, c));
                    ok &= f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c));
                    ok &= f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c));
                }
            }
        }
        CHECK(ok);

        // The generator has order exactly q - 1.
        Elem x = 1;
        std::uint32_t order = 0;
        do {
            x = f->mul(x, f->generator());
            ++order;
        } while (x != 1);
        CHECK(order == q - 1);

        if (f->e() >= 2) {
            const auto& poly = f->irreducible_poly();
            for (Elem r = 0; r < f->p(); ++r) {
                std::uint64_t value = 0, power = 1;
                for (auto c : poly) {
                    value = (value + c * power) % f->p();
                    power = power * r % f->p();
                }
                CHECK(value != 0);
            }
            CHECK(is_irreducible(poly, f->p()));
        }
    }
}

TEST_CASE("field construction is deterministic")
{
    for (std::uint32_t q : {16u, 27u, 32u, 49u, 64u}) {
        auto a = Field::create(q), b = Field::create(q);
        bool same = a->irreducible_poly() == b->irreducible_poly() && a->generator() == b->generator();
        for (Elem x = 0; x < q && same; ++x)
            for (Elem y = 0; y < q && same; ++y)
                same = a->mul(x, y) == b->mul(x, y) && a->add(x, y) == b->add(x, y);
        CHECK(same);
    }
}

TEST_CASE("is_irreducible on known polynomials")
{
    CHECK(is_irreducible({1, 1, 1}, 2));
    CHECK_FALSE(is_irreducible({1, 0, 1}, 2));  // (x+1)^2
    CHECK(is_irreducible({1, 1, 1, 1, 1}, 2));  // x^4+x^3+x^2+x+1
    CHECK_FALSE(is_irreducible({1, 0, 1, 0, 1}, 2));  // (x^2+x+1)^2
    CHECK(is_irreducible({2, 1, 1}, 3));
}
