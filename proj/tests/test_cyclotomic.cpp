#include "doctest.h"

#include <cmath>
#include <random>

#include "tropism/cyclotomic.hpp"

using namespace tropism;

namespace {

Cyclotomic random_element(std::mt19937_64& rng, long order)
{
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    std::vector<Rational> coords(static_cast<std::size_t>(order));
    for (auto& c : coords)
        c = Rational(num(rng), den(rng));
    return Cyclotomic(order, coords);
}

bool close(std::complex<double> a, std::complex<double> b)
{
    return std::abs(a - b) < 1e-9 * (1 + std::abs(a) + std::abs(b));
}

} // namespace

TEST_CASE("cyclotomic polynomials")
{
    CHECK(cyclotomic_polynomial(1) == std::vector<long long>{-1, 1});
    CHECK(cyclotomic_polynomial(3) == std::vector<long long>{1, 1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<long long>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<long long>{1, -1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<long long>{1, 0, -1, 0, 1});
    for (long m = 1; m <= 30; ++m)
        CHECK(static_cast<long>(cyclotomic_polynomial(m).size()) == euler_phi(m) + 1);
}

TEST_CASE("u^m - 1 vanishes exactly")
{
    for (long m = 1; m <= 16; ++m) {
        const Cyclotomic u = Cyclotomic::root_of_unity(1, m);
        CHECK((u.pow(m) - Cyclotomic(1L)).is_zero());
        for (long k = 1; k < m; ++k)
            CHECK_FALSE((u.pow(k) - Cyclotomic(1L)).is_zero());
    }
}

TEST_CASE("1 + u is nonzero for a primitive cube root")
{
    const Cyclotomic u = Cyclotomic::root_of_unity(1, 3);
    const Cyclotomic s = Cyclotomic(1L) + u;
    CHECK_FALSE(s.is_zero());
    // 1 + u = -u^2
    CHECK(s == -u.pow(2));
    CHECK((Cyclotomic(1L) + u + u * u).is_zero());
}

TEST_CASE("roots of unity are stored at reduced order")
{
    CHECK(Cyclotomic::root_of_unity(2, 4) == Cyclotomic(-1L));
    CHECK(Cyclotomic::root_of_unity(2, 4).order() == 1);
    CHECK(Cyclotomic::root_of_unity(3, 9).order() == 3);
    CHECK(Cyclotomic::root_of_unity(-1, 3) == Cyclotomic::root_of_unity(2, 3));
}

TEST_CASE("mixed orders embed into the lcm")
{
    const Cyclotomic i = Cyclotomic::root_of_unity(1, 4);
    const Cyclotomic w = Cyclotomic::root_of_unity(1, 3);
    const Cyclotomic z = i * w;
    CHECK(z.order() == 12);
    CHECK(z == Cyclotomic::root_of_unity(7, 12));
    CHECK(close(z.to_complex(), i.to_complex() * w.to_complex()));
}

TEST_CASE("field operations agree with complex arithmetic")
{
    std::mt19937_64 rng(5);
    for (long m : {1L, 2L, 3L, 4L, 5L, 6L, 8L, 9L, 12L}) {
        for (int trial = 0; trial < 20; ++trial) {
            const Cyclotomic a = random_element(rng, m);
            const Cyclotomic b = random_element(rng, m);
            CHECK(close((a + b).to_complex(), a.to_complex() + b.to_complex()));
            CHECK(close((a * b).to_complex(), a.to_complex() * b.to_complex()));
            if (!b.is_zero()) {
                CHECK(a / b * b == a);
                CHECK(close((a / b).to_complex(), a.to_complex() / b.to_complex()));
            }
            CHECK(close(a.conjugate().to_complex(), std::conj(a.to_complex())));
        }
    }
}

TEST_CASE("conjugation and norm are multiplicative")
{
    std::mt19937_64 rng(9);
    for (long m : {3L, 4L, 5L, 7L, 9L}) {
        for (int trial = 0; trial < 15; ++trial) {
            const Cyclotomic a = random_element(rng, m);
            const Cyclotomic b = random_element(rng, m);
            CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
            CHECK((a * b).norm() == a.norm() * b.norm());
            for (long j = 1; j < m; ++j)
                if (std::gcd(j, m) == 1)
                    CHECK((a * b).galois(j) == a.galois(j) * b.galois(j));
        }
    }
    CHECK(Cyclotomic::root_of_unity(1, 5).norm() == 1);
    CHECK(Cyclotomic(Rational(3, 2)).norm() == Rational(3, 2));
}

TEST_CASE("scaled roots of unity and exact roots")
{
    const Cyclotomic minus_eight(-8L);
    const auto sr = minus_eight.as_scaled_root_of_unity();
    REQUIRE(sr);
    CHECK(sr->scale == 8);
    const auto cube = minus_eight.exact_roots(3);
    REQUIRE(cube);
    CHECK(cube->size() == 3);
    for (const auto& r : *cube)
        CHECK(r.pow(3) == minus_eight);
    CHECK((*cube)[0] != (*cube)[1]);

    const Cyclotomic u = Cyclotomic::root_of_unity(1, 3);
    const auto sq = (Cyclotomic(Rational(4, 9)) * u).exact_roots(2);
    REQUIRE(sq);
    for (const auto& r : *sq)
        CHECK(r * r == Cyclotomic(Rational(4, 9)) * u);

    CHECK_FALSE(Cyclotomic(2L).exact_roots(2));
    CHECK_FALSE((Cyclotomic(1L) + Cyclotomic::root_of_unity(1, 5)).exact_roots(2));
    const auto ones = Cyclotomic(1L).exact_roots(6);
    REQUIRE(ones);
    CHECK(ones->size() == 6);
}

TEST_CASE("printing in terms of u")
{
    const Cyclotomic u = Cyclotomic::root_of_unity(1, 3);
    CHECK(u.str() == "u");
    CHECK(u.pow(2).str() == "u^2");
    CHECK((Cyclotomic(1L) + u).str() == "-u^2");
    CHECK((Cyclotomic(2L) + u).str() == "2 + u");
    CHECK((Cyclotomic(Rational(-1, 2)) * u).str() == "-1/2*u");
    CHECK(Cyclotomic(Rational(-1, 2)).str() == "-1/2");
    CHECK(u.str(6) == "u^2");
    CHECK((u - Cyclotomic(1L)).str(6) == "-2 + u");
    CHECK((-u).str(6) == "u^5");
    CHECK(Cyclotomic(-1L).str(6) == "-1");
    CHECK(Cyclotomic(0L).str(3) == "0");
    CHECK(Cyclotomic::root_of_unity(1, 4).str() == "u");
}
