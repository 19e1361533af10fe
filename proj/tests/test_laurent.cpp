#include "doctest.h"

#include <random>

#include "tropism/parser.hpp"

using namespace tropism;

namespace {

const IntMatrix kTransform = to_int_matrix({{-3, 2, 1, 0}, {-2, 1, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}});

CyclotomicPoly random_poly(std::mt19937_64& rng, std::size_t n, int terms, int lo, int hi, long order)
{
    std::uniform_int_distribution<int> ex(lo, hi);
    std::uniform_int_distribution<int> co(-5, 5);
    std::uniform_int_distribution<long> pw(0, order - 1);
    CyclotomicPoly f(n);
    for (int t = 0; t < terms; ++t) {
        Exponent e(n);
        for (auto& x : e)
            x = ex(rng);
        f.add_term(e, Cyclotomic(Rational(co(rng), 1 + std::abs(co(rng)))) * Cyclotomic::root_of_unity(pw(rng), order));
    }
    return f;
}

} // namespace

TEST_CASE("parse the two-binomial system")
{
    const auto F = parse_system("x0^2*x1*x2^4*x3^3 - 1; x0*x1*x2*x3 - 1;");
    REQUIRE(F.size() == 2);
    CHECK(F.nvars == 4);
    CHECK(support(F[0]) == std::vector<Exponent>{{0, 0, 0, 0}, {2, 1, 4, 3}});
    CHECK(F[0].coefficient({0, 0, 0, 0}) == Cyclotomic(-1L));
    CHECK(F[1].coefficient({1, 1, 1, 1}) == Cyclotomic(1L));
}

TEST_CASE("parse errors carry positions")
{
    CHECK_THROWS_AS(parse_system(""), ParseError);
    CHECK_THROWS_AS(parse_system("# only a comment\n"), ParseError);
    try {
        parse_system("x0 + 1;\nx0 * * x1;");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 6);
    }
    CHECK_THROWS_AS(parse_system("vars: x, y; x + z;"), ParseError);
    CHECK_THROWS_AS(parse_system("x0^1.5;"), ParseError);
    CHECK_THROWS_AS(parse_system("x0^;"), ParseError);
    CHECK_THROWS_AS(parse_system("x0 + u;"), ParseError);
    CHECK_THROWS_AS(parse_system("x0 + 1"), ParseError);
    CHECK_THROWS_AS(parse_system("(x0 + 1)^-1;"), ParseError);
    CHECK_THROWS_AS(parse_system("x0 / (x1 + 1);"), ParseError);
}

TEST_CASE("grammar features")
{
    const auto F = parse_system("x0^-2*x1 + 1;");
    CHECK(support(F[0]) == std::vector<Exponent>{{-2, 1}, {0, 0}});

    const auto G = parse_system("vars: x, y, z;\n(y - x^2)*(x - 0.5);");
    CHECK(G.nvars == 3);
    CHECK(G[0].coefficient({0, 1, 0}) == Cyclotomic(Rational(-1, 2)));
    CHECK(G[0].coefficient({3, 0, 0}) == Cyclotomic(-1L));
    CHECK(G[0].size() == 4);

    const auto H = parse_system("root-order: 3;\n(1 + u)*x0 + i*x1 - x0/2;");
    CHECK(H[0].coefficient({1, 0}) == Cyclotomic(Rational(1, 2)) + Cyclotomic::root_of_unity(1, 3));
    CHECK(H[0].coefficient({0, 1}) == Cyclotomic::root_of_unity(1, 4));

    const auto Z = parse_system("root-order: 3; u^3 - 1;");
    CHECK(Z[0].is_zero());
    CHECK(parse_coefficient("-1/2") == Cyclotomic(Rational(-1, 2)));
    CHECK(parse_coefficient("1 + 2*u", 4) == Cyclotomic(1L) + Cyclotomic(2L) * Cyclotomic::root_of_unity(1, 4));
}

TEST_CASE("support of constants and zero")
{
    CHECK(support(CyclotomicPoly::constant(3, Cyclotomic(1L))) == std::vector<Exponent>{{0, 0, 0}});
    CHECK(support(CyclotomicPoly(3)).empty());
}

TEST_CASE("printing is canonical and round-trips")
{
    const auto F = parse_system("1 + x1*x0 - x0^2;\n3/2*x0^-1;");
    CHECK(format_system(F) == "-x0^2 + x0*x1 + 1;\n3/2*x0^-1;\n");
    const auto G = parse_system("vars: x, y; root-order: 3; (1 + u)*x*y^-2 - u + (2 + u)*x;");
    CHECK(format_system(G) == "vars: x, y;\nroot-order: 3;\n(2 + u)*x - u - u^2*x*y^-2;\n");

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const long order = std::array<long, 4>{1, 3, 4, 6}[trial % 4];
        std::vector<CyclotomicPoly> polys;
        for (int k = 0; k < 3; ++k)
            polys.push_back(random_poly(rng, 3, 5, -3, 3, order));
        const CyclotomicSystem S(3, polys);
        const std::string text = format_system(S);
        CHECK(parse_system(text) == S);
        CHECK(format_system(parse_system(text)) == text);
    }
}

TEST_CASE("monomial transform of the binomial example")
{
    const auto F = parse_system("x0^2*x1*x2^4*x3^3 - 1; x0*x1*x2*x3 - 1;");
    const RatMatrix M = cast_matrix<Rational>(kTransform);
    const auto G = substitute_monomial_transform(F, M);
    const auto expected = parse_system("x2^2*x3 - 1; x2*x3 - 1;");
    CHECK(G[0] == expected[0]);
    CHECK(G[1] == expected[1]);
    CHECK(substitute_monomial_transform(F, RatMatrix(RatMatrix::Identity(4, 4))) == F);
    RatMatrix half = RatMatrix::Identity(4, 4);
    half(1, 1) = Rational(1, 2);
    CHECK_THROWS_AS(substitute_monomial_transform(F[0], half), DomainError);
}

TEST_CASE("monomial transform is multiplicative")
{
    std::mt19937_64 rng(23);
    const RatMatrix M = cast_matrix<Rational>(kTransform);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_poly(rng, 4, 3, -2, 2, 3);
        const auto g = random_poly(rng, 4, 3, -2, 2, 3);
        CHECK(substitute_monomial_transform(f * g, M)
              == substitute_monomial_transform(f, M) * substitute_monomial_transform(g, M));
    }
}

TEST_CASE("transform from a kernel basis eliminates the parameters")
{
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> entry(-4, 4);
    int tested = 0;
    while (tested < 40) {
        const int n = 4;
        const int k = 2;
        IntMatrix a(k, n);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < n; ++j)
                a(i, j) = entry(rng);
        if (rank(a) < k)
            continue;
        ++tested;
        const UnimodularTransform t = build_unimodular_transform(kernel_basis(a), n);
        for (int i = 0; i < k; ++i) {
            Exponent e(n);
            for (int j = 0; j < n; ++j)
                e[static_cast<std::size_t>(j)] = to_int64(a(i, j));
            CyclotomicPoly f = CyclotomicPoly::monomial(e, Cyclotomic(1L));
            f.add_term(Exponent(n, 0), Cyclotomic(-2L));
            try {
                const auto g = substitute_monomial_transform(f, t);
                for (const auto& [b, c] : g.terms())
                    for (int p = 0; p < t.d; ++p)
                        CHECK(b[static_cast<std::size_t>(p)] == 0);
            } catch (const DomainError&) {
                // rational rows: only the parameter rows may be fractional
                CHECK(!t.integral());
            }
        }
    }
}

TEST_CASE("evaluation")
{
    const auto F = parse_system("x0*x1 - 1; x0 + x1;");
    CHECK(evaluate(F[0], {Cyclotomic(1L), Cyclotomic(1L)}).is_zero());
    const Cyclotomic u = Cyclotomic::root_of_unity(1, 3);
    const Cyclotomic s = evaluate(F[1], {Cyclotomic(1L), u});
    CHECK_FALSE(s.is_zero());
    CHECK(s == Cyclotomic(1L) + u);
    CHECK_THROWS_AS(evaluate(parse_system("x0^-1;")[0], {Cyclotomic(0L)}), DomainError);

    // the three-block representation with all free values equal to one
    std::vector<Cyclotomic> point;
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            point.push_back(u.pow(k));
    for (const auto& r : evaluate_system(cyclic_system(9), point))
        CHECK(r.is_zero());

    const ComplexSystem C = convert_coefficients<Complex>(F);
    CHECK(is_zero(evaluate(C[0], {Complex(2.0), Complex(0.5)})));
}

TEST_CASE("cyclic systems")
{
    const auto c4 = cyclic_system(4);
    CHECK(c4[1] == parse_system("x0*x1 + x1*x2 + x2*x3 + x3*x0;")[0]);
    const auto c2 = cyclic_system(2);
    CHECK(c2 == parse_system("x0 + x1; x0*x1 - 1;"));
    const auto c9 = cyclic_system(9);
    CHECK(c9.size() == 9);
    CHECK(c9[8] == parse_system("x0*x1*x2*x3*x4*x5*x6*x7*x8 - 1;")[0]);
    for (std::size_t k = 0; k + 1 < 9; ++k)
        CHECK(c9[k].size() == 9);
    CHECK_THROWS_AS(cyclic_system(1), DomainError);
}
