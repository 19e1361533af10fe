#include "doctest.h"

#include <random>
#include <set>

#include "tropism/initial.hpp"
#include "tropism/parser.hpp"
#include "tropism/polytope.hpp"

using namespace tropism;

namespace {

const Exponent kU{1, 1, -2, 1, 1, -2, 1, 1, -2};
const Exponent kV{0, 1, -1, 0, 1, -1, 0, 1, -1};

Cyclotomic zeta(long k, long m)
{
    return Cyclotomic::root_of_unity(k, m);
}

// The cyclic 9-roots representation with a primitive cube root u, at t0 = t1 = 1.
std::vector<Cyclotomic> cyclic9_point()
{
    const Cyclotomic one(1L);
    const Cyclotomic u = zeta(1, 3);
    const Cyclotomic u2 = zeta(2, 3);
    return {one, one, u2, u, u, one, u2, u2, u};
}

CyclotomicSystem transformed_cyclic9_initial()
{
    const auto F = cyclic_system(9);
    IntMatrix B(2, 9);
    for (int j = 0; j < 9; ++j) {
        B(0, j) = kU[static_cast<std::size_t>(j)];
        B(1, j) = kV[static_cast<std::size_t>(j)];
    }
    const auto t = build_unimodular_transform(B, 9);
    return drop_parameters(substitute_monomial_transform(initial_form_system(F, {kU, kV}), t), 2);
}

std::set<std::string> keys(const std::vector<SolutionPoint>& pts)
{
    std::set<std::string> out;
    for (const auto& p : pts) {
        std::string k;
        for (const auto& x : p.coords)
            k += x.str(12) + ";";
        out.insert(k);
    }
    return out;
}

} // namespace

TEST_CASE("grid search recovers the cyclic 9-roots leading coefficients")
{
    const auto G = transformed_cyclic9_initial();
    CHECK(G.nvars == 7);
    CHECK(G.size() == 9);

    SolverConfig cfg;
    cfg.root_order = 3;
    const auto pts = solve_initial_form(G, cfg);
    REQUIRE_FALSE(pts.empty());
    MESSAGE("grid solutions on the cube-root torus: " << pts.size());

    // With t0 = t1 = 1 the transform is the identity on x2..x8, so the
    // expected point is the tail of the representation.
    const auto x = cyclic9_point();
    const std::vector<Cyclotomic> expected(x.begin() + 2, x.end());
    bool found = false;
    for (const auto& p : pts) {
        CHECK(p.exact);
        CHECK(verify_point(G, p.coords).all_zero());
        found = found || p.coords == expected;
    }
    CHECK(found);

    SolverConfig threaded = cfg;
    threaded.threads = 4;
    const auto again = solve_initial_form(G, threaded);
    REQUIRE(again.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(again[i].coords == pts[i].coords);
}

TEST_CASE("binomial dispatch on the reduced binomial example")
{
    const auto G = parse_system("vars: y2, y3; y2^2*y3 - 1; y2*y3 - 1;");
    const auto pts = solve_initial_form(G, SolverConfig{});
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].coords == std::vector<Cyclotomic>{Cyclotomic(1L), Cyclotomic(1L)});
    CHECK(pts[0].multiplicity == Multiplicity::Regular);
}

TEST_CASE("binomial and grid backends agree on binomial systems")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<int> root(0, 5);
    int compared = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
        std::vector<CyclotomicPoly> polys;
        for (std::size_t i = 0; i < n; ++i) {
            Exponent e(n);
            for (auto& x : e)
                x = entry(rng);
            CyclotomicPoly f = CyclotomicPoly::monomial(e, Cyclotomic(1L));
            f -= CyclotomicPoly::constant(n, zeta(root(rng), 6));
            polys.push_back(f);
        }
        const CyclotomicSystem F(n, polys);
        if (std::any_of(F.polys.begin(), F.polys.end(), [](const CyclotomicPoly& f) { return f.size() < 2; }))
            continue;
        SolverConfig binomial;
        binomial.backend = Backend::Binomial;
        std::vector<SolutionPoint> exact;
        try {
            exact = solve_initial_form(F, binomial);
        } catch (const DomainError&) {
            continue;  // singular exponent matrix
        }
        // every solution is a root of unity of order dividing 6 * |det|; restrict to order-6 cases
        bool small = std::all_of(exact.begin(), exact.end(), [](const SolutionPoint& p) {
            return std::all_of(p.coords.begin(), p.coords.end(), [](const Cyclotomic& x) { return 12 % x.order() == 0; });
        });
        if (!small)
            continue;
        SolverConfig grid;
        grid.backend = Backend::Grid;
        grid.root_order = 12;
        const auto searched = solve_initial_form(F, grid);
        CHECK(keys(exact) == keys(searched));
        ++compared;
    }
    CHECK(compared >= 5);
}

TEST_CASE("precondition and cap errors")
{
    const auto single = parse_system("x0*x1 - 1; x0^2;");
    CHECK_THROWS_WITH_AS(solve_initial_form(single, SolverConfig{}), doctest::Contains("fewer than two terms"),
                         DomainError);

    const auto G = transformed_cyclic9_initial();
    SolverConfig small;
    small.root_order = 3;
    small.max_grid = 1000;
    CHECK_THROWS_WITH_AS(solve_initial_form(G, small), doctest::Contains("exceeds the cap"), DomainError);

    const auto line = parse_system("x0*x1 - 1;");
    CHECK_THROWS_WITH_AS(solve_initial_form(line, SolverConfig{}), "positive-dimensional solution set", DomainError);

    CHECK_THROWS_AS(parse_backend("homotopy"), DomainError);
    CHECK(parse_backend(backend_name(Backend::Grid)) == Backend::Grid);
}

TEST_CASE("verify points of the cyclic systems")
{
    CHECK(verify_point(cyclic_system(9), cyclic9_point()).all_zero());

    // Backelin point for m = 4 at t = 1: x_{4k+j} = i^k
    std::vector<Cyclotomic> x16;
    for (long k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j)
            x16.push_back(zeta(k, 4));
    CHECK(verify_point(cyclic_system(16), x16).all_zero());

    const auto ones = verify_point(cyclic_system(9), std::vector<Cyclotomic>(9, Cyclotomic(1L)));
    CHECK_FALSE(ones.all_zero());
    CHECK_FALSE(ones.zero[0]);
    CHECK(ones.residuals[0] == doctest::Approx(9.0));

    std::vector<Cyclotomic> with_zero = cyclic9_point();
    with_zero[3] = Cyclotomic(0L);
    CHECK_THROWS_AS(verify_point(cyclic_system(9), with_zero), DomainError);

    // floating point verification
    const auto C = convert_coefficients<Complex>(cyclic_system(9));
    std::vector<Complex> xc;
    for (const auto& v : cyclic9_point())
        xc.push_back(v.to_complex());
    const auto rep = verify_point(C, xc);
    CHECK_FALSE(rep.exact);
    CHECK(rep.all_zero());
    CHECK(rep.max_residual < 1e-12);
}

TEST_CASE("sphere example: z^2 - 1 after the transform")
{
    const auto G = parse_system("vars: z; z^3 - z; z^2 - 1; z^4 - 0.5*z^3 - z^2 + 0.5*z;");
    SolverConfig cfg;
    const auto pts = solve_initial_form(G, cfg);  // default order 2
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].coords[0] == Cyclotomic(1L));
    CHECK(pts[1].coords[0] == Cyclotomic(-1L));
}
