/**
 * Solvers for initial form systems with all coordinates nonzero.
 *
 * Two backends: binomial systems go to the exact binomial solver, anything
 * else is searched on the torus of m-th roots of unity, each candidate
 * checked exactly in the cyclotomic field.
 */

#ifndef TROPISM_INITIAL_HPP
#define TROPISM_INITIAL_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "tropism/binomial.hpp"
#include "tropism/coefficient.hpp"
#include "tropism/laurent.hpp"

namespace tropism {

enum class Backend { Auto, Binomial, Grid };

Backend parse_backend(const std::string& name);
std::string backend_name(Backend b);

struct SolverConfig
{
    Backend backend = Backend::Auto;
    long root_order = 0;  // 0: let the caller's default apply
    std::uint64_t max_grid = 1000000;
    double tolerance = 1e-10;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

enum class Multiplicity { Unknown, Regular };

struct SolutionPoint
{
    bool exact = true;
    std::vector<Cyclotomic> coords;  // valid when exact
    std::vector<Complex> numeric;
    double residual = 0;  // max |f_i|; exactly 0 for exact points
    Multiplicity multiplicity = Multiplicity::Unknown;
};

struct ResidualReport
{
    bool exact = true;
    std::vector<bool> zero;         // per equation
    std::vector<double> residuals;  // |f_i| at the point
    double max_residual = 0;

    bool all_zero() const;
};

ResidualReport verify_point(const CyclotomicSystem& F, const std::vector<Cyclotomic>& point);
ResidualReport verify_point(const ComplexSystem& F, const std::vector<Complex>& point, double tolerance = 1e-10);
ResidualReport verify_point(const CyclotomicSystem& F, const SolutionPoint& p, double tolerance = 1e-10);

/**
 * Restrict a transformed initial form system to y_d, ..., y_{n-1}.  Every
 * term of an equation carries the same power of the first d variables (the
 * equation is an initial form for the eliminated directions); that common
 * monomial is divided out.  Throws when the powers differ.
 */
template <typename C>
PolySystem<C> drop_parameters(const PolySystem<C>& F, std::size_t d)
{
    if (d > F.nvars)
        throw DomainError("more parameters than variables");
    const std::size_t k = F.nvars - d;
    std::vector<LaurentPolynomial<C>> polys;
    for (const auto& f : F.polys) {
        LaurentPolynomial<C> g(k);
        for (const auto& [e, c] : f.terms()) {
            const auto& lead = f.terms().begin()->first;
            if (!std::equal(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(d), lead.begin()))
                throw DomainError("equation is not homogeneous in the parameters");
            g.add_term(Exponent(e.begin() + static_cast<std::ptrdiff_t>(d), e.end()), c);
        }
        polys.push_back(std::move(g));
    }
    std::vector<std::string> names(F.names.begin() + static_cast<std::ptrdiff_t>(d), F.names.end());
    return PolySystem<C>(k, std::move(polys), std::move(names));
}

/**
 * All solutions with nonzero coordinates found by the configured backend.
 * Every equation needs at least two terms.  Auto uses the binomial solver
 * when every equation is a binomial and the grid otherwise.  Results are
 * sorted canonically and verified.  A binomial system with a positive
 * dimensional solution set raises DomainError("positive-dimensional").
 */
std::vector<SolutionPoint> solve_initial_form(const CyclotomicSystem& F, const SolverConfig& cfg);

/// Exact Jacobian rank test: Regular when the Jacobian has full column rank.
Multiplicity classify(const CyclotomicSystem& F, const std::vector<Cyclotomic>& point);

} // namespace tropism

#endif // TROPISM_INITIAL_HPP
