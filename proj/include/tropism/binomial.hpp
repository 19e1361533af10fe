/**
 * Binomial systems x^A = c.
 *
 * A full-rank k x n system has a d = n - k dimensional solution set, given by
 * a monomial transform x = y^M whose first d coordinates are free parameters
 * and finitely many values of the last k coordinates.  Those values solve a
 * square binomial system, which is diagonalised with a Smith form and solved
 * by root extraction.
 */

#ifndef TROPISM_BINOMIAL_HPP
#define TROPISM_BINOMIAL_HPP

#include <iterator>
#include <vector>

#include "tropism/coefficient.hpp"
#include "tropism/laurent.hpp"
#include "tropism/linalg.hpp"

namespace tropism {

template <typename C>
struct BinomialSystem
{
    IntMatrix A;  // k x n, row i is the exponent of equation i
    std::vector<C> c;
};

/**
 * Read x^a - c = 0 off a system with exactly two terms per equation:
 * c0 x^p + c1 x^q becomes x^(p - q) = -c1 / c0, with p the term printed
 * first (higher degree).
 */
template <typename C>
BinomialSystem<C> binomial_system(const PolySystem<C>& F)
{
    BinomialSystem<C> out;
    out.A = IntMatrix(static_cast<Eigen::Index>(F.size()), static_cast<Eigen::Index>(F.nvars));
    for (std::size_t i = 0; i < F.size(); ++i) {
        const auto& f = F.polys[i];
        if (f.size() != 2)
            throw DomainError("equation " + std::to_string(i) + " has " + std::to_string(f.size()) +
                              " terms; a binomial system needs exactly two");
        auto first = f.terms().begin();
        auto second = std::next(first);
        if (graded_before(second->first, first->first))
            std::swap(first, second);
        const auto& [p, c0] = *first;
        const auto& [q, c1] = *second;
        for (std::size_t j = 0; j < F.nvars; ++j)
            out.A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = p[j] - q[j];
        out.c.push_back(C(0L) - c1 / c0);
    }
    return out;
}

/// Solutions of a square system; points are always filled, exact_points only when exact.
struct PointSet
{
    bool exact = true;
    std::vector<std::vector<Cyclotomic>> exact_points;
    std::vector<std::vector<Complex>> points;

    std::size_t size() const { return points.size(); }
};

/**
 * All |det A| solutions of y^A = c for square nonsingular A.  With U A V = S,
 * z_l^{s_l} = prod_i c_i^{U(l,i)} and y_j = prod_l z_l^{V(j,l)}.  Exact roots
 * are taken when every right-hand side is a root of unity times a rational
 * with a rational root; otherwise the points are computed in floating point.
 */
PointSet solve_square_binomial(const IntMatrix& A, const std::vector<Cyclotomic>& c);
PointSet solve_square_binomial(const IntMatrix& A, const std::vector<Complex>& c);

struct ParametricSolutionSet
{
    UnimodularTransform transform;
    Eigen::Index d = 0;
    /// Exponents of the last k transformed variables, one row per equation.
    IntMatrix residual;
    /// Values of y_d, ..., y_{n-1}.
    PointSet solutions;
};

ParametricSolutionSet solve_binomial(const BinomialSystem<Cyclotomic>& sys);
ParametricSolutionSet solve_binomial(const BinomialSystem<Complex>& sys);

/**
 * x = y^M with y_i = s_i^{den_i} for the parameters (so fractional powers
 * become integral in s) and y_{d+j} = tail[j].
 */
template <typename C>
std::vector<C> evaluate_transform(const UnimodularTransform& t, const std::vector<C>& s, const std::vector<C>& tail)
{
    const auto d = static_cast<std::size_t>(t.d);
    const auto n = static_cast<std::size_t>(t.n);
    if (s.size() != d || tail.size() != n - d)
        throw DomainError("parameter or point has the wrong length");
    std::vector<C> x(n, C(1L));
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Index r = static_cast<Eigen::Index>(i);
        const C& base = i < d ? s[i] : tail[i - d];
        const Rational scale = i < d ? Rational(t.denominators[i]) : Rational(1);
        for (std::size_t j = 0; j < n; ++j) {
            const Rational e = t.M(r, static_cast<Eigen::Index>(j)) * scale;
            if (e != 0)
                x[j] = x[j] * power(base, to_int64(e));
        }
    }
    return x;
}

} // namespace tropism

#endif // TROPISM_BINOMIAL_HPP
