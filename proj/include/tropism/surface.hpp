/**
 * Exact consequences of monomial parametrizations: Backelin sets of cyclic
 * m^2-roots, degrees via random hyperplane sections, and orbits under the
 * cyclic and reflected variable orderings.
 */

#ifndef TROPISM_SURFACE_HPP
#define TROPISM_SURFACE_HPP

#include <cstdint>
#include <vector>

#include "tropism/polytope.hpp"
#include "tropism/puiseux.hpp"

namespace tropism {

/// x_j = coef[j] * t^exps[j] with d parameters and integer exponents.
struct MonomialParametrization
{
    std::size_t d = 0;
    std::vector<Cyclotomic> coef;
    std::vector<Exponent> exps;

    std::size_t n() const { return coef.size(); }
    long root_order() const;
    /// Throws DomainError when a coefficient is zero or an exponent has the wrong length.
    void validate() const;
    friend bool operator==(const MonomialParametrization& a, const MonomialParametrization& b)
    {
        return a.d == b.d && a.coef == b.coef && a.exps == b.exps;
    }
};

/**
 * x_{km+j} = u_k t_0 ... t_j for j < m-1 and
 * x_{km+m-1} = u_k t_0^{-m+1} t_1^{-m+2} ... t_{m-2}^{-1}, u_k = exp(2 pi i k/m).
 */
MonomialParametrization backelin_set(long m);

/// Leading terms of an exact development with integer exponents.
MonomialParametrization from_development(const PuiseuxDevelopment& dev);

/// F at the parametrization, as Laurent polynomials in t_0 .. t_{d-1}.
CyclotomicSystem substitute(const CyclotomicSystem& F, const MonomialParametrization& p);

/// True iff every polynomial of F vanishes identically on p.
bool satisfies(const CyclotomicSystem& F, const MonomialParametrization& p);

/**
 * Number of points cut out by d random hyperplanes.  The coordinates share
 * at most d+1 distinct monomials; with exactly d+1 the hyperplanes are
 * linear forms, with d a constant term is added.  Row reduction of the
 * coefficient matrix gives the binomial system t^A = c and the result is
 * |det A|.  Coefficients are rationals in [-1e6, 1e6] from a generator seeded
 * with `seed`; degenerate draws are retried up to 8 times.
 */
std::int64_t degree_of_parametrization(const MonomialParametrization& p, std::uint64_t seed = 0);

/// The same set up to a change of parameters: equal subtorus and equal coset.
bool same_component(const MonomialParametrization& a, const MonomialParametrization& b);

/// Coordinates relabelled by x'_{perm[i]} = x_i.
MonomialParametrization permute(const MonomialParametrization& p, const Permutation& perm);

/// Forward shifts and their reflections i -> -i on n = m^2 indices.
std::vector<Permutation> dihedral_orderings(std::size_t n);

/// Distinct components among the images of p under the given orderings.
std::vector<MonomialParametrization> orbit_expansion(const MonomialParametrization& p,
                                                     const std::vector<Permutation>& orderings);

/// Orbit under forward and backward shifts; p must live in m^2 variables.
std::vector<MonomialParametrization> orbit_expansion(const MonomialParametrization& p, long m);

} // namespace tropism

#endif // TROPISM_SURFACE_HPP
