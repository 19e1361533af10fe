/**
 * Puiseux series developments of positive dimensional solution sets.
 *
 * For a pretropism cone: pick d tropisms, eliminate them with a unimodular
 * transform, solve the transformed initial form system, and turn each
 * solution into the leading term of a series
 *
 *   x_j = c_j t^{e_j} + (second term),
 *
 * where e_j is column j of the first d rows of M and c_j is the product of
 * the solution coordinates raised to the remaining rows.  Parameters t_i may
 * appear with rational powers; internally they are written t_i = s_i^L with
 * L the common row denominator so that all arithmetic is on integers.
 */

#ifndef TROPISM_PUISEUX_HPP
#define TROPISM_PUISEUX_HPP

#include <optional>
#include <string>
#include <vector>

#include "tropism/initial.hpp"
#include "tropism/polytope.hpp"

namespace tropism {

using TropismBasis = std::vector<Exponent>;

/**
 * d tropisms spanning the same lattice as d generators of the cone.
 * Generators (rays, then +/- lineality) are sorted, the lexicographically
 * least independent d-subset is taken (with a positive-first generator
 * moved to the front in positive-first mode), and the subset is replaced by
 * the basis of its saturated lattice that is lower triangular in it:
 * row i is a positive combination of generators 0..i.  Throws when no
 * suitable subset exists.
 */
TropismBasis select_tropism_basis(const Cone& cone, std::size_t d, bool positive_first);

/// Lower-triangular basis with positive diagonal and reduced off-diagonal entries for the row lattice of N.
IntMatrix lower_hermite_basis(const IntMatrix& N);

IntMatrix to_matrix(const TropismBasis& rows);

struct SeriesTerm
{
    std::vector<Rational> exp;  // powers of t_0 .. t_{d-1}
    Cyclotomic coef;
    Complex numeric;
};

struct CoordinateSeries
{
    SeriesTerm leading;
    std::vector<SeriesTerm> second;  // empty when absent
};

/// Second term along the curve t_i = (gamma_i * sigma)^L.
struct CurveSecondTerm
{
    std::vector<Rational> direction;  // gamma
    std::int64_t order = 0;           // power of sigma of the correction (in s units)
    std::vector<Cyclotomic> delta;    // correction of each transformed unknown y_{d+l}
};

enum class DevelopmentStatus
{
    Exact,           // the leading term solves the whole system
    SecondTerm,      // second term in all parameters
    CurveSecondTerm, // second term only along a curve
    LeadingOnly,     // no second term found
    Numeric          // leading coefficients are floating point
};

std::string status_name(DevelopmentStatus s);

struct PuiseuxDevelopment
{
    TropismBasis tropisms;
    UnimodularTransform transform;
    bool exact_coefficients = true;
    std::vector<Cyclotomic> solution;  // y_d .. y_{n-1}, valid when exact_coefficients
    std::vector<Complex> numeric_solution;
    std::vector<CoordinateSeries> coords;
    bool exact = false;
    DevelopmentStatus status = DevelopmentStatus::LeadingOnly;
    std::optional<CurveSecondTerm> curve;
    /// Lowest-order terms left over when no second term was found.
    std::vector<std::string> residual_terms;

    std::size_t d() const { return tropisms.size(); }
    /// Common denominator L of the parameter powers.
    BigInt denominator() const;
    /// Least common multiple of the orders of the coefficients.
    long root_order() const;
};

/// Leading term of the series for one solution of the transformed initial form system.
PuiseuxDevelopment leading_development(const TropismBasis& tropisms, const UnimodularTransform& t,
                                       const SolutionPoint& solution);

/**
 * F at the leading term, as Laurent polynomials in s_0 .. s_{d-1}
 * (t_i = s_i^L).  Requires exact coefficients.
 */
CyclotomicSystem leading_residual(const CyclotomicSystem& F, const PuiseuxDevelopment& dev);

/// True iff the leading term makes every polynomial of F vanish identically.
bool leading_term_exact(const CyclotomicSystem& F, const PuiseuxDevelopment& dev, double tolerance = 1e-10);

struct DevelopConfig
{
    SolverConfig solver;
    bool positive_first = true;
    bool expand_orbits = false;
    /// Full multivariate second term after the curve test succeeds.
    bool multivariate_second_term = true;
    /// Cap on the number of unknowns of one second-term linear system.
    std::size_t max_unknowns = 4000;
    unsigned threads = 1;
};

/**
 * Compute a second term for a non-exact development.  Gaps between the two
 * lowest total degrees of each equation at the leading term are tried in
 * increasing order; for a gap g the unknowns are the coefficients of
 * corrections s^w, |w| = g, of the transformed unknowns, and the terms of
 * degree (lowest + g) give linear conditions on them.  The curve restriction
 * is tried first; the full ansatz only when it succeeds.  On failure the
 * development comes back with status LeadingOnly and residual_terms set.
 */
PuiseuxDevelopment second_term(const CyclotomicSystem& F, PuiseuxDevelopment dev, const DevelopConfig& cfg);

/**
 * Leading plus second term substituted into F, as Laurent polynomials in s
 * (exact coefficients only).  Used to check the cancellation of the two
 * lowest orders.
 */
CyclotomicSystem second_order_residual(const CyclotomicSystem& F, const PuiseuxDevelopment& dev);

struct Diagnostic
{
    std::vector<Exponent> rays;
    std::string reason;
};

struct DevelopResult
{
    std::vector<PuiseuxDevelopment> developments;
    std::vector<Diagnostic> diagnostics;
};

/// Steps 1 to 4 for one cone.
DevelopResult develop_cone(const CyclotomicSystem& F, const Cone& cone, std::size_t d, const DevelopConfig& cfg);

/// The whole pipeline over the pretropism cones (one per orbit unless expand_orbits).
DevelopResult develop(const CyclotomicSystem& F, std::size_t d, const DevelopConfig& cfg);

/// Root order used when the configuration leaves it open: m for shift-symmetric systems in m^2 variables.
long default_root_order(const CyclotomicSystem& F);

} // namespace tropism

#endif // TROPISM_PUISEUX_HPP
