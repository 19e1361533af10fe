/**
 * The two coefficient domains: exact cyclotomic rationals and double
 * precision complex numbers with a zero tolerance.
 */

#ifndef TROPISM_COEFFICIENT_HPP
#define TROPISM_COEFFICIENT_HPP

#include <complex>
#include <cstdio>
#include <string>

#include "tropism/cyclotomic.hpp"

namespace tropism {

using Complex = std::complex<double>;

/// Magnitude at or below which a Complex counts as zero (default 1e-10).
inline double& complex_zero_tolerance()
{
    static double tol = 1e-10;
    return tol;
}

inline bool is_zero(const Complex& z)
{
    return std::abs(z) <= complex_zero_tolerance();
}

template <typename C>
struct CoefficientTraits;

template <>
struct CoefficientTraits<Cyclotomic>
{
    static constexpr bool exact = true;
    static Cyclotomic from_rational(const Rational& r) { return Cyclotomic(r); }
    static Cyclotomic from_cyclotomic(const Cyclotomic& c) { return c; }
    static Complex to_complex(const Cyclotomic& c) { return c.to_complex(); }
    static long order(const Cyclotomic& c) { return c.order(); }
    static double magnitude(const Cyclotomic& c) { return std::abs(c.to_complex()); }
    static std::string str(const Cyclotomic& c, long root_order) { return c.str(root_order); }
    /// True when printing needs parentheses as a factor.
    static bool compound(const Cyclotomic& c, long root_order)
    {
        const std::string s = c.str(root_order);
        return s.find(' ') != std::string::npos;
    }
};

template <>
struct CoefficientTraits<Complex>
{
    static constexpr bool exact = false;
    static Complex from_rational(const Rational& r) { return {r.convert_to<double>(), 0.0}; }
    static Complex from_cyclotomic(const Cyclotomic& c) { return c.to_complex(); }
    static Complex to_complex(const Complex& c) { return c; }
    static long order(const Complex&) { return 1; }
    static double magnitude(const Complex& c) { return std::abs(c); }
    static std::string str(const Complex& c, long = 1)
    {
        char buf[96];
        if (c.imag() == 0)
            std::snprintf(buf, sizeof buf, "%.17g", c.real());
        else
            std::snprintf(buf, sizeof buf, "%.17g%+.17g*i", c.real(), c.imag());
        return buf;
    }
    static bool compound(const Complex& c, long = 1) { return c.imag() != 0; }
};

} // namespace tropism

#endif // TROPISM_COEFFICIENT_HPP
