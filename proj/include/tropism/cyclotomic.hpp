/**
 * Exact arithmetic in cyclotomic fields Q(zeta_m).
 *
 * An element stores its order m and rational coordinates on the power basis
 * 1, z, ..., z^{phi(m)-1}, reduced modulo the m-th cyclotomic polynomial, so
 * equality to zero is decided exactly.  Binary operations on elements of
 * different orders first embed both operands into Q(zeta_lcm).
 */

#ifndef TROPISM_CYCLOTOMIC_HPP
#define TROPISM_CYCLOTOMIC_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "tropism/scalar.hpp"

namespace tropism {

/// Coefficients of the m-th cyclotomic polynomial, lowest degree first (cached).
const std::vector<long long>& cyclotomic_polynomial(long m);

long euler_phi(long m);

class Cyclotomic
{
public:
    Cyclotomic();
    Cyclotomic(long value);  // NOLINT: implicit from integers is intended
    Cyclotomic(const BigInt& value);  // NOLINT
    Cyclotomic(const Rational& value);  // NOLINT

    /// Element of order m from coordinates on the power basis (reduced on entry).
    Cyclotomic(long order, std::vector<Rational> coords);

    /// zeta_m^k, stored at the reduced order m / gcd(k, m).
    static Cyclotomic root_of_unity(long k, long m);

    long order() const { return order_; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_rational() const;
    /// Throws DomainError unless is_rational().
    Rational rational_value() const;

    /// Same value expressed in Q(zeta_target); target must be a multiple of order().
    Cyclotomic embed(long target) const;

    Cyclotomic inverse() const;
    Cyclotomic pow(long long e) const;
    /// Image under the automorphism zeta -> zeta^j (gcd(j, order) = 1).
    Cyclotomic galois(long j) const;
    Cyclotomic conjugate() const;
    /// Field norm down to Q.
    Rational norm() const;

    std::complex<double> to_complex() const;

    /**
     * Write the value as r * zeta_N^k with r > 0 rational, when possible.
     * N is the order (doubled when odd, so that -1 is covered).
     */
    struct ScaledRoot
    {
        Rational scale;
        long k = 0;
        long n = 1;
    };
    std::optional<ScaledRoot> as_scaled_root_of_unity() const;

    /**
     * All e-th roots, exactly, when the value is a root of unity times a
     * rational with a rational e-th root; nullopt otherwise.
     */
    std::optional<std::vector<Cyclotomic>> exact_roots(long e) const;

    /// Text in terms of u = zeta_print_order; print_order must be a multiple of order().
    std::string str(long print_order) const;
    std::string str() const { return str(order_); }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a);
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

private:
    void reduce();
    void shrink_if_rational();

    long order_ = 1;
    std::vector<Rational> coords_;
};

inline bool is_zero(const Cyclotomic& x) { return x.is_zero(); }

long lcm_order(long a, long b);

/// Deterministic sort key: power-basis coordinates over the common order.
std::string ordering_key(const std::vector<Cyclotomic>& point);

} // namespace tropism

namespace Eigen {

template <>
struct NumTraits<tropism::Cyclotomic> : GenericNumTraits<tropism::Cyclotomic>
{
    using Real = tropism::Cyclotomic;
    using NonInteger = tropism::Cyclotomic;
    using Nested = tropism::Cyclotomic;
    using Literal = tropism::Cyclotomic;
    enum
    {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 50,
        MulCost = 200
    };
    static inline int digits10() { return 0; }
};

} // namespace Eigen

#endif // TROPISM_CYCLOTOMIC_HPP
