/**
 * Exact scalar types and the dense Eigen matrix aliases built on them.
 *
 * Every matrix in the library is an Eigen dense matrix templated on one of
 * these scalars; no floating-point value ever enters the exact paths.
 */

#ifndef TROPISM_SCALAR_HPP
#define TROPISM_SCALAR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace tropism {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rational>;
using IntVector = Vector<BigInt>;
using RatVector = Vector<Rational>;

/// Exponent vectors and small ray generators use machine integers.
using Exponent = std::vector<std::int64_t>;

/// Raised by exact-arithmetic routines on invalid input (singular, rank deficient, ...).
class DomainError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline BigInt gcd(const BigInt& a, const BigInt& b)
{
    return boost::multiprecision::gcd(a, b);
}

inline BigInt lcm(const BigInt& a, const BigInt& b)
{
    if (a == 0 || b == 0)
        return BigInt(0);
    return boost::multiprecision::abs(a / gcd(a, b) * b);
}

inline std::int64_t to_int64(const BigInt& value)
{
    if (value > BigInt(INT64_MAX) || value < BigInt(INT64_MIN))
        throw DomainError("integer does not fit in 64 bits: " + value.str());
    return value.convert_to<std::int64_t>();
}

inline std::int64_t to_int64(const Rational& value)
{
    if (boost::multiprecision::denominator(value) != 1)
        throw DomainError("expected an integer, got " + value.str());
    return to_int64(BigInt(boost::multiprecision::numerator(value)));
}

inline bool is_integer(const Rational& value)
{
    return boost::multiprecision::denominator(value) == 1;
}

/// Decimal string for integers, "p/q" for proper rationals.
inline std::string to_string(const Rational& value)
{
    return value.str();
}

inline std::string to_string(const BigInt& value)
{
    return value.str();
}

/// Divide every entry of an integer vector by the gcd of its entries (sign kept).
template <typename Derived>
IntVector primitive(const Eigen::MatrixBase<Derived>& v)
{
    BigInt g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        g = gcd(g, BigInt(v(i)));
    IntVector out = v;
    if (g > 1)
        for (Eigen::Index i = 0; i < out.size(); ++i)
            out(i) /= g;
    return out;
}

template <typename To, typename From>
Matrix<To> cast_matrix(const Eigen::MatrixBase<From>& m)
{
    Matrix<To> out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(i, j) = To(m(i, j));
    return out;
}

inline IntMatrix to_int_matrix(const std::vector<std::vector<long long>>& rows)
{
    const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index c = r ? static_cast<Eigen::Index>(rows.front().size()) : 0;
    IntMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
        if (static_cast<Eigen::Index>(rows[i].size()) != c)
            throw DomainError("ragged matrix literal");
        for (Eigen::Index j = 0; j < c; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

} // namespace tropism

#endif // TROPISM_SCALAR_HPP
