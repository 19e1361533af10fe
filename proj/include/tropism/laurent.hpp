/**
 * Sparse multivariate Laurent polynomials and systems of them.
 *
 * Terms are kept in a map from exponent vector to nonzero coefficient, so the
 * key set is the support.  The coefficient type is a template parameter; the
 * library instantiates it with Cyclotomic (exact) and Complex.
 */

#ifndef TROPISM_LAURENT_HPP
#define TROPISM_LAURENT_HPP

#include <map>
#include <string>
#include <vector>

#include "tropism/coefficient.hpp"
#include "tropism/linalg.hpp"

namespace tropism {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw DomainError("exponent overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw DomainError("exponent overflow");
    return r;
}

inline std::int64_t dot(const Exponent& a, const Exponent& b)
{
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s = checked_add(s, checked_mul(a[i], b[i]));
    return s;
}

/// Graded order used for printing: higher total degree first, then lex descending.
inline bool graded_before(const Exponent& a, const Exponent& b)
{
    std::int64_t da = 0;
    std::int64_t db = 0;
    for (auto e : a)
        da += e;
    for (auto e : b)
        db += e;
    if (da != db)
        return da > db;
    return a > b;
}

template <typename C>
class LaurentPolynomial
{
public:
    using Terms = std::map<Exponent, C>;

    LaurentPolynomial() = default;
    explicit LaurentPolynomial(std::size_t nvars) : nvars_(nvars) {}

    static LaurentPolynomial constant(std::size_t nvars, const C& c)
    {
        return monomial(Exponent(nvars, 0), c);
    }

    static LaurentPolynomial monomial(const Exponent& e, const C& c)
    {
        LaurentPolynomial p(e.size());
        p.add_term(e, c);
        return p;
    }

    static LaurentPolynomial variable(std::size_t nvars, std::size_t i)
    {
        Exponent e(nvars, 0);
        e[i] = 1;
        return monomial(e, C(1L));
    }

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c x^e, combining like terms and dropping zeros.
    void add_term(const Exponent& e, const C& c)
    {
        if (e.size() != nvars_)
            throw DomainError("exponent length does not match the number of variables");
        if (tropism::is_zero(c))
            return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second = it->second + c;
        if (tropism::is_zero(it->second))
            terms_.erase(it);
    }

    std::vector<Exponent> support() const
    {
        std::vector<Exponent> out;
        out.reserve(terms_.size());
        for (const auto& [e, c] : terms_)
            out.push_back(e);
        return out;
    }

    C coefficient(const Exponent& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? C(0L) : it->second;
    }

    LaurentPolynomial& operator+=(const LaurentPolynomial& o)
    {
        check_same(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }

    LaurentPolynomial& operator-=(const LaurentPolynomial& o)
    {
        check_same(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }

    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }

    friend LaurentPolynomial operator-(const LaurentPolynomial& a)
    {
        LaurentPolynomial out(a.nvars_);
        for (const auto& [e, c] : a.terms_)
            out.terms_.emplace(e, -c);
        return out;
    }

    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b)
    {
        a.check_same(b);
        LaurentPolynomial out(a.nvars_);
        Exponent e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = checked_add(ea[i], eb[i]);
                out.add_term(e, ca * cb);
            }
        return out;
    }

    friend LaurentPolynomial operator*(const C& s, const LaurentPolynomial& a)
    {
        LaurentPolynomial out(a.nvars_);
        for (const auto& [e, c] : a.terms_)
            out.add_term(e, s * c);
        return out;
    }

    LaurentPolynomial pow(unsigned k) const
    {
        LaurentPolynomial result = constant(nvars_, C(1L));
        for (unsigned i = 0; i < k; ++i)
            result = result * *this;
        return result;
    }

    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPolynomial& a, const LaurentPolynomial& b) { return !(a == b); }

private:
    void check_same(const LaurentPolynomial& o) const
    {
        if (o.nvars_ != nvars_)
            throw DomainError("polynomials in different numbers of variables");
    }

    std::size_t nvars_ = 0;
    Terms terms_;
};

inline std::vector<std::string> default_variable_names(std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back("x" + std::to_string(i));
    return names;
}

template <typename C>
struct PolySystem
{
    std::size_t nvars = 0;
    std::vector<LaurentPolynomial<C>> polys;
    std::vector<std::string> names;

    PolySystem() = default;
    PolySystem(std::size_t n, std::vector<LaurentPolynomial<C>> ps, std::vector<std::string> vars = {})
        : nvars(n), polys(std::move(ps)), names(vars.empty() ? default_variable_names(n) : std::move(vars))
    {
        for (const auto& p : polys)
            if (p.nvars() != nvars)
                throw DomainError("polynomial does not match the system's number of variables");
        if (names.size() != nvars)
            throw DomainError("variable name count does not match");
    }

    std::size_t size() const { return polys.size(); }
    const LaurentPolynomial<C>& operator[](std::size_t i) const { return polys[i]; }

    friend bool operator==(const PolySystem& a, const PolySystem& b)
    {
        return a.nvars == b.nvars && a.polys == b.polys;
    }
};

using CyclotomicPoly = LaurentPolynomial<Cyclotomic>;
using CyclotomicSystem = PolySystem<Cyclotomic>;
using ComplexPoly = LaurentPolynomial<Complex>;
using ComplexSystem = PolySystem<Complex>;

template <typename C>
std::vector<Exponent> support(const LaurentPolynomial<C>& f)
{
    return f.support();
}

/// Integer power with negative exponents; a zero base with a negative exponent throws.
template <typename C>
C power(const C& base, std::int64_t e)
{
    if (e < 0) {
        if (is_zero(base))
            throw DomainError("zero coordinate raised to a negative power");
        return power(C(1L) / base, -e);
    }
    C result(1L);
    C b = base;
    while (e > 0) {
        if (e & 1)
            result = result * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return result;
}

template <typename C>
C evaluate(const LaurentPolynomial<C>& f, const std::vector<C>& point)
{
    if (point.size() != f.nvars())
        throw DomainError("point has the wrong number of coordinates");
    C total(0L);
    for (const auto& [e, c] : f.terms()) {
        C term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0)
                term = term * power(point[i], e[i]);
        total = total + term;
    }
    return total;
}

template <typename C>
std::vector<C> evaluate_system(const PolySystem<C>& F, const std::vector<C>& point)
{
    std::vector<C> out;
    out.reserve(F.size());
    for (const auto& f : F.polys)
        out.push_back(evaluate(f, point));
    return out;
}

/**
 * Monomial map x_j = prod_i y_i^{M(i,j)}: x^a becomes y^b with b_i = <a, row i of M>.
 * Every resulting exponent must be an integer.
 */
template <typename C>
LaurentPolynomial<C> substitute_monomial_transform(const LaurentPolynomial<C>& f, const RatMatrix& M)
{
    if (static_cast<std::size_t>(M.cols()) != f.nvars())
        throw DomainError("transform dimension does not match the polynomial");
    LaurentPolynomial<C> out(static_cast<std::size_t>(M.rows()));
    Exponent b(static_cast<std::size_t>(M.rows()));
    for (const auto& [a, c] : f.terms()) {
        for (Eigen::Index i = 0; i < M.rows(); ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < a.size(); ++j)
                if (a[j] != 0)
                    s += Rational(a[j]) * M(i, static_cast<Eigen::Index>(j));
            if (!is_integer(s))
                throw DomainError("fractional exponent " + s.str() + " for y" + std::to_string(i));
            b[static_cast<std::size_t>(i)] = to_int64(s);
        }
        out.add_term(b, c);
    }
    return out;
}

template <typename C>
LaurentPolynomial<C> substitute_monomial_transform(const LaurentPolynomial<C>& f, const UnimodularTransform& t)
{
    return substitute_monomial_transform(f, t.M);
}

template <typename C, typename Transform>
PolySystem<C> substitute_monomial_transform(const PolySystem<C>& F, const Transform& t)
{
    std::vector<LaurentPolynomial<C>> polys;
    for (const auto& f : F.polys)
        polys.push_back(substitute_monomial_transform(f, t));
    const std::size_t n = polys.empty() ? F.nvars : polys.front().nvars();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back("y" + std::to_string(i));
    return PolySystem<C>(n, std::move(polys), names);
}

/// The cyclic n-roots system: consecutive-product sums of length 1..n-1, then x0...x{n-1} - 1.
template <typename C = Cyclotomic>
PolySystem<C> cyclic_system(std::size_t n)
{
    if (n < 2)
        throw DomainError("cyclic system needs n >= 2");
    std::vector<LaurentPolynomial<C>> polys;
    for (std::size_t k = 1; k < n; ++k) {
        LaurentPolynomial<C> f(n);
        for (std::size_t start = 0; start < n; ++start) {
            Exponent e(n, 0);
            for (std::size_t j = 0; j < k; ++j)
                e[(start + j) % n] = 1;
            f.add_term(e, C(1L));
        }
        polys.push_back(std::move(f));
    }
    LaurentPolynomial<C> last(n);
    last.add_term(Exponent(n, 1), C(1L));
    last.add_term(Exponent(n, 0), C(-1L));
    polys.push_back(std::move(last));
    return PolySystem<C>(n, std::move(polys));
}

template <typename To, typename From>
LaurentPolynomial<To> convert_coefficients(const LaurentPolynomial<From>& f)
{
    LaurentPolynomial<To> out(f.nvars());
    for (const auto& [e, c] : f.terms())
        out.add_term(e, CoefficientTraits<To>::from_cyclotomic(c));
    return out;
}

template <typename To, typename From>
PolySystem<To> convert_coefficients(const PolySystem<From>& F)
{
    std::vector<LaurentPolynomial<To>> polys;
    for (const auto& f : F.polys)
        polys.push_back(convert_coefficients<To>(f));
    return PolySystem<To>(F.nvars, std::move(polys), F.names);
}

/// lcm of the coefficient orders, the u-order needed to print the system.
template <typename C>
long root_order(const PolySystem<C>& F)
{
    long l = 1;
    for (const auto& f : F.polys)
        for (const auto& [e, c] : f.terms())
            l = lcm_order(l, CoefficientTraits<C>::order(c));
    return l;
}

} // namespace tropism

#endif // TROPISM_LAURENT_HPP
