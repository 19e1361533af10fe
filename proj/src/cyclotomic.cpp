#include "tropism/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace tropism {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

// p mod q, q nonzero; returns (quotient, remainder)
std::pair<Poly, Poly> divmod(Poly p, const Poly& q)
{
    trim(p);
    Poly quot;
    if (p.size() < q.size())
        return {quot, p};
    quot.assign(p.size() - q.size() + 1, Rational(0));
    const Rational lead = q.back();
    for (std::size_t i = p.size(); i-- >= q.size();) {
        if (p[i] == 0)
            continue;
        const Rational f = p[i] / lead;
        quot[i - (q.size() - 1)] = f;
        for (std::size_t j = 0; j < q.size(); ++j)
            p[i - (q.size() - 1) + j] -= f * q[j];
        if (i == q.size() - 1)
            break;
    }
    trim(p);
    return {quot, p};
}

Poly mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty())
        return {};
    Poly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0)
                out[i + j] += a[i] * b[j];
    }
    return out;
}

Poly sub(const Poly& a, const Poly& b)
{
    Poly out(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] -= b[i];
    trim(out);
    return out;
}

long positive_mod(long long k, long m)
{
    long long r = k % m;
    return static_cast<long>(r < 0 ? r + m : r);
}

std::optional<BigInt> exact_integer_root(const BigInt& value, long e)
{
    if (value < 0)
        return std::nullopt;
    mpz_t root;
    mpz_init(root);
    const int exact = mpz_root(root, value.backend().data(), static_cast<unsigned long>(e));
    BigInt out;
    mpz_set(out.backend().data(), root);
    mpz_clear(root);
    if (!exact)
        return std::nullopt;
    return out;
}

} // namespace

long euler_phi(long m)
{
    long result = m;
    long x = m;
    for (long p = 2; p * p <= x; ++p) {
        if (x % p != 0)
            continue;
        while (x % p == 0)
            x /= p;
        result -= result / p;
    }
    if (x > 1)
        result -= result / x;
    return result;
}

long lcm_order(long a, long b)
{
    return a / std::gcd(a, b) * b;
}

const std::vector<long long>& cyclotomic_polynomial(long m)
{
    static std::mutex mutex;
    static std::map<long, std::vector<long long>> cache;
    if (m < 1)
        throw DomainError("cyclotomic order must be positive");
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(m);
        if (it != cache.end())
            return it->second;
    }
    // x^m - 1 divided by every Phi_d, d a proper divisor of m
    std::vector<long long> p(static_cast<std::size_t>(m) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(m)] = 1;
    for (long d = 1; d < m; ++d) {
        if (m % d != 0)
            continue;
        const auto& q = cyclotomic_polynomial(d);
        std::vector<long long> quot(p.size() - q.size() + 1, 0);
        for (std::size_t i = p.size(); i-- >= q.size();) {
            const long long f = p[i];  // q is monic
            quot[i - (q.size() - 1)] = f;
            if (f != 0)
                for (std::size_t j = 0; j < q.size(); ++j)
                    p[i - (q.size() - 1) + j] -= f * q[j];
            if (i == q.size() - 1)
                break;
        }
        p = std::move(quot);
    }
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(m, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic() : coords_{Rational(0)} {}

Cyclotomic::Cyclotomic(long value) : coords_{Rational(value)} {}

Cyclotomic::Cyclotomic(const BigInt& value) : coords_{Rational(value)} {}

Cyclotomic::Cyclotomic(const Rational& value) : coords_{value} {}

Cyclotomic::Cyclotomic(long order, std::vector<Rational> coords) : order_(order), coords_(std::move(coords))
{
    if (order_ < 1)
        throw DomainError("cyclotomic order must be positive");
    reduce();
}

Cyclotomic Cyclotomic::root_of_unity(long k, long m)
{
    if (m < 1)
        throw DomainError("root of unity order must be positive");
    long r = positive_mod(k, m);
    const long g = std::gcd(r, m);
    const long order = m / g;
    r /= g;
    std::vector<Rational> coords(static_cast<std::size_t>(r) + 1, Rational(0));
    coords[static_cast<std::size_t>(r)] = 1;
    return Cyclotomic(order, std::move(coords));
}

void Cyclotomic::reduce()
{
    const auto& phi = cyclotomic_polynomial(order_);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = coords_.size(); i-- > deg;) {
        const Rational c = coords_[i];
        if (c == 0)
            continue;
        for (std::size_t j = 0; j < deg; ++j)
            if (phi[j] != 0)
                coords_[i - deg + j] -= c * phi[j];
        coords_[i] = 0;
    }
    coords_.resize(deg, Rational(0));
    shrink_if_rational();
}

void Cyclotomic::shrink_if_rational()
{
    if (order_ == 1)
        return;
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0)
            return;
    const Rational c = coords_.empty() ? Rational(0) : coords_[0];
    order_ = 1;
    coords_.assign(1, c);
}

bool Cyclotomic::is_zero() const
{
    for (const auto& c : coords_)
        if (c != 0)
            return false;
    return true;
}

bool Cyclotomic::is_rational() const
{
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0)
            return false;
    return true;
}

Rational Cyclotomic::rational_value() const
{
    if (!is_rational())
        throw DomainError("cyclotomic value is not rational: " + str());
    return coords_[0];
}

Cyclotomic Cyclotomic::embed(long target) const
{
    if (target % order_ != 0)
        throw DomainError("cannot embed order " + std::to_string(order_) + " into " + std::to_string(target));
    if (target == order_)
        return *this;
    const std::size_t q = static_cast<std::size_t>(target / order_);
    std::vector<Rational> coords(coords_.size() * q + 1, Rational(0));
    for (std::size_t i = 0; i < coords_.size(); ++i)
        coords[i * q] = coords_[i];
    Cyclotomic out;
    out.order_ = target;
    out.coords_ = std::move(coords);
    out.reduce();
    // keep the requested order even when the value is rational
    if (out.order_ != target) {
        std::vector<Rational> c(static_cast<std::size_t>(euler_phi(target)), Rational(0));
        c[0] = out.coords_[0];
        out.order_ = target;
        out.coords_ = std::move(c);
    }
    return out;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b)
{
    if (a.order_ != b.order_) {
        const long l = lcm_order(a.order_, b.order_);
        return a.embed(l) + b.embed(l);
    }
    Cyclotomic out = a;
    for (std::size_t i = 0; i < out.coords_.size(); ++i)
        out.coords_[i] += b.coords_[i];
    out.shrink_if_rational();
    return out;
}

Cyclotomic operator-(const Cyclotomic& a)
{
    Cyclotomic out = a;
    for (auto& c : out.coords_)
        c = -c;
    return out;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b)
{
    return a + (-b);
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b)
{
    if (a.order_ == 1 || b.order_ == 1) {
        const Cyclotomic& scalar = a.order_ == 1 ? a : b;
        const Cyclotomic& other = a.order_ == 1 ? b : a;
        Cyclotomic out = other;
        for (auto& c : out.coords_)
            c *= scalar.coords_[0];
        out.shrink_if_rational();
        return out;
    }
    if (a.order_ != b.order_) {
        const long l = lcm_order(a.order_, b.order_);
        return a.embed(l) * b.embed(l);
    }
    Cyclotomic out;
    out.order_ = a.order_;
    out.coords_ = mul(a.coords_, b.coords_);
    out.reduce();
    return out;
}

Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b)
{
    return a * b.inverse();
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b)
{
    if (a.order_ == b.order_)
        return a.coords_ == b.coords_;
    return (a - b).is_zero();
}

Cyclotomic Cyclotomic::inverse() const
{
    if (is_zero())
        throw DomainError("division by zero");
    if (order_ == 1)
        return Cyclotomic(Rational(1) / coords_[0]);
    // extended Euclid: s * a + t * phi = 1
    const auto& phi_ll = cyclotomic_polynomial(order_);
    Poly phi(phi_ll.begin(), phi_ll.end());
    Poly r0 = phi;
    Poly r1 = coords_;
    trim(r1);
    Poly s0;
    Poly s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        Poly s2 = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant
    const Rational c = r0.front();
    for (auto& x : s0)
        x /= c;
    return Cyclotomic(order_, s0);
}

Cyclotomic Cyclotomic::pow(long long e) const
{
    if (e < 0)
        return inverse().pow(-e);
    Cyclotomic result(1L);
    Cyclotomic base = *this;
    while (e > 0) {
        if (e & 1)
            result *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return result;
}

Cyclotomic Cyclotomic::galois(long j) const
{
    if (std::gcd(positive_mod(j, order_), order_) != 1 && order_ > 1)
        throw DomainError("galois exponent not coprime to the order");
    if (order_ == 1)
        return *this;
    Cyclotomic out(0L);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0)
            continue;
        out += Cyclotomic(coords_[i]) * root_of_unity(static_cast<long>(i) * j, order_);
    }
    return out;
}

Cyclotomic Cyclotomic::conjugate() const
{
    return galois(-1);
}

Rational Cyclotomic::norm() const
{
    if (order_ == 1)
        return coords_[0];
    Cyclotomic prod(1L);
    for (long j = 1; j < order_; ++j)
        if (std::gcd(j, order_) == 1)
            prod *= galois(j);
    return prod.rational_value();
}

std::complex<double> Cyclotomic::to_complex() const
{
    std::complex<double> z = 0;
    const double step = 2.0 * M_PI / static_cast<double>(order_);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0)
            continue;
        z += coords_[i].convert_to<double>() * std::polar(1.0, step * static_cast<double>(i));
    }
    return z;
}

std::optional<Cyclotomic::ScaledRoot> Cyclotomic::as_scaled_root_of_unity() const
{
    if (is_zero())
        return std::nullopt;
    const long n = order_ % 2 == 0 ? order_ : 2 * order_;
    for (long k = 0; k < n; ++k) {
        const Cyclotomic b = *this * root_of_unity(-k, n);
        if (b.is_rational() && b.coords_[0] > 0)
            return ScaledRoot{b.coords_[0], k, n};
    }
    return std::nullopt;
}

std::optional<std::vector<Cyclotomic>> Cyclotomic::exact_roots(long e) const
{
    if (e < 1)
        throw DomainError("root index must be positive");
    const auto sr = as_scaled_root_of_unity();
    if (!sr)
        return std::nullopt;
    const auto num = exact_integer_root(BigInt(boost::multiprecision::numerator(sr->scale)), e);
    const auto den = exact_integer_root(BigInt(boost::multiprecision::denominator(sr->scale)), e);
    if (!num || !den)
        return std::nullopt;
    const Rational rho = Rational(*num) / Rational(*den);
    std::vector<Cyclotomic> roots;
    for (long l = 0; l < e; ++l)
        roots.push_back(Cyclotomic(rho) * root_of_unity(sr->k + sr->n * l, sr->n * e));
    return roots;
}

std::string Cyclotomic::str(long print_order) const
{
    if (order_ == 1 || print_order == 1) {
        if (order_ != 1)
            throw DomainError("value needs a root order to print");
        return coords_[0].str();
    }
    const Cyclotomic e = embed(print_order);
    // r * u^j with r rational prints as a single term
    std::size_t nonzero = 0;
    for (const auto& c : e.coords_)
        nonzero += c != 0;
    const Cyclotomic uinv = root_of_unity(print_order - 1, print_order);
    Cyclotomic q = e;
    for (long j = 0; j < print_order && nonzero > 1; ++j, q *= uinv) {
        if (!q.is_rational())
            continue;
        const Rational r = q.rational_value();
        if (j > 0 && r < 0 && print_order % 2 == 0)
            continue;  // -1 is a power of u; prefer the positive multiple
        if (j == 0)
            return r.str();
        const std::string power = j == 1 ? "u" : "u^" + std::to_string(j);
        if (r == 1)
            return power;
        if (r == -1)
            return "-" + power;
        return r.str() + "*" + power;
    }
    std::string out;
    for (std::size_t i = 0; i < e.coords_.size(); ++i) {
        Rational c = e.coords_[i];
        if (c == 0)
            continue;
        const bool negative = c < 0;
        if (negative)
            c = -c;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        if (i == 0) {
            out += c.str();
            continue;
        }
        if (c != 1)
            out += c.str() + "*";
        out += "u";
        if (i > 1)
            out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

std::string ordering_key(const std::vector<Cyclotomic>& point)
{
    long order = 1;
    for (const auto& x : point)
        order = lcm_order(order, x.order());
    std::string key = std::to_string(order) + ":";
    for (const auto& x : point) {
        const Cyclotomic e = x.embed(order);
        for (const auto& c : e.coords())
            key += c.str() + ",";
        key += ";";
    }
    return key;
}

} // namespace tropism
