#include "tropism/binomial.hpp"

#include <cmath>

namespace tropism {

namespace {

using Index = Eigen::Index;

struct Diagonalised
{
    SmithDecomposition smith;
    std::vector<std::int64_t> s;
};

Diagonalised diagonalise(const IntMatrix& A, std::size_t nc)
{
    if (A.rows() != A.cols())
        throw DomainError("square binomial system expected");
    if (static_cast<std::size_t>(A.rows()) != nc)
        throw DomainError("coefficient vector has the wrong length");
    Diagonalised out{smith_normal_form(A), {}};
    for (const auto& x : out.smith.diagonal()) {
        if (x == 0)
            throw DomainError("singular exponent matrix");
        out.s.push_back(to_int64(x));
    }
    if (static_cast<Index>(out.s.size()) != A.rows())
        throw DomainError("singular exponent matrix");
    return out;
}

// gamma_l = prod_i c_i^{U(l,i)}
template <typename C>
std::vector<C> diagonal_rhs(const SmithDecomposition& sm, const std::vector<C>& c)
{
    std::vector<C> gamma;
    for (Index l = 0; l < sm.U.rows(); ++l) {
        C g(1L);
        for (Index i = 0; i < sm.U.cols(); ++i) {
            if (is_zero(c[static_cast<std::size_t>(i)]))
                throw DomainError("zero coefficient in a binomial system");
            if (sm.U(l, i) != 0)
                g = g * power(c[static_cast<std::size_t>(i)], to_int64(sm.U(l, i)));
        }
        gamma.push_back(g);
    }
    return gamma;
}

// Cartesian product of the per-coordinate root lists, mapped back through V.
template <typename C>
std::vector<std::vector<C>> combine(const IntMatrix& V, const std::vector<std::vector<C>>& roots)
{
    const std::size_t k = roots.size();
    std::vector<std::vector<C>> out;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        std::vector<C> y(k, C(1L));
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t l = 0; l < k; ++l) {
                const BigInt& e = V(static_cast<Index>(j), static_cast<Index>(l));
                if (e != 0)
                    y[j] = y[j] * power(roots[l][idx[l]], to_int64(e));
            }
        out.push_back(std::move(y));
        std::size_t pos = k;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < roots[pos].size())
                break;
            idx[pos] = 0;
            if (pos == 0)
                return out;
        }
        if (k == 0)
            return out;
    }
}

std::vector<Complex> complex_roots(const Complex& g, std::int64_t e)
{
    std::vector<Complex> out;
    const double r = std::pow(std::abs(g), 1.0 / static_cast<double>(e));
    const double a = std::arg(g);
    for (std::int64_t j = 0; j < e; ++j)
        out.push_back(std::polar(r, (a + 2.0 * M_PI * static_cast<double>(j)) / static_cast<double>(e)));
    return out;
}

PointSet numeric_solve(const Diagonalised& dg, const std::vector<Complex>& c)
{
    const auto gamma = diagonal_rhs(dg.smith, c);
    std::vector<std::vector<Complex>> roots;
    for (std::size_t l = 0; l < gamma.size(); ++l)
        roots.push_back(complex_roots(gamma[l], dg.s[l]));
    PointSet out;
    out.exact = false;
    out.points = combine(dg.smith.V, roots);
    return out;
}

std::vector<Complex> to_complex(const std::vector<Cyclotomic>& v)
{
    std::vector<Complex> out;
    for (const auto& x : v)
        out.push_back(x.to_complex());
    return out;
}

} // namespace

PointSet solve_square_binomial(const IntMatrix& A, const std::vector<Cyclotomic>& c)
{
    const Diagonalised dg = diagonalise(A, c.size());
    const auto gamma = diagonal_rhs(dg.smith, c);
    std::vector<std::vector<Cyclotomic>> roots;
    for (std::size_t l = 0; l < gamma.size(); ++l) {
        auto r = gamma[l].exact_roots(dg.s[l]);
        if (!r)
            return numeric_solve(dg, to_complex(c));
        roots.push_back(std::move(*r));
    }
    PointSet out;
    out.exact_points = combine(dg.smith.V, roots);
    for (const auto& p : out.exact_points)
        out.points.push_back(to_complex(p));
    return out;
}

PointSet solve_square_binomial(const IntMatrix& A, const std::vector<Complex>& c)
{
    return numeric_solve(diagonalise(A, c.size()), c);
}

namespace {

template <typename C>
ParametricSolutionSet solve_binomial_impl(const BinomialSystem<C>& sys)
{
    const Index k = sys.A.rows();
    const Index n = sys.A.cols();
    if (static_cast<std::size_t>(k) != sys.c.size())
        throw DomainError("coefficient vector has the wrong length");
    for (const auto& x : sys.c)
        if (is_zero(x))
            throw DomainError("zero coefficient in a binomial system");
    if (k > n || rank(sys.A) < k)
        throw DomainError("rank deficient");

    ParametricSolutionSet out;
    const IntMatrix B = kernel_basis(sys.A);
    out.d = B.rows();
    out.transform = build_unimodular_transform(B, n);

    // exponent of y_{d+j} in equation i is <a_i, row d+j of M>
    out.residual = IntMatrix(k, k);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j) {
            Rational s = 0;
            for (Index l = 0; l < n; ++l)
                s += Rational(sys.A(i, l)) * out.transform.M(out.d + j, l);
            out.residual(i, j) = BigInt(boost::multiprecision::numerator(s));
            if (!is_integer(s))
                throw DomainError("non-integral residual exponent");
        }
    out.solutions = solve_square_binomial(out.residual, sys.c);
    return out;
}

} // namespace

ParametricSolutionSet solve_binomial(const BinomialSystem<Cyclotomic>& sys)
{
    return solve_binomial_impl(sys);
}

ParametricSolutionSet solve_binomial(const BinomialSystem<Complex>& sys)
{
    return solve_binomial_impl(sys);
}

} // namespace tropism
