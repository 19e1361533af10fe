#include "tropism/surface.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "tropism/linalg.hpp"

namespace tropism {

namespace {

using Index = Eigen::Index;

IntMatrix exponent_matrix(const MonomialParametrization& p)
{
    IntMatrix E(static_cast<Index>(p.d), static_cast<Index>(p.n()));
    for (std::size_t j = 0; j < p.n(); ++j)
        for (std::size_t i = 0; i < p.d; ++i)
            E(static_cast<Index>(i), static_cast<Index>(j)) = p.exps[j][i];
    return E;
}

/// c^a for an integer vector a.
Cyclotomic character(const std::vector<Cyclotomic>& c, const IntMatrix& K, Index row)
{
    Cyclotomic v(1L);
    for (Index j = 0; j < K.cols(); ++j)
        if (K(row, j) != 0)
            v *= c[static_cast<std::size_t>(j)].pow(to_int64(K(row, j)));
    return v;
}

} // namespace

long MonomialParametrization::root_order() const
{
    long order = 1;
    for (const auto& c : coef)
        order = lcm_order(order, c.order());
    return order;
}

void MonomialParametrization::validate() const
{
    if (exps.size() != coef.size())
        throw DomainError("parametrization has mismatched coefficient and exponent lists");
    for (std::size_t j = 0; j < coef.size(); ++j) {
        if (coef[j].is_zero())
            throw DomainError("parametrization coordinate " + std::to_string(j) + " has a zero coefficient");
        if (exps[j].size() != d)
            throw DomainError("parametrization coordinate " + std::to_string(j) + " has the wrong number of exponents");
    }
}

MonomialParametrization backelin_set(long m)
{
    if (m < 2)
        throw DomainError("Backelin sets need m >= 2");
    MonomialParametrization p;
    p.d = static_cast<std::size_t>(m - 1);
    for (long k = 0; k < m; ++k) {
        const Cyclotomic u = Cyclotomic::root_of_unity(k, m);
        for (long j = 0; j < m; ++j) {
            Exponent e(p.d, 0);
            for (long i = 0; i < m - 1; ++i) {
                if (j < m - 1)
                    e[static_cast<std::size_t>(i)] = i <= j ? 1 : 0;
                else
                    e[static_cast<std::size_t>(i)] = -(m - 1 - i);
            }
            p.coef.push_back(u);
            p.exps.push_back(std::move(e));
        }
    }
    return p;
}

MonomialParametrization from_development(const PuiseuxDevelopment& dev)
{
    if (!dev.exact_coefficients)
        throw DomainError("development has floating point coefficients");
    MonomialParametrization p;
    p.d = dev.d();
    for (const auto& cs : dev.coords) {
        Exponent e;
        for (const auto& x : cs.leading.exp) {
            if (!is_integer(x))
                throw DomainError("development has fractional exponents");
            e.push_back(to_int64(x));
        }
        p.coef.push_back(cs.leading.coef);
        p.exps.push_back(std::move(e));
    }
    return p;
}

CyclotomicSystem substitute(const CyclotomicSystem& F, const MonomialParametrization& p)
{
    p.validate();
    if (F.nvars != p.n())
        throw DomainError("parametrization has " + std::to_string(p.n()) + " coordinates, system has " +
                          std::to_string(F.nvars) + " variables");
    std::vector<CyclotomicPoly> polys;
    for (const auto& f : F.polys) {
        CyclotomicPoly g(p.d);
        for (const auto& [a, c] : f.terms()) {
            Cyclotomic v = c;
            Exponent e(p.d, 0);
            for (std::size_t j = 0; j < a.size(); ++j) {
                if (a[j] == 0)
                    continue;
                v *= p.coef[j].pow(a[j]);
                for (std::size_t i = 0; i < p.d; ++i)
                    e[i] = checked_add(e[i], checked_mul(a[j], p.exps[j][i]));
            }
            g.add_term(e, v);
        }
        polys.push_back(std::move(g));
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < p.d; ++i)
        names.push_back("t" + std::to_string(i));
    return CyclotomicSystem(p.d, std::move(polys), std::move(names));
}

bool satisfies(const CyclotomicSystem& F, const MonomialParametrization& p)
{
    const auto R = substitute(F, p);
    return std::all_of(R.polys.begin(), R.polys.end(), [](const CyclotomicPoly& f) { return f.is_zero(); });
}

std::int64_t degree_of_parametrization(const MonomialParametrization& p, std::uint64_t seed)
{
    p.validate();
    if (p.d == 0)
        throw DomainError("parametrization has no parameters");

    // distinct monomials and the coordinates carrying them
    std::map<Exponent, std::vector<std::size_t>> groups;
    for (std::size_t j = 0; j < p.n(); ++j)
        groups[p.exps[j]].push_back(j);
    const bool affine = groups.size() == p.d;
    if (affine)
        groups.emplace(Exponent(p.d, 0), std::vector<std::size_t>{});
    if (groups.size() != p.d + 1)
        throw DomainError("hyperplane sections of this parametrization do not reduce to a binomial system (" +
                          std::to_string(groups.size()) + " distinct monomials for " + std::to_string(p.d) +
                          " parameters)");
    std::vector<Exponent> monomials;
    for (const auto& [e, js] : groups)
        monomials.push_back(e);
    const auto K = static_cast<Index>(monomials.size());
    const auto d = static_cast<Index>(p.d);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-1000000, 1000000);
    std::uniform_int_distribution<long> den(1, 1000000);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Matrix<Cyclotomic> C = Matrix<Cyclotomic>::Constant(d, K, Cyclotomic(0L));
        for (Index h = 0; h < d; ++h) {
            Index col = 0;
            for (const auto& [e, js] : groups) {
                for (auto j : js)
                    C(h, col) += Cyclotomic(Rational(num(rng), den(rng))) * p.coef[j];
                if (js.empty())
                    C(h, col) = Cyclotomic(Rational(num(rng), den(rng)));
                ++col;
            }
        }
        const auto pivots = rref_in_place(C);
        if (static_cast<Index>(pivots.size()) < d)
            continue;
        Index free = 0;
        while (std::find(pivots.begin(), pivots.end(), free) != pivots.end())
            ++free;
        // row i: m_{pivot_i} + C(i, free) m_free = 0, so m_{pivot_i} / m_free = -C(i, free)
        bool degenerate = false;
        IntMatrix A(d, d);
        for (Index i = 0; i < d; ++i) {
            if (C(i, free).is_zero())
                degenerate = true;
            for (Index k = 0; k < d; ++k)
                A(i, k) = monomials[static_cast<std::size_t>(pivots[static_cast<std::size_t>(i)])][static_cast<std::size_t>(k)] -
                          monomials[static_cast<std::size_t>(free)][static_cast<std::size_t>(k)];
        }
        if (degenerate)
            continue;
        const BigInt det = determinant(A);
        if (det == 0)
            throw DomainError("the parametrization is degenerate: its monomials do not span the parameter lattice");
        return to_int64(BigInt(abs(det)));
    }
    throw DomainError("random hyperplanes were degenerate in 8 attempts");
}

bool same_component(const MonomialParametrization& a, const MonomialParametrization& b)
{
    if (a.n() != b.n())
        return false;
    const IntMatrix Ea = exponent_matrix(a);
    const IntMatrix Eb = exponent_matrix(b);
    const Index ra = rank(Ea);
    if (ra != rank(Eb))
        return false;
    IntMatrix stacked(Ea.rows() + Eb.rows(), Ea.cols());
    stacked << Ea, Eb;
    if (rank(stacked) != ra)
        return false;
    // the image of t -> c t^E depends only on the rational row space of E and the coset of c
    IntMatrix basis_a(ra, Ea.cols());
    {
        Index r = 0;
        for (Index i = 0; i < Ea.rows() && r < ra; ++i) {
            basis_a.row(r) = Ea.row(i);
            if (rank(IntMatrix(basis_a.topRows(r + 1))) == r + 1)
                ++r;
        }
    }
    const IntMatrix K = kernel_basis(basis_a);
    for (Index i = 0; i < K.rows(); ++i)
        if (!(character(a.coef, K, i) == character(b.coef, K, i)))
            return false;
    return true;
}

MonomialParametrization permute(const MonomialParametrization& p, const Permutation& perm)
{
    if (perm.size() != p.n())
        throw DomainError("permutation length does not match the parametrization");
    MonomialParametrization out = p;
    for (std::size_t i = 0; i < p.n(); ++i) {
        out.coef[perm[i]] = p.coef[i];
        out.exps[perm[i]] = p.exps[i];
    }
    return out;
}

std::vector<Permutation> dihedral_orderings(std::size_t n)
{
    std::vector<Permutation> out;
    for (std::size_t s = 0; s < n; ++s) {
        Permutation fwd(n), bwd(n);
        for (std::size_t i = 0; i < n; ++i) {
            fwd[i] = (i + s) % n;
            bwd[i] = (n - i + s) % n;
        }
        out.push_back(std::move(fwd));
        out.push_back(std::move(bwd));
    }
    return out;
}

std::vector<MonomialParametrization> orbit_expansion(const MonomialParametrization& p,
                                                     const std::vector<Permutation>& orderings)
{
    p.validate();
    std::vector<MonomialParametrization> out;
    for (const auto& perm : orderings) {
        MonomialParametrization q = permute(p, perm);
        if (std::none_of(out.begin(), out.end(), [&](const MonomialParametrization& r) { return same_component(r, q); }))
            out.push_back(std::move(q));
    }
    return out;
}

std::vector<MonomialParametrization> orbit_expansion(const MonomialParametrization& p, long m)
{
    if (m < 2 || p.n() != static_cast<std::size_t>(m * m))
        throw DomainError("orbit expansion expects a parametrization in m^2 variables");
    return orbit_expansion(p, dihedral_orderings(p.n()));
}

} // namespace tropism
