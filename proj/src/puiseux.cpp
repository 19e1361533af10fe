#include "tropism/puiseux.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <thread>

#include "tropism/linalg.hpp"
#include "tropism/parser.hpp"

namespace tropism {

namespace {

using Index = Eigen::Index;

BigInt floor_div(const BigInt& a, const BigInt& b)
{
    BigInt q = a / b;
    if (q * b != a && ((a < 0) != (b < 0)))
        q -= 1;
    return q;
}

void combinations(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn)
{
    if (k > n)
        return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        if (fn(idx))
            return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

// The basis of the saturated lattice of the generators that is lower triangular in them.
TropismBasis normalize_generators(const std::vector<Exponent>& gens)
{
    const auto d = static_cast<Index>(gens.size());
    const auto n = static_cast<Index>(gens.front().size());
    IntMatrix G(d, n);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < n; ++j)
            G(i, j) = gens[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

    // G = T W with W a basis of the saturation and T = U^{-1} S_d.
    const SmithDecomposition sm = smith_normal_form(G);
    const IntMatrix T = unimodular_inverse(sm.U) * sm.S.leftCols(d);
    const RatMatrix Tinv = inverse(cast_matrix<Rational>(T));
    BigInt L = 1;
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            L = lcm(L, BigInt(boost::multiprecision::denominator(Tinv(i, j))));
    IntMatrix N(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            N(i, j) = BigInt(boost::multiprecision::numerator(Tinv(i, j) * Rational(L)));
    const IntMatrix H = lower_hermite_basis(N);

    TropismBasis out;
    for (Index i = 0; i < d; ++i) {
        Exponent row(static_cast<std::size_t>(n));
        for (Index j = 0; j < n; ++j) {
            BigInt s = 0;
            for (Index l = 0; l < d; ++l)
                s += H(i, l) * G(l, j);
            if (s % L != 0)
                throw std::logic_error("saturated basis is not integral");
            row[static_cast<std::size_t>(j)] = to_int64(BigInt(s / L));
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::int64_t level(const Exponent& e, std::size_t d)
{
    std::int64_t s = 0;
    for (std::size_t i = 0; i < d; ++i)
        s = checked_add(s, e[i]);
    return s;
}

/**
 * F after x = y^M with y_i = s_i^L for the parameters: variables
 * s_0..s_{d-1}, z_0..z_{k-1}.
 */
CyclotomicSystem uniformized_system(const CyclotomicSystem& F, const UnimodularTransform& t, const BigInt& L)
{
    const auto n = static_cast<std::size_t>(t.n);
    std::vector<CyclotomicPoly> polys;
    for (const auto& f : F.polys) {
        CyclotomicPoly g(n);
        for (const auto& [a, c] : f.terms()) {
            Exponent e(n);
            for (std::size_t i = 0; i < n; ++i) {
                Rational s = 0;
                for (std::size_t j = 0; j < n; ++j)
                    if (a[j] != 0)
                        s += Rational(a[j]) * t.M(static_cast<Index>(i), static_cast<Index>(j));
                if (static_cast<Index>(i) < t.d)
                    s *= Rational(L);
                e[i] = to_int64(s);
            }
            g.add_term(e, c);
        }
        polys.push_back(std::move(g));
    }
    std::vector<std::string> names;
    for (Index i = 0; i < t.d; ++i)
        names.push_back("s" + std::to_string(i));
    for (Index i = t.d; i < t.n; ++i)
        names.push_back("y" + std::to_string(i));
    return CyclotomicSystem(n, std::move(polys), names);
}

/// Substitute z = c into H (variables s then z), optionally after differentiating in z_l.
CyclotomicPoly at_solution(const CyclotomicPoly& h, std::size_t d, const std::vector<Cyclotomic>& c, long diff = -1)
{
    CyclotomicPoly out(d);
    for (const auto& [e, coef] : h.terms()) {
        Cyclotomic v = coef;
        if (diff >= 0) {
            const auto p = e[d + static_cast<std::size_t>(diff)];
            if (p == 0)
                continue;
            v *= Cyclotomic(static_cast<long>(p));
        }
        for (std::size_t l = 0; l < c.size(); ++l) {
            auto p = e[d + l];
            if (static_cast<long>(l) == diff)
                --p;
            if (p != 0)
                v *= c[l].pow(p);
        }
        out.add_term(Exponent(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(d)), v);
    }
    return out;
}

/// s^tau -> prod gamma_i^tau_i sigma^|tau| on the parameter block.
CyclotomicSystem restrict_to_curve(const CyclotomicSystem& H, std::size_t d, const std::vector<Rational>& gamma)
{
    const std::size_t k = H.nvars - d;
    std::vector<CyclotomicPoly> polys;
    for (const auto& h : H.polys) {
        CyclotomicPoly g(1 + k);
        for (const auto& [e, c] : h.terms()) {
            Exponent f(1 + k);
            Cyclotomic v = c;
            for (std::size_t i = 0; i < d; ++i)
                if (e[i] != 0)
                    v *= Cyclotomic(gamma[i]).pow(e[i]);
            f[0] = level(e, d);
            for (std::size_t l = 0; l < k; ++l)
                f[1 + l] = e[d + l];
            g.add_term(f, v);
        }
        polys.push_back(std::move(g));
    }
    return CyclotomicSystem(1 + k, std::move(polys));
}

void compositions(std::size_t d, std::int64_t g, Exponent& cur, std::size_t pos, std::vector<Exponent>& out)
{
    if (pos + 1 == d) {
        cur[pos] = g;
        out.push_back(cur);
        return;
    }
    for (std::int64_t x = g; x >= 0; --x) {
        cur[pos] = x;
        compositions(d, g - x, cur, pos + 1, out);
    }
}

struct SecondSolve
{
    bool ok = false;
    std::int64_t gap = 0;
    std::vector<Exponent> increments;                 // w
    std::vector<std::vector<Cyclotomic>> delta;       // delta[l][w]
    std::vector<std::string> residual;
};

std::string describe(const CyclotomicPoly& p, std::size_t d)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i)
        names.push_back("s" + std::to_string(i));
    long order = 1;
    for (const auto& [e, c] : p.terms())
        order = lcm_order(order, c.order());
    return format_polynomial(p, names, order);
}

/**
 * Linear conditions for z = c + sum_w delta_w s^w with |w| = gap on the
 * system H (parameters s_0..s_{d-1}, unknowns z).
 */
SecondSolve solve_second(const CyclotomicSystem& H, std::size_t d, const std::vector<Cyclotomic>& c,
                         std::size_t max_unknowns)
{
    SecondSolve out;
    const std::size_t k = c.size();
    const std::size_t m = H.size();
    std::vector<std::int64_t> mu(m);
    std::vector<CyclotomicPoly> R;
    std::vector<std::vector<CyclotomicPoly>> D(m);
    std::vector<std::int64_t> gaps;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& h = H.polys[i];
        mu[i] = INT64_MAX;
        for (const auto& [e, coef] : h.terms())
            mu[i] = std::min(mu[i], level(e, d));
        R.push_back(at_solution(h, d, c));
        for (std::size_t l = 0; l < k; ++l) {
            const CyclotomicPoly full = at_solution(h, d, c, static_cast<long>(l));
            CyclotomicPoly low(d);
            for (const auto& [e, coef] : full.terms())
                if (level(e, d) == mu[i])
                    low.add_term(e, coef);
            D[i].push_back(std::move(low));
        }
        std::int64_t lowest = INT64_MAX;
        for (const auto& [e, coef] : R[i].terms())
            lowest = std::min(lowest, level(e, d));
        if (lowest == INT64_MAX)
            continue;
        if (lowest <= mu[i]) {
            out.residual.push_back("equation " + std::to_string(i) +
                                   ": leading coefficients leave " + describe(R[i], d));
            return out;
        }
        gaps.push_back(lowest - mu[i]);
    }
    std::sort(gaps.begin(), gaps.end());
    gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());

    for (const auto g : gaps) {
        bool below = false;
        for (std::size_t i = 0; i < m && !below; ++i)
            for (const auto& [e, coef] : R[i].terms())
                if (level(e, d) < mu[i] + g)
                    below = true;
        if (below)
            continue;
        std::vector<Exponent> W;
        Exponent cur(d);
        compositions(d, g, cur, 0, W);
        const std::size_t unknowns = k * W.size();
        if (unknowns > max_unknowns) {
            out.residual.push_back("second-term ansatz with " + std::to_string(unknowns) + " unknowns exceeds the cap");
            return out;
        }
        // rows: (equation, monomial at level mu_i + g)
        std::map<std::pair<std::size_t, Exponent>, std::size_t> row_of;
        auto row = [&](std::size_t i, const Exponent& tau) {
            auto key = std::make_pair(i, tau);
            auto it = row_of.find(key);
            if (it != row_of.end())
                return it->second;
            const std::size_t r = row_of.size();
            row_of.emplace(key, r);
            return r;
        };
        std::vector<std::tuple<std::size_t, std::size_t, Cyclotomic>> entries;
        std::vector<std::pair<std::size_t, Cyclotomic>> rhs;
        for (std::size_t i = 0; i < m; ++i) {
            for (const auto& [tau, coef] : R[i].terms())
                if (level(tau, d) == mu[i] + g)
                    rhs.emplace_back(row(i, tau), -coef);
            for (std::size_t l = 0; l < k; ++l)
                for (const auto& [sigma, coef] : D[i][l].terms())
                    for (std::size_t w = 0; w < W.size(); ++w) {
                        Exponent tau(d);
                        for (std::size_t q = 0; q < d; ++q)
                            tau[q] = sigma[q] + W[w][q];
                        entries.emplace_back(row(i, tau), l * W.size() + w, coef);
                    }
        }
        Matrix<Cyclotomic> A = Matrix<Cyclotomic>::Constant(static_cast<Index>(row_of.size()),
                                                            static_cast<Index>(unknowns), Cyclotomic(0L));
        Vector<Cyclotomic> b = Vector<Cyclotomic>::Constant(static_cast<Index>(row_of.size()), Cyclotomic(0L));
        for (const auto& [r, col, v] : entries)
            A(static_cast<Index>(r), static_cast<Index>(col)) += v;
        for (const auto& [r, v] : rhs)
            b(static_cast<Index>(r)) += v;
        const auto x = solve_particular(A, b);
        if (!x)
            continue;
        out.ok = true;
        out.gap = g;
        out.increments = W;
        out.delta.assign(k, std::vector<Cyclotomic>(W.size()));
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t w = 0; w < W.size(); ++w)
                out.delta[l][w] = (*x)(static_cast<Index>(l * W.size() + w));
        return out;
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (R[i].is_zero())
            continue;
        std::int64_t lowest = INT64_MAX;
        for (const auto& [e, coef] : R[i].terms())
            lowest = std::min(lowest, level(e, d));
        CyclotomicPoly low(d);
        for (const auto& [e, coef] : R[i].terms())
            if (level(e, d) == lowest)
                low.add_term(e, coef);
        out.residual.push_back("equation " + std::to_string(i) + ": " + describe(low, d));
    }
    return out;
}

std::vector<Rational> curve_direction(std::size_t d, std::uint64_t seed)
{
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<int> num(2, 97);
    std::vector<Rational> out;
    for (std::size_t i = 0; i < d; ++i)
        out.emplace_back(num(rng), num(rng));
    return out;
}

std::string solution_key(const PuiseuxDevelopment& dev)
{
    std::string key;
    if (dev.exact_coefficients) {
        key = ordering_key(dev.solution);
    } else {
        char buf[64];
        for (const auto& x : dev.numeric_solution) {
            std::snprintf(buf, sizeof buf, "%.12e,%.12e;", x.real(), x.imag());
            key += buf;
        }
    }
    return key;
}

} // namespace

std::string status_name(DevelopmentStatus s)
{
    switch (s) {
    case DevelopmentStatus::Exact: return "exact";
    case DevelopmentStatus::SecondTerm: return "second-term";
    case DevelopmentStatus::CurveSecondTerm: return "curve-second-term";
    case DevelopmentStatus::LeadingOnly: return "leading-only";
    case DevelopmentStatus::Numeric: return "numeric";
    }
    return "leading-only";
}

IntMatrix lower_hermite_basis(const IntMatrix& N)
{
    const Index d = N.rows();
    IntMatrix H = N;
    for (Index col = d - 1; col >= 0; --col) {
        for (Index r = 0; r < col; ++r) {
            while (H(r, col) != 0) {
                const BigInt q = H(col, col) / H(r, col);
                H.row(col) -= q * H.row(r);
                H.row(col).swap(H.row(r));
            }
        }
        if (H(col, col) == 0)
            throw DomainError("lattice basis is singular");
        if (H(col, col) < 0)
            H.row(col) = -H.row(col);
    }
    for (Index i = 1; i < d; ++i)
        for (Index j = i - 1; j >= 0; --j) {
            const BigInt q = floor_div(H(i, j), H(j, j));
            if (q != 0)
                H.row(i) -= q * H.row(j);
        }
    return H;
}

IntMatrix to_matrix(const TropismBasis& rows)
{
    const auto d = static_cast<Index>(rows.size());
    const auto n = d ? static_cast<Index>(rows.front().size()) : 0;
    IntMatrix B(d, n);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < n; ++j)
            B(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return B;
}

TropismBasis select_tropism_basis(const Cone& cone, std::size_t d, bool positive_first)
{
    if (d == 0)
        throw DomainError("dimension must be positive");
    std::vector<Exponent> gens = cone.generators();
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<Exponent> chosen;
    combinations(gens.size(), d, [&](const std::vector<std::size_t>& idx) {
        std::vector<Exponent> sub;
        for (auto i : idx)
            sub.push_back(gens[i]);
        if (vector_rank(sub) < d)
            return false;
        if (positive_first) {
            auto it = std::find_if(sub.begin(), sub.end(), [](const Exponent& g) { return g[0] > 0; });
            if (it == sub.end())
                return false;
            std::rotate(sub.begin(), it, it + 1);
        }
        chosen = std::move(sub);
        return true;
    });
    if (chosen.empty())
        throw DomainError(positive_first ? "no d independent generators with a positive first coordinate"
                                         : "no d independent generators");
    return normalize_generators(chosen);
}

BigInt PuiseuxDevelopment::denominator() const
{
    BigInt L = 1;
    for (const auto& c : coords)
        for (const auto& e : c.leading.exp)
            L = lcm(L, BigInt(boost::multiprecision::denominator(e)));
    return L;
}

long PuiseuxDevelopment::root_order() const
{
    long order = 1;
    for (const auto& c : coords) {
        order = lcm_order(order, c.leading.coef.order());
        for (const auto& s : c.second)
            order = lcm_order(order, s.coef.order());
    }
    return order;
}

PuiseuxDevelopment leading_development(const TropismBasis& tropisms, const UnimodularTransform& t,
                                       const SolutionPoint& solution)
{
    PuiseuxDevelopment dev;
    dev.tropisms = tropisms;
    dev.transform = t;
    dev.exact_coefficients = solution.exact;
    dev.solution = solution.coords;
    dev.numeric_solution = solution.numeric;
    const auto n = static_cast<std::size_t>(t.n);
    const auto d = static_cast<std::size_t>(t.d);
    for (std::size_t j = 0; j < n; ++j) {
        CoordinateSeries cs;
        for (std::size_t i = 0; i < d; ++i)
            cs.leading.exp.push_back(t.M(static_cast<Index>(i), static_cast<Index>(j)));
        Cyclotomic coef(1L);
        Complex numeric(1.0);
        for (std::size_t l = 0; l + d < n; ++l) {
            const Rational e = t.M(static_cast<Index>(d + l), static_cast<Index>(j));
            if (e == 0)
                continue;
            const auto p = to_int64(e);
            if (solution.exact)
                coef *= solution.coords[l].pow(p);
            numeric *= power(solution.numeric[l], p);
        }
        cs.leading.coef = solution.exact ? coef : Cyclotomic(0L);
        cs.leading.numeric = solution.exact ? coef.to_complex() : numeric;
        dev.coords.push_back(std::move(cs));
    }
    dev.status = solution.exact ? DevelopmentStatus::LeadingOnly : DevelopmentStatus::Numeric;
    return dev;
}

namespace {

template <typename C>
PolySystem<C> leading_residual_impl(const CyclotomicSystem& F, const PuiseuxDevelopment& dev)
{
    const std::size_t d = dev.d();
    const Rational L(dev.denominator());
    std::vector<LaurentPolynomial<C>> polys;
    for (const auto& f : F.polys) {
        LaurentPolynomial<C> g(d);
        for (const auto& [a, c] : f.terms()) {
            C v = CoefficientTraits<C>::from_cyclotomic(c);
            std::vector<Rational> e(d, Rational(0));
            for (std::size_t j = 0; j < a.size(); ++j) {
                if (a[j] == 0)
                    continue;
                const auto& lead = dev.coords[j].leading;
                if constexpr (std::is_same_v<C, Cyclotomic>)
                    v *= lead.coef.pow(a[j]);
                else
                    v *= power(lead.numeric, a[j]);
                for (std::size_t i = 0; i < d; ++i)
                    e[i] += Rational(a[j]) * lead.exp[i];
            }
            Exponent s(d);
            for (std::size_t i = 0; i < d; ++i)
                s[i] = to_int64(e[i] * L);
            g.add_term(s, v);
        }
        polys.push_back(std::move(g));
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i)
        names.push_back("s" + std::to_string(i));
    return PolySystem<C>(d, std::move(polys), names);
}

} // namespace

CyclotomicSystem leading_residual(const CyclotomicSystem& F, const PuiseuxDevelopment& dev)
{
    if (!dev.exact_coefficients)
        throw DomainError("leading residual needs exact coefficients");
    return leading_residual_impl<Cyclotomic>(F, dev);
}

bool leading_term_exact(const CyclotomicSystem& F, const PuiseuxDevelopment& dev, double tolerance)
{
    if (dev.exact_coefficients) {
        const auto R = leading_residual(F, dev);
        return std::all_of(R.polys.begin(), R.polys.end(), [](const CyclotomicPoly& p) { return p.is_zero(); });
    }
    const double saved = complex_zero_tolerance();
    complex_zero_tolerance() = tolerance;
    const auto R = leading_residual_impl<Complex>(F, dev);
    complex_zero_tolerance() = saved;
    return std::all_of(R.polys.begin(), R.polys.end(), [](const ComplexPoly& p) { return p.is_zero(); });
}

PuiseuxDevelopment second_term(const CyclotomicSystem& F, PuiseuxDevelopment dev, const DevelopConfig& cfg)
{
    if (!dev.exact_coefficients)
        throw DomainError("second term needs exact leading coefficients");
    if (leading_term_exact(F, dev)) {
        dev.exact = true;
        dev.status = DevelopmentStatus::Exact;
        return dev;
    }
    const std::size_t d = dev.d();
    const std::size_t n = static_cast<std::size_t>(dev.transform.n);
    const BigInt L = dev.denominator();
    const CyclotomicSystem H = uniformized_system(F, dev.transform, L);

    const auto gamma = curve_direction(d, cfg.solver.seed);
    const SecondSolve curve = solve_second(restrict_to_curve(H, d, gamma), 1, dev.solution, cfg.max_unknowns);
    if (!curve.ok) {
        dev.status = DevelopmentStatus::LeadingOnly;
        dev.residual_terms = curve.residual;
        return dev;
    }
    CurveSecondTerm ct;
    ct.direction = gamma;
    ct.order = curve.gap;
    for (const auto& row : curve.delta)
        ct.delta.push_back(row[0]);
    dev.curve = ct;
    dev.status = DevelopmentStatus::CurveSecondTerm;
    if (!cfg.multivariate_second_term)
        return dev;

    const SecondSolve full = solve_second(H, d, dev.solution, cfg.max_unknowns);
    if (!full.ok) {
        dev.residual_terms = full.residual;
        return dev;
    }
    // x_j = lead_j * prod_l (1 + delta_l / c_l)^{M(d+l, j)}, to first order
    for (std::size_t j = 0; j < n; ++j) {
        auto& cs = dev.coords[j];
        cs.second.clear();
        for (std::size_t w = 0; w < full.increments.size(); ++w) {
            Cyclotomic rel(0L);
            for (std::size_t l = 0; l + d < n; ++l) {
                const Rational e = dev.transform.M(static_cast<Index>(d + l), static_cast<Index>(j));
                if (e != 0)
                    rel += Cyclotomic(e) * full.delta[l][w] / dev.solution[l];
            }
            if (rel.is_zero())
                continue;
            SeriesTerm term;
            term.coef = cs.leading.coef * rel;
            term.numeric = term.coef.to_complex();
            for (std::size_t i = 0; i < d; ++i)
                term.exp.push_back(cs.leading.exp[i] + Rational(full.increments[w][i]) / Rational(L));
            cs.second.push_back(std::move(term));
        }
    }
    dev.status = DevelopmentStatus::SecondTerm;
    return dev;
}

CyclotomicSystem second_order_residual(const CyclotomicSystem& F, const PuiseuxDevelopment& dev)
{
    if (!dev.exact_coefficients)
        throw DomainError("second order residual needs exact coefficients");
    const std::size_t d = dev.d();
    const Rational L(dev.denominator());
    std::vector<CyclotomicPoly> x;
    for (const auto& cs : dev.coords) {
        CyclotomicPoly p(d);
        auto add = [&](const SeriesTerm& t) {
            Exponent e(d);
            for (std::size_t i = 0; i < d; ++i)
                e[i] = to_int64(t.exp[i] * L);
            p.add_term(e, t.coef);
        };
        add(cs.leading);
        for (const auto& t : cs.second)
            add(t);
        x.push_back(std::move(p));
    }
    std::vector<CyclotomicPoly> polys;
    for (const auto& f : F.polys) {
        CyclotomicPoly total(d);
        for (const auto& [a, c] : f.terms()) {
            CyclotomicPoly term = CyclotomicPoly::constant(d, c);
            for (std::size_t j = 0; j < a.size(); ++j) {
                if (a[j] == 0)
                    continue;
                if (a[j] < 0) {
                    if (x[j].size() != 1)
                        throw DomainError("negative power of a two-term series");
                    const auto& [e, v] = *x[j].terms().begin();
                    Exponent ne(d);
                    for (std::size_t i = 0; i < d; ++i)
                        ne[i] = checked_mul(e[i], a[j]);
                    term = term * CyclotomicPoly::monomial(ne, v.pow(a[j]));
                } else {
                    term = term * x[j].pow(static_cast<unsigned>(a[j]));
                }
            }
            total += term;
        }
        polys.push_back(std::move(total));
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i)
        names.push_back("s" + std::to_string(i));
    return CyclotomicSystem(d, std::move(polys), names);
}

long default_root_order(const CyclotomicSystem& F)
{
    if (cyclic_shift_symmetry(F)) {
        for (long m = 2; m * m <= static_cast<long>(F.nvars); ++m)
            if (m * m == static_cast<long>(F.nvars))
                return m;
    }
    return lcm_order(2, root_order(F));
}

DevelopResult develop_cone(const CyclotomicSystem& F, const Cone& cone, std::size_t d, const DevelopConfig& cfg)
{
    DevelopResult out;
    std::vector<Exponent> rays = cone.rays;
    rays.insert(rays.end(), cone.lineality.begin(), cone.lineality.end());
    auto fail = [&](const std::string& why) {
        out.diagnostics.push_back({rays, why});
        return out;
    };

    TropismBasis basis;
    try {
        basis = select_tropism_basis(cone, d, cfg.positive_first);
    } catch (const DomainError& e) {
        return fail(e.what());
    }
    const auto n = static_cast<Index>(F.nvars);
    const UnimodularTransform t = build_unimodular_transform(to_matrix(basis), n);

    // transformed initial form system in y_d .. y_{n-1}
    const CyclotomicSystem init = initial_form_system(F, basis);
    std::vector<CyclotomicPoly> tail;
    const auto k = static_cast<std::size_t>(n - t.d);
    for (const auto& f : init.polys) {
        CyclotomicPoly g(k);
        for (const auto& [a, c] : f.terms()) {
            Exponent e(k);
            for (std::size_t l = 0; l < k; ++l) {
                Rational s = 0;
                for (Index j = 0; j < n; ++j)
                    if (a[static_cast<std::size_t>(j)] != 0)
                        s += Rational(a[static_cast<std::size_t>(j)]) * t.M(t.d + static_cast<Index>(l), j);
                e[l] = to_int64(s);
            }
            g.add_term(e, c);
        }
        if (g.size() < 2)
            return fail("single-term equation in the transformed initial form system");
        tail.push_back(std::move(g));
    }
    std::vector<std::string> names;
    for (Index i = t.d; i < n; ++i)
        names.push_back("y" + std::to_string(i));
    const CyclotomicSystem G(k, std::move(tail), names);

    SolverConfig scfg = cfg.solver;
    if (scfg.root_order <= 0)
        scfg.root_order = default_root_order(F);
    std::vector<SolutionPoint> points;
    try {
        points = solve_initial_form(G, scfg);
    } catch (const DomainError& e) {
        const std::string what = e.what();
        if (what.find("positive-dimensional") != std::string::npos)
            return fail("unresolved: the initial form system has a positive-dimensional solution set");
        return fail(what);
    }
    if (points.empty())
        return fail("the initial form system has no solution with all coordinates nonzero on the searched torus");

    for (const auto& p : points) {
        PuiseuxDevelopment dev = leading_development(basis, t, p);
        if (!dev.exact_coefficients) {
            dev.exact = leading_term_exact(F, dev, scfg.tolerance);
            dev.status = DevelopmentStatus::Numeric;
        } else {
            dev = second_term(F, std::move(dev), cfg);
        }
        out.developments.push_back(std::move(dev));
    }
    return out;
}

DevelopResult develop(const CyclotomicSystem& F, std::size_t d, const DevelopConfig& cfg)
{
    if (F.polys.empty())
        throw DomainError("empty system");
    if (d == 0)
        throw DomainError("dimension must be positive");
    PretropismOptions opts;
    opts.positive_first = cfg.positive_first;
    opts.threads = std::max(1u, cfg.threads);
    const auto records = pretropism_cones(supports_of(F), d, opts);

    std::vector<std::size_t> chosen;
    const auto shift = cyclic_shift_symmetry(F);
    if (shift && !cfg.expand_orbits) {
        for (const auto& orbit : orbit_group(records, *shift))
            chosen.push_back(orbit.representative);
        std::sort(chosen.begin(), chosen.end());
    } else {
        for (std::size_t i = 0; i < records.size(); ++i)
            chosen.push_back(i);
    }

    std::vector<DevelopResult> parts(chosen.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < chosen.size(); i = next++)
            parts[i] = develop_cone(F, records[chosen[i]].cone, d, cfg);
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(chosen.size())));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    DevelopResult out;
    for (auto& p : parts) {
        for (auto& dev : p.developments)
            out.developments.push_back(std::move(dev));
        for (auto& diag : p.diagnostics)
            out.diagnostics.push_back(std::move(diag));
    }
    std::stable_sort(out.developments.begin(), out.developments.end(),
                     [](const PuiseuxDevelopment& a, const PuiseuxDevelopment& b) {
                         if (a.tropisms != b.tropisms)
                             return a.tropisms < b.tropisms;
                         return solution_key(a) < solution_key(b);
                     });
    return out;
}

} // namespace tropism
