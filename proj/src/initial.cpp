#include "tropism/initial.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "tropism/linalg.hpp"

namespace tropism {

Backend parse_backend(const std::string& name)
{
    if (name == "auto")
        return Backend::Auto;
    if (name == "binomial")
        return Backend::Binomial;
    if (name == "grid")
        return Backend::Grid;
    throw DomainError("unknown backend '" + name + "'");
}

std::string backend_name(Backend b)
{
    switch (b) {
    case Backend::Auto: return "auto";
    case Backend::Binomial: return "binomial";
    case Backend::Grid: return "grid";
    }
    return "auto";
}

bool ResidualReport::all_zero() const
{
    return std::all_of(zero.begin(), zero.end(), [](bool z) { return z; });
}

ResidualReport verify_point(const CyclotomicSystem& F, const std::vector<Cyclotomic>& point)
{
    for (const auto& x : point)
        if (x.is_zero())
            throw DomainError("zero coordinate in a solution point");
    ResidualReport out;
    for (const auto& v : evaluate_system(F, point)) {
        out.zero.push_back(v.is_zero());
        const double r = std::abs(v.to_complex());
        out.residuals.push_back(r);
        out.max_residual = std::max(out.max_residual, r);
    }
    return out;
}

ResidualReport verify_point(const ComplexSystem& F, const std::vector<Complex>& point, double tolerance)
{
    for (const auto& x : point)
        if (std::abs(x) <= tolerance)
            throw DomainError("zero coordinate in a solution point");
    ResidualReport out;
    out.exact = false;
    for (const auto& v : evaluate_system(F, point)) {
        const double r = std::abs(v);
        out.zero.push_back(r <= tolerance);
        out.residuals.push_back(r);
        out.max_residual = std::max(out.max_residual, r);
    }
    return out;
}

ResidualReport verify_point(const CyclotomicSystem& F, const SolutionPoint& p, double tolerance)
{
    if (p.exact)
        return verify_point(F, p.coords);
    return verify_point(convert_coefficients<Complex>(F), p.numeric, tolerance);
}

Multiplicity classify(const CyclotomicSystem& F, const std::vector<Cyclotomic>& point)
{
    const auto rows = static_cast<Eigen::Index>(F.size());
    const auto cols = static_cast<Eigen::Index>(F.nvars);
    Matrix<Cyclotomic> J(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            Cyclotomic s(0L);
            for (const auto& [e, c] : F.polys[static_cast<std::size_t>(i)].terms()) {
                const auto ej = e[static_cast<std::size_t>(j)];
                if (ej == 0)
                    continue;
                Cyclotomic t = c * Cyclotomic(static_cast<long>(ej));
                for (std::size_t l = 0; l < e.size(); ++l) {
                    const auto p = static_cast<std::int64_t>(l) == j ? e[l] - 1 : e[l];
                    if (p != 0)
                        t = t * power(point[l], p);
                }
                s += t;
            }
            J(i, j) = s;
        }
    return rank(J) == cols ? Multiplicity::Regular : Multiplicity::Unknown;
}

namespace {

std::vector<Complex> to_complex(const std::vector<Cyclotomic>& v)
{
    std::vector<Complex> out;
    for (const auto& x : v)
        out.push_back(x.to_complex());
    return out;
}


void check_preconditions(const CyclotomicSystem& F)
{
    if (F.polys.empty())
        throw DomainError("empty system");
    for (std::size_t i = 0; i < F.size(); ++i)
        if (F.polys[i].size() < 2)
            throw DomainError("equation " + std::to_string(i) +
                              " has fewer than two terms, so no solution has all coordinates nonzero");
}

bool is_binomial(const CyclotomicSystem& F)
{
    return std::all_of(F.polys.begin(), F.polys.end(), [](const CyclotomicPoly& f) { return f.size() == 2; });
}

std::vector<SolutionPoint> solve_binomial_backend(const CyclotomicSystem& F, const SolverConfig& cfg)
{
    const auto sys = binomial_system(F);
    const auto n = static_cast<Eigen::Index>(F.nvars);
    if (rank(sys.A) < n)
        throw DomainError("positive-dimensional solution set");

    // first n independent equations form the square system
    std::vector<Eigen::Index> chosen;
    for (Eigen::Index i = 0; i < sys.A.rows() && static_cast<Eigen::Index>(chosen.size()) < n; ++i) {
        IntMatrix trial(static_cast<Eigen::Index>(chosen.size()) + 1, n);
        for (std::size_t r = 0; r < chosen.size(); ++r)
            trial.row(static_cast<Eigen::Index>(r)) = sys.A.row(chosen[r]);
        trial.row(trial.rows() - 1) = sys.A.row(i);
        if (rank(trial) == trial.rows())
            chosen.push_back(i);
    }
    IntMatrix square(n, n);
    std::vector<Cyclotomic> c;
    for (std::size_t r = 0; r < chosen.size(); ++r) {
        square.row(static_cast<Eigen::Index>(r)) = sys.A.row(chosen[r]);
        c.push_back(sys.c[static_cast<std::size_t>(chosen[r])]);
    }
    const PointSet pts = solve_square_binomial(square, c);

    std::vector<SolutionPoint> out;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        SolutionPoint p;
        p.exact = pts.exact;
        p.numeric = pts.points[k];
        if (pts.exact)
            p.coords = pts.exact_points[k];
        const ResidualReport rep = verify_point(F, p, cfg.tolerance);
        if (!rep.all_zero())
            continue;
        p.residual = rep.max_residual;
        p.multiplicity = p.exact ? classify(F, p.coords) : Multiplicity::Unknown;
        out.push_back(std::move(p));
    }
    if (pts.exact) {
        std::vector<std::pair<std::string, SolutionPoint>> keyed;
        for (auto& p : out)
            keyed.emplace_back(ordering_key(p.coords), std::move(p));
        std::stable_sort(keyed.begin(), keyed.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        out.clear();
        for (auto& [k, p] : keyed)
            out.push_back(std::move(p));
    }
    return out;
}

struct Term
{
    Exponent e;
    Cyclotomic c;
};

std::vector<SolutionPoint> solve_grid_backend(const CyclotomicSystem& F, const SolverConfig& cfg)
{
    const long m = cfg.root_order > 0 ? cfg.root_order : lcm_order(2, root_order(F));
    const std::size_t k = F.nvars;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (count > cfg.max_grid / static_cast<std::uint64_t>(m) + 1)
            throw DomainError("grid of " + std::to_string(m) + "^" + std::to_string(k) +
                              " candidates exceeds the cap " + std::to_string(cfg.max_grid));
        count *= static_cast<std::uint64_t>(m);
    }
    if (count > cfg.max_grid)
        throw DomainError("grid of " + std::to_string(m) + "^" + std::to_string(k) +
                          " candidates exceeds the cap " + std::to_string(cfg.max_grid));

    std::vector<std::vector<Term>> polys;
    bool rational = true;
    for (const auto& f : F.polys) {
        std::vector<Term> ts;
        for (const auto& [e, c] : f.terms()) {
            ts.push_back({e, c});
            rational = rational && c.is_rational();
        }
        polys.push_back(std::move(ts));
    }
    std::vector<std::vector<Rational>> rational_coefs;
    if (rational)
        for (const auto& ts : polys) {
            std::vector<Rational> r;
            for (const auto& t : ts)
                r.push_back(t.c.rational_value());
            rational_coefs.push_back(std::move(r));
        }
    std::vector<Cyclotomic> zeta;
    for (long r = 0; r < m; ++r)
        zeta.push_back(Cyclotomic::root_of_unity(r, m));

    auto residue = [m](const Exponent& a, const std::vector<long>& idx) {
        long s = 0;
        for (std::size_t j = 0; j < a.size(); ++j)
            s = (s + static_cast<long>(((a[j] % m) + m) % m) * idx[j]) % m;
        return s;
    };

    // Sum of c * zeta^(a.idx mod m) bucketed by residue, then tested exactly.
    auto vanishes = [&](std::size_t i, const std::vector<long>& idx) {
        const auto& ts = polys[i];
        if (rational) {
            std::vector<Rational> buckets(static_cast<std::size_t>(m));
            for (std::size_t t = 0; t < ts.size(); ++t)
                buckets[static_cast<std::size_t>(residue(ts[t].e, idx))] += rational_coefs[i][t];
            return Cyclotomic(m, std::move(buckets)).is_zero();
        }
        Cyclotomic s(0L);
        for (const auto& t : ts)
            s += t.c * zeta[static_cast<std::size_t>(residue(t.e, idx))];
        return s.is_zero();
    };

    std::vector<std::uint64_t> hits;
    std::mutex lock;
    std::atomic<std::uint64_t> next{0};
    const std::uint64_t block = 4096;
    auto worker = [&]() {
        std::vector<std::uint64_t> local;
        std::vector<long> idx(k);
        while (true) {
            const std::uint64_t start = next.fetch_add(block);
            if (start >= count)
                break;
            const std::uint64_t stop = std::min(count, start + block);
            for (std::uint64_t code = start; code < stop; ++code) {
                std::uint64_t rest = code;
                for (std::size_t j = k; j-- > 0;) {
                    idx[j] = static_cast<long>(rest % static_cast<std::uint64_t>(m));
                    rest /= static_cast<std::uint64_t>(m);
                }
                bool ok = true;
                for (std::size_t i = 0; i < polys.size() && ok; ++i)
                    ok = vanishes(i, idx);
                if (ok)
                    local.push_back(code);
            }
        }
        std::lock_guard<std::mutex> guard(lock);
        hits.insert(hits.end(), local.begin(), local.end());
    };
    const unsigned threads = std::max(1u, cfg.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    std::sort(hits.begin(), hits.end());

    std::vector<SolutionPoint> out;
    for (std::uint64_t code : hits) {
        SolutionPoint p;
        p.coords.resize(k);
        std::uint64_t rest = code;
        for (std::size_t j = k; j-- > 0;) {
            p.coords[j] = zeta[rest % static_cast<std::uint64_t>(m)];
            rest /= static_cast<std::uint64_t>(m);
        }
        p.numeric = to_complex(p.coords);
        const ResidualReport rep = verify_point(F, p.coords);
        if (!rep.all_zero())
            throw std::logic_error("grid candidate failed exact verification");
        p.multiplicity = classify(F, p.coords);
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace

std::vector<SolutionPoint> solve_initial_form(const CyclotomicSystem& F, const SolverConfig& cfg)
{
    check_preconditions(F);
    switch (cfg.backend) {
    case Backend::Binomial:
        return solve_binomial_backend(F, cfg);
    case Backend::Grid:
        return solve_grid_backend(F, cfg);
    case Backend::Auto:
        break;
    }
    if (is_binomial(F))
        return solve_binomial_backend(F, cfg);
    return solve_grid_backend(F, cfg);
}

} // namespace tropism
