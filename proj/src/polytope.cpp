#include "tropism/polytope.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <set>
#include <thread>

namespace tropism {

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b)
{
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

Exponent difference(const Exponent& a, const Exponent& b)
{
    Exponent out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = checked_add(a[i], -b[i]);
    return out;
}

// s*a - t*b, made primitive
Exponent combine(std::int64_t s, const Exponent& a, std::int64_t t, const Exponent& b)
{
    Exponent out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = checked_add(checked_mul(s, a[i]), -checked_mul(t, b[i]));
    return primitive_vector(out);
}

bool is_zero_vector(const Exponent& v)
{
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

Exponent negated(const Exponent& v)
{
    Exponent out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = -v[i];
    return out;
}

void set_bit(std::vector<std::uint64_t>& bits, std::size_t k)
{
    if (bits.size() <= k / 64)
        bits.resize(k / 64 + 1, 0);
    bits[k / 64] |= std::uint64_t(1) << (k % 64);
}

std::size_t popcount(const std::vector<std::uint64_t>& bits)
{
    std::size_t c = 0;
    for (auto w : bits)
        c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}

std::vector<std::uint64_t> intersect(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b)
{
    std::vector<std::uint64_t> out(std::min(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = a[i] & b[i];
    return out;
}

bool subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::uint64_t w = i < b.size() ? b[i] : 0;
        if (a[i] & ~w)
            return false;
    }
    return true;
}

// Lineality basis in reduced echelon form with primitive integer rows.
std::vector<Exponent> canonical_basis(const std::vector<Exponent>& basis, std::size_t n)
{
    if (basis.empty())
        return {};
    RatMatrix m(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = basis[i][j];
    const auto pivots = rref_in_place(m);
    std::vector<Exponent> out;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        BigInt den = 1;
        for (std::size_t j = 0; j < n; ++j)
            den = lcm(den, BigInt(boost::multiprecision::denominator(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))));
        Exponent row(n);
        for (std::size_t j = 0; j < n; ++j)
            row[j] = to_int64(Rational(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * Rational(den)));
        out.push_back(primitive_vector(row));
    }
    return out;
}

} // namespace

Exponent primitive_vector(const Exponent& v)
{
    std::int64_t g = 0;
    for (auto x : v)
        g = gcd64(g, x);
    if (g <= 1)
        return v;
    Exponent out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i] / g;
    return out;
}

std::size_t vector_rank(const std::vector<Exponent>& vs)
{
    if (vs.empty())
        return 0;
    const std::size_t n = vs.front().size();
    // fraction-free elimination with gcd reduction of each row
    std::vector<std::vector<__int128>> rows;
    for (const auto& v : vs)
        rows.emplace_back(v.begin(), v.end());
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t p = rank;
        while (p < rows.size() && rows[p][col] == 0)
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            if (rows[i][col] == 0)
                continue;
            const __int128 a = rows[rank][col];
            const __int128 b = rows[i][col];
            __int128 g = 0;
            for (std::size_t j = 0; j < n; ++j) {
                rows[i][j] = a * rows[i][j] - b * rows[rank][j];
                __int128 x = rows[i][j] < 0 ? -rows[i][j] : rows[i][j];
                while (x) {
                    const __int128 t = g % x;
                    g = x;
                    x = t;
                }
            }
            if (g > 1)
                for (std::size_t j = 0; j < n; ++j)
                    rows[i][j] /= g;
        }
        ++rank;
    }
    return rank;
}

DDCone::DDCone(std::size_t n) : n_(n)
{
    for (std::size_t i = 0; i < n; ++i) {
        Exponent e(n, 0);
        e[i] = 1;
        lineality_.push_back(e);
    }
}

void DDCone::add_inequality(const Exponent& h)
{
    if (h.size() != n_)
        throw DomainError("constraint has the wrong length");
    for (std::size_t li = 0; li < lineality_.size(); ++li) {
        std::int64_t s = dot(h, lineality_[li]);
        if (s == 0)
            continue;
        Exponent l0 = lineality_[li];
        if (s < 0) {
            l0 = negated(l0);
            s = -s;
        }
        lineality_.erase(lineality_.begin() + static_cast<std::ptrdiff_t>(li));
        for (auto& l : lineality_) {
            const std::int64_t t = dot(h, l);
            if (t != 0)
                l = combine(s, l, t, l0);
        }
        for (auto& r : rays_) {
            const std::int64_t t = dot(h, r);
            if (t != 0)
                r = combine(s, r, t, l0);
        }
        const std::size_t k = ineqs_.size();
        ineqs_.push_back(h);
        for (auto& bits : tight_)
            set_bit(bits, k);
        Bits fresh;
        for (std::size_t j = 0; j < k; ++j)
            set_bit(fresh, j);
        rays_.push_back(l0);
        tight_.push_back(fresh);
        return;
    }

    std::vector<std::int64_t> val(rays_.size());
    bool any_negative = false;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
        val[i] = dot(h, rays_[i]);
        any_negative = any_negative || val[i] < 0;
    }
    if (!any_negative)
        return;  // implied by the current generators

    const std::size_t pointed = dim() - lineality_.size();
    const std::size_t k = ineqs_.size();
    ineqs_.push_back(h);
    std::vector<Exponent> rays;
    std::vector<Bits> tight;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
        if (val[i] < 0)
            continue;
        rays.push_back(rays_[i]);
        tight.push_back(tight_[i]);
        if (val[i] == 0)
            set_bit(tight.back(), k);
    }
    for (std::size_t p = 0; p < rays_.size(); ++p) {
        if (val[p] <= 0)
            continue;
        for (std::size_t q = 0; q < rays_.size(); ++q) {
            if (val[q] >= 0)
                continue;
            Bits z = intersect(tight_[p], tight_[q]);
            if (pointed >= 2 && popcount(z) + 2 < pointed)
                continue;
            bool adjacent = true;
            for (std::size_t r = 0; r < rays_.size() && adjacent; ++r)
                if (r != p && r != q && subset(z, tight_[r]))
                    adjacent = false;
            if (!adjacent)
                continue;
            rays.push_back(combine(val[p], rays_[q], val[q], rays_[p]));
            set_bit(z, k);
            tight.push_back(std::move(z));
        }
    }
    rays_ = std::move(rays);
    tight_ = std::move(tight);
}

void DDCone::add_equality(const Exponent& e)
{
    if (e.size() != n_)
        throw DomainError("constraint has the wrong length");
    for (std::size_t li = 0; li < lineality_.size(); ++li) {
        const std::int64_t s0 = dot(e, lineality_[li]);
        if (s0 == 0)
            continue;
        Exponent l0 = lineality_[li];
        std::int64_t s = s0;
        if (s < 0) {
            l0 = negated(l0);
            s = -s;
        }
        lineality_.erase(lineality_.begin() + static_cast<std::ptrdiff_t>(li));
        for (auto& l : lineality_) {
            const std::int64_t t = dot(e, l);
            if (t != 0)
                l = combine(s, l, t, l0);
        }
        for (auto& r : rays_) {
            const std::int64_t t = dot(e, r);
            if (t != 0)
                r = combine(s, r, t, l0);
        }
        eqs_.push_back(e);
        return;
    }

    std::vector<std::int64_t> val(rays_.size());
    bool any = false;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
        val[i] = dot(e, rays_[i]);
        any = any || val[i] != 0;
    }
    if (!any)
        return;

    const std::size_t pointed = dim() - lineality_.size();
    eqs_.push_back(e);
    std::vector<Exponent> rays;
    std::vector<Bits> tight;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
        if (val[i] != 0)
            continue;
        rays.push_back(rays_[i]);
        tight.push_back(tight_[i]);
    }
    for (std::size_t p = 0; p < rays_.size(); ++p) {
        if (val[p] <= 0)
            continue;
        for (std::size_t q = 0; q < rays_.size(); ++q) {
            if (val[q] >= 0)
                continue;
            Bits z = intersect(tight_[p], tight_[q]);
            if (pointed >= 2 && popcount(z) + 2 < pointed)
                continue;
            bool adjacent = true;
            for (std::size_t r = 0; r < rays_.size() && adjacent; ++r)
                if (r != p && r != q && subset(z, tight_[r]))
                    adjacent = false;
            if (!adjacent)
                continue;
            rays.push_back(combine(val[p], rays_[q], val[q], rays_[p]));
            tight.push_back(std::move(z));
        }
    }
    rays_ = std::move(rays);
    tight_ = std::move(tight);
}

std::size_t DDCone::dim() const
{
    std::vector<Exponent> all = lineality_;
    all.insert(all.end(), rays_.begin(), rays_.end());
    return vector_rank(all);
}

bool DDCone::contains(const Exponent& v) const
{
    for (const auto& h : ineqs_)
        if (dot(h, v) < 0)
            return false;
    for (const auto& e : eqs_)
        if (dot(e, v) != 0)
            return false;
    return true;
}

bool DDCone::contains(const DDCone& other) const
{
    for (const auto& r : other.rays_)
        if (!contains(r))
            return false;
    for (const auto& l : other.lineality_)
        if (!contains(l) || !contains(negated(l)))
            return false;
    return true;
}

Exponent DDCone::interior_point() const
{
    Exponent v(n_, 0);
    for (const auto& r : rays_)
        for (std::size_t i = 0; i < n_; ++i)
            v[i] = checked_add(v[i], r[i]);
    return v;
}

std::vector<Exponent> DDCone::canonical_key() const
{
    std::vector<Exponent> key = rays_;
    std::sort(key.begin(), key.end());
    key.emplace_back();  // separator
    for (auto& l : canonical_basis(lineality_, n_))
        key.push_back(std::move(l));
    return key;
}

std::vector<Exponent> Cone::generators() const
{
    std::vector<Exponent> out = rays;
    for (const auto& l : lineality) {
        out.push_back(l);
        out.push_back(negated(l));
    }
    return out;
}

Cone canonical_cone(std::vector<Exponent> rays, std::vector<Exponent> lineality)
{
    Cone c;
    const std::size_t n = !rays.empty() ? rays.front().size() : (!lineality.empty() ? lineality.front().size() : 0);
    for (auto& r : rays)
        r = primitive_vector(r);
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    c.lineality = canonical_basis(lineality, n);
    c.rays = std::move(rays);
    std::vector<Exponent> all = c.rays;
    all.insert(all.end(), c.lineality.begin(), c.lineality.end());
    c.dim = vector_rank(all);
    return c;
}

NewtonPolytope newton_polytope(const Support& support)
{
    if (support.empty())
        throw DomainError("Newton polytope of an empty support");
    NewtonPolytope P;
    P.points = support;
    std::sort(P.points.begin(), P.points.end());
    P.points.erase(std::unique(P.points.begin(), P.points.end()), P.points.end());
    const std::size_t n = P.points.front().size();
    if (P.points.size() == 1) {
        P.vertices = P.points;
        return P;
    }
    // p is a vertex iff a relative-interior normal vector of its normal cone selects p alone
    for (const auto& p : P.points) {
        DDCone N(n);
        for (const auto& a : P.points)
            if (a != p)
                N.add_inequality(difference(a, p));
        const Exponent v = N.interior_point();
        std::size_t face = 0;
        for (const auto& a : P.points)
            if (dot(difference(a, p), v) == 0)
                ++face;
        if (face == 1)
            P.vertices.push_back(p);
    }
    for (std::size_t i = 0; i < P.vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < P.vertices.size(); ++j) {
            const Exponent& p = P.vertices[i];
            const Exponent dir = difference(P.vertices[j], p);
            DDCone N(n);
            N.add_equality(dir);
            for (const auto& a : P.vertices)
                if (a != p && a != P.vertices[j])
                    N.add_inequality(difference(a, p));
            const Exponent v = N.interior_point();
            bool collinear = true;
            for (const auto& a : P.vertices) {
                const Exponent w = difference(a, p);
                if (dot(w, v) != 0)
                    continue;
                if (vector_rank({dir, w}) > 1 && !is_zero_vector(w))
                    collinear = false;
            }
            if (collinear)
                P.edges.push_back({i, j, primitive_vector(dir)});
        }
    }
    return P;
}

Support minimal_face(const Support& A, const Exponent& v)
{
    Support out;
    std::int64_t best = 0;
    for (const auto& a : A) {
        const std::int64_t s = dot(a, v);
        if (out.empty() || s < best) {
            out.clear();
            best = s;
        }
        if (s == best)
            out.push_back(a);
    }
    return out;
}

Support initial_support(const Support& A, const Exponent& v)
{
    if (is_zero_vector(v))
        throw DomainError("initial form with respect to the zero vector");
    return minimal_face(A, v);
}

bool is_pretropism(const std::vector<Support>& supports, const Exponent& v)
{
    for (const auto& A : supports)
        if (minimal_face(A, v).size() < 2)
            return false;
    return true;
}

namespace {

struct EdgeConstraints
{
    Exponent equality;
    std::vector<Exponent> inequalities;
};

std::vector<EdgeConstraints> edge_cones(const NewtonPolytope& P)
{
    std::vector<EdgeConstraints> out;
    for (const auto& e : P.edges) {
        EdgeConstraints c;
        const Exponent& p = P.vertices[e.a];
        c.equality = e.direction;
        for (std::size_t k = 0; k < P.vertices.size(); ++k)
            if (k != e.a && k != e.b)
                c.inequalities.push_back(difference(P.vertices[k], p));
        out.push_back(std::move(c));
    }
    return out;
}

// Drop every cone contained in another one (ties keep the first).
std::vector<DDCone> keep_maximal(std::vector<DDCone> cones)
{
    std::stable_sort(cones.begin(), cones.end(), [](const DDCone& a, const DDCone& b) { return a.dim() > b.dim(); });
    std::vector<DDCone> kept;
    for (auto& c : cones) {
        bool dominated = false;
        for (const auto& k : kept)
            if (k.contains(c)) {
                dominated = true;
                break;
            }
        if (!dominated)
            kept.push_back(std::move(c));
    }
    return kept;
}

} // namespace

std::vector<PretropismRecord> pretropism_cones(const std::vector<Support>& supports, std::size_t d,
                                               const PretropismOptions& options)
{
    if (supports.empty() || supports.front().empty())
        return {};
    const std::size_t n = supports.front().front().size();
    std::vector<std::vector<EdgeConstraints>> polytopes;
    for (const auto& A : supports) {
        if (A.empty())
            throw DomainError("zero polynomial in pretropism computation");
        polytopes.push_back(edge_cones(newton_polytope(A)));
        if (polytopes.back().empty())
            return {};  // a monomial has no edges
    }
    std::vector<std::size_t> order(polytopes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return polytopes[a].size() < polytopes[b].size(); });

    std::vector<DDCone> level{DDCone(n)};
    const unsigned threads = std::max(1u, options.threads);
    for (std::size_t idx : order) {
        const auto& edges = polytopes[idx];
        std::vector<std::vector<DDCone>> children(level.size());
        auto work = [&](std::size_t i) {
            for (const auto& e : edges) {
                DDCone c = level[i];
                c.add_equality(e.equality);
                for (const auto& h : e.inequalities)
                    c.add_inequality(h);
                if (c.dim() >= d)
                    children[i].push_back(std::move(c));
            }
        };
        if (threads == 1 || level.size() < 2) {
            for (std::size_t i = 0; i < level.size(); ++i)
                work(i);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back([&] {
                    for (std::size_t i = next++; i < level.size(); i = next++)
                        work(i);
                });
            for (auto& th : pool)
                th.join();
        }
        std::vector<DDCone> merged;
        std::set<std::vector<Exponent>> seen;
        for (auto& list : children)
            for (auto& c : list)
                if (seen.insert(c.canonical_key()).second)
                    merged.push_back(std::move(c));
        level = keep_maximal(std::move(merged));
        if (level.empty())
            return {};
    }

    std::vector<PretropismRecord> records;
    for (auto& c : level) {
        PretropismRecord rec;
        rec.cone = canonical_cone(c.rays(), c.lineality());
        if (options.positive_first) {
            bool positive = false;
            for (const auto& g : rec.cone.generators())
                positive = positive || g[0] > 0;
            if (!positive)
                continue;
        }
        rec.interior = c.interior_point();
        rec.hrep = std::move(c);
        for (const auto& A : supports)
            rec.certificates.push_back(minimal_face(A, rec.interior));
        records.push_back(std::move(rec));
    }
    std::sort(records.begin(), records.end(), [](const PretropismRecord& a, const PretropismRecord& b) {
        return std::tie(a.cone.rays, a.cone.lineality) < std::tie(b.cone.rays, b.cone.lineality);
    });
    return records;
}

Exponent permute(const Exponent& v, const Permutation& perm)
{
    if (perm.size() != v.size())
        throw DomainError("permutation length does not match");
    Exponent w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        w[perm[i]] = v[i];
    return w;
}

Cone permute(const Cone& c, const Permutation& perm)
{
    std::vector<Exponent> rays;
    std::vector<Exponent> lin;
    for (const auto& r : c.rays)
        rays.push_back(permute(r, perm));
    for (const auto& l : c.lineality)
        lin.push_back(permute(l, perm));
    return canonical_cone(std::move(rays), std::move(lin));
}

std::vector<Orbit> orbit_group(const std::vector<PretropismRecord>& records, const Permutation& generator)
{
    const std::size_t n = generator.size();
    std::vector<bool> hit(n, false);
    for (auto p : generator) {
        if (p >= n || hit[p])
            throw DomainError("invalid permutation");
        hit[p] = true;
    }
    using Key = std::pair<std::vector<Exponent>, std::vector<Exponent>>;
    std::map<Key, std::size_t> index;
    for (std::size_t i = 0; i < records.size(); ++i)
        index.emplace(Key{records[i].cone.rays, records[i].cone.lineality}, i);

    std::vector<bool> done(records.size(), false);
    std::vector<Orbit> orbits;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (done[i])
            continue;
        Orbit orbit;
        Cone c = records[i].cone;
        std::set<std::size_t> members;
        for (std::size_t step = 0; step < 1000000; ++step) {
            auto it = index.find(Key{c.rays, c.lineality});
            if (it != index.end())
                members.insert(it->second);
            c = permute(c, generator);
            if (c == records[i].cone)
                break;
        }
        orbit.members.assign(members.begin(), members.end());
        orbit.representative = orbit.members.front();
        for (auto m : orbit.members) {
            done[m] = true;
            const auto& a = records[m].cone;
            const auto& b = records[orbit.representative].cone;
            if (std::tie(a.rays, a.lineality) < std::tie(b.rays, b.lineality))
                orbit.representative = m;
        }
        orbits.push_back(std::move(orbit));
    }
    std::sort(orbits.begin(), orbits.end(), [&](const Orbit& a, const Orbit& b) {
        const auto& x = records[a.representative].cone;
        const auto& y = records[b.representative].cone;
        return std::tie(x.rays, x.lineality) < std::tie(y.rays, y.lineality);
    });
    return orbits;
}

} // namespace tropism
