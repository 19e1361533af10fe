#include "tropism/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace tropism {

namespace {

using Index = Eigen::Index;

BigInt abs_value(const BigInt& x)
{
    return x < 0 ? BigInt(-x) : x;
}

// Row and column operations mirrored on the unimodular accumulators.
struct Reducer
{
    IntMatrix& s;
    IntMatrix& u;
    IntMatrix& v;

    void swap_rows(Index a, Index b)
    {
        if (a == b)
            return;
        s.row(a).swap(s.row(b));
        u.row(a).swap(u.row(b));
    }

    void swap_cols(Index a, Index b)
    {
        if (a == b)
            return;
        s.col(a).swap(s.col(b));
        v.col(a).swap(v.col(b));
    }

    // row_target -= q * row_source
    void sub_row(Index target, Index source, const BigInt& q)
    {
        for (Index j = 0; j < s.cols(); ++j)
            s(target, j) -= q * s(source, j);
        for (Index j = 0; j < u.cols(); ++j)
            u(target, j) -= q * u(source, j);
    }

    // col_target -= q * col_source
    void sub_col(Index target, Index source, const BigInt& q)
    {
        for (Index i = 0; i < s.rows(); ++i)
            s(i, target) -= q * s(i, source);
        for (Index i = 0; i < v.rows(); ++i)
            v(i, target) -= q * v(i, source);
    }
};

} // namespace

BigInt determinant(const IntMatrix& m)
{
    if (m.rows() != m.cols())
        throw DomainError("determinant of a non-square matrix");
    const Index n = m.rows();
    if (n == 0)
        return BigInt(1);
    IntMatrix a = m;
    BigInt sign = 1;
    BigInt prev = 1;
    for (Index k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            Index p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return BigInt(0);
            a.row(p).swap(a.row(k));
            sign = -sign;
        }
        for (Index i = k + 1; i < n; ++i)
            for (Index j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& m)
{
    RatMatrix inv = inverse(cast_matrix<Rational>(m));
    IntMatrix out(inv.rows(), inv.cols());
    for (Index i = 0; i < inv.rows(); ++i)
        for (Index j = 0; j < inv.cols(); ++j) {
            if (!is_integer(inv(i, j)))
                throw DomainError("matrix is not unimodular");
            out(i, j) = BigInt(boost::multiprecision::numerator(inv(i, j)));
        }
    return out;
}

bool is_identity(const IntMatrix& m)
{
    if (m.rows() != m.cols())
        return false;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (m(i, j) != (i == j ? 1 : 0))
                return false;
    return true;
}

bool lex_less(const IntVector& a, const IntVector& b)
{
    const Index n = std::min(a.size(), b.size());
    for (Index i = 0; i < n; ++i) {
        if (a(i) < b(i))
            return true;
        if (b(i) < a(i))
            return false;
    }
    return a.size() < b.size();
}

IntMatrix kernel_basis(const IntMatrix& a)
{
    const Index n = a.cols();
    auto [r, pivots] = rref(cast_matrix<Rational>(a));
    if (static_cast<Index>(pivots.size()) < a.rows())
        throw DomainError("rank deficient");

    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (Index p : pivots)
        is_pivot[static_cast<std::size_t>(p)] = true;

    std::vector<IntVector> rows;
    for (Index f = 0; f < n; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)])
            continue;
        RatVector x = RatVector::Constant(n, Rational(0));
        x(f) = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            x(pivots[k]) = -r(static_cast<Index>(k), f);
        BigInt den = 1;
        for (Index j = 0; j < n; ++j)
            den = lcm(den, BigInt(boost::multiprecision::denominator(x(j))));
        IntVector v(n);
        for (Index j = 0; j < n; ++j)
            v(j) = BigInt(boost::multiprecision::numerator(x(j) * Rational(den)));
        rows.push_back(primitive(v));
    }
    std::sort(rows.begin(), rows.end(), lex_less);

    IntMatrix out(static_cast<Index>(rows.size()), n);
    for (std::size_t i = 0; i < rows.size(); ++i)
        out.row(static_cast<Index>(i)) = rows[i].transpose();
    return out;
}

std::vector<BigInt> SmithDecomposition::diagonal() const
{
    std::vector<BigInt> out;
    for (Index i = 0; i < std::min(S.rows(), S.cols()); ++i)
        out.push_back(S(i, i));
    return out;
}

std::vector<BigInt> HermiteDecomposition::diagonal() const
{
    std::vector<BigInt> out;
    for (Index i = 0; i < std::min(H.rows(), H.cols()); ++i)
        out.push_back(H(i, i));
    return out;
}

/*
 * Pivot order at step t:
 *  1. a unit entry of row t whose column is already zero below row t, so that
 *     clearing the row needs no row operation.  Among those, the smallest
 *     original column to the right of the previous pivot column wins; this
 *     keeps U = I and completes a staggered basis with unit rows.
 *  2. otherwise the entry of smallest absolute value in the trailing
 *     submatrix, ties broken by lowest (row, col).
 */
SmithDecomposition smith_normal_form(const IntMatrix& b)
{
    const Index rows = b.rows();
    const Index cols = b.cols();
    SmithDecomposition out{IntMatrix::Identity(rows, rows), b, IntMatrix::Identity(cols, cols)};
    Reducer red{out.S, out.U, out.V};
    IntMatrix& s = out.S;

    std::vector<Index> origin(static_cast<std::size_t>(cols));
    std::iota(origin.begin(), origin.end(), 0);
    Index last_pivot_origin = -1;

    auto swap_cols = [&](Index a, Index c) {
        red.swap_cols(a, c);
        std::swap(origin[static_cast<std::size_t>(a)], origin[static_cast<std::size_t>(c)]);
    };

    for (Index t = 0; t < std::min(rows, cols); ++t) {
        Index pi = -1;
        Index pj = -1;

        Index best_after = -1;
        Index best_any = -1;
        for (Index j = t; j < cols; ++j) {
            if (abs_value(s(t, j)) != 1)
                continue;
            bool clean = true;
            for (Index i = t + 1; i < rows && clean; ++i)
                clean = s(i, j) == 0;
            if (!clean)
                continue;
            const Index o = origin[static_cast<std::size_t>(j)];
            if (o > last_pivot_origin
                && (best_after < 0 || o < origin[static_cast<std::size_t>(best_after)]))
                best_after = j;
            if (best_any < 0 || o < origin[static_cast<std::size_t>(best_any)])
                best_any = j;
        }
        if (best_after >= 0 || best_any >= 0) {
            pi = t;
            pj = best_after >= 0 ? best_after : best_any;
        } else {
            BigInt best = 0;
            for (Index i = t; i < rows; ++i)
                for (Index j = t; j < cols; ++j) {
                    if (s(i, j) == 0)
                        continue;
                    const BigInt a = abs_value(s(i, j));
                    if (pi < 0 || a < best) {
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
        }
        if (pi < 0)
            break;

        red.swap_rows(t, pi);
        swap_cols(t, pj);
        last_pivot_origin = origin[static_cast<std::size_t>(t)];

        for (;;) {
            bool clean = true;
            for (Index i = t + 1; i < rows; ++i) {
                if (s(i, t) == 0)
                    continue;
                red.sub_row(i, t, BigInt(s(i, t) / s(t, t)));
                if (s(i, t) != 0)
                    clean = false;
            }
            for (Index j = t + 1; j < cols; ++j) {
                if (s(t, j) == 0)
                    continue;
                red.sub_col(j, t, BigInt(s(t, j) / s(t, t)));
                if (s(t, j) != 0)
                    clean = false;
            }
            if (!clean) {
                // a remainder survived: move the smallest one into the pivot slot
                Index bi = t;
                Index bj = t;
                BigInt best = abs_value(s(t, t));
                for (Index i = t + 1; i < rows; ++i)
                    if (s(i, t) != 0 && abs_value(s(i, t)) < best) {
                        best = abs_value(s(i, t));
                        bi = i;
                        bj = t;
                    }
                for (Index j = t + 1; j < cols; ++j)
                    if (s(t, j) != 0 && abs_value(s(t, j)) < best) {
                        best = abs_value(s(t, j));
                        bi = t;
                        bj = j;
                    }
                red.swap_rows(t, bi);
                swap_cols(t, bj);
                continue;
            }
            // divisibility of the trailing block by the pivot
            Index bad_row = -1;
            for (Index i = t + 1; i < rows && bad_row < 0; ++i)
                for (Index j = t + 1; j < cols; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        bad_row = i;
                        break;
                    }
            if (bad_row < 0)
                break;
            red.sub_row(t, bad_row, BigInt(-1));
        }
        if (s(t, t) < 0) {
            s.row(t) *= BigInt(-1);
            out.U.row(t) *= BigInt(-1);
        }
    }
    return out;
}

HermiteDecomposition hermite_normal_form(const IntMatrix& b)
{
    const Index rows = b.rows();
    const Index cols = b.cols();
    IntMatrix h = b;
    IntMatrix u = IntMatrix::Identity(rows, rows);

    auto sub_row = [&](Index target, Index source, const BigInt& q) {
        h.row(target) -= q * h.row(source);
        u.row(target) -= q * u.row(source);
    };
    auto swap_rows = [&](Index a, Index c) {
        if (a == c)
            return;
        h.row(a).swap(h.row(c));
        u.row(a).swap(u.row(c));
    };

    std::vector<Index> pivot_cols;
    std::vector<Index> free_cols;
    Index t = 0;
    for (Index j = 0; j < cols; ++j) {
        if (t == rows) {
            free_cols.push_back(j);
            continue;
        }
        for (;;) {
            Index p = -1;
            for (Index i = t; i < rows; ++i)
                if (h(i, j) != 0 && (p < 0 || abs_value(h(i, j)) < abs_value(h(p, j))))
                    p = i;
            if (p < 0)
                break;
            swap_rows(t, p);
            bool done = true;
            for (Index i = t + 1; i < rows; ++i) {
                if (h(i, j) == 0)
                    continue;
                sub_row(i, t, BigInt(h(i, j) / h(t, j)));
                if (h(i, j) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (h(t, j) == 0) {
            free_cols.push_back(j);
            continue;
        }
        if (h(t, j) < 0) {
            h.row(t) *= BigInt(-1);
            u.row(t) *= BigInt(-1);
        }
        for (Index i = 0; i < t; ++i) {
            BigInt q = h(i, j) / h(t, j);
            if (h(i, j) - q * h(t, j) < 0)
                q -= 1;
            if (q != 0)
                sub_row(i, t, q);
        }
        pivot_cols.push_back(j);
        ++t;
    }
    if (t < rows)
        throw DomainError("rank deficient");

    HermiteDecomposition out;
    out.U = u;
    out.colperm = pivot_cols;
    out.colperm.insert(out.colperm.end(), free_cols.begin(), free_cols.end());
    out.H.resize(rows, cols);
    for (Index k = 0; k < cols; ++k)
        out.H.col(k) = h.col(out.colperm[static_cast<std::size_t>(k)]);
    return out;
}

bool UnimodularTransform::integral() const
{
    return std::all_of(denominators.begin(), denominators.end(),
                       [](const BigInt& x) { return x == 1; });
}

IntMatrix UnimodularTransform::integer_matrix() const
{
    if (!integral())
        throw DomainError("transform has rational rows");
    IntMatrix out(M.rows(), M.cols());
    for (Index i = 0; i < M.rows(); ++i)
        for (Index j = 0; j < M.cols(); ++j)
            out(i, j) = BigInt(boost::multiprecision::numerator(M(i, j)));
    return out;
}

namespace {

std::vector<BigInt> row_denominators(const RatMatrix& m)
{
    std::vector<BigInt> out;
    for (Index i = 0; i < m.rows(); ++i) {
        BigInt den = 1;
        for (Index j = 0; j < m.cols(); ++j)
            den = lcm(den, BigInt(boost::multiprecision::denominator(m(i, j))));
        out.push_back(den);
    }
    return out;
}

} // namespace

UnimodularTransform identity_transform(Index n, Index d)
{
    UnimodularTransform t;
    t.n = n;
    t.d = d;
    t.M = RatMatrix::Identity(n, n);
    t.denominators.assign(static_cast<std::size_t>(n), BigInt(1));
    return t;
}

UnimodularTransform build_unimodular_transform(const IntMatrix& b, Index n)
{
    const Index d = b.rows();
    if (b.cols() != n)
        throw DomainError("kernel basis has the wrong number of columns");
    if (d == 0)
        return identity_transform(n, 0);
    if (rank(b) < d)
        throw DomainError("rank deficient");

    UnimodularTransform t;
    t.n = n;
    t.d = d;

    const SmithDecomposition smith = smith_normal_form(b);
    const auto diag = smith.diagonal();
    const bool unit_smith = std::all_of(diag.begin(), diag.end(),
                                        [](const BigInt& x) { return x == 1; });

    if (is_identity(smith.U)) {
        t.construction = UnimodularTransform::Construction::IdentityU;
        t.M = cast_matrix<Rational>(unimodular_inverse(smith.V));
    } else if (unit_smith) {
        t.construction = UnimodularTransform::Construction::UnitSmith;
        IntMatrix e = IntMatrix::Identity(n, n);
        e.topLeftCorner(d, d) = unimodular_inverse(smith.U);
        const IntMatrix m = e * unimodular_inverse(smith.V);
        t.M = cast_matrix<Rational>(m);
    } else {
        t.construction = UnimodularTransform::Construction::Hermite;
        const HermiteDecomposition herm = hermite_normal_form(b);
        t.M = RatMatrix::Zero(n, n);
        for (Index i = 0; i < d; ++i)
            for (Index j = 0; j < n; ++j)
                t.M(i, j) = Rational(b(i, j)) / Rational(herm.H(i, i));
        for (Index k = d; k < n; ++k)
            t.M(k, herm.colperm[static_cast<std::size_t>(k)]) = 1;
    }
    t.denominators = row_denominators(t.M);
    return t;
}

} // namespace tropism
