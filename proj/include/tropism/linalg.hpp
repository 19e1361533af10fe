/**
 * Exact linear algebra over the integers and over exact fields.
 *
 * Field routines (rref, rank, determinant, inverse, solve) are templates over
 * any scalar providing the field operations and an `is_zero` overload; they
 * are instantiated for Rational and for Cyclotomic.  Integer normal forms and
 * the monomial coordinate transform live in linalg.cpp.
 */

#ifndef TROPISM_LINALG_HPP
#define TROPISM_LINALG_HPP

#include <optional>
#include <utility>
#include <vector>

#include "tropism/scalar.hpp"

namespace tropism {

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const BigInt& x) { return x == 0; }

/// Reduced row echelon form; returns the pivot column of each nonzero row.
template <typename Field>
std::vector<Eigen::Index> rref_in_place(Matrix<Field>& m)
{
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index p = row;
        while (p < m.rows() && is_zero(m(p, col)))
            ++p;
        if (p == m.rows())
            continue;
        if (p != row)
            m.row(p).swap(m.row(row));
        const Field inv = Field(1) / m(row, col);
        for (Eigen::Index j = col; j < m.cols(); ++j)
            m(row, j) = m(row, j) * inv;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i == row || is_zero(m(i, col)))
                continue;
            const Field f = m(i, col);
            for (Eigen::Index j = col; j < m.cols(); ++j)
                m(i, j) = m(i, j) - f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <typename Field>
std::pair<Matrix<Field>, std::vector<Eigen::Index>> rref(Matrix<Field> m)
{
    auto pivots = rref_in_place(m);
    return {std::move(m), std::move(pivots)};
}

template <typename Field>
Eigen::Index rank(const Matrix<Field>& m)
{
    Matrix<Field> copy = m;
    return static_cast<Eigen::Index>(rref_in_place(copy).size());
}

inline Eigen::Index rank(const IntMatrix& m)
{
    return rank(cast_matrix<Rational>(m));
}

/// Determinant by Gaussian elimination over a field.
template <typename Field>
Field determinant(Matrix<Field> m)
{
    if (m.rows() != m.cols())
        throw DomainError("determinant of a non-square matrix");
    Field det(1);
    const Eigen::Index n = m.rows();
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index p = col;
        while (p < n && is_zero(m(p, col)))
            ++p;
        if (p == n)
            return Field(0);
        if (p != col) {
            m.row(p).swap(m.row(col));
            det = Field(0) - det;
        }
        det = det * m(col, col);
        const Field inv = Field(1) / m(col, col);
        for (Eigen::Index i = col + 1; i < n; ++i) {
            if (is_zero(m(i, col)))
                continue;
            const Field f = m(i, col) * inv;
            for (Eigen::Index j = col; j < n; ++j)
                m(i, j) = m(i, j) - f * m(col, j);
        }
    }
    return det;
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
BigInt determinant(const IntMatrix& m);

/// Exact inverse; throws DomainError when singular.
template <typename Field>
Matrix<Field> inverse(const Matrix<Field>& m)
{
    if (m.rows() != m.cols())
        throw DomainError("inverse of a non-square matrix");
    const Eigen::Index n = m.rows();
    Matrix<Field> aug(n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            aug(i, j) = m(i, j);
            aug(i, n + j) = Field(i == j ? 1 : 0);
        }
    auto pivots = rref_in_place(aug);
    if (static_cast<Eigen::Index>(pivots.size()) < n || (n > 0 && pivots[n - 1] >= n))
        throw DomainError("singular matrix");
    return aug.rightCols(n);
}

/// Inverse of a unimodular integer matrix, checked to be integral.
IntMatrix unimodular_inverse(const IntMatrix& m);

/**
 * Solve m * x = rhs.  Returns the particular solution with all free
 * variables set to zero, or nullopt when the system is inconsistent.
 */
template <typename Field>
std::optional<Vector<Field>> solve_particular(const Matrix<Field>& m, const Vector<Field>& rhs)
{
    Matrix<Field> aug(m.rows(), m.cols() + 1);
    aug.leftCols(m.cols()) = m;
    aug.col(m.cols()) = rhs;
    auto pivots = rref_in_place(aug);
    Vector<Field> x(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        x(j) = Field(0);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == m.cols())
            return std::nullopt;
        x(pivots[r]) = aug(static_cast<Eigen::Index>(r), m.cols());
    }
    return x;
}

bool is_identity(const IntMatrix& m);

/// Lexicographic comparison of two integer row vectors.
bool lex_less(const IntVector& a, const IntVector& b);

/**
 * Integer basis of {x : A x = 0} in the rows of the result.  Rows are
 * primitive and sorted lexicographically.  Throws DomainError("rank deficient")
 * when A does not have full row rank.
 */
IntMatrix kernel_basis(const IntMatrix& a);

/// U * B * V = S with U, V unimodular and S diagonal with a divisibility chain.
struct SmithDecomposition
{
    IntMatrix U;
    IntMatrix S;
    IntMatrix V;

    std::vector<BigInt> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& b);

/**
 * U * B.P = H with H upper triangular with positive diagonal, where P moves the
 * pivot columns to the front in stable order (`colperm[k]` is the original
 * column placed at position k).
 */
struct HermiteDecomposition
{
    IntMatrix U;
    IntMatrix H;
    std::vector<Eigen::Index> colperm;

    std::vector<BigInt> diagonal() const;
};

HermiteDecomposition hermite_normal_form(const IntMatrix& b);

/**
 * Monomial coordinate change x = y^M.  Coordinate x_j equals
 * prod_i y_i^{M(i, j)}, so a monomial x^a becomes y^{M a}: the exponent of y_i
 * is the inner product of a with row i of M.  The first d rows span the
 * row space of the kernel basis the transform was built from.
 */
struct UnimodularTransform
{
    enum class Construction
    {
        IdentityU,   ///< U = I, M = V^{-1}
        UnitSmith,   ///< U != I, S = [I | 0], M = E V^{-1}
        Hermite      ///< M = [D^{-1} B ; 0 I]
    };

    RatMatrix M;
    Eigen::Index n = 0;
    Eigen::Index d = 0;
    std::vector<BigInt> denominators;  ///< lcm of the entry denominators of each row
    Construction construction = Construction::IdentityU;

    bool integral() const;
    /// Throws DomainError when some row has a nontrivial denominator.
    IntMatrix integer_matrix() const;
};

/// Build the transform eliminating the row space of B (d x n, full row rank).
UnimodularTransform build_unimodular_transform(const IntMatrix& b, Eigen::Index n);

/// Identity transform of dimension n with d parameter rows.
UnimodularTransform identity_transform(Eigen::Index n, Eigen::Index d);

} // namespace tropism

#endif // TROPISM_LINALG_HPP
