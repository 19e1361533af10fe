#include "doctest.h"

#include <random>

#include "tropism/linalg.hpp"
#include "oracles.hpp"

using namespace tropism;

namespace {

const IntMatrix kExponents = to_int_matrix({{2, 1, 4, 3}, {1, 1, 1, 1}});
const IntMatrix kKernel = to_int_matrix({{-3, 2, 1, 0}, {-2, 1, 0, 1}});
const IntMatrix kHermiteCase = to_int_matrix({{2, 6, 17, 9}, {4, 14, 13, 3}});

bool is_unimodular(const IntMatrix& m)
{
    const BigInt det = determinant(m);
    return det == 1 || det == -1;
}

void check_smith(const IntMatrix& b)
{
    const SmithDecomposition s = smith_normal_form(b);
    CHECK(s.U * b * s.V == s.S);
    CHECK(is_unimodular(s.U));
    CHECK(is_unimodular(s.V));
    for (Eigen::Index i = 0; i < s.S.rows(); ++i)
        for (Eigen::Index j = 0; j < s.S.cols(); ++j)
            if (i != j)
                CHECK(s.S(i, j) == 0);
    const auto diag = s.diagonal();
    for (std::size_t k = 0; k < diag.size(); ++k) {
        CHECK(diag[k] >= 0);
        if (k + 1 < diag.size() && diag[k + 1] != 0)
            CHECK(diag[k + 1] % diag[k] == 0);
    }
    CHECK(diag == oracle::smith_diagonal(b));
}

} // namespace

TEST_CASE("kernel basis of the binomial example spans the stated null space")
{
    const IntMatrix b = kernel_basis(kExponents);
    CHECK(b == kKernel);
    CHECK((kExponents * b.transpose()).isZero());
}

TEST_CASE("kernel basis edge cases")
{
    CHECK(kernel_basis(IntMatrix::Identity(2, 2)).rows() == 0);
    const IntMatrix b = kernel_basis(to_int_matrix({{1, 1}}));
    REQUIRE(b.rows() == 1);
    CHECK((b == to_int_matrix({{-1, 1}}) || b == to_int_matrix({{1, -1}})));
    CHECK_THROWS_AS(kernel_basis(to_int_matrix({{1, 2}, {2, 4}})), DomainError);
}

TEST_CASE("kernel rows are primitive and annihilated")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> entry(-20, 20);
    std::uniform_int_distribution<int> dim(1, 6);
    int tested = 0;
    while (tested < 150) {
        const int n = dim(rng);
        const int k = std::uniform_int_distribution<int>(1, n)(rng);
        IntMatrix a(k, n);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < n; ++j)
                a(i, j) = entry(rng);
        if (rank(a) < k)
            continue;
        ++tested;
        const IntMatrix b = kernel_basis(a);
        CHECK(b.rows() == n - k);
        CHECK((a * b.transpose()).isZero());
        if (b.rows() > 0)
            CHECK(rank(b) == b.rows());
        for (Eigen::Index i = 0; i < b.rows(); ++i) {
            BigInt g = 0;
            for (Eigen::Index j = 0; j < n; ++j)
                g = gcd(g, b(i, j));
            CHECK(g == 1);
        }
    }
}

TEST_CASE("smith normal form of the paper kernel is [I | 0]")
{
    const SmithDecomposition s = smith_normal_form(kKernel);
    CHECK(s.S == to_int_matrix({{1, 0, 0, 0}, {0, 1, 0, 0}}));
    check_smith(kKernel);
}

TEST_CASE("smith normal form edge cases")
{
    const IntMatrix zero = IntMatrix::Zero(2, 3);
    const SmithDecomposition s = smith_normal_form(zero);
    CHECK(s.S == zero);
    CHECK(is_identity(s.U));
    CHECK(is_identity(s.V));
    // determinantal divisors: d1 = 1, d2 = 2
    CHECK(smith_normal_form(kHermiteCase).diagonal() == std::vector<BigInt>{1, 2});
    check_smith(kHermiteCase);
}

TEST_CASE("smith normal form is deterministic")
{
    const auto a = smith_normal_form(kHermiteCase);
    const auto b = smith_normal_form(kHermiteCase);
    CHECK(a.U == b.U);
    CHECK(a.V == b.V);
}

TEST_CASE("smith normal form of random matrices")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> entry(-20, 20);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        IntMatrix b(dim(rng), dim(rng));
        for (Eigen::Index i = 0; i < b.rows(); ++i)
            for (Eigen::Index j = 0; j < b.cols(); ++j)
                b(i, j) = entry(rng);
        check_smith(b);
    }
}

TEST_CASE("hermite normal form")
{
    SUBCASE("rational-exponent example")
    {
        const HermiteDecomposition h = hermite_normal_form(kHermiteCase);
        CHECK(h.U * kHermiteCase == h.H);
        CHECK(h.diagonal() == std::vector<BigInt>{2, 2});
        CHECK(h.diagonal() == oracle::hermite_diagonal(kHermiteCase));
    }
    SUBCASE("identity")
    {
        const HermiteDecomposition h = hermite_normal_form(IntMatrix::Identity(3, 3));
        CHECK(is_identity(h.H));
        CHECK(is_identity(h.U));
    }
    SUBCASE("already triangular")
    {
        const HermiteDecomposition h = hermite_normal_form(to_int_matrix({{3, 0}, {0, 5}}));
        CHECK(h.diagonal() == std::vector<BigInt>{3, 5});
    }
    SUBCASE("zero column moves right")
    {
        const IntMatrix b = to_int_matrix({{0, 2, 1}, {0, 0, 3}});
        const HermiteDecomposition h = hermite_normal_form(b);
        CHECK(h.colperm == std::vector<Eigen::Index>{1, 2, 0});
        CHECK(h.H(0, 0) != 0);
        CHECK(h.H(1, 1) != 0);
    }
    CHECK_THROWS_AS(hermite_normal_form(to_int_matrix({{1, 2}, {2, 4}})), DomainError);
}

TEST_CASE("transform of the binomial example reproduces the displayed matrix")
{
    const UnimodularTransform t = build_unimodular_transform(kKernel, 4);
    // The displayed matrix uses x = y^M column-wise; ours is its transpose.
    const IntMatrix displayed = to_int_matrix({{-3, -2, 1, 0}, {2, 1, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}});
    CHECK(t.integral());
    CHECK(t.integer_matrix().transpose() == displayed);
    CHECK(abs(determinant(t.integer_matrix())) == 1);
}

TEST_CASE("transform construction cases")
{
    SUBCASE("identity block")
    {
        const UnimodularTransform t = build_unimodular_transform(to_int_matrix({{1, 0, 0}, {0, 1, 0}}), 3);
        CHECK(is_identity(t.integer_matrix()));
        CHECK(t.construction == UnimodularTransform::Construction::IdentityU);
    }
    SUBCASE("unit smith with U != I")
    {
        const IntMatrix b = to_int_matrix({{2, 3, 5}, {3, 4, 7}});
        const UnimodularTransform t = build_unimodular_transform(b, 3);
        CHECK(t.construction == UnimodularTransform::Construction::UnitSmith);
        CHECK(t.integer_matrix().topRows(2) == b);
        CHECK(abs(determinant(t.integer_matrix())) == 1);
    }
    SUBCASE("hermite with rational rows")
    {
        const UnimodularTransform t = build_unimodular_transform(kHermiteCase, 4);
        CHECK(t.construction == UnimodularTransform::Construction::Hermite);
        CHECK(t.denominators == std::vector<BigInt>{2, 2, 1, 1});
        CHECK(abs(determinant(t.M)) == 1);
        for (Eigen::Index i = 0; i < 2; ++i)
            for (Eigen::Index j = 0; j < 4; ++j)
                CHECK(t.M(i, j) * 2 == Rational(kHermiteCase(i, j)));
        // extended U times M is upper triangular with unit diagonal
        const HermiteDecomposition h = hermite_normal_form(kHermiteCase);
        RatMatrix ext = RatMatrix::Identity(4, 4);
        ext.topLeftCorner(2, 2) = cast_matrix<Rational>(h.U);
        const RatMatrix prod = ext * t.M;
        for (Eigen::Index i = 0; i < 4; ++i) {
            CHECK(abs(prod(i, i)) == 1);
            for (Eigen::Index j = 0; j < i; ++j)
                CHECK(prod(i, j) == 0);
        }
    }
}

TEST_CASE("transform eliminates the parameter rows for random kernels")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> entry(-6, 6);
    int tested = 0;
    while (tested < 100) {
        const int n = std::uniform_int_distribution<int>(2, 6)(rng);
        const int k = std::uniform_int_distribution<int>(1, n - 1)(rng);
        IntMatrix a(k, n);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < n; ++j)
                a(i, j) = entry(rng);
        if (rank(a) < k)
            continue;
        ++tested;
        const IntMatrix b = kernel_basis(a);
        const UnimodularTransform t = build_unimodular_transform(b, n);
        CHECK(abs(determinant(t.M)) == 1);
        // exponent of y_i in the image of x^a is <a, row i of M>
        const RatMatrix image = t.M * cast_matrix<Rational>(a).transpose();
        for (Eigen::Index i = 0; i < t.d; ++i)
            for (Eigen::Index r = 0; r < k; ++r)
                CHECK(image(i, r) == 0);
        for (Eigen::Index i = t.d; i < n; ++i)
            for (Eigen::Index r = 0; r < k; ++r)
                CHECK(is_integer(image(i, r)));
        // the parameter rows span the kernel
        RatMatrix stacked(2 * t.d, n);
        stacked.topRows(t.d) = t.M.topRows(t.d);
        stacked.bottomRows(t.d) = cast_matrix<Rational>(b);
        CHECK(rank(stacked) == t.d);
    }
}

TEST_CASE("determinant and inverse")
{
    CHECK(determinant(IntMatrix(IntMatrix::Identity(3, 3))) == 1);
    RatMatrix diag = RatMatrix::Zero(2, 2);
    diag(0, 0) = 2;
    diag(1, 1) = 3;
    CHECK(determinant(diag) == 6);
    const RatMatrix inv = inverse(diag);
    CHECK(inv(0, 0) == Rational(1, 2));
    CHECK(inv(1, 1) == Rational(1, 3));
    CHECK(inv * diag == RatMatrix::Identity(2, 2));
    CHECK_THROWS_AS(inverse(RatMatrix(RatMatrix::Zero(2, 2))), DomainError);
    CHECK(determinant(to_int_matrix({{2, 6, 1}, {4, 14, 13}, {1, 0, 3}}))
          == determinant(cast_matrix<Rational>(to_int_matrix({{2, 6, 1}, {4, 14, 13}, {1, 0, 3}}))));
}
