#include <catch2/catch_amalgamated.hpp>

#include "kerdock/linalg.hpp"
#include "kerdock/mub.hpp"
#include "test_helpers.hpp"

using namespace kerdock;
using testutil::max_abs_diff;
using testutil::random_matrix;

namespace {

ComplexMatrix reconstruct(const SvdResult& s) {
    ComplexMatrix us = s.u;
    for (std::size_t r = 0; r < us.rows(); ++r)
        for (std::size_t c = 0; c < us.cols(); ++c) us(r, c) *= s.singular_values[c];
    return us * hermitian(s.v);
}

double orthonormality_error(const ComplexMatrix& m) {
    const ComplexMatrix g = hermitian(m) * m;
    double worst = 0.0;
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c)
            worst = std::max(worst, std::abs(g(r, c) - (r == c ? 1.0 : 0.0)));
    return worst;
}

// independent pseudo-inverse for tall full-rank a with exactly 2 columns:
// (a^* a)^{-1} a^* with the 2x2 inverse written out.
ComplexMatrix normal_equations_pinv_2col(const ComplexMatrix& a) {
    REQUIRE(a.cols() == 2);
    const ComplexMatrix g = hermitian(a) * a;
    const Complex d = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    ComplexMatrix gi(2, 2);
    gi(0, 0) = g(1, 1) / d;
    gi(1, 1) = g(0, 0) / d;
    gi(0, 1) = -g(0, 1) / d;
    gi(1, 0) = -g(1, 0) / d;
    return gi * hermitian(a);
}

Complex cofactor_det3(const ComplexMatrix& m) {
    REQUIRE(m.rows() == 3);
    REQUIRE(m.cols() == 3);
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

}  // namespace

TEST_CASE("svd of simple matrices") {
    SECTION("identity") {
        const auto s = svd(ComplexMatrix::identity(2));
        REQUIRE(s.singular_values[0] == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(s.singular_values[1] == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("rank-deficient diagonal") {
        const ComplexMatrix a(2, 2, {Complex{3, 0}, {}, {}, {}});
        const auto s = svd(a);
        REQUIRE(s.singular_values[0] == Catch::Approx(3.0).margin(1e-12));
        REQUIRE(s.singular_values[1] == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(orthonormality_error(s.u) < 1e-10);
        REQUIRE(orthonormality_error(s.v) < 1e-10);
        REQUIRE(max_abs_diff(reconstruct(s), a) < 1e-12);
    }
    SECTION("sum of squared singular values matches squared Frobenius norm") {
        std::mt19937_64 gen(42);
        const ComplexMatrix a = random_matrix(gen, 4, 4);
        double f2 = 0.0;  // direct Frobenius-norm oracle
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) f2 += std::norm(a(r, c));
        double s2 = 0.0;
        for (double v : svd(a).singular_values) s2 += v * v;
        REQUIRE(s2 == Catch::Approx(f2).epsilon(1e-9));
    }
    SECTION("non-finite entries rejected") {
        ComplexMatrix a(2, 2);
        a(0, 0) = Complex{std::nan(""), 0.0};
        REQUIRE_THROWS_AS(svd(a), NonFiniteInput);
    }
}

TEST_CASE("svd round trip on random matrices") {
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    for (int i = 0; i < 10000; ++i) {
        const ComplexMatrix a = random_matrix(gen, dim(gen), dim(gen));
        const auto s = svd(a);
        const double fn = frobenius_norm(a);
        REQUIRE(frobenius_norm(sub(reconstruct(s), a)) <= 1e-9 * std::max(fn, 1e-30));
        REQUIRE(orthonormality_error(s.u) < 1e-10);
        REQUIRE(orthonormality_error(s.v) < 1e-10);
        for (std::size_t k = 0; k + 1 < s.singular_values.size(); ++k)
            REQUIRE(s.singular_values[k] >= s.singular_values[k + 1]);
    }
}

TEST_CASE("pseudo inverse") {
    SECTION("unitary matrix inverts to its hermitian") {
        const double s = 1.0 / std::sqrt(2.0);
        const ComplexMatrix u(2, 2, {Complex{s, 0}, Complex{s, 0}, Complex{0, s}, Complex{0, -s}});
        REQUIRE(max_abs_diff(pseudo_inverse(u), hermitian(u)) < 1e-12);
    }
    SECTION("diagonal") {
        const ComplexMatrix a(2, 2, {Complex{2, 0}, {}, {}, Complex{4, 0}});
        const ComplexMatrix p = pseudo_inverse(a);
        REQUIRE(std::abs(p(0, 0) - Complex{0.5, 0}) < 1e-14);
        REQUIRE(std::abs(p(1, 1) - Complex{0.25, 0}) < 1e-14);
    }
    SECTION("tall full-rank matrix against the normal-equations oracle") {
        std::mt19937_64 gen(11);
        for (int i = 0; i < 200; ++i) {
            const ComplexMatrix a = random_matrix(gen, 4, 2);
            const ComplexMatrix p = pseudo_inverse(a);
            REQUIRE(max_abs_diff(p * a, ComplexMatrix::identity(2)) < 1e-8);
            REQUIRE(max_abs_diff(p, normal_equations_pinv_2col(a)) < 1e-8);
        }
    }
    SECTION("all four Moore-Penrose identities") {
        std::mt19937_64 gen(12);
        for (int i = 0; i < 200; ++i) {
            const ComplexMatrix a = random_matrix(gen, 4, 2);
            const ComplexMatrix p = pseudo_inverse(a);
            REQUIRE(max_abs_diff(a * p * a, a) < 1e-8);
            REQUIRE(max_abs_diff(p * a * p, p) < 1e-8);
            REQUIRE(max_abs_diff(hermitian(a * p), a * p) < 1e-8);
            REQUIRE(max_abs_diff(hermitian(p * a), p * a) < 1e-8);
        }
    }
    SECTION("rank deficiency rejected") {
        ComplexMatrix a(2, 2);
        a(0, 0) = 1.0;
        a(1, 1) = 1e-13;
        REQUIRE_THROWS_AS(pseudo_inverse(a), RankDeficient);
        ComplexMatrix wide(2, 3);
        REQUIRE_THROWS_AS(pseudo_inverse(wide), RankDeficient);
    }
}

TEST_CASE("determinant") {
    SECTION("identity and diagonal") {
        REQUIRE(std::abs(det(ComplexMatrix::identity(4)) - Complex{1, 0}) < 1e-14);
        const ComplexMatrix d(2, 2, {Complex{0, 1}, {}, {}, Complex{0, 1}});
        REQUIRE(std::abs(det(d) - Complex{-1, 0}) < 1e-14);
    }
    SECTION("non-square rejected") {
        REQUIRE_THROWS_AS(det(ComplexMatrix(2, 3)), DimensionMismatch);
    }
    SECTION("3x3 basis submatrix magnitude, cofactor oracle") {
        const auto mub = kerdock_mub_mt4();
        const ComplexMatrix s1 = mub.bases[1].dense();
        ComplexMatrix sub3(3, 3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) sub3(r, c) = s1(r, c);
        const Complex lu = det(sub3);
        const Complex co = cofactor_det3(sub3);
        REQUIRE(std::abs(lu - co) < 1e-13);
        REQUIRE(std::abs(lu) == Catch::Approx(0.5).margin(1e-13));
    }
    SECTION("det(AB) = det(A) det(B)") {
        std::mt19937_64 gen(13);
        for (int i = 0; i < 100; ++i) {
            const ComplexMatrix a = random_matrix(gen, 4, 4);
            const ComplexMatrix b = random_matrix(gen, 4, 4);
            REQUIRE(std::abs(det(a * b) - det(a) * det(b)) < 1e-10);
        }
    }
}

TEST_CASE("plumbing operations") {
    SECTION("hermitian conjugates") {
        const ComplexMatrix j(1, 1, {Complex{0, 1}});
        REQUIRE(hermitian(j)(0, 0) == Complex{0, -1});
        std::mt19937_64 gen(14);
        const ComplexMatrix a = random_matrix(gen, 3, 4);
        REQUIRE(max_abs_diff(hermitian(hermitian(a)), a) == 0.0);
    }
    SECTION("identity is neutral") {
        std::mt19937_64 gen(15);
        const ComplexMatrix a = random_matrix(gen, 4, 4);
        REQUIRE(max_abs_diff(a * ComplexMatrix::identity(4), a) == 0.0);
    }
    SECTION("dimension mismatch rejected") {
        REQUIRE_THROWS_AS(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), DimensionMismatch);
        REQUIRE_THROWS_AS(add(ComplexMatrix(2, 3), ComplexMatrix(3, 2)), DimensionMismatch);
    }
    SECTION("Frobenius norm of the order-2 Hadamard matrix") {
        REQUIRE(frobenius_norm(sylvester_hadamard(2)) == Catch::Approx(2.0).margin(1e-15));
    }
    SECTION("dimension cap enforced") {
        REQUIRE_THROWS_AS(ComplexMatrix(9, 2), DimensionMismatch);
        REQUIRE_THROWS_AS(ComplexMatrix(0, 2), DimensionMismatch);
    }
}
