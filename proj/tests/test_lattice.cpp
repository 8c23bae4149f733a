#include "corpus.hpp"
#include "oracles.hpp"

#include "ncample/errors.hpp"
#include "ncample/lattice.hpp"

#include <doctest.h>

using namespace ncample;

namespace {

Matrix random_matrix(std::size_t rho, long bound, corpus::Rng& rng) {
    Matrix m(rho);
    for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t j = 0; j < rho; ++j) m(i, j) = rng.uniform(-bound, bound);
    return m;
}

/// Random unimodular matrix as a product of elementary moves.
Matrix random_unimodular(std::size_t rho, corpus::Rng& rng) {
    Matrix m = Matrix::identity(rho);
    for (int step = 0; step < 4; ++step) {
        const std::size_t i = rng.index(rho), j = rng.index(rho);
        if (i == j) continue;
        Matrix e = Matrix::identity(rho);
        e(i, j) = rng.uniform(-1, 1);
        m = m * e;
    }
    if (rng.index(2) == 0) {
        Matrix flip = Matrix::identity(rho);
        flip(0, 0) = -1;
        m = m * flip;
    }
    return m;
}

/// Cofactor expansion, for comparison with the recurrence.
Integer det_laplace(const Matrix& m) {
    const std::size_t n = m.rho();
    if (n == 1) return m(0, 0);
    Integer out = 0;
    for (std::size_t c = 0; c < n; ++c) {
        Matrix minor(n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, jj = 0; j < n; ++j)
                if (j != c) minor(i - 1, jj++) = m(i, j);
        const Integer term = m(0, c) * det_laplace(minor);
        out += (c % 2 == 0) ? term : Integer(-term);
    }
    return out;
}

}  // namespace

TEST_CASE("char_poly of small matrices") {
    CHECK(char_poly(Matrix{{0, 1}, {1, 0}}) == UniPoly({-1, 0, 1}));
    CHECK(char_poly(Matrix{{2, 1}, {1, 1}}) == UniPoly({1, -3, 1}));
    CHECK(char_poly(Matrix::identity(3)) == UniPoly({-1, 3, -3, 1}));
}

TEST_CASE("char_poly agrees with det(xI - M) evaluated at integers") {
    corpus::Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rho = 1 + rng.index(4);
        const Matrix m = random_matrix(rho, 3, rng);
        const UniPoly p = char_poly(m);
        REQUIRE(p.degree() == static_cast<long>(rho));
        for (long x = -3; x <= 3; ++x) {
            Matrix shifted = m * Integer(-1);
            for (std::size_t i = 0; i < rho; ++i) shifted(i, i) += x;
            CHECK(p.evaluate(x) == det_laplace(shifted));
        }
        CHECK(evaluate_at(p, m).is_zero());
    }
}

TEST_CASE("determinant matches cofactor expansion") {
    corpus::Rng rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const Matrix m = random_matrix(1 + rng.index(4), 3, rng);
        CHECK(determinant(m) == det_laplace(m));
    }
}

TEST_CASE("inverse of unimodular matrices") {
    corpus::Rng rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const Matrix m = random_unimodular(1 + rng.index(4), rng);
        const Matrix inv = inverse(m);
        CHECK((m * inv).is_identity());
        CHECK((inv * m).is_identity());
        CHECK(signed_power(m, -2) == inv * inv);
    }
    CHECK_THROWS_AS(inverse(Matrix{{2, 0}, {0, 1}}), NonInvertible);
}

TEST_CASE("power and geometric_sum against repeated multiplication") {
    corpus::Rng rng(14);
    for (int trial = 0; trial < 40; ++trial) {
        const Matrix m = random_matrix(1 + rng.index(3), 2, rng);
        Matrix pw = Matrix::identity(m.rho());
        Matrix sum(m.rho());
        for (std::uint64_t n = 0; n <= 9; ++n) {
            CHECK(power(m, n) == pw);
            CHECK(geometric_sum(m, n) == sum);
            sum = sum + pw;
            pw = oracle::mul_naive(pw, m);
        }
    }
}

TEST_CASE("nilpotency degree") {
    CHECK(nilpotency_degree(Matrix{{0, 1}, {0, 0}}) == 2);
    CHECK(nilpotency_degree(Matrix{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}) == 3);
    CHECK(nilpotency_degree(Matrix::zero(2)) == 1);
    CHECK_THROWS_AS(nilpotency_degree(Matrix::identity(2)), NotNilpotent);
}

TEST_CASE("cyclotomic polynomials and candidates") {
    CHECK(cyclotomic(1) == UniPoly({-1, 1}));
    CHECK(cyclotomic(4) == UniPoly({1, 0, 1}));
    CHECK(cyclotomic(6) == UniPoly({1, -1, 1}));
    CHECK(cyclotomic(12) == UniPoly({1, 0, -1, 0, 1}));
    for (unsigned d = 1; d <= 30; ++d) CHECK(cyclotomic(d).degree() == static_cast<long>(euler_phi(d)));
    CHECK(cyclotomic_candidates(1) == std::vector<unsigned>{1, 2});
    CHECK(cyclotomic_candidates(2) == std::vector<unsigned>{1, 2, 3, 4, 6});
    CHECK(cyclotomic_candidates(4) == std::vector<unsigned>{1, 2, 3, 4, 5, 6, 8, 10, 12});
}

TEST_CASE("quasi-unipotence of the reference matrices") {
    const auto swap = is_quasi_unipotent(Matrix{{0, 1}, {1, 0}});
    CHECK(swap.flag);
    CHECK(swap.order == 2u);
    CHECK(swap.factors == std::vector<unsigned>{1, 2});

    const auto hyperbolic = is_quasi_unipotent(Matrix{{2, 1}, {1, 1}});
    CHECK_FALSE(hyperbolic.flag);
    CHECK_FALSE(hyperbolic.order.has_value());

    const auto id = is_quasi_unipotent(Matrix::identity(3));
    CHECK(id.flag);
    CHECK(id.order == 1u);

    CHECK(is_quasi_unipotent(Matrix{{0, -1}, {1, -1}}).order == 3u);
    CHECK(is_quasi_unipotent(Matrix{{0, -1}, {1, 0}}).order == 4u);
    CHECK(is_quasi_unipotent(Matrix{{1, 1}, {0, 1}}).order == 1u);
    CHECK_THROWS_AS(is_quasi_unipotent(Matrix{{2, 0}, {0, 1}}), NonInvertible);
}

TEST_CASE("quasi-unipotence agrees with brute-force power and trace oracles") {
    corpus::Rng rng(15);
    int qu = 0, not_qu = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t rho = 1 + rng.index(4);
        const Matrix m = random_unimodular(rho, rng);
        const auto result = is_quasi_unipotent(m);
        const auto brute = oracle::unipotent_power(m, 2 * rho * rho * 6);
        if (result.flag) {
            ++qu;
            REQUIRE(brute.has_value());
            CHECK(*result.order == *brute);
            const Matrix n = power(m, *result.order) - Matrix::identity(rho);
            CHECK(power(n, rho).is_zero());
        } else {
            ++not_qu;
            CHECK_FALSE(brute.has_value());
            CHECK(oracle::trace_escapes(m, 40));
        }
    }
    CHECK(qu > 10);
    CHECK(not_qu > 10);
}
