#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "precis/errors.hpp"
#include "precis/kernels.hpp"
#include "precis/linalg.hpp"
#include "precis/rng.hpp"

using namespace precis;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::fabs(a(i, j) - b(i, j)));
    return m;
}

SymmetricMatrix sym(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (auto& r : rows) {
        std::size_t j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return SymmetricMatrix::from_exact(std::move(m));
}

}  // namespace

TEST_CASE("cholesky on identity and diagonals") {
    CholeskyFactor f = cholesky_pd(SymmetricMatrix::identity(3));
    CHECK(max_abs_diff(f.lower, Matrix::identity(3)) == 0.0);

    CholeskyFactor d = cholesky_pd(sym({{4.0, 0.0}, {0.0, 9.0}}));
    CHECK(d.lower(0, 0) == doctest::Approx(2.0));
    CHECK(d.lower(1, 1) == doctest::Approx(3.0));
    CHECK(d.lower(1, 0) == 0.0);
}

TEST_CASE("cholesky by hand elimination") {
    CholeskyFactor f = cholesky_pd(sym({{2.0, 1.0}, {1.0, 2.0}}));
    CHECK(f.lower(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(f.lower(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(f.lower(1, 1) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
}

TEST_CASE("cholesky reproduces the source within 1e-10 relative") {
    Rng rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        SymmetricMatrix m = oracles::random_spd(12, rng, 0.2, 5.0);
        CholeskyFactor f = cholesky_pd(m);
        Matrix prod = matmul(f.lower, f.lower.transposed());
        double rel = max_abs_diff(prod, m.mat()) /
                     kernels::max_abs(m.mat().data(), m.mat().size());
        CHECK(rel < 1e-10);
        for (std::size_t i = 0; i < 12; ++i) CHECK(f.lower(i, i) > 0.0);
    }
}

TEST_CASE("non-pd matrices are rejected") {
    CHECK_THROWS_AS(cholesky_pd(sym({{1.0, 2.0}, {2.0, 1.0}})), NotPositiveDefinite);
    CHECK_THROWS_AS(cholesky_pd(sym({{0.0, 0.0}, {0.0, 0.0}})), NotPositiveDefinite);
    // Pivot at 1e-12 of the max diagonal counts as non-PD.
    CHECK_THROWS_AS(cholesky_pd(sym({{1.0, 0.0}, {0.0, 1e-13}})), NotPositiveDefinite);
}

TEST_CASE("log determinant") {
    CHECK(log_det_pd(SymmetricMatrix::identity(5)) == doctest::Approx(0.0));
    CHECK(log_det_pd(sym({{2.0, 0.0}, {0.0, 2.0}})) ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));

    // Eigenvalue-product oracle on a random PD 4x4.
    Rng rng(11);
    SymmetricMatrix m = oracles::random_spd(4, rng, 0.3, 3.0);
    EigenSym e = eigen_sym(m);
    double expected = 0.0;
    for (double v : e.values) expected += std::log(v);
    CHECK(log_det_pd(m) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("invert_pd basics and adjugate case") {
    SymmetricMatrix inv = invert_pd(SymmetricMatrix::identity(4));
    CHECK(max_abs_diff(inv.mat(), Matrix::identity(4)) < 1e-14);

    SymmetricMatrix d = invert_pd(sym({{2.0, 0.0}, {0.0, 4.0}}));
    CHECK(d(0, 0) == doctest::Approx(0.5));
    CHECK(d(1, 1) == doctest::Approx(0.25));

    SymmetricMatrix a = invert_pd(sym({{2.0, 1.0}, {1.0, 2.0}}));
    CHECK(a(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(a(0, 1) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("invert_pd satisfies M * Minv = I and involution") {
    Rng rng(23);
    for (std::size_t p : {3ul, 10ul, 25ul}) {
        SymmetricMatrix m = oracles::random_spd(p, rng, 0.2, 4.0);
        SymmetricMatrix inv = invert_pd(m);
        Matrix prod = matmul(m.mat(), inv.mat());
        CHECK(max_abs_diff(prod, Matrix::identity(p)) < 1e-8);
        SymmetricMatrix back = invert_pd(inv);
        CHECK(max_abs_diff(back.mat(), m.mat()) < 1e-6);
        CHECK(log_det_pd(inv) == doctest::Approx(-log_det_pd(m)).epsilon(1e-8));
    }
}

TEST_CASE("symmetric square root") {
    CHECK(max_abs_diff(sym_matrix_sqrt(SymmetricMatrix::identity(3)).mat(),
                       Matrix::identity(3)) < 1e-12);

    SymmetricMatrix d = sym_matrix_sqrt(sym({{4, 0, 0}, {0, 9, 0}, {0, 0, 16}}));
    CHECK(d(0, 0) == doctest::Approx(2.0));
    CHECK(d(1, 1) == doctest::Approx(3.0));
    CHECK(d(2, 2) == doctest::Approx(4.0));

    // Eigenvalues 9 and 1 -> roots 3 and 1.
    SymmetricMatrix r = sym_matrix_sqrt(sym({{5.0, 4.0}, {4.0, 5.0}}));
    CHECK(r(0, 0) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(r(0, 1) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("square root squares back on random psd up to p = 50") {
    Rng rng(31);
    for (std::size_t p : {5ul, 20ul, 50ul}) {
        SymmetricMatrix m = oracles::random_spd(p, rng, 0.0, 3.0);  // may touch 0
        SymmetricMatrix r = sym_matrix_sqrt(m);
        Matrix sq = matmul(r.mat(), r.mat());
        CHECK(max_abs_diff(sq, m.mat()) < 1e-8);
    }
}

TEST_CASE("asymmetric input is a validation error") {
    Matrix bad(2, 2);
    bad(0, 0) = 1.0;
    bad(0, 1) = 0.5;
    bad(1, 0) = 0.25;
    bad(1, 1) = 1.0;
    CHECK_THROWS_AS(SymmetricMatrix::from_exact(bad), ValidationError);
}

TEST_CASE("jacobi eigensolver matches known spectra") {
    EigenSym e = eigen_sym(sym({{5.0, 4.0}, {4.0, 5.0}}));
    CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(9.0).epsilon(1e-12));

    // Reconstruction check on a random instance.
    Rng rng(41);
    SymmetricMatrix m = oracles::random_spd(8, rng, 0.1, 6.0);
    EigenSym d = eigen_sym(m);
    Matrix rec(8, 8, 0.0);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 8; ++k)
                s += d.vectors(i, k) * d.values[k] * d.vectors(j, k);
            rec(i, j) = s;
        }
    CHECK(max_abs_diff(rec, m.mat()) < 1e-10);
}
