#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "precis/errors.hpp"
#include "precis/linalg.hpp"
#include "precis/rng.hpp"
#include "precis/stats.hpp"
#include "precis/synthetic.hpp"

using namespace precis;

namespace {

SampleData make_data(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (auto& r : rows) {
        std::size_t j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return SampleData(std::move(m));
}

}  // namespace

TEST_CASE("sample covariance with divisor n") {
    // Two observations {0, 2} on each variable: mean 1, sum dev^2 / n = 1.
    SampleData x = make_data({{0.0, 0.0}, {2.0, 2.0}});
    SymmetricMatrix s = sample_covariance(x, true);
    CHECK(s(0, 0) == doctest::Approx(1.0));
    CHECK(s(1, 1) == doctest::Approx(1.0));

    // Identical rows carry no variance.
    SampleData flat = make_data({{3.0, -1.0}, {3.0, -1.0}, {3.0, -1.0}});
    SymmetricMatrix z = sample_covariance(flat, true);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(z(i, j) == doctest::Approx(0.0));
}

TEST_CASE("sample covariance matches the direct summation oracle") {
    SampleData x = make_data({{1, 2}, {2, 1}, {3, 4}, {4, 3}});
    SymmetricMatrix s = sample_covariance(x, true);

    const std::size_t n = 4, p = 2;
    double mean[2] = {0, 0};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) mean[j] += x.values()(i, j);
    for (std::size_t j = 0; j < p; ++j) mean[j] /= n;
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < p; ++b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                acc += (x.values()(i, a) - mean[a]) * (x.values()(i, b) - mean[b]);
            CHECK(s(a, b) == doctest::Approx(acc / n).epsilon(1e-14));
        }
}

TEST_CASE("non-finite sample data is rejected") {
    Matrix m(2, 2, 1.0);
    m(1, 1) = std::nan("");
    CHECK_THROWS_AS(SampleData(std::move(m)), ValidationError);
    CHECK_THROWS_AS(SampleData(Matrix(1, 5, 0.0)), ValidationError);
}

TEST_CASE("gaussian negative log-likelihood") {
    SymmetricMatrix i2 = SymmetricMatrix::identity(2);
    CHECK(gaussian_neg_loglik(i2, i2) == doctest::Approx(2.0));

    Matrix s2(2, 2, 0.0);
    s2(0, 0) = s2(1, 1) = 2.0;
    SymmetricMatrix s = SymmetricMatrix::from_exact(std::move(s2));
    SymmetricMatrix omega = invert_pd(s);
    CHECK(gaussian_neg_loglik(omega, s) ==
          doctest::Approx(2.0 * std::log(2.0) + 2.0).epsilon(1e-12));

    // Term-wise oracle on a random 3x3 pair.
    Rng rng(5);
    SymmetricMatrix om = oracles::random_spd(3, rng, 0.4, 2.5);
    SymmetricMatrix sm = oracles::random_spd(3, rng, 0.4, 2.5);
    double tr = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) tr += sm(i, j) * om(i, j);
    CHECK(gaussian_neg_loglik(om, sm) ==
          doctest::Approx(-log_det_pd(om) + tr).epsilon(1e-12));
}

TEST_CASE("neg loglik is minimized at the inverse covariance") {
    Rng rng(17);
    SymmetricMatrix s = oracles::random_spd(4, rng, 0.5, 2.0);
    double at_opt = gaussian_neg_loglik(invert_pd(s), s);
    for (int trial = 0; trial < 100; ++trial) {
        SymmetricMatrix omega = oracles::random_spd(4, rng, 0.2, 3.0);
        CHECK(gaussian_neg_loglik(omega, s) >= at_opt - 1e-10);
    }
}

TEST_CASE("ledoit-wolf leaves an isotropic sample unchanged") {
    // Orthogonal +/-1 design: covariance is exactly the identity.
    SampleData x = make_data({{1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}});
    LedoitWolfEstimate lw = ledoit_wolf_linear(x);
    CHECK(lw.sigma(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lw.sigma(0, 1) == doctest::Approx(0.0));
    CHECK(lw.intensity >= 0.0);
    CHECK(lw.intensity <= 1.0);
}

TEST_CASE("ledoit-wolf approaches the identity for big iid samples") {
    GroundTruthSpec spec;
    spec.kind = TruthKind::Banded;
    spec.p = 4;
    spec.band_width = 0;
    SymmetricMatrix truth = generate_precision(spec, 0);  // identity
    SampleData x = sample_mvn(truth, 5000, 99);
    LedoitWolfEstimate lw = ledoit_wolf_linear(x);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::fabs(lw.sigma(i, j) - (i == j ? 1.0 : 0.0)) < 0.05);
}

TEST_CASE("ledoit-wolf restores rank in p > n samples") {
    Rng rng(7);
    Matrix m(10, 50);
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j < 50; ++j) m(i, j) = rng.normal();
    LedoitWolfEstimate lw = ledoit_wolf_linear(SampleData(std::move(m)));
    CHECK(lw.intensity > 0.0);
    CHECK(lw.intensity <= 1.0);
    CHECK_NOTHROW(cholesky_pd(lw.sigma));
    EigenSym e = eigen_sym(lw.sigma);
    CHECK(e.values.front() > 0.0);
}

TEST_CASE("ledoit-wolf intensity stays in [0, 1] across inputs") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 3 + rng.uniform_int(40);
        std::size_t p = 2 + rng.uniform_int(12);
        Matrix m(n, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < p; ++j)
                m(i, j) = rng.normal() * (1.0 + 5.0 * rng.uniform());
        LedoitWolfEstimate lw = ledoit_wolf_linear(SampleData(std::move(m)));
        CHECK(lw.intensity >= 0.0);
        CHECK(lw.intensity <= 1.0);
    }
}
