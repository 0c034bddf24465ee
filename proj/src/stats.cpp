#include "precis/stats.hpp"

#include <algorithm>
#include <cmath>

#include "precis/errors.hpp"
#include "precis/kernels.hpp"
#include "precis/linalg.hpp"

namespace precis {

namespace {

// Columns of X transposed into rows, optionally mean centered.
Matrix centered_transpose(const SampleData& x, bool center) {
    const std::size_t n = x.n(), p = x.p();
    Matrix xt(p, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) xt(j, i) = x.values()(i, j);
    if (center) {
        for (std::size_t j = 0; j < p; ++j) {
            double* row = xt.row(j);
            double mean = 0.0;
            for (std::size_t i = 0; i < n; ++i) mean += row[i];
            mean /= static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i) row[i] -= mean;
        }
    }
    return xt;
}

}  // namespace

SymmetricMatrix sample_covariance(const SampleData& x, bool center) {
    const std::size_t n = x.n(), p = x.p();
    Matrix xt = centered_transpose(x, center);
    Matrix s(p, p);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
            double v = kernels::dot(xt.row(i), xt.row(j), n) * inv_n;
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return SymmetricMatrix::from_exact(std::move(s));
}

LedoitWolfEstimate ledoit_wolf_linear(const SampleData& x) {
    const std::size_t n = x.n(), p = x.p();
    Matrix xt = centered_transpose(x, true);
    SymmetricMatrix s = [&] {
        Matrix m(p, p);
        const double inv_n = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = i; j < p; ++j) {
                double v = kernels::dot(xt.row(i), xt.row(j), n) * inv_n;
                m(i, j) = v;
                m(j, i) = v;
            }
        return SymmetricMatrix::from_exact(std::move(m));
    }();

    const double dp = static_cast<double>(p);
    const double dn = static_cast<double>(n);

    double nu = 0.0;
    for (std::size_t i = 0; i < p; ++i) nu += s(i, i);
    nu /= dp;

    // d2 = ||S - nu I||_F^2 / p
    double d2 = 0.0;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            double v = s(i, j) - (i == j ? nu : 0.0);
            d2 += v * v;
        }
    d2 /= dp;

    // b2_bar = (1/n^2) sum_k ||x_k x_k^T - S||_F^2 / p
    double b2_bar = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
            double xi = xt(i, k);
            for (std::size_t j = 0; j < p; ++j) {
                double v = xi * xt(j, k) - s(i, j);
                acc += v * v;
            }
        }
        b2_bar += acc;
    }
    b2_bar /= dn * dn * dp;

    double b2 = std::min(b2_bar, d2);
    double rho = d2 > 0.0 ? b2 / d2 : 0.0;
    rho = std::clamp(rho, 0.0, 1.0);

    Matrix out(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
            out(i, j) = (1.0 - rho) * s(i, j) + (i == j ? rho * nu : 0.0);

    return {SymmetricMatrix::from_exact(std::move(out)), rho, nu};
}

double gaussian_neg_loglik(const SymmetricMatrix& omega, const SymmetricMatrix& s) {
    if (omega.dim() != s.dim())
        throw ValidationError("neg loglik: dimension mismatch");
    double logdet = log_det_pd(omega);  // throws NotPositiveDefinite
    return -logdet + trace_product_sym(s, omega);
}

}  // namespace precis
