// Column regressions on the square-root lasso, assembled into a precision
// matrix:  Omega_jj = 1/sigma_j^2,  Omega_ij = -B_ij / sigma_j^2, followed by
// min-magnitude symmetrization. Columns are standardized to unit sample sd
// before the regressions and the estimate is rescaled to original units.

#include <cmath>
#include <string>
#include <vector>

#include "precis/errors.hpp"
#include "precis/estimators.hpp"
#include "precis/kernels.hpp"

namespace precis {

namespace {

constexpr double kSigmaTol = 1e-6;     // stop when sigma moves less than this
constexpr int kMaxScaledIters = 200;
constexpr int kMaxLassoSweeps = 10000;
constexpr double kSigmaFloor = 1e-12;  // interpolating fits: clamp, don't divide by 0

inline double soft_threshold(double z, double t) {
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

}  // namespace

double tiger_default_lambda(std::size_t p, std::size_t n) {
    return std::sqrt(std::log(static_cast<double>(p)) / static_cast<double>(n));
}

SqrtLassoFit sqrt_lasso_column(const SampleData& x, std::size_t j, double lambda) {
    const std::size_t n = x.n(), p = x.p();
    if (j >= p) throw ValidationError("column index out of range");
    if (lambda <= 0.0) throw ValidationError("sqrt lasso requires lambda > 0");

    // Gram = X'X / n and g = X' y / n over the standardized columns; with
    // unit-sd columns the Gram diagonal is 1.
    const Matrix& xv = x.values();
    std::vector<double> gram(p * p);
    const double inv_n = 1.0 / static_cast<double>(n);
    {
        Matrix xt = xv.transposed();
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = a; b < p; ++b) {
                double v = kernels::dot(xt.row(a), xt.row(b), n) * inv_n;
                gram[a * p + b] = v;
                gram[b * p + a] = v;
            }
    }

    SqrtLassoFit fit;
    fit.coef.assign(p, 0.0);
    double* beta = fit.coef.data();

    const double yty = gram[j * p + j];  // ||y||^2 / n
    auto sigma_sq = [&]() {
        // ||y - A beta||^2 / n via the Gram form.
        double cross = 0.0, quad = 0.0;
        for (std::size_t a = 0; a < p; ++a) {
            if (beta[a] == 0.0) continue;
            cross += beta[a] * gram[j * p + a];
            quad += beta[a] * kernels::dot(&gram[a * p], beta, p);
        }
        return std::max(yty - 2.0 * cross + quad, 0.0);
    };

    double sigma = std::sqrt(std::max(sigma_sq(), kSigmaFloor));
    bool converged = false;
    int iters = 0;

    for (; iters < kMaxScaledIters; ++iters) {
        // Lasso step at penalty lambda * sigma.
        const double mu = lambda * sigma;
        for (int sweep = 0; sweep < kMaxLassoSweeps; ++sweep) {
            double max_delta = 0.0;
            for (std::size_t a = 0; a < p; ++a) {
                if (a == j) continue;
                double denom = gram[a * p + a];
                if (denom <= 0.0) continue;
                double z = gram[j * p + a] -
                           (kernels::dot(&gram[a * p], beta, p) - denom * beta[a]);
                double bnew = soft_threshold(z, mu) / denom;
                double delta = bnew - beta[a];
                if (delta != 0.0) {
                    beta[a] = bnew;
                    max_delta = std::max(max_delta, std::fabs(delta));
                }
            }
            if (max_delta <= 1e-10) break;
        }

        double sigma_new = std::sqrt(std::max(sigma_sq(), kSigmaFloor));
        double diff = std::fabs(sigma_new - sigma);
        sigma = sigma_new;
        if (diff < kSigmaTol) {
            converged = true;
            ++iters;
            break;
        }
    }

    fit.sigma = sigma;
    fit.iterations = iters;
    fit.converged = converged;
    fit.objective = sigma + lambda * (kernels::sum_abs(beta, p));
    return fit;
}

PrecisionEstimate tiger(const SampleData& x, std::optional<double> lambda,
                        const EstimatorConfig& cfg) {
    const std::size_t n = x.n(), p = x.p();
    const double lam = lambda.value_or(tiger_default_lambda(p, n));
    if (lam <= 0.0) throw ValidationError("tiger requires lambda > 0");

    // Standardize: center and scale each column to unit sample sd (divisor n).
    Matrix std_values(n, p);
    std::vector<double> sd(p);
    for (std::size_t jcol = 0; jcol < p; ++jcol) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += x.values()(i, jcol);
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = x.values()(i, jcol) - mean;
            var += d * d;
        }
        var /= static_cast<double>(n);
        if (var <= 0.0)
            throw DegenerateColumn("zero-variance column", static_cast<long>(jcol));
        sd[jcol] = std::sqrt(var);
        for (std::size_t i = 0; i < n; ++i)
            std_values(i, jcol) = (x.values()(i, jcol) - mean) / sd[jcol];
    }
    SampleData xstd(std::move(std_values));

    Matrix omega_std(p, p, 0.0);
    bool all_converged = true;
    int max_iters = 0;
    double objective = 0.0;

    for (std::size_t j = 0; j < p; ++j) {
        SqrtLassoFit fit = sqrt_lasso_column(xstd, j, lam);
        double inv_var = 1.0 / std::max(fit.sigma * fit.sigma, kSigmaFloor);
        omega_std(j, j) = inv_var;
        for (std::size_t i = 0; i < p; ++i)
            if (i != j) omega_std(i, j) = -inv_var * fit.coef[i];
        all_converged = all_converged && fit.converged;
        max_iters = std::max(max_iters, fit.iterations);
        objective += fit.objective;
    }

    // Back to original units: Omega = D^{-1} Omega_std D^{-1}, D = diag(sd).
    Matrix omega_raw(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
            omega_raw(i, j) = omega_std(i, j) / (sd[i] * sd[j]);

    PrecisionEstimate est;
    est.method = Method::Tiger;
    est.lambda_used = lam;
    est.converged = all_converged;
    est.iterations = max_iters;
    est.objective = objective;
    est.omega = symmetrize_min_magnitude(omega_raw);
    (void)cfg;
    return est;
}

}  // namespace precis
