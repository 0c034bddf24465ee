// Blockwise coordinate descent on the working covariance W ~ Omega^{-1}.
// One solver covers the L1, weighted-L1 and elastic-net objectives through
// the mixing fraction l1_frac:
//
//   min -log det(Omega) + tr(S Omega)
//       + lambda * [ l1_frac * sum V_ij |omega_ij|
//                    + (1 - l1_frac)/2 * sum omega_ij^2 ]
//
// Each column solve is a lasso on the working covariance; parameterizing the
// column by beta = -omega_12 / omega_22 gives the coordinate update
//   beta_i <- soft(z_i, lambda * l1_frac * V_ij) / (W_ii + lambda*(1-l1_frac)*omega_22)
// and the diagonal solves a scalar quadratic from the stationarity condition.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "precis/errors.hpp"
#include "precis/estimators.hpp"
#include "precis/kernels.hpp"
#include "precis/linalg.hpp"

namespace precis {

namespace {

constexpr int kMaxInnerSweeps = 10000;
constexpr int kMaxDampHalvings = 30;

inline double soft_threshold(double z, double t) {
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

void validate_core_inputs(const SymmetricMatrix& s, const Matrix& v, double lambda,
                          double l1_frac, const EstimatorConfig& cfg) {
    if (lambda < 0.0) throw ValidationError("lambda must be nonnegative");
    if (l1_frac < 0.0 || l1_frac > 1.0)
        throw ValidationError("gamma must lie in [0, 1]");
    if (cfg.tol <= 0.0) throw ValidationError("tol must be positive");
    if (cfg.max_iter < 1) throw ValidationError("max_iter must be at least 1");
    if (v.rows() != s.dim() || v.cols() != s.dim())
        throw ValidationError("weight matrix dimension mismatch");
}

}  // namespace

namespace detail {

PrecisionEstimate glasso_elnet_core(const SymmetricMatrix& s, const Matrix& v,
                                    double lambda, double l1_frac,
                                    const EstimatorConfig& cfg, Method tag) {
    validate_core_inputs(s, v, lambda, l1_frac, cfg);
    const std::size_t p = s.dim();
    const double l2 = lambda * (1.0 - l1_frac);

    // Convergence threshold: classic criterion on the mean absolute change of
    // the working covariance off-diagonals.
    double off_scale = 0.0, diag_scale = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        diag_scale += std::fabs(s(i, i));
        for (std::size_t j = i + 1; j < p; ++j) off_scale += 2.0 * std::fabs(s(i, j));
    }
    if (p > 1) off_scale /= static_cast<double>(p * (p - 1));
    diag_scale /= static_cast<double>(p);
    const double thr = cfg.tol * (off_scale > 0.0 ? off_scale
                                                  : (diag_scale > 0.0 ? diag_scale : 1.0));
    const double inner_thr = 0.1 * thr;

    // State: working covariance W, column coefficients B (row j = beta for
    // column j, B(j,j) == 0), and the diagonal of Omega.
    Matrix w = s.mat();
    Matrix b(p, p, 0.0);
    std::vector<double> omega_diag(p);

    auto solve_diag_quadratic = [&](double bcoef, double acoef) {
        if (acoef <= 0.0) return 1.0 / bcoef;
        return (-bcoef + std::sqrt(bcoef * bcoef + 4.0 * acoef)) / (2.0 * acoef);
    };

    for (std::size_t j = 0; j < p; ++j) {
        double diag_l1 = cfg.penalize_diagonal ? lambda * l1_frac * v(j, j) : 0.0;
        double diag_l2 = cfg.penalize_diagonal ? l2 : 0.0;
        double bcoef = s(j, j) + diag_l1;
        if (diag_l2 <= 0.0 && bcoef <= 0.0)
            throw NotPositiveDefinite("nonpositive diagonal in unregularized column " +
                                      std::to_string(j));
        omega_diag[j] = solve_diag_quadratic(bcoef, diag_l2);
        w(j, j) = s(j, j) + diag_l1 + diag_l2 * omega_diag[j];
    }

    std::vector<double> c(p);
    bool converged = false;
    int sweeps = 0;

    while (sweeps < cfg.max_iter && !converged) {
        ++sweeps;
        double change = 0.0;

        for (std::size_t j = 0; j < p; ++j) {
            double* beta = b.row(j);
            const double diag_l1 = cfg.penalize_diagonal ? lambda * l1_frac * v(j, j) : 0.0;
            const double diag_l2 = cfg.penalize_diagonal ? l2 : 0.0;

            // c = W * beta (entry j of beta is zero, so c_i = (W11 beta)_i).
            std::fill(c.begin(), c.end(), 0.0);
            for (std::size_t k = 0; k < p; ++k)
                if (beta[k] != 0.0) kernels::axpy(beta[k], w.row(k), c.data(), p);

            for (int inner = 0; inner < kMaxInnerSweeps; ++inner) {
                double max_delta = 0.0;
                for (std::size_t i = 0; i < p; ++i) {
                    if (i == j) continue;
                    double denom = w(i, i) + l2 * omega_diag[j];
                    double z = s(i, j) - (c[i] - w(i, i) * beta[i]);
                    double bnew = soft_threshold(z, lambda * l1_frac * v(i, j)) / denom;
                    double delta = bnew - beta[i];
                    if (delta != 0.0) {
                        kernels::axpy(delta, w.row(i), c.data(), p);
                        beta[i] = bnew;
                        max_delta = std::max(max_delta, std::fabs(delta) * denom);
                    }
                }
                if (max_delta <= inner_thr) break;
            }

            // Diagonal: a * omega^2 + b * omega - 1 = 0 with
            // b = s_jj + diag_l1 - beta' W11 beta.
            double quad = kernels::dot(beta, c.data(), p);
            double bcoef = s(j, j) + diag_l1 - quad;
            if (diag_l2 <= 0.0) {
                // Halve the step while the Schur complement is nonpositive.
                int halvings = 0;
                double floor = kPdPivotRel * (std::fabs(s(j, j)) + diag_l1);
                while (bcoef <= floor && halvings < kMaxDampHalvings) {
                    kernels::scal(0.5, beta, p);
                    kernels::scal(0.5, c.data(), p);
                    quad *= 0.25;
                    bcoef = s(j, j) + diag_l1 - quad;
                    ++halvings;
                }
                if (bcoef <= floor)
                    throw NumericalError(
                        "working covariance lost positive definiteness at sweep " +
                        std::to_string(sweeps) + ", column " + std::to_string(j));
            }
            omega_diag[j] = solve_diag_quadratic(bcoef, diag_l2);

            for (std::size_t i = 0; i < p; ++i) {
                if (i == j) continue;
                change += std::fabs(c[i] - w(i, j));
                w(i, j) = c[i];
                w(j, i) = c[i];
            }
            w(j, j) = s(j, j) + diag_l1 + diag_l2 * omega_diag[j];
        }

        if (p > 1) change /= static_cast<double>(p * (p - 1));
        if (change < thr) converged = true;
    }

    // Recover Omega from the final column solves.
    Matrix omega_raw(p, p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        omega_raw(j, j) = omega_diag[j];
        const double* beta = b.row(j);
        for (std::size_t i = 0; i < p; ++i)
            if (i != j) omega_raw(i, j) = -beta[i] * omega_diag[j];
    }
    SymmetricMatrix omega = SymmetricMatrix::from_average(std::move(omega_raw));

    PrecisionEstimate est;
    est.method = tag;
    est.lambda_used = lambda;
    est.converged = converged;
    est.iterations = sweeps;
    try {
        est.objective = penalized_objective(s, omega, lambda, l1_frac, v,
                                            cfg.penalize_diagonal);
    } catch (const NotPositiveDefinite&) {
        throw NumericalError("estimate lost positive definiteness after " +
                             std::to_string(sweeps) + " sweeps");
    }
    est.omega = std::move(omega);
    return est;
}

}  // namespace detail

PrecisionEstimate weighted_glasso(const SymmetricMatrix& s, const WeightMatrix& w,
                                  double lambda, const EstimatorConfig& cfg) {
    return detail::glasso_elnet_core(s, w.values.mat(), lambda, 1.0, cfg, Method::Glasso);
}

PrecisionEstimate glasso(const SymmetricMatrix& s, double lambda,
                         const EstimatorConfig& cfg) {
    Matrix ones(s.dim(), s.dim(), 1.0);
    return detail::glasso_elnet_core(s, ones, lambda, 1.0, cfg, Method::Glasso);
}

PrecisionEstimate elastic_net(const SymmetricMatrix& s, double lambda, double gamma,
                              const EstimatorConfig& cfg) {
    if (gamma < 0.0 || gamma > 1.0)
        throw ValidationError("elastic net gamma must lie in [0, 1]");
    Matrix ones(s.dim(), s.dim(), 1.0);
    PrecisionEstimate est =
        detail::glasso_elnet_core(s, ones, lambda, gamma, cfg, Method::ElasticNet);
    est.gamma_used = gamma;
    return est;
}

}  // namespace precis
