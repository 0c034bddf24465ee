#include "precis/metrics.hpp"

#include <cmath>
#include <limits>

#include "precis/errors.hpp"
#include "precis/kernels.hpp"
#include "precis/linalg.hpp"

namespace precis {

namespace {

void check_dims(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    if (a.dim() != b.dim()) throw ValidationError("metric: dimension mismatch");
}

}  // namespace

double frobenius_distance(const SymmetricMatrix& truth, const SymmetricMatrix& est) {
    check_dims(truth, est);
    return std::sqrt(kernels::sum_sq_diff(truth.mat().data(), est.mat().data(),
                                          truth.mat().size()));
}

double kl_divergence(const SymmetricMatrix& sigma_truth, const SymmetricMatrix& est) {
    check_dims(sigma_truth, est);
    const double p = static_cast<double>(est.dim());
    double logdet = log_det_pd(sigma_truth) + log_det_pd(est);
    return trace_product_sym(sigma_truth, est) - logdet - p;
}

Confusion edge_confusion(const SymmetricMatrix& truth, const SymmetricMatrix& est,
                         double eps) {
    check_dims(truth, est);
    Confusion c;
    for (std::size_t i = 0; i < truth.dim(); ++i)
        for (std::size_t j = i + 1; j < truth.dim(); ++j) {
            bool t = std::fabs(truth(i, j)) > eps;
            bool e = std::fabs(est(i, j)) > eps;
            if (t && e) ++c.tp;
            else if (!t && e) ++c.fp;
            else if (t && !e) ++c.fn;
            else ++c.tn;
        }
    return c;
}

double f1_score(const SymmetricMatrix& truth, const SymmetricMatrix& est, double eps) {
    Confusion c = edge_confusion(truth, est, eps);
    double denom = 2.0 * c.tp + c.fp + c.fn;
    if (denom == 0.0) return c.tp + c.fn > 0 ? 0.0 : 1.0;
    return 2.0 * c.tp / denom;
}

double sparsity(const SymmetricMatrix& est, double eps) {
    const std::size_t p = est.dim();
    if (p < 2) return 1.0;
    long zeros = 0;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            if (std::fabs(est(i, j)) <= eps) ++zeros;
    return static_cast<double>(zeros) / (0.5 * p * (p - 1));
}

MetricsReport evaluate_estimate(const SymmetricMatrix& truth_omega,
                                const SymmetricMatrix& sigma_truth,
                                const SymmetricMatrix& est, double eps) {
    MetricsReport r;
    r.f_norm = frobenius_distance(truth_omega, est);
    try {
        r.kl_div = kl_divergence(sigma_truth, est);
        r.kl_valid = true;
    } catch (const NotPositiveDefinite&) {
        r.kl_div = std::numeric_limits<double>::infinity();
        r.kl_valid = false;
    }
    r.edges = edge_confusion(truth_omega, est, eps);
    r.f1 = f1_score(truth_omega, est, eps);
    r.sparsity = sparsity(est, eps);
    return r;
}

}  // namespace precis
