#pragma once

#include "precis/matrix.hpp"

namespace precis {

// Edge threshold: soft-thresholding produces exact zeros, so this only
// absorbs float noise from the LP-based estimators.
inline constexpr double kEdgeEps = 1e-8;

struct Confusion {
    long tp = 0, fp = 0, fn = 0, tn = 0;
};

struct MetricsReport {
    double f_norm = 0.0;
    double kl_div = 0.0;
    bool kl_valid = true;  // false when the estimate is not PD (kl_div = inf)
    double f1 = 0.0;
    double sparsity = 0.0;
    Confusion edges;
};

// sqrt(sum_ij (truth_ij - est_ij)^2), diagonal included.
double frobenius_distance(const SymmetricMatrix& truth, const SymmetricMatrix& est);

// tr(Sigma Omega) - log det(Sigma Omega) - p; throws NotPositiveDefinite when
// the estimate is not PD.
double kl_divergence(const SymmetricMatrix& sigma_truth, const SymmetricMatrix& est);

// Counts over the strict upper triangle; an edge is |entry| > eps.
Confusion edge_confusion(const SymmetricMatrix& truth, const SymmetricMatrix& est,
                         double eps = kEdgeEps);

// 2TP / (2TP + FP + FN); 1 when both graphs are empty.
double f1_score(const SymmetricMatrix& truth, const SymmetricMatrix& est,
                double eps = kEdgeEps);

// Fraction of strict-upper-triangle entries with |entry| <= eps.
double sparsity(const SymmetricMatrix& est, double eps = kEdgeEps);

// Batch-safe bundle: a non-PD estimate yields kl_div = +inf with
// kl_valid = false instead of an exception.
MetricsReport evaluate_estimate(const SymmetricMatrix& truth_omega,
                                const SymmetricMatrix& sigma_truth,
                                const SymmetricMatrix& est, double eps = kEdgeEps);

}  // namespace precis
