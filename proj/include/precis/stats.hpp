#pragma once

#include "precis/matrix.hpp"

namespace precis {

// Sample covariance with divisor n (MLE convention). Columns are mean
// centered when `center` is set.
SymmetricMatrix sample_covariance(const SampleData& x, bool center = true);

// Linear shrinkage toward the scaled identity: (1-rho) * S + rho * nu * I
// with nu = tr(S)/p and the plug-in intensity rho in [0, 1].
struct LedoitWolfEstimate {
    SymmetricMatrix sigma;
    double intensity;     // rho
    double target_scale;  // nu
};
LedoitWolfEstimate ledoit_wolf_linear(const SampleData& x);

// -log det(Omega) + tr(S * Omega): the data-dependent part of the Gaussian
// log-likelihood with the sign flipped. Omega must be PD.
double gaussian_neg_loglik(const SymmetricMatrix& omega, const SymmetricMatrix& s);

}  // namespace precis
