// Closed-form L2-penalized estimator:
//   Omega = { [lambda I + S^2/4]^{1/2} + S/2 }^{-1}
// evaluated through the eigendecomposition of S, so each eigenvalue d maps to
// 1 / (sqrt(lambda + d^2/4) + d/2).

#include <cmath>

#include "precis/errors.hpp"
#include "precis/estimators.hpp"
#include "precis/linalg.hpp"

namespace precis {

PrecisionEstimate ridge(const SymmetricMatrix& s, double lambda) {
    if (lambda < 0.0) throw ValidationError("lambda must be nonnegative");
    const std::size_t p = s.dim();

    EigenSym e = eigen_sym(s);
    double max_abs_eig = 0.0;
    for (double d : e.values) max_abs_eig = std::max(max_abs_eig, std::fabs(d));

    std::vector<double> inv_vals(p);
    for (std::size_t k = 0; k < p; ++k) {
        double d = e.values[k];
        double denom = std::sqrt(lambda + 0.25 * d * d) + 0.5 * d;
        if (denom <= kPdPivotRel * std::max(max_abs_eig, 1.0))
            throw NotPositiveDefinite("ridge with lambda = 0 requires positive definite S");
        inv_vals[k] = 1.0 / denom;
    }

    Matrix out(p, p, 0.0);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j) {
            double v = 0.0;
            for (std::size_t k = 0; k < p; ++k)
                v += e.vectors(i, k) * inv_vals[k] * e.vectors(j, k);
            out(i, j) = v;
            out(j, i) = v;
        }
    SymmetricMatrix omega = SymmetricMatrix::from_average(std::move(out));

    PrecisionEstimate est;
    est.method = Method::Ridge;
    est.lambda_used = lambda;
    est.converged = true;
    est.iterations = 1;
    est.objective = penalized_objective(s, omega, lambda, 0.0,
                                        Matrix(p, p, 1.0), true);
    est.omega = std::move(omega);
    return est;
}

}  // namespace precis
