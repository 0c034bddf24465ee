// Adaptive glasso: entrywise weights from a pilot estimate, then one weighted
// lasso solve. Weight sources follow the two conventional choices,
// v_ij = 1/|s_ij| and v_ij = 1/|omega~_ij|^gamma with omega~ a consistent
// pilot (glasso, S^{-1}, or the inverse of the Ledoit-Wolf linear shrinkage).

#include <cmath>

#include "precis/errors.hpp"
#include "precis/estimators.hpp"
#include "precis/linalg.hpp"
#include "precis/stats.hpp"

namespace precis {

namespace {

constexpr double kAdaptiveDefaultGamma = 0.5;

Matrix reciprocal_weights(const Matrix& source, double power) {
    const std::size_t p = source.rows();
    Matrix v(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j) {
            double denom = std::pow(std::fabs(source(i, j)), power);
            double w = denom < kWeightDenomFloor ? kWeightCap : 1.0 / denom;
            v(i, j) = w;
            v(j, i) = w;
        }
    return v;
}

bool is_pd(const SymmetricMatrix& s) {
    try {
        cholesky_pd(s);
        return true;
    } catch (const NotPositiveDefinite&) {
        return false;
    }
}

}  // namespace

WeightMatrix adaptive_weights(WeightSource source, const SymmetricMatrix& s,
                              const SampleData* x, double gamma,
                              const EstimatorConfig& cfg) {
    if (gamma <= 0.0) throw ValidationError("adaptive gamma must be positive");

    switch (source) {
        case WeightSource::InvAbsCov:
            return WeightMatrix::from(
                SymmetricMatrix::from_exact(reciprocal_weights(s.mat(), 1.0)));
        case WeightSource::InvGlassoPow: {
            PrecisionEstimate pilot = glasso(s, cfg.lambda, cfg);
            return WeightMatrix::from(SymmetricMatrix::from_exact(
                reciprocal_weights(pilot.omega.mat(), gamma)));
        }
        case WeightSource::InvSamplePrecision: {
            SymmetricMatrix pilot = invert_pd(s);  // throws NotPositiveDefinite
            return WeightMatrix::from(
                SymmetricMatrix::from_exact(reciprocal_weights(pilot.mat(), gamma)));
        }
        case WeightSource::InvLwLinear: {
            if (!x)
                throw ValidationError(
                    "ledoit-wolf weight source requires sample data");
            SymmetricMatrix pilot = invert_pd(ledoit_wolf_linear(*x).sigma);
            return WeightMatrix::from(
                SymmetricMatrix::from_exact(reciprocal_weights(pilot.mat(), gamma)));
        }
    }
    throw ValidationError("unknown weight source");
}

PrecisionEstimate adaptive_glasso(const SymmetricMatrix& s, const SampleData* x,
                                  double lambda, const EstimatorConfig& cfg) {
    EstimatorConfig c = cfg;
    c.lambda = lambda;
    const double gamma = cfg.gamma.value_or(kAdaptiveDefaultGamma);

    WeightSource source;
    if (cfg.weight_source) {
        source = *cfg.weight_source;
    } else {
        // S^{-1} works best when S is invertible; fall back to the shrinkage
        // pilot in rank-deficient settings.
        source = is_pd(s) ? WeightSource::InvSamplePrecision : WeightSource::InvLwLinear;
    }

    WeightMatrix w = adaptive_weights(source, s, x, gamma, c);
    PrecisionEstimate est = weighted_glasso(s, w, lambda, c);
    est.method = Method::AdaptiveGlasso;
    est.gamma_used = gamma;
    return est;
}

}  // namespace precis
