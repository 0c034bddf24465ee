#include "precis/estimators.hpp"

#include <cmath>

#include "precis/errors.hpp"
#include "precis/kernels.hpp"
#include "precis/linalg.hpp"
#include "precis/stats.hpp"

namespace precis {

const char* method_name(Method m) {
    switch (m) {
        case Method::Glasso: return "glasso";
        case Method::Ridge: return "ridge";
        case Method::ElasticNet: return "elnet";
        case Method::AdaptiveGlasso: return "adaptive";
        case Method::Scad: return "scad";
        case Method::Mcp: return "mcp";
        case Method::Clime: return "clime";
        case Method::Tiger: return "tiger";
    }
    return "?";
}

Method method_from_string(const std::string& name) {
    for (Method m : all_methods())
        if (name == method_name(m)) return m;
    throw ValidationError("unknown method: " + name);
}

std::vector<Method> all_methods() {
    return {Method::Glasso, Method::Ridge,  Method::ElasticNet, Method::AdaptiveGlasso,
            Method::Scad,   Method::Mcp,    Method::Clime,      Method::Tiger};
}

const char* weight_source_name(WeightSource s) {
    switch (s) {
        case WeightSource::InvAbsCov: return "inv-abs-cov";
        case WeightSource::InvGlassoPow: return "inv-glasso-pow";
        case WeightSource::InvSamplePrecision: return "inv-sample-precision";
        case WeightSource::InvLwLinear: return "inv-lw-linear";
    }
    return "?";
}

WeightSource weight_source_from_string(const std::string& name) {
    for (WeightSource s : {WeightSource::InvAbsCov, WeightSource::InvGlassoPow,
                           WeightSource::InvSamplePrecision, WeightSource::InvLwLinear})
        if (name == weight_source_name(s)) return s;
    throw ValidationError("unknown weight source: " + name);
}

WeightMatrix WeightMatrix::uniform(std::size_t p) {
    return WeightMatrix{SymmetricMatrix::from_exact(Matrix(p, p, 1.0))};
}

WeightMatrix WeightMatrix::from(SymmetricMatrix v) {
    for (std::size_t i = 0; i < v.dim(); ++i)
        for (std::size_t j = 0; j < v.dim(); ++j)
            if (v(i, j) < 0.0)
                throw ValidationError("weight matrix entries must be nonnegative");
    return WeightMatrix{std::move(v)};
}

double penalized_objective(const SymmetricMatrix& s, const SymmetricMatrix& omega,
                           double lambda, double l1_frac, const Matrix& l1_weights,
                           bool penalize_diagonal) {
    const std::size_t p = s.dim();
    double obj = -log_det_pd(omega) + trace_product_sym(s, omega);
    double l1 = 0.0, l2 = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            if (i == j && !penalize_diagonal) continue;
            double w = omega(i, j);
            l1 += l1_weights(i, j) * std::fabs(w);
            l2 += w * w;
        }
    }
    return obj + lambda * (l1_frac * l1 + 0.5 * (1.0 - l1_frac) * l2);
}

double scad_objective(const SymmetricMatrix& s, const SymmetricMatrix& omega,
                      double lambda, double gamma, bool penalize_diagonal) {
    const std::size_t p = s.dim();
    double obj = -log_det_pd(omega) + trace_product_sym(s, omega);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            if (i == j && !penalize_diagonal) continue;
            obj += scad_penalty(omega(i, j), lambda, gamma);
        }
    return obj;
}

double mcp_objective(const SymmetricMatrix& s, const SymmetricMatrix& omega,
                     double lambda, double gamma, bool penalize_diagonal) {
    const std::size_t p = s.dim();
    double obj = -log_det_pd(omega) + trace_product_sym(s, omega);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            if (i == j && !penalize_diagonal) continue;
            obj += mcp_penalty(omega(i, j), lambda, gamma);
        }
    return obj;
}

PrecisionEstimate fit_method(Method m, const SymmetricMatrix& s, const SampleData* x,
                             double lambda, const EstimatorConfig& cfg) {
    EstimatorConfig c = cfg;
    c.lambda = lambda;
    switch (m) {
        case Method::Glasso:
            return glasso(s, lambda, c);
        case Method::Ridge:
            return ridge(s, lambda);
        case Method::ElasticNet: {
            if (!c.gamma)
                throw ValidationError("elastic net requires gamma in [0, 1]");
            return elastic_net(s, lambda, *c.gamma, c);
        }
        case Method::AdaptiveGlasso:
            return adaptive_glasso(s, x, lambda, c);
        case Method::Scad:
            return scad(s, lambda, c);
        case Method::Mcp:
            return mcp(s, lambda, c);
        case Method::Clime:
            return clime(s, lambda, c);
        case Method::Tiger: {
            if (!x) throw ValidationError("tiger requires sample data");
            return tiger(*x, lambda, c);
        }
    }
    throw ValidationError("unknown method");
}

}  // namespace precis
