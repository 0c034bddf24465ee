#pragma once

#include <optional>
#include <string>
#include <vector>

#include "precis/matrix.hpp"

namespace precis {

enum class Method {
    Glasso,
    Ridge,
    ElasticNet,
    AdaptiveGlasso,
    Scad,
    Mcp,
    Clime,
    Tiger,
};

const char* method_name(Method m);
Method method_from_string(const std::string& name);
std::vector<Method> all_methods();

enum class WeightSource {
    InvAbsCov,          // v_ij = 1 / |s_ij|
    InvGlassoPow,       // v_ij = 1 / |omega~_ij|^gamma, omega~ from glasso
    InvSamplePrecision, // omega~ = S^{-1}
    InvLwLinear,        // omega~ = inverse of Ledoit-Wolf linear shrinkage
};

const char* weight_source_name(WeightSource s);
WeightSource weight_source_from_string(const std::string& name);

struct EstimatorConfig {
    double lambda = 0.0;
    std::optional<double> gamma;  // method-specific secondary parameter
    double tol = 1e-4;            // relative convergence tolerance
    int max_iter = 200;           // outer coordinate-descent sweeps
    int lla_iters = 3;            // outer LLA steps for SCAD / MCP
    bool penalize_diagonal = true;
    std::optional<WeightSource> weight_source;  // adaptive glasso; auto when unset
};

// Entrywise nonnegative penalty multipliers; entries whose source denominator
// vanished are capped (see adaptive_weights).
struct WeightMatrix {
    SymmetricMatrix values;

    static WeightMatrix uniform(std::size_t p);
    static WeightMatrix from(SymmetricMatrix v);  // validates nonnegativity
};

inline constexpr double kWeightCap = 1e10;
inline constexpr double kWeightDenomFloor = 1e-10;

struct PrecisionEstimate {
    SymmetricMatrix omega;
    Method method = Method::Glasso;
    double lambda_used = 0.0;
    std::optional<double> gamma_used;
    bool converged = false;
    int iterations = 0;
    double objective = 0.0;
};

// ---------------------------------------------------------------------------
// Penalized-likelihood family. All solved by one blockwise coordinate descent
// on the working covariance, with an elastic-net mixing fraction: the
// objective is
//   -log det(Omega) + tr(S Omega)
//     + lambda * [ l1_frac * sum_ij V_ij |omega_ij|
//                  + (1 - l1_frac)/2 * sum_ij omega_ij^2 ].

PrecisionEstimate weighted_glasso(const SymmetricMatrix& s, const WeightMatrix& w,
                                  double lambda, const EstimatorConfig& cfg);
PrecisionEstimate glasso(const SymmetricMatrix& s, double lambda,
                         const EstimatorConfig& cfg = {});
PrecisionEstimate ridge(const SymmetricMatrix& s, double lambda);
PrecisionEstimate elastic_net(const SymmetricMatrix& s, double lambda, double gamma,
                              const EstimatorConfig& cfg = {});

// Objective evaluators used for reporting and for optimality audits.
double penalized_objective(const SymmetricMatrix& s, const SymmetricMatrix& omega,
                           double lambda, double l1_frac, const Matrix& l1_weights,
                           bool penalize_diagonal);
double scad_objective(const SymmetricMatrix& s, const SymmetricMatrix& omega,
                      double lambda, double gamma, bool penalize_diagonal);
double mcp_objective(const SymmetricMatrix& s, const SymmetricMatrix& omega,
                     double lambda, double gamma, bool penalize_diagonal);

// ---------------------------------------------------------------------------
// Adaptive glasso.

WeightMatrix adaptive_weights(WeightSource source, const SymmetricMatrix& s,
                              const SampleData* x, double gamma,
                              const EstimatorConfig& cfg = {});
PrecisionEstimate adaptive_glasso(const SymmetricMatrix& s, const SampleData* x,
                                  double lambda, const EstimatorConfig& cfg = {});

// ---------------------------------------------------------------------------
// Nonconvex penalties via local linear approximation.

// Derivative weights, piecewise in |x|.
double scad_weight(double x, double lambda, double gamma);  // gamma > 2
double mcp_weight(double x, double lambda, double gamma);   // gamma > 1
// Penalty values matching the derivative weights above.
double scad_penalty(double x, double lambda, double gamma);
double mcp_penalty(double x, double lambda, double gamma);

inline constexpr double kScadDefaultGamma = 3.7;
inline constexpr double kMcpDefaultGamma = 3.0;

PrecisionEstimate scad(const SymmetricMatrix& s, double lambda,
                       const EstimatorConfig& cfg = {});
PrecisionEstimate mcp(const SymmetricMatrix& s, double lambda,
                      const EstimatorConfig& cfg = {});

// ---------------------------------------------------------------------------
// CLIME.

// Keeps the smaller-magnitude member of each off-diagonal pair; ties keep the
// upper-triangle entry. Diagonal untouched.
SymmetricMatrix symmetrize_min_magnitude(const Matrix& m);

struct ClimeColumns {
    Matrix omega_pre;                // columns assembled before symmetrization
    std::vector<double> objectives;  // per-column L1 objective values
    long total_pivots = 0;
};
ClimeColumns clime_columns(const SymmetricMatrix& s, double lambda);
PrecisionEstimate clime(const SymmetricMatrix& s, double lambda,
                        const EstimatorConfig& cfg = {});

// ---------------------------------------------------------------------------
// TIGER.

// Square-root lasso for column j against the remaining columns. Expects the
// columns of x to be centered with squared norm n (unit sample sd).
struct SqrtLassoFit {
    std::vector<double> coef;  // length p, entry j fixed at 0
    double sigma = 0.0;        // residual scale, sigma^2 = ||r||^2 / n
    double objective = 0.0;    // ||r||/sqrt(n) + lambda * ||coef||_1
    int iterations = 0;
    bool converged = false;
};
SqrtLassoFit sqrt_lasso_column(const SampleData& x, std::size_t j, double lambda);

double tiger_default_lambda(std::size_t p, std::size_t n);
PrecisionEstimate tiger(const SampleData& x, std::optional<double> lambda,
                        const EstimatorConfig& cfg = {});

// ---------------------------------------------------------------------------
// Uniform dispatch. x may be null for covariance-only methods; TIGER and the
// Ledoit-Wolf adaptive weight source require it.
PrecisionEstimate fit_method(Method m, const SymmetricMatrix& s, const SampleData* x,
                             double lambda, const EstimatorConfig& cfg);

}  // namespace precis
