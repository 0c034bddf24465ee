// Constrained L1 minimization, solved column by column:
//   min ||beta||_1  s.t.  ||S beta - e_j||_inf <= lambda.
// Each column is a linear program after the split beta = b+ - b-, with 2p
// variables and 2p inequality rows. Columns are assembled and then
// symmetrized by the min-magnitude rule.

#include <cmath>
#include <string>

#include "precis/errors.hpp"
#include "precis/estimators.hpp"
#include "precis/kernels.hpp"
#include "precis/simplex.hpp"

namespace precis {

SymmetricMatrix symmetrize_min_magnitude(const Matrix& m) {
    if (m.rows() != m.cols())
        throw ValidationError("symmetrize: matrix must be square");
    Matrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            double upper = m(i, j), lower = m(j, i);
            double keep = std::fabs(upper) <= std::fabs(lower) ? upper : lower;
            out(i, j) = keep;
            out(j, i) = keep;
        }
    return SymmetricMatrix::from_exact(std::move(out));
}

ClimeColumns clime_columns(const SymmetricMatrix& s, double lambda) {
    if (lambda < 0.0) throw ValidationError("lambda must be nonnegative");
    const std::size_t p = s.dim();

    // Constraint matrix [ S -S ; -S S ] shared by every column; only the RHS
    // changes with j.
    Matrix a(2 * p, 2 * p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            double v = s(i, j);
            a(i, j) = v;
            a(i, p + j) = -v;
            a(p + i, j) = -v;
            a(p + i, p + j) = v;
        }
    std::vector<double> c(2 * p, 1.0);

    ClimeColumns out;
    out.omega_pre = Matrix(p, p, 0.0);
    out.objectives.assign(p, 0.0);

    std::vector<double> b(2 * p);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t i = 0; i < p; ++i) {
            double e = i == j ? 1.0 : 0.0;
            b[i] = lambda + e;
            b[p + i] = lambda - e;
        }
        LpResult lp = solve_lp(c, a, b);
        if (lp.status == LpResult::Status::Infeasible)
            throw SolverFailure("clime column program infeasible",
                                static_cast<long>(j));
        if (lp.status != LpResult::Status::Optimal)
            throw SolverFailure("clime column program did not converge",
                                static_cast<long>(j));
        for (std::size_t i = 0; i < p; ++i)
            out.omega_pre(i, j) = lp.x[i] - lp.x[p + i];
        out.objectives[j] = lp.objective;
        out.total_pivots += lp.pivots;
    }
    return out;
}

PrecisionEstimate clime(const SymmetricMatrix& s, double lambda,
                        const EstimatorConfig& cfg) {
    (void)cfg;
    ClimeColumns cols = clime_columns(s, lambda);
    SymmetricMatrix omega = symmetrize_min_magnitude(cols.omega_pre);

    PrecisionEstimate est;
    est.method = Method::Clime;
    est.lambda_used = lambda;
    est.converged = true;
    est.iterations = static_cast<int>(cols.total_pivots);
    est.objective = kernels::sum_abs(omega.mat().data(), omega.mat().size());
    est.omega = std::move(omega);
    return est;
}

}  // namespace precis
