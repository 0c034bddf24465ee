// Tableau simplex with a Dantzig pivot rule and a Bland fallback once the
// pivot count passes a degeneracy threshold.

#include "precis/simplex.hpp"

#include <cmath>
#include <limits>

#include "precis/errors.hpp"

namespace precis {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-9;

struct Tableau {
    std::size_t m, n;        // rows, total columns (excluding RHS)
    Matrix t;                // m+1 rows: constraint rows then objective row
    std::vector<std::size_t> basis;

    double& at(std::size_t i, std::size_t j) { return t(i, j); }
    double& rhs(std::size_t i) { return t(i, n); }
    double& obj(std::size_t j) { return t(m, j); }
    double& obj_rhs() { return t(m, n); }

    void pivot(std::size_t row, std::size_t col) {
        double piv = at(row, col);
        double inv = 1.0 / piv;
        for (std::size_t j = 0; j <= n; ++j) t(row, j) *= inv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == row) continue;
            double f = t(i, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n; ++j) t(i, j) -= f * t(row, j);
            t(i, col) = 0.0;  // keep the column numerically clean
        }
        basis[row] = col;
    }
};

// Returns false on iteration limit.
bool run_simplex(Tableau& tb, long max_pivots, long& pivots) {
    const long bland_after = 50L * static_cast<long>(tb.m + tb.n);
    while (true) {
        // Entering column.
        std::size_t col = tb.n;
        if (pivots < bland_after) {
            double best = -kReducedCostTol;
            for (std::size_t j = 0; j < tb.n; ++j)
                if (tb.obj(j) < best) {
                    best = tb.obj(j);
                    col = j;
                }
        } else {
            for (std::size_t j = 0; j < tb.n; ++j)
                if (tb.obj(j) < -kReducedCostTol) {
                    col = j;
                    break;
                }
        }
        if (col == tb.n) return true;  // optimal

        // Ratio test.
        std::size_t row = tb.m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < tb.m; ++i) {
            double a = tb.at(i, col);
            if (a > kPivotTol) {
                double r = tb.rhs(i) / a;
                if (r < best_ratio - 1e-12 ||
                    (r < best_ratio + 1e-12 && (row == tb.m || tb.basis[i] < tb.basis[row]))) {
                    best_ratio = r;
                    row = i;
                }
            }
        }
        if (row == tb.m)
            throw NumericalError("unbounded linear program");

        tb.pivot(row, col);
        ++pivots;
        if (max_pivots > 0 && pivots > max_pivots) return false;
    }
}

}  // namespace

LpResult solve_lp(const std::vector<double>& c, const Matrix& a,
                  const std::vector<double>& b, long max_pivots) {
    const std::size_t m = a.rows();
    const std::size_t nvars = a.cols();
    if (c.size() != nvars || b.size() != m)
        throw ValidationError("lp: dimension mismatch");
    if (max_pivots <= 0) max_pivots = 2000L * static_cast<long>(m + nvars + 1);

    // Flip rows with negative RHS so b >= 0; those rows get -1 slack
    // coefficients and need an artificial variable.
    std::vector<int> flip(m);
    std::vector<std::size_t> artificial_rows;
    for (std::size_t i = 0; i < m; ++i) {
        flip[i] = b[i] < 0.0 ? -1 : 1;
        if (flip[i] < 0) artificial_rows.push_back(i);
    }
    const std::size_t nslack = m;
    const std::size_t nart = artificial_rows.size();
    const std::size_t ncols = nvars + nslack + nart;

    Tableau tb;
    tb.m = m;
    tb.n = ncols;
    tb.t = Matrix(m + 1, ncols + 1, 0.0);
    tb.basis.assign(m, 0);

    for (std::size_t i = 0; i < m; ++i) {
        double f = static_cast<double>(flip[i]);
        for (std::size_t j = 0; j < nvars; ++j) tb.at(i, j) = f * a(i, j);
        tb.at(i, nvars + i) = f;  // slack
        tb.rhs(i) = f * b[i];
        tb.basis[i] = nvars + i;
    }
    for (std::size_t k = 0; k < nart; ++k) {
        std::size_t i = artificial_rows[k];
        tb.at(i, nvars + nslack + k) = 1.0;
        tb.basis[i] = nvars + nslack + k;
    }

    LpResult res;

    if (nart > 0) {
        // Phase 1: minimize the sum of artificials.
        for (std::size_t k = 0; k < nart; ++k) tb.obj(nvars + nslack + k) = 1.0;
        for (std::size_t i : artificial_rows)
            for (std::size_t j = 0; j <= tb.n; ++j) tb.t(m, j) -= tb.t(i, j);

        if (!run_simplex(tb, max_pivots, res.pivots)) {
            res.status = LpResult::Status::IterationLimit;
            return res;
        }
        if (-tb.obj_rhs() > kFeasTol) {
            res.status = LpResult::Status::Infeasible;
            return res;
        }
        // Drive any residual artificial out of the basis.
        for (std::size_t i = 0; i < m; ++i) {
            if (tb.basis[i] < nvars + nslack) continue;
            std::size_t col = tb.n;
            for (std::size_t j = 0; j < nvars + nslack; ++j)
                if (std::fabs(tb.at(i, j)) > kPivotTol) {
                    col = j;
                    break;
                }
            if (col != tb.n) {
                tb.pivot(i, col);
                ++res.pivots;
            }
        }
    }

    // Phase 2 objective; artificials are pinned at zero by cost blocking.
    for (std::size_t j = 0; j <= tb.n; ++j) tb.obj(j) = 0.0;
    tb.obj_rhs() = 0.0;
    for (std::size_t j = 0; j < nvars; ++j) tb.obj(j) = c[j];
    for (std::size_t j = nvars + nslack; j < tb.n; ++j) tb.obj(j) = 1e30;
    // Reduce objective row against the current basis.
    for (std::size_t i = 0; i < m; ++i) {
        double f = tb.obj(tb.basis[i]);
        if (f == 0.0) continue;
        for (std::size_t j = 0; j <= tb.n; ++j) tb.t(m, j) -= f * tb.t(i, j);
    }

    if (!run_simplex(tb, max_pivots, res.pivots)) {
        res.status = LpResult::Status::IterationLimit;
        return res;
    }

    res.x.assign(nvars, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (tb.basis[i] < nvars) res.x[tb.basis[i]] = tb.rhs(i);
    res.objective = 0.0;
    for (std::size_t j = 0; j < nvars; ++j) res.objective += c[j] * res.x[j];
    res.status = LpResult::Status::Optimal;
    return res;
}

}  // namespace precis
