#pragma once

#include <cstddef>
#include <vector>

#include "precis/matrix.hpp"

namespace precis {

// Dense two-phase primal simplex for
//   min c'x  subject to  A x <= b,  x >= 0.
// b may contain negative entries (phase 1 introduces artificials).
struct LpResult {
    enum class Status { Optimal, Infeasible, IterationLimit };
    Status status = Status::IterationLimit;
    std::vector<double> x;
    double objective = 0.0;
    long pivots = 0;
};

LpResult solve_lp(const std::vector<double>& c, const Matrix& a,
                  const std::vector<double>& b, long max_pivots = 0);

}  // namespace precis
