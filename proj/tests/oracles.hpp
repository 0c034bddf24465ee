#pragma once

// Independent oracles for optimality and correctness audits. Everything here
// is deliberately implemented along different algorithmic routes than the
// library: subgradient descent instead of coordinate descent, vertex
// enumeration instead of simplex, exhaustive path enumeration instead of
// Dijkstra accumulation.

#include <cstdint>
#include <vector>

#include "precis/matrix.hpp"
#include "precis/network.hpp"
#include "precis/rng.hpp"

namespace precis::oracles {

// Projected subgradient minimization of
//   -log det(Omega) + tr(S Omega)
//     + lambda * [l1_frac * sum V_ij |omega_ij| + (1-l1_frac)/2 * sum omega_ij^2]
// over the PD cone. Returns the best objective value seen.
double penalized_subgradient_min(const SymmetricMatrix& s, double lambda,
                                 double l1_frac, const Matrix& v,
                                 bool penalize_diagonal, long iterations);

// Minimum of ||beta||_1 over { beta : ||S beta - e_j||_inf <= lambda } by
// enumerating all candidate vertices (active-set subsets of the constraint
// rows and the beta_k = 0 hyperplanes).
double clime_column_vertex_min(const SymmetricMatrix& s, std::size_t j, double lambda);

// Grid search over the first two free coefficients of the square-root lasso
// objective ||y - X_{-j} b||_2 / sqrt(n) + lambda * ||b||_1 for p = 3
// standardized data. Returns the minimal objective on the grid.
double sqrt_lasso_grid_min(const SampleData& x_std, std::size_t j, double lambda,
                           double lo, double hi, double step);

// Betweenness by exhaustive simple-path enumeration (p <= ~9).
std::vector<double> betweenness_bruteforce(const ConnectivityGraph& g);

// Dense well-conditioned SPD matrix with eigenvalues in [eig_lo, eig_hi].
SymmetricMatrix random_spd(std::size_t p, Rng& rng, double eig_lo = 0.5,
                           double eig_hi = 2.0);

}  // namespace precis::oracles
