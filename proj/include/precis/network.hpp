#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "precis/matrix.hpp"

namespace precis {

// rho_ij = -omega_ij / sqrt(omega_ii * omega_jj), unit diagonal.
SymmetricMatrix partial_correlation(const SymmetricMatrix& omega);

// Symmetric nonnegative weights with a zero diagonal; zero entries are
// non-edges.
struct ConnectivityGraph {
    Matrix weights;
    std::size_t nodes() const { return weights.rows(); }
};

// Truncates negatives to zero and drops the diagonal. The square-root
// transform is a visualization aid only; the hub pipeline never applies it.
ConnectivityGraph to_graph(const SymmetricMatrix& rho, bool sqrt_transform = false);

// Weighted betweenness with edge length 1/w, fractional counting over
// equal-length shortest paths, endpoints excluded, each unordered pair
// counted once. Unreachable pairs contribute nothing.
std::vector<double> betweenness_weighted(const ConnectivityGraph& g);

struct HubReport {
    std::vector<double> betweenness;
    std::vector<double> z_scores;
    std::vector<std::size_t> hubs;
    std::size_t hub_count = 0;
    double z_threshold = 2.0;
};

// z-scores with sample sd (divisor p-1); a constant vector yields no hubs.
HubReport hub_report(const std::vector<double>& betweenness, double z_threshold = 2.0);

std::string hub_report_to_json(const HubReport& r);
std::string edge_list_csv(const ConnectivityGraph& g);

}  // namespace precis
