#include "precis/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include <nlohmann/json.hpp>

#include "precis/errors.hpp"
#include "precis/io.hpp"

namespace precis {

SymmetricMatrix partial_correlation(const SymmetricMatrix& omega) {
    const std::size_t p = omega.dim();
    for (std::size_t i = 0; i < p; ++i)
        if (omega(i, i) <= 0.0)
            throw ValidationError("partial correlation requires a positive diagonal");

    Matrix rho(p, p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        rho(i, i) = 1.0;
        for (std::size_t j = i + 1; j < p; ++j) {
            double v = -omega(i, j) / std::sqrt(omega(i, i) * omega(j, j));
            rho(i, j) = v;
            rho(j, i) = v;
        }
    }
    return SymmetricMatrix::from_exact(std::move(rho));
}

ConnectivityGraph to_graph(const SymmetricMatrix& rho, bool sqrt_transform) {
    const std::size_t p = rho.dim();
    Matrix w(p, p, 0.0);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) {
            double v = std::max(rho(i, j), 0.0);
            if (sqrt_transform) v = std::sqrt(v);
            w(i, j) = v;
            w(j, i) = v;
        }
    return ConnectivityGraph{std::move(w)};
}

std::vector<double> betweenness_weighted(const ConnectivityGraph& g) {
    const std::size_t p = g.nodes();
    std::vector<double> score(p, 0.0);
    if (p < 3) return score;

    // Adjacency with lengths 1/w.
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
            if (i != j && g.weights(i, j) > 0.0)
                adj[i].push_back({j, 1.0 / g.weights(i, j)});

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(p), sigma(p), delta(p);
    std::vector<std::vector<std::size_t>> pred(p);
    std::vector<std::size_t> order;
    order.reserve(p);

    for (std::size_t s = 0; s < p; ++s) {
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& v : pred) v.clear();
        order.clear();

        dist[s] = 0.0;
        sigma[s] = 1.0;
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        heap.push({0.0, s});
        std::vector<char> settled(p, 0);

        while (!heap.empty()) {
            auto [d, v] = heap.top();
            heap.pop();
            if (settled[v]) continue;
            settled[v] = 1;
            order.push_back(v);
            for (auto [w, len] : adj[v]) {
                double nd = d + len;
                double tie_tol = 1e-12 * (1.0 + std::fabs(nd));
                if (nd < dist[w] - tie_tol) {
                    dist[w] = nd;
                    sigma[w] = sigma[v];
                    pred[w].assign(1, v);
                    heap.push({nd, w});
                } else if (std::fabs(nd - dist[w]) <= tie_tol && !settled[w]) {
                    sigma[w] += sigma[v];
                    pred[w].push_back(v);
                }
            }
        }

        // Dependency accumulation in reverse settle order.
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::size_t w = *it;
            for (std::size_t v : pred[w])
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) score[w] += delta[w];
        }
    }

    // Each unordered pair was visited from both endpoints.
    for (double& v : score) v *= 0.5;
    return score;
}

HubReport hub_report(const std::vector<double>& betweenness, double z_threshold) {
    const std::size_t p = betweenness.size();
    if (p < 2) throw ValidationError("hub report needs at least 2 nodes");

    HubReport r;
    r.betweenness = betweenness;
    r.z_threshold = z_threshold;
    r.z_scores.assign(p, 0.0);

    double mean = 0.0;
    for (double v : betweenness) mean += v;
    mean /= static_cast<double>(p);
    double ss = 0.0;
    for (double v : betweenness) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / static_cast<double>(p - 1));

    if (sd > 0.0)
        for (std::size_t i = 0; i < p; ++i)
            r.z_scores[i] = (betweenness[i] - mean) / sd;

    for (std::size_t i = 0; i < p; ++i)
        if (r.z_scores[i] > z_threshold) r.hubs.push_back(i);
    r.hub_count = r.hubs.size();
    return r;
}

std::string hub_report_to_json(const HubReport& r) {
    nlohmann::json out;
    out["betweenness"] = r.betweenness;
    out["z_scores"] = r.z_scores;
    out["hubs"] = r.hubs;
    out["hub_count"] = r.hub_count;
    out["z_threshold"] = r.z_threshold;
    return out.dump(2);
}

std::string edge_list_csv(const ConnectivityGraph& g) {
    std::ostringstream out;
    out << "i,j,weight\n";
    for (std::size_t i = 0; i < g.nodes(); ++i)
        for (std::size_t j = i + 1; j < g.nodes(); ++j)
            if (g.weights(i, j) > 0.0)
                out << i << ',' << j << ',' << format_double(g.weights(i, j)) << '\n';
    return out.str();
}

}  // namespace precis
