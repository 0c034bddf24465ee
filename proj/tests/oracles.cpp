#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "precis/errors.hpp"
#include "precis/linalg.hpp"

namespace precis::oracles {

namespace {

// Cholesky without the library's tolerance policy; returns false when any
// pivot is nonpositive.
bool chol_logdet(const Matrix& a, Matrix& l, double& logdet) {
    const std::size_t p = a.rows();
    l = Matrix(p, p, 0.0);
    logdet = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
        double d = a(i, i);
        for (std::size_t k = 0; k < i; ++k) d -= l(i, k) * l(i, k);
        if (d <= 0.0) return false;
        l(i, i) = std::sqrt(d);
        logdet += 2.0 * std::log(l(i, i));
    }
    return true;
}

Matrix chol_inverse(const Matrix& l) {
    const std::size_t p = l.rows();
    Matrix linv(p, p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        linv(j, j) = 1.0 / l(j, j);
        for (std::size_t i = j + 1; i < p; ++i) {
            double s = 0.0;
            for (std::size_t k = j; k < i; ++k) s += l(i, k) * linv(k, j);
            linv(i, j) = -s / l(i, i);
        }
    }
    Matrix inv(p, p, 0.0);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j) {
            double s = 0.0;
            for (std::size_t k = j; k < p; ++k) s += linv(k, i) * linv(k, j);
            inv(i, j) = s;
            inv(j, i) = s;
        }
    return inv;
}

// Solve a p x p system by Gaussian elimination with partial pivoting.
// Returns false when the matrix is numerically singular.
bool solve_dense(Matrix a, std::vector<double> b, std::vector<double>& x) {
    const std::size_t p = a.rows();
    for (std::size_t col = 0; col < p; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < p; ++r)
            if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
        if (std::fabs(a(piv, col)) < 1e-11) return false;
        if (piv != col) {
            for (std::size_t c = 0; c < p; ++c) std::swap(a(piv, c), a(col, c));
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < p; ++r) {
            double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t c = col; c < p; ++c) a(r, c) -= f * a(col, c);
            b[r] -= f * b[col];
        }
    }
    x.assign(p, 0.0);
    for (std::size_t ri = p; ri-- > 0;) {
        double s = b[ri];
        for (std::size_t c = ri + 1; c < p; ++c) s -= a(ri, c) * x[c];
        x[ri] = s / a(ri, ri);
    }
    return true;
}

}  // namespace

double penalized_subgradient_min(const SymmetricMatrix& s, double lambda,
                                 double l1_frac, const Matrix& v,
                                 bool penalize_diagonal, long iterations) {
    const std::size_t p = s.dim();

    auto objective = [&](const Matrix& omega, double logdet) {
        double tr = 0.0, l1 = 0.0, l2 = 0.0;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) {
                tr += s(i, j) * omega(i, j);
                if (i == j && !penalize_diagonal) continue;
                l1 += v(i, j) * std::fabs(omega(i, j));
                l2 += omega(i, j) * omega(i, j);
            }
        return -logdet + tr + lambda * (l1_frac * l1 + 0.5 * (1.0 - l1_frac) * l2);
    };

    // Start from a diagonal PD point that does not depend on the library
    // solvers.
    Matrix omega(p, p, 0.0);
    for (std::size_t i = 0; i < p; ++i)
        omega(i, i) = 1.0 / (s(i, i) + lambda + 1e-3);

    Matrix l;
    double logdet = 0.0;
    if (!chol_logdet(omega, l, logdet))
        throw NumericalError("oracle: bad starting point");

    double f = objective(omega, logdet);
    double f_best = f;
    Matrix grad(p, p);

    for (long k = 0; k < iterations; ++k) {
        // Subgradient: -Omega^{-1} + S + lambda*l1_frac*V.*sign(Omega)
        //              + lambda*(1-l1_frac)*Omega.
        Matrix inv = chol_inverse(l);
        double gnorm2 = 0.0;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) {
                double g = -inv(i, j) + s(i, j);
                if (!(i == j && !penalize_diagonal)) {
                    double w = omega(i, j);
                    double sgn = w > 0.0 ? 1.0 : (w < 0.0 ? -1.0 : 0.0);
                    g += lambda * l1_frac * v(i, j) * sgn;
                    g += lambda * (1.0 - l1_frac) * w;
                }
                grad(i, j) = g;
                gnorm2 += g * g;
            }
        if (gnorm2 < 1e-30) break;

        // Polyak step against a moving target slightly below the best value.
        double gap = 0.02 * (1.0 + std::fabs(f_best)) / std::sqrt(static_cast<double>(k + 1));
        double step = (f - (f_best - gap)) / gnorm2;

        Matrix next = omega;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) next(i, j) -= step * grad(i, j);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = i + 1; j < p; ++j) {
                double m = 0.5 * (next(i, j) + next(j, i));
                next(i, j) = m;
                next(j, i) = m;
            }

        if (!chol_logdet(next, l, logdet)) {
            // Project onto the PD cone by eigenvalue clamping.
            EigenSym e = eigen_sym(SymmetricMatrix::from_average(next));
            for (double& ev : e.values) ev = std::max(ev, 1e-8);
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t j = i; j < p; ++j) {
                    double acc = 0.0;
                    for (std::size_t m = 0; m < p; ++m)
                        acc += e.vectors(i, m) * e.values[m] * e.vectors(j, m);
                    next(i, j) = acc;
                    next(j, i) = acc;
                }
            if (!chol_logdet(next, l, logdet))
                throw NumericalError("oracle: projection failed");
        }

        omega = std::move(next);
        f = objective(omega, logdet);
        if (f < f_best) f_best = f;
    }
    return f_best;
}

double clime_column_vertex_min(const SymmetricMatrix& s, std::size_t j, double lambda) {
    const std::size_t p = s.dim();
    // Constraint pool: for each row i the two boundary hyperplanes
    // S_i . beta = e_i +/- lambda, plus the p coordinate hyperplanes.
    struct Cand {
        int kind;         // 0 = row boundary, 1 = coordinate zero
        std::size_t idx;  // row or coordinate
        double rhs;       // for kind 0
    };
    std::vector<Cand> pool;
    for (std::size_t i = 0; i < p; ++i) {
        double e = i == j ? 1.0 : 0.0;
        pool.push_back({0, i, e + lambda});
        if (lambda > 0.0) pool.push_back({0, i, e - lambda});
    }
    for (std::size_t k = 0; k < p; ++k) pool.push_back({1, k, 0.0});

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> pick(p);
    std::vector<double> beta;

    // Enumerate all size-p subsets of the pool.
    std::vector<std::size_t> idx(p);
    for (std::size_t i = 0; i < p; ++i) idx[i] = i;
    const std::size_t m = pool.size();

    auto try_subset = [&]() {
        Matrix a(p, p, 0.0);
        std::vector<double> b(p, 0.0);
        for (std::size_t r = 0; r < p; ++r) {
            const Cand& c = pool[idx[r]];
            if (c.kind == 0) {
                for (std::size_t col = 0; col < p; ++col) a(r, col) = s(c.idx, col);
                b[r] = c.rhs;
            } else {
                a(r, c.idx) = 1.0;
                b[r] = 0.0;
            }
        }
        if (!solve_dense(std::move(a), std::move(b), beta)) return;
        // Feasibility of the full system.
        for (std::size_t i = 0; i < p; ++i) {
            double ri = 0.0;
            for (std::size_t col = 0; col < p; ++col) ri += s(i, col) * beta[col];
            ri -= i == j ? 1.0 : 0.0;
            if (std::fabs(ri) > lambda + 1e-9) return;
        }
        double obj = 0.0;
        for (double v : beta) obj += std::fabs(v);
        best = std::min(best, obj);
    };

    // Lexicographic subset enumeration.
    while (true) {
        try_subset();
        std::size_t i = p;
        while (i-- > 0) {
            if (idx[i] != i + m - p) {
                ++idx[i];
                for (std::size_t r = i + 1; r < p; ++r) idx[r] = idx[r - 1] + 1;
                break;
            }
            if (i == 0) return best;
        }
    }
}

double sqrt_lasso_grid_min(const SampleData& x_std, std::size_t j, double lambda,
                           double lo, double hi, double step) {
    const std::size_t n = x_std.n(), p = x_std.p();
    if (p != 3) throw ValidationError("grid oracle expects p = 3");

    std::size_t others[2];
    std::size_t k = 0;
    for (std::size_t c = 0; c < p; ++c)
        if (c != j) others[k++] = c;

    // Gram pieces over /n.
    const Matrix& xv = x_std.values();
    auto col_dot = [&](std::size_t a, std::size_t b) {
        double sum = 0.0;
        for (std::size_t r = 0; r < n; ++r) sum += xv(r, a) * xv(r, b);
        return sum / static_cast<double>(n);
    };
    double yty = col_dot(j, j);
    double g0 = col_dot(j, others[0]);
    double g1 = col_dot(j, others[1]);
    double h00 = col_dot(others[0], others[0]);
    double h01 = col_dot(others[0], others[1]);
    double h11 = col_dot(others[1], others[1]);

    double best = std::numeric_limits<double>::infinity();
    long steps = static_cast<long>(std::llround((hi - lo) / step));
    for (long a = 0; a <= steps; ++a) {
        double b0 = lo + a * step;
        for (long b = 0; b <= steps; ++b) {
            double b1 = lo + b * step;
            double ss = yty - 2.0 * (g0 * b0 + g1 * b1) + h00 * b0 * b0 +
                        2.0 * h01 * b0 * b1 + h11 * b1 * b1;
            double f = std::sqrt(std::max(ss, 0.0)) +
                       lambda * (std::fabs(b0) + std::fabs(b1));
            if (f < best) best = f;
        }
    }
    return best;
}

namespace {

void all_paths_dfs(const ConnectivityGraph& g, std::size_t target, std::size_t node,
                   std::vector<char>& visited, std::vector<std::size_t>& path,
                   double length, double& best,
                   std::vector<std::pair<double, std::vector<std::size_t>>>& found) {
    if (node == target) {
        found.push_back({length, path});
        best = std::min(best, length);
        return;
    }
    for (std::size_t next = 0; next < g.nodes(); ++next) {
        if (visited[next] || g.weights(node, next) <= 0.0) continue;
        visited[next] = 1;
        path.push_back(next);
        all_paths_dfs(g, target, next, visited, path,
                      length + 1.0 / g.weights(node, next), best, found);
        path.pop_back();
        visited[next] = 0;
    }
}

}  // namespace

std::vector<double> betweenness_bruteforce(const ConnectivityGraph& g) {
    const std::size_t p = g.nodes();
    std::vector<double> score(p, 0.0);

    for (std::size_t s = 0; s < p; ++s) {
        for (std::size_t t = s + 1; t < p; ++t) {
            std::vector<std::pair<double, std::vector<std::size_t>>> found;
            double best = std::numeric_limits<double>::infinity();
            std::vector<char> visited(p, 0);
            std::vector<std::size_t> path{s};
            visited[s] = 1;
            all_paths_dfs(g, t, s, visited, path, 0.0, best, found);
            if (found.empty()) continue;

            double sigma = 0.0;
            std::vector<double> through(p, 0.0);
            for (const auto& [len, nodes] : found) {
                if (len > best + 1e-12 * (1.0 + best)) continue;
                sigma += 1.0;
                for (std::size_t idx = 1; idx + 1 < nodes.size(); ++idx)
                    through[nodes[idx]] += 1.0;
            }
            for (std::size_t vtx = 0; vtx < p; ++vtx)
                if (through[vtx] > 0.0) score[vtx] += through[vtx] / sigma;
        }
    }
    return score;
}

SymmetricMatrix random_spd(std::size_t p, Rng& rng, double eig_lo, double eig_hi) {
    // Random orthogonal basis by Gram-Schmidt on a Gaussian matrix.
    Matrix q(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) q(i, j) = rng.normal();
    for (std::size_t c = 0; c < p; ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            double proj = 0.0;
            for (std::size_t r = 0; r < p; ++r) proj += q(r, c) * q(r, prev);
            for (std::size_t r = 0; r < p; ++r) q(r, c) -= proj * q(r, prev);
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < p; ++r) norm += q(r, c) * q(r, c);
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < p; ++r) q(r, c) /= norm;
    }

    std::vector<double> eig(p);
    for (std::size_t i = 0; i < p; ++i) eig[i] = rng.uniform(eig_lo, eig_hi);

    Matrix out(p, p, 0.0);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < p; ++k) s += q(i, k) * eig[k] * q(j, k);
            out(i, j) = s;
            out(j, i) = s;
        }
    return SymmetricMatrix::from_exact(std::move(out));
}

}  // namespace precis::oracles
