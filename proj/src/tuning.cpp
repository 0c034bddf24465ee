#include "precis/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "precis/errors.hpp"
#include "precis/rng.hpp"
#include "precis/stats.hpp"

namespace precis {

std::vector<double> lambda_grid(const SymmetricMatrix& s, const GridSpec& spec) {
    if (spec.n_points < 2) throw ValidationError("grid needs at least 2 points");
    if (spec.min_ratio <= 0.0 || spec.min_ratio >= 1.0)
        throw ValidationError("grid min_ratio must lie in (0, 1)");

    double lambda_max = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t j = i + 1; j < s.dim(); ++j)
            lambda_max = std::max(lambda_max, std::fabs(s(i, j)));
    if (lambda_max <= 0.0)
        throw ValidationError("degenerate grid: all off-diagonals are zero");

    std::vector<double> grid(spec.n_points);
    const double step = std::log(spec.min_ratio) / (spec.n_points - 1);
    for (int i = 0; i < spec.n_points; ++i)
        grid[i] = lambda_max * std::exp(step * i);
    return grid;
}

std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, int k,
                                                  std::uint64_t seed) {
    if (k < 2 || static_cast<std::size_t>(k) > n)
        throw ValidationError("fold count must satisfy 2 <= k <= n");

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        std::size_t j = rng.uniform_int(i + 1);
        std::swap(perm[i], perm[j]);
    }

    std::vector<std::vector<std::size_t>> folds(k);
    const std::size_t base = n / static_cast<std::size_t>(k);
    const std::size_t rem = n % static_cast<std::size_t>(k);
    std::size_t pos = 0;
    for (int f = 0; f < k; ++f) {
        std::size_t len = base + (static_cast<std::size_t>(f) < rem ? 1 : 0);
        folds[f].assign(perm.begin() + pos, perm.begin() + pos + len);
        pos += len;
    }
    return folds;
}

std::vector<Candidate> build_candidates(Method m, const SymmetricMatrix& s,
                                        const GridSpec& spec) {
    std::vector<double> lambdas = lambda_grid(s, spec);
    std::vector<Candidate> out;
    if (m == Method::ElasticNet) {
        for (double lam : lambdas)
            for (int g = 9; g >= 1; --g)
                out.push_back({lam, 0.1 * g});
    } else {
        for (double lam : lambdas) out.push_back({lam, std::nullopt});
    }
    return out;
}

namespace {

SampleData subset_rows(const SampleData& x, const std::vector<std::size_t>& rows) {
    Matrix m(rows.size(), x.p());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t j = 0; j < x.p(); ++j) m(r, j) = x.values()(rows[r], j);
    return SampleData(std::move(m));
}

}  // namespace

CvResult cross_validate(const SampleData& x, Method m,
                        const std::vector<Candidate>& grid, const CvConfig& cv,
                        const EstimatorConfig& cfg) {
    if (grid.empty()) throw ValidationError("empty candidate grid");
    auto folds = kfold_split(x.n(), cv.k, cv.seed);
    const std::size_t k = folds.size();
    const double inf = std::numeric_limits<double>::infinity();

    CvResult res;
    res.grid = grid;
    res.fold_losses = Matrix(k, grid.size(), inf);

    for (std::size_t f = 0; f < k; ++f) {
        std::vector<std::size_t> train_rows;
        train_rows.reserve(x.n() - folds[f].size());
        for (std::size_t g = 0; g < k; ++g)
            if (g != f) train_rows.insert(train_rows.end(), folds[g].begin(), folds[g].end());

        SampleData x_train = subset_rows(x, train_rows);
        SampleData x_test = subset_rows(x, folds[f]);
        SymmetricMatrix s_train = sample_covariance(x_train, true);
        SymmetricMatrix s_test = sample_covariance(x_test, true);

        for (std::size_t c = 0; c < grid.size(); ++c) {
            EstimatorConfig fit_cfg = cfg;
            if (grid[c].gamma) fit_cfg.gamma = grid[c].gamma;
            try {
                PrecisionEstimate est =
                    fit_method(m, s_train, &x_train, grid[c].lambda, fit_cfg);
                res.fold_losses(f, c) = gaussian_neg_loglik(est.omega, s_test);
            } catch (const Error&) {
                res.fold_losses(f, c) = inf;
            }
        }
    }

    res.mean_losses.assign(grid.size(), 0.0);
    for (std::size_t c = 0; c < grid.size(); ++c) {
        double sum = 0.0;
        for (std::size_t f = 0; f < k; ++f) sum += res.fold_losses(f, c);
        res.mean_losses[c] = sum / static_cast<double>(k);
    }

    // Candidates are ordered lambda-descending, so the first strict minimum
    // breaks ties toward the sparser fit.
    std::size_t best = 0;
    for (std::size_t c = 1; c < grid.size(); ++c)
        if (res.mean_losses[c] < res.mean_losses[best]) best = c;
    res.selected_index = best;
    res.selected = grid[best];

    // One-standard-error rule (informational): the largest lambda whose mean
    // loss is within one SE of the minimum.
    double se = 0.0;
    if (k > 1 && std::isfinite(res.mean_losses[best])) {
        double mean = res.mean_losses[best];
        double ss = 0.0;
        for (std::size_t f = 0; f < k; ++f) {
            double d = res.fold_losses(f, best) - mean;
            ss += d * d;
        }
        se = std::sqrt(ss / static_cast<double>(k - 1)) /
             std::sqrt(static_cast<double>(k));
    }
    std::size_t one_se = best;
    for (std::size_t c = 0; c < grid.size(); ++c) {
        if (res.mean_losses[c] <= res.mean_losses[best] + se) {
            one_se = c;
            break;
        }
    }
    res.one_se_index = one_se;
    res.one_se = grid[one_se];
    return res;
}

std::string cv_result_to_json(const CvResult& r) {
    nlohmann::json grid = nlohmann::json::array();
    for (const Candidate& c : r.grid) {
        nlohmann::json item;
        item["lambda"] = c.lambda;
        if (c.gamma) item["gamma"] = *c.gamma;
        grid.push_back(item);
    }
    nlohmann::json losses = nlohmann::json::array();
    for (double v : r.mean_losses) {
        if (std::isfinite(v))
            losses.push_back(v);
        else
            losses.push_back("inf");
    }
    nlohmann::json selected;
    selected["lambda"] = r.selected.lambda;
    if (r.selected.gamma) selected["gamma"] = *r.selected.gamma;
    nlohmann::json one_se;
    one_se["lambda"] = r.one_se.lambda;
    if (r.one_se.gamma) one_se["gamma"] = *r.one_se.gamma;

    nlohmann::json out;
    out["grid"] = grid;
    out["mean_losses"] = losses;
    out["selected"] = selected;
    out["one_se"] = one_se;
    return out.dump(2);
}

}  // namespace precis
