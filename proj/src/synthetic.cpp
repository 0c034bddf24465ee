#include "precis/synthetic.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "precis/errors.hpp"
#include "precis/io.hpp"
#include "precis/linalg.hpp"
#include "precis/rng.hpp"
#include "precis/stats.hpp"

namespace precis {

const char* truth_kind_name(TruthKind k) {
    switch (k) {
        case TruthKind::Banded: return "banded";
        case TruthKind::RandomSparse: return "random-sparse";
        case TruthKind::FromFile: return "from-file";
    }
    return "?";
}

TruthKind truth_kind_from_string(const std::string& name) {
    for (TruthKind k : {TruthKind::Banded, TruthKind::RandomSparse, TruthKind::FromFile})
        if (name == truth_kind_name(k)) return k;
    throw ValidationError("unknown truth kind: " + name);
}

namespace {

void validate_truth_spec(const GroundTruthSpec& spec) {
    if (spec.p < 2) throw ValidationError("truth dimension must be at least 2");
    if (spec.kind == TruthKind::RandomSparse &&
        (spec.edge_prob <= 0.0 || spec.edge_prob >= 1.0))
        throw ValidationError("edge_prob must lie in (0, 1)");
    if (spec.pd_margin <= 0.0) throw ValidationError("pd_margin must be positive");
    if (spec.kind == TruthKind::FromFile && spec.file.empty())
        throw ValidationError("from-file truth requires a file path");
}

SymmetricMatrix repair_pd(Matrix raw, double margin) {
    SymmetricMatrix m = SymmetricMatrix::from_exact(std::move(raw));
    EigenSym e = eigen_sym(m);
    double min_eig = e.values.front();
    if (min_eig >= margin) return m;
    double shift = margin - min_eig;
    Matrix shifted = m.mat();
    for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) += shift;
    return SymmetricMatrix::from_exact(std::move(shifted));
}

}  // namespace

SymmetricMatrix generate_precision(const GroundTruthSpec& spec, std::uint64_t seed) {
    validate_truth_spec(spec);
    const std::size_t p = spec.p;

    switch (spec.kind) {
        case TruthKind::Banded: {
            Matrix m(p, p, 0.0);
            for (std::size_t i = 0; i < p; ++i) {
                m(i, i) = 1.0;
                for (int b = 1; b <= spec.band_width; ++b) {
                    std::size_t j = i + static_cast<std::size_t>(b);
                    if (j < p) {
                        m(i, j) = spec.band_value;
                        m(j, i) = spec.band_value;
                    }
                }
            }
            return repair_pd(std::move(m), spec.pd_margin);
        }
        case TruthKind::RandomSparse: {
            Rng rng(seed);
            Matrix m(p, p, 0.0);
            for (std::size_t i = 0; i < p; ++i) m(i, i) = 1.0;
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t j = i + 1; j < p; ++j) {
                    if (rng.uniform() >= spec.edge_prob) continue;
                    double mag = rng.uniform(spec.edge_mag_lo, spec.edge_mag_hi);
                    double val = rng.uniform() < 0.5 ? mag : -mag;
                    m(i, j) = val;
                    m(j, i) = val;
                }
            return repair_pd(std::move(m), spec.pd_margin);
        }
        case TruthKind::FromFile: {
            Matrix m = read_matrix_csv(spec.file);
            SymmetricMatrix sym = SymmetricMatrix::from_exact(std::move(m));
            cholesky_pd(sym);  // throws NotPositiveDefinite
            return sym;
        }
    }
    throw ValidationError("unknown truth kind");
}

SampleData sample_mvn(const SymmetricMatrix& omega, std::size_t n, std::uint64_t seed) {
    const std::size_t p = omega.dim();
    SymmetricMatrix sigma = invert_pd(omega);
    CholeskyFactor f = cholesky_pd(sigma);

    Rng rng(seed);
    Matrix z(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) z(i, j) = rng.normal();

    // X = Z L^T: row k of X is L applied to row k of Z.
    Matrix x(n, p);
    for (std::size_t k = 0; k < n; ++k) {
        const double* zr = z.row(k);
        for (std::size_t i = 0; i < p; ++i) {
            double s = 0.0;
            const double* li = f.lower.row(i);
            for (std::size_t m = 0; m <= i; ++m) s += zr[m] * li[m];
            x(k, i) = s;
        }
    }
    return SampleData(std::move(x));
}

namespace {

struct MethodOutcome {
    ReplicateResult row;
};

ReplicateResult run_one_method(const SimConfig& cfg, Method m,
                               const SampleData& x, const SymmetricMatrix& truth,
                               const SymmetricMatrix& sigma_truth, int replicate,
                               std::uint64_t cv_seed) {
    using clock = std::chrono::steady_clock;
    ReplicateResult row;
    row.method = m;
    row.replicate = replicate;

    try {
        SymmetricMatrix s = sample_covariance(x, true);
        std::vector<Candidate> grid = build_candidates(m, s, cfg.grid);
        CvConfig cv = cfg.cv;
        cv.seed = cv_seed;

        auto t0 = clock::now();
        CvResult cvres = cross_validate(x, m, grid, cv, cfg.est);
        auto t1 = clock::now();

        EstimatorConfig fit_cfg = cfg.est;
        if (cvres.selected.gamma) fit_cfg.gamma = cvres.selected.gamma;
        PrecisionEstimate est = fit_method(m, s, &x, cvres.selected.lambda, fit_cfg);
        auto t2 = clock::now();

        row.metrics = evaluate_estimate(truth, sigma_truth, est.omega);
        row.lambda_selected = cvres.selected.lambda;
        row.gamma_selected = cvres.selected.gamma ? cvres.selected.gamma : est.gamma_used;
        row.cv_time_sec = std::chrono::duration<double>(t1 - t0).count();
        row.fit_time_sec = std::chrono::duration<double>(t2 - t1).count();
        row.wall_time_sec = row.cv_time_sec + row.fit_time_sec;
        row.valid = row.metrics.kl_valid;
    } catch (const Error&) {
        row.valid = false;
        row.metrics.f_norm = std::numeric_limits<double>::quiet_NaN();
        row.metrics.kl_div = std::numeric_limits<double>::infinity();
        row.metrics.kl_valid = false;
        row.metrics.f1 = std::numeric_limits<double>::quiet_NaN();
        row.metrics.sparsity = std::numeric_limits<double>::quiet_NaN();
    }
    if (!cfg.timing) {
        row.cv_time_sec = 0.0;
        row.fit_time_sec = 0.0;
        row.wall_time_sec = 0.0;
    }
    return row;
}

}  // namespace

SimOutcome run_replicates(const SimConfig& config, unsigned threads,
                          const std::function<void(const ReplicateResult&)>& on_row) {
    if (config.replicates < 1) throw ValidationError("replicates must be at least 1");
    if (config.n < 2) throw ValidationError("sample size must be at least 2");
    if (config.methods.empty()) throw ValidationError("no methods requested");

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const int R = config.replicates;
    const std::size_t M = config.methods.size();

    SymmetricMatrix truth = generate_precision(config.truth, child_seed(config.seed, 0));
    SymmetricMatrix sigma_truth = invert_pd(truth);

    SimOutcome out;
    out.rows.resize(static_cast<std::size_t>(R) * M);

    std::atomic<int> next_replicate{0};
    std::vector<char> done(R, 0);
    std::mutex mu;
    std::condition_variable cv_done;

    auto worker = [&]() {
        while (true) {
            int r = next_replicate.fetch_add(1);
            if (r >= R) break;
            std::uint64_t data_seed = child_seed(config.seed, 1 + static_cast<std::uint64_t>(r));
            std::uint64_t cv_seed = splitmix64(data_seed ^ 0xC5EEDF01DULL);
            SampleData x = sample_mvn(truth, config.n, data_seed);
            for (std::size_t mi = 0; mi < M; ++mi) {
                out.rows[static_cast<std::size_t>(r) * M + mi] = run_one_method(
                    config, config.methods[mi], x, truth, sigma_truth, r, cv_seed);
            }
            {
                std::lock_guard<std::mutex> lock(mu);
                done[r] = 1;
            }
            cv_done.notify_all();
        }
    };

    unsigned nworkers = std::min<unsigned>(threads, static_cast<unsigned>(R));
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (unsigned t = 0; t < nworkers; ++t) pool.emplace_back(worker);

    // Emit rows in replicate order as they become final.
    if (on_row) {
        for (int r = 0; r < R; ++r) {
            std::unique_lock<std::mutex> lock(mu);
            cv_done.wait(lock, [&] { return done[r] != 0; });
            lock.unlock();
            for (std::size_t mi = 0; mi < M; ++mi)
                on_row(out.rows[static_cast<std::size_t>(r) * M + mi]);
        }
    }
    for (auto& t : pool) t.join();

    // Per-method means across replicates, Table column order.
    out.aggregate.reserve(M);
    for (std::size_t mi = 0; mi < M; ++mi) {
        AggregateRow agg;
        agg.method = config.methods[mi];
        for (int r = 0; r < R; ++r) {
            const ReplicateResult& row = out.rows[static_cast<std::size_t>(r) * M + mi];
            agg.f_norm += row.metrics.f_norm;
            agg.kl_div += row.metrics.kl_div;
            agg.f1 += row.metrics.f1;
            agg.sparsity += row.metrics.sparsity;
            agg.time_sec += row.wall_time_sec;
        }
        const double dr = static_cast<double>(R);
        agg.f_norm /= dr;
        agg.kl_div /= dr;
        agg.f1 /= dr;
        agg.sparsity /= dr;
        agg.time_sec /= dr;
        out.aggregate.push_back(agg);
    }
    return out;
}

namespace {

std::string csv_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return format_double(v);
}

}  // namespace

std::string replicate_csv_header() {
    return "method,replicate,f_norm,kl_div,f1,sparsity,lambda,gamma,time_sec,valid";
}

std::string replicate_csv_row(const ReplicateResult& r) {
    std::ostringstream out;
    out << method_name(r.method) << ',' << r.replicate << ','
        << csv_number(r.metrics.f_norm) << ',' << csv_number(r.metrics.kl_div) << ','
        << csv_number(r.metrics.f1) << ',' << csv_number(r.metrics.sparsity) << ','
        << csv_number(r.lambda_selected) << ','
        << (r.gamma_selected ? csv_number(*r.gamma_selected) : std::string()) << ','
        << csv_number(r.wall_time_sec) << ',' << (r.valid ? "true" : "false");
    return out.str();
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
    std::ostringstream out;
    out << "method,f_norm,kl_div,f1,sparsity,time_sec\n";
    for (const AggregateRow& r : rows) {
        out << method_name(r.method) << ',' << csv_number(r.f_norm) << ','
            << csv_number(r.kl_div) << ',' << csv_number(r.f1) << ','
            << csv_number(r.sparsity) << ',' << csv_number(r.time_sec) << '\n';
    }
    return out.str();
}

std::string aggregate_json(const std::vector<AggregateRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const AggregateRow& r : rows) {
        nlohmann::json item;
        item["method"] = method_name(r.method);
        item["f_norm"] = r.f_norm;
        if (std::isfinite(r.kl_div))
            item["kl_div"] = r.kl_div;
        else
            item["kl_div"] = "inf";
        item["f1"] = r.f1;
        item["sparsity"] = r.sparsity;
        item["time_sec"] = r.time_sec;
        arr.push_back(item);
    }
    return arr.dump(2);
}

}  // namespace precis
