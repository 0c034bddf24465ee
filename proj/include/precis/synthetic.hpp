#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "precis/estimators.hpp"
#include "precis/matrix.hpp"
#include "precis/metrics.hpp"
#include "precis/tuning.hpp"

namespace precis {

enum class TruthKind { Banded, RandomSparse, FromFile };
const char* truth_kind_name(TruthKind k);
TruthKind truth_kind_from_string(const std::string& name);

struct GroundTruthSpec {
    TruthKind kind = TruthKind::Banded;
    std::size_t p = 2;
    int band_width = 1;          // banded
    double band_value = 0.4;     // banded
    double edge_prob = 0.05;     // random-sparse
    double edge_mag_lo = 0.2;    // random-sparse
    double edge_mag_hi = 0.6;    // random-sparse
    double pd_margin = 0.05;
    std::string file;            // from-file
};

// Unit diagonal plus the requested support, then a diagonal shift whenever
// the smallest eigenvalue falls below pd_margin.
SymmetricMatrix generate_precision(const GroundTruthSpec& spec, std::uint64_t seed);

// X = Z L^T with Sigma = Omega^{-1} = L L^T and Z standard normal.
SampleData sample_mvn(const SymmetricMatrix& omega, std::size_t n, std::uint64_t seed);

struct SimConfig {
    GroundTruthSpec truth;
    std::size_t n = 180;
    int replicates = 100;
    std::vector<Method> methods;
    CvConfig cv;
    GridSpec grid;
    EstimatorConfig est;
    std::uint64_t seed = 0;
    bool timing = true;  // false writes zero times for byte-stable output
};

struct ReplicateResult {
    Method method = Method::Glasso;
    int replicate = 0;
    MetricsReport metrics;
    double lambda_selected = 0.0;
    std::optional<double> gamma_selected;
    double cv_time_sec = 0.0;
    double fit_time_sec = 0.0;
    double wall_time_sec = 0.0;  // cv + fit
    bool valid = true;
};

struct AggregateRow {
    Method method = Method::Glasso;
    double f_norm = 0.0;
    double kl_div = 0.0;
    double f1 = 0.0;
    double sparsity = 0.0;
    double time_sec = 0.0;
};

struct SimOutcome {
    std::vector<ReplicateResult> rows;       // replicate-major, methods in config order
    std::vector<AggregateRow> aggregate;     // per-method means across replicates
};

// Runs the replicated protocol: per replicate, draw data from the truth,
// cross-validate each method, fit at the selected tuning, score against the
// truth. on_row (optional) fires in output order as rows become final.
// threads = 0 picks hardware concurrency.
SimOutcome run_replicates(const SimConfig& config, unsigned threads = 1,
                          const std::function<void(const ReplicateResult&)>& on_row = {});

// CSV / JSON renderings used by the CLI and tests.
std::string replicate_csv_header();
std::string replicate_csv_row(const ReplicateResult& r);
std::string aggregate_csv(const std::vector<AggregateRow>& rows);
std::string aggregate_json(const std::vector<AggregateRow>& rows);

}  // namespace precis
