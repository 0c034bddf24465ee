#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "precis/estimators.hpp"
#include "precis/matrix.hpp"

namespace precis {

// Log-spaced penalty grid from lambda_max = max off-diagonal |s_ij| down to
// lambda_max * min_ratio, descending.
struct GridSpec {
    int n_points = 20;
    double min_ratio = 0.01;
};
std::vector<double> lambda_grid(const SymmetricMatrix& s, const GridSpec& spec);

struct CvConfig {
    int k = 5;
    std::uint64_t seed = 0;
};

// Shuffled indices cut into contiguous chunks of size floor(n/k) or
// ceil(n/k); deterministic per seed.
std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, int k,
                                                  std::uint64_t seed);

struct Candidate {
    double lambda = 0.0;
    std::optional<double> gamma;
};

// Lambda grid for every method; lambda x {0.1..0.9} product grid for the
// elastic net.
std::vector<Candidate> build_candidates(Method m, const SymmetricMatrix& s,
                                        const GridSpec& spec);

struct CvResult {
    std::vector<Candidate> grid;
    std::vector<double> mean_losses;
    Matrix fold_losses;  // k x |grid|
    std::size_t selected_index = 0;
    Candidate selected;
    std::size_t one_se_index = 0;
    Candidate one_se;
};

// Held-out Gaussian negative log-likelihood, averaged over folds. Fit
// failures score +infinity instead of aborting the sweep; ties select the
// larger (sparser) lambda.
CvResult cross_validate(const SampleData& x, Method m,
                        const std::vector<Candidate>& grid, const CvConfig& cv,
                        const EstimatorConfig& cfg);

std::string cv_result_to_json(const CvResult& r);

}  // namespace precis
