#include "precis/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "precis/errors.hpp"
#include "precis/estimators.hpp"
#include "precis/io.hpp"
#include "precis/linalg.hpp"
#include "precis/metrics.hpp"
#include "precis/network.hpp"
#include "precis/stats.hpp"
#include "precis/synthetic.hpp"
#include "precis/tuning.hpp"

namespace precis {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

unsigned resolve_threads() {
    const char* env = std::getenv("PRECIS_THREADS");
    if (env && *env) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0;  // auto
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw IoError("cannot create output directory: " + dir);
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

struct EstimateArgs {
    std::string data_path;
    std::string method = "glasso";
    std::optional<double> lambda;
    std::optional<double> gamma;
    int cv_folds = 5;
    int grid_points = 20;
    double grid_min_ratio = 0.01;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    double tol = 1e-4;
    int max_iter = 200;
    int lla_iters = 3;
    bool no_penalize_diagonal = false;
};

int cmd_estimate(const EstimateArgs& a) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();

    Method m = method_from_string(a.method);
    SampleData x = read_sample_csv(a.data_path);
    SymmetricMatrix s = sample_covariance(x, true);

    EstimatorConfig cfg;
    cfg.gamma = a.gamma;
    cfg.tol = a.tol;
    cfg.max_iter = a.max_iter;
    cfg.lla_iters = a.lla_iters;
    cfg.penalize_diagonal = !a.no_penalize_diagonal;

    std::optional<CvResult> cvres;
    double lambda;
    if (a.lambda) {
        lambda = *a.lambda;
    } else {
        std::vector<Candidate> grid;
        if (m == Method::ElasticNet && a.gamma) {
            for (double lam : lambda_grid(s, {a.grid_points, a.grid_min_ratio}))
                grid.push_back({lam, a.gamma});
        } else {
            grid = build_candidates(m, s, {a.grid_points, a.grid_min_ratio});
        }
        CvConfig cv{a.cv_folds, a.seed};
        cvres = cross_validate(x, m, grid, cv, cfg);
        lambda = cvres->selected.lambda;
        if (cvres->selected.gamma) cfg.gamma = cvres->selected.gamma;
    }

    PrecisionEstimate est = fit_method(m, s, &x, lambda, cfg);
    auto t1 = clock::now();

    ensure_out_dir(a.out_dir);
    write_matrix_csv(join_path(a.out_dir, "omega.csv"), est.omega.mat());
    if (cvres)
        write_text_atomic(join_path(a.out_dir, "cv.json"), cv_result_to_json(*cvres));

    json summary;
    summary["method"] = method_name(m);
    summary["lambda"] = est.lambda_used;
    if (est.gamma_used)
        summary["gamma"] = *est.gamma_used;
    else
        summary["gamma"] = nullptr;
    summary["converged"] = est.converged;
    summary["sparsity"] = sparsity(est.omega);
    summary["runtime"] = std::chrono::duration<double>(t1 - t0).count();
    std::string text = summary.dump(2);
    write_text_atomic(join_path(a.out_dir, "summary.json"), text);
    std::cout << text << "\n";
    return kExitOk;
}

template <typename T>
T config_field(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError("invalid config field: " + key);
    }
}

SimConfig parse_sim_config(const json& j) {
    SimConfig cfg;
    if (!j.contains("truth")) throw ValidationError("missing config field: truth");
    const json& t = j.at("truth");
    cfg.truth.kind = truth_kind_from_string(config_field<std::string>(t, "kind", "banded"));
    cfg.truth.p = config_field<std::size_t>(t, "p", 0);
    if (cfg.truth.kind != TruthKind::FromFile && cfg.truth.p < 2)
        throw ValidationError("invalid config field: truth.p");
    cfg.truth.band_width = config_field<int>(t, "band_width", 1);
    cfg.truth.band_value = config_field<double>(t, "band_value", 0.4);
    cfg.truth.edge_prob = config_field<double>(t, "edge_prob", 0.05);
    if (t.contains("edge_magnitude")) {
        auto range = t.at("edge_magnitude");
        if (!range.is_array() || range.size() != 2)
            throw ValidationError("invalid config field: truth.edge_magnitude");
        cfg.truth.edge_mag_lo = range[0].get<double>();
        cfg.truth.edge_mag_hi = range[1].get<double>();
    }
    cfg.truth.pd_margin = config_field<double>(t, "pd_margin", 0.05);
    cfg.truth.file = config_field<std::string>(t, "file", "");
    if (cfg.truth.kind == TruthKind::FromFile) {
        Matrix m = read_matrix_csv(cfg.truth.file);
        cfg.truth.p = m.rows();
    }

    cfg.n = config_field<std::size_t>(j, "n", 180);
    cfg.replicates = config_field<int>(j, "replicates", 100);
    if (cfg.replicates < 1) throw ValidationError("invalid config field: replicates");

    if (!j.contains("methods")) throw ValidationError("missing config field: methods");
    for (const auto& name : j.at("methods")) {
        if (!name.is_string()) throw ValidationError("invalid config field: methods");
        cfg.methods.push_back(method_from_string(name.get<std::string>()));
    }
    if (cfg.methods.empty()) throw ValidationError("invalid config field: methods");

    if (j.contains("cv")) {
        cfg.cv.k = config_field<int>(j.at("cv"), "k", 5);
        cfg.cv.seed = config_field<std::uint64_t>(j.at("cv"), "seed", 0);
    }
    if (j.contains("grid")) {
        cfg.grid.n_points = config_field<int>(j.at("grid"), "n_points", 20);
        cfg.grid.min_ratio = config_field<double>(j.at("grid"), "min_ratio", 0.01);
    }
    if (j.contains("estimator")) {
        const json& e = j.at("estimator");
        cfg.est.tol = config_field<double>(e, "tol", 1e-4);
        cfg.est.max_iter = config_field<int>(e, "max_iter", 200);
        cfg.est.lla_iters = config_field<int>(e, "lla_iters", 3);
        cfg.est.penalize_diagonal = config_field<bool>(e, "penalize_diagonal", true);
        if (e.contains("gamma")) cfg.est.gamma = e.at("gamma").get<double>();
        if (e.contains("weight_source"))
            cfg.est.weight_source =
                weight_source_from_string(e.at("weight_source").get<std::string>());
    }
    cfg.seed = config_field<std::uint64_t>(j, "seed", 0);
    cfg.timing = config_field<bool>(j, "timing", true);
    return cfg;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
    std::ifstream in(config_path);
    if (!in) throw IoError("cannot open config: " + config_path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config is not valid json: ") + e.what());
    }
    SimConfig cfg = parse_sim_config(j);

    ensure_out_dir(out_dir);
    const std::string replicate_path = join_path(out_dir, "replicates.csv");
    const std::string tmp_path = replicate_path + ".tmp";

    // Streamed per replicate so long sweeps are inspectable mid-run; renamed
    // into place at the end so interrupted runs never leave a partial file.
    std::ofstream stream(tmp_path, std::ios::trunc);
    if (!stream) throw IoError("cannot write file: " + tmp_path);
    stream << replicate_csv_header() << "\n";
    stream.flush();

    SimOutcome outcome = run_replicates(cfg, resolve_threads(),
                                        [&](const ReplicateResult& r) {
                                            stream << replicate_csv_row(r) << "\n";
                                            stream.flush();
                                        });
    stream.close();
    if (std::rename(tmp_path.c_str(), replicate_path.c_str()) != 0)
        throw IoError("rename failed: " + tmp_path);

    write_text_atomic(join_path(out_dir, "aggregate.csv"), aggregate_csv(outcome.aggregate));
    write_text_atomic(join_path(out_dir, "aggregate.json"), aggregate_json(outcome.aggregate));
    std::cout << aggregate_csv(outcome.aggregate);
    return kExitOk;
}

int cmd_compare(const std::string& truth_path, const std::string& est_path,
                const std::string& out_dir) {
    SymmetricMatrix truth = SymmetricMatrix::from_exact(read_matrix_csv(truth_path));
    SymmetricMatrix est = SymmetricMatrix::from_exact(read_matrix_csv(est_path));
    SymmetricMatrix sigma = invert_pd(truth);

    MetricsReport r = evaluate_estimate(truth, sigma, est);
    json out;
    out["f_norm"] = r.f_norm;
    if (r.kl_valid)
        out["kl_div"] = r.kl_div;
    else
        out["kl_div"] = "inf";
    out["valid"] = r.kl_valid;
    out["f1"] = r.f1;
    out["sparsity"] = r.sparsity;
    out["tp"] = r.edges.tp;
    out["fp"] = r.edges.fp;
    out["fn"] = r.edges.fn;
    out["tn"] = r.edges.tn;
    std::string text = out.dump(2);
    ensure_out_dir(out_dir);
    write_text_atomic(join_path(out_dir, "metrics.json"), text);
    std::cout << text << "\n";
    return kExitOk;
}

int cmd_network(const std::string& precision_path, double z_threshold,
                bool sqrt_transform, const std::string& out_dir) {
    SymmetricMatrix omega = SymmetricMatrix::from_exact(read_matrix_csv(precision_path));
    SymmetricMatrix rho = partial_correlation(omega);

    // Hubs always come from the untransformed graph.
    ConnectivityGraph g = to_graph(rho, false);
    std::vector<double> bc = betweenness_weighted(g);
    HubReport report = hub_report(bc, z_threshold);

    ConnectivityGraph g_export = sqrt_transform ? to_graph(rho, true) : g;

    ensure_out_dir(out_dir);
    std::string text = hub_report_to_json(report);
    write_text_atomic(join_path(out_dir, "hubs.json"), text);
    write_text_atomic(join_path(out_dir, "edges.csv"), edge_list_csv(g_export));
    std::cout << text << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Sparse precision-matrix estimation toolkit"};
    app.require_subcommand(1);

    EstimateArgs est;
    CLI::App* estimate = app.add_subcommand(
        "estimate", "Estimate a precision matrix from an observation CSV");
    estimate->add_option("--data", est.data_path, "n x p observation CSV")->required();
    estimate->add_option("--method", est.method, "one of: glasso ridge elnet adaptive scad mcp clime tiger");
    estimate->add_option("--lambda", est.lambda, "fixed penalty; omit to cross-validate");
    estimate->add_option("--gamma", est.gamma, "secondary parameter (method-specific)");
    estimate->add_option("--cv-folds", est.cv_folds, "fold count")->capture_default_str();
    estimate->add_option("--grid-points", est.grid_points, "lambda grid size")->capture_default_str();
    estimate->add_option("--grid-min-ratio", est.grid_min_ratio, "lambda_min / lambda_max")->capture_default_str();
    estimate->add_option("--seed", est.seed, "fold shuffling seed");
    estimate->add_option("--out-dir", est.out_dir, "output directory")->capture_default_str();
    estimate->add_option("--tol", est.tol, "solver tolerance")->capture_default_str();
    estimate->add_option("--max-iter", est.max_iter, "solver sweep cap")->capture_default_str();
    estimate->add_option("--lla-iters", est.lla_iters, "LLA steps for scad/mcp")->capture_default_str();
    estimate->add_flag("--no-penalize-diagonal", est.no_penalize_diagonal,
                       "exclude the diagonal from the penalty");

    std::string sim_config, sim_out = ".";
    CLI::App* simulate = app.add_subcommand("simulate", "Run a replicated simulation sweep");
    simulate->add_option("--config", sim_config, "simulation config JSON")->required();
    simulate->add_option("--out-dir", sim_out, "output directory")->capture_default_str();

    std::string cmp_truth, cmp_est, cmp_out = ".";
    CLI::App* compare = app.add_subcommand("compare", "Score an estimate against a truth matrix");
    compare->add_option("--truth", cmp_truth, "true precision CSV")->required();
    compare->add_option("--estimate", cmp_est, "estimated precision CSV")->required();
    compare->add_option("--out-dir", cmp_out, "output directory")->capture_default_str();

    std::string net_precision, net_out = ".";
    double net_z = 2.0;
    bool net_sqrt = false;
    CLI::App* network = app.add_subcommand("network", "Connectivity summary from a precision CSV");
    network->add_option("--precision", net_precision, "precision matrix CSV")->required();
    network->add_option("--z-threshold", net_z, "hub z-score threshold")->capture_default_str();
    network->add_flag("--sqrt-transform", net_sqrt, "sqrt-transform exported edge weights");
    network->add_option("--out-dir", net_out, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (estimate->parsed()) return cmd_estimate(est);
        if (simulate->parsed()) return cmd_simulate(sim_config, sim_out);
        if (compare->parsed()) return cmd_compare(cmp_truth, cmp_est, cmp_out);
        if (network->parsed()) return cmd_network(net_precision, net_z, net_sqrt, net_out);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitInput;
}

}  // namespace precis
