#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "afcm/dataset.hpp"
#include "afcm/graph.hpp"

namespace afcm {

/// Everything a reproducible experiment needs: data source, algorithm,
/// hyper-parameter lists for the grid, seeds, and output destination.
struct ExperimentConfig {
    // Data source: a CSV path, or one of the built-in toy generators.
    std::string data_path;
    std::string label_column;
    std::string toy;  // "" | "spirals" | "rings"
    int toy_samples = 500;
    double toy_noise = 0.0;
    std::array<double, 3> ring_radii{1.0, 2.0, 3.0};
    std::uint64_t toy_seed = 0;

    // afcm | degenerate_afcm | fcm_er | kmeans | spectral | ablation1 | ablation2
    std::string algorithm = "afcm";
    int clusters = 0;  // 0 = infer from labels
    std::vector<int> ks{3, 4, 5, 6, 8, 10, 12};
    std::vector<double> lambdas{1e-1, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
    std::vector<double> gammas{1e-1, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6};  // fcm_er grid
    double sigma = 2.0;
    int repeats = 10;
    std::vector<std::uint64_t> seeds;  // empty = 0..repeats-1
    int max_iter = 100;
    double tol = 1e-6;
    bool normalize = false;
    int embed_dim = 0;
    Symmetrize symmetrize = Symmetrize::Max;

    std::string out_dir;  // empty = $AFCM_OUT_DIR, then "./afcm_out"
    bool write_svg = false;
    bool dump_graph = false;
};

struct TrialReport {
    std::string id;
    std::string algorithm;
    std::uint64_t seed = 0;
    int k = 0;                // 0 where not applicable
    double lambda = 0.0;      // 0 where not applicable
    double gamma_fixed = 0.0; // fcm_er only
    double acc = std::numeric_limits<double>::quiet_NaN();  // percentages
    double nmi = std::numeric_limits<double>::quiet_NaN();
    double ari = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;
    bool converged = false;
    double gamma_final = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> objective_trace;
    std::vector<double> gamma_trace;
    std::vector<double> acc_trace;  // fractions in [0,1]
    std::vector<double> iter_wall_ms;
    double wall_ms = 0.0;
    bool failed = false;
    std::string error;
    std::vector<int> labels;
};

/// Mean and population standard deviation per metric over one grid cell.
struct SummaryRow {
    std::string algorithm;
    int k = 0;
    double lambda = 0.0;
    double gamma_fixed = 0.0;
    int repeats = 0;
    int failures = 0;
    bool has_metrics = false;
    double acc_mean = 0.0, acc_std = 0.0;
    double nmi_mean = 0.0, nmi_std = 0.0;
    double ari_mean = 0.0, ari_std = 0.0;
    double iterations_mean = 0.0;
    double gamma_mean = 0.0;
    double wall_ms_mean = 0.0;
};

struct ExperimentResult {
    std::string dataset_name;
    int clusters = 0;
    std::vector<SummaryRow> summary;   // one row per grid cell
    std::vector<TrialReport> trials;
    int best_cell = -1;  // by mean ACC; ties: NMI, then smaller lambda, then k
};

/// Load or generate the working dataset (normalization applied when asked).
Dataset resolve_dataset(const ExperimentConfig& config);

/// Seeded repeated trials over the algorithm's hyper-parameter grid.
/// Degenerate-cluster and eigensolver failures are recorded per trial; the
/// grid keeps going.
ExperimentResult run_experiment(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config, const Dataset& data);

struct AblationResult {
    ExperimentResult ablation1;  // graph embedding, then k-means
    ExperimentResult ablation2;  // graph embedding, then the parameter-free fuzzy fit
    ExperimentResult afcm;       // joint one-stage fit
};

/// The two two-stage pipelines and the one-stage fit, side by side on
/// shared seeds.
AblationResult run_ablation(const ExperimentConfig& config);
AblationResult run_ablation(const ExperimentConfig& config, const Dataset& data);

/// summary.csv, trials/<id>.json, trace_<id>.csv, scatter_<id>.csv for 2-D
/// data, and optional SVG renderings.
void emit_outputs(const ExperimentConfig& config, const Dataset& data,
                  const ExperimentResult& result);
void emit_outputs(const ExperimentConfig& config, const Dataset& data,
                  const AblationResult& result);

/// Deterministic summary bytes (the exact content of summary.csv).
std::string summary_csv(const std::vector<SummaryRow>& rows, const std::string& dataset_name);

/// Output directory resolution: config value, else $AFCM_OUT_DIR, else ./afcm_out.
std::string resolve_out_dir(const ExperimentConfig& config);

std::string trial_json(const TrialReport& trial, const ExperimentConfig& config);

}  // namespace afcm
