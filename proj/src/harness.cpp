#include "afcm/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "afcm/clustering.hpp"
#include "afcm/embedding.hpp"
#include "afcm/errors.hpp"
#include "afcm/metrics.hpp"

namespace afcm {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Cell {
    int k = 0;
    double lambda = 0.0;
    double gamma = 0.0;
};

std::vector<Cell> enumerate_cells(const ExperimentConfig& config) {
    const std::string& a = config.algorithm;
    std::vector<Cell> cells;
    if (a == "afcm") {
        for (int k : config.ks)
            for (double l : config.lambdas) cells.push_back({k, l, 0.0});
    } else if (a == "spectral" || a == "ablation1" || a == "ablation2") {
        for (int k : config.ks) cells.push_back({k, 0.0, 0.0});
    } else if (a == "fcm_er") {
        for (double g : config.gammas) cells.push_back({0, 0.0, g});
    } else if (a == "degenerate_afcm" || a == "kmeans") {
        cells.push_back({});
    } else {
        throw std::invalid_argument("unknown algorithm '" + a + "'");
    }
    if (cells.empty()) throw std::invalid_argument("empty hyper-parameter grid");
    return cells;
}

bool uses_graph(const std::string& algorithm) {
    return algorithm == "afcm" || algorithm == "spectral" || algorithm == "ablation1" ||
           algorithm == "ablation2";
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string trial_id(const std::string& algorithm, const Cell& cell, std::uint64_t seed) {
    std::string id = algorithm;
    if (cell.k > 0) id += "_k" + std::to_string(cell.k);
    if (cell.lambda > 0.0) id += "_lam" + fmt("%g", cell.lambda);
    if (cell.gamma > 0.0) id += "_g" + fmt("%g", cell.gamma);
    id += "_s" + std::to_string(seed);
    return id;
}

std::vector<std::uint64_t> resolve_seeds(const ExperimentConfig& config) {
    if (!config.seeds.empty()) return config.seeds;
    std::vector<std::uint64_t> seeds(config.repeats);
    for (int i = 0; i < config.repeats; ++i) seeds[i] = static_cast<std::uint64_t>(i);
    return seeds;
}

const NormalizedLaplacian& cached_laplacian(std::map<int, NormalizedLaplacian>& cache,
                                            const Dataset& data, int k,
                                            const ExperimentConfig& config) {
    auto it = cache.find(k);
    if (it == cache.end()) {
        it = cache
                 .emplace(k, normalized_laplacian(
                                 knn_affinity(data, k, config.sigma, config.symmetrize)))
                 .first;
    }
    return it->second;
}

void fill_metrics(TrialReport& trial, const Dataset& data) {
    if (!data.has_labels() || trial.labels.empty()) return;
    trial.acc = 100.0 * accuracy(trial.labels, data.labels);
    trial.nmi = 100.0 * nmi(trial.labels, data.labels);
    trial.ari = 100.0 * ari(trial.labels, data.labels);
}

void absorb_fit(TrialReport& trial, const FitReport& fit) {
    trial.iterations = fit.iterations;
    trial.converged = fit.converged;
    trial.gamma_final = fit.gamma;
    trial.objective_trace = fit.objective_trace;
    trial.gamma_trace = fit.gamma_trace;
    trial.acc_trace = fit.acc_trace;
    trial.iter_wall_ms = fit.iter_wall_ms;
    trial.labels = hard_labels(fit.partition);
}

TrialReport run_trial(const ExperimentConfig& config, const Dataset& data, int clusters,
                      const Cell& cell, std::uint64_t seed,
                      std::map<int, NormalizedLaplacian>& lap_cache) {
    TrialReport trial;
    trial.id = trial_id(config.algorithm, cell, seed);
    trial.algorithm = config.algorithm;
    trial.seed = seed;
    trial.k = cell.k;
    trial.lambda = cell.lambda;
    trial.gamma_fixed = cell.gamma;

    const std::vector<int>* truth = data.has_labels() ? &data.labels : nullptr;
    FitOptions opts;
    opts.seed = seed;
    opts.max_iter = config.max_iter;
    opts.tol = config.tol;
    opts.truth = truth;

    const auto tick = Clock::now();
    try {
        if (config.algorithm == "afcm") {
            AfcmConfig acfg;
            acfg.clusters = clusters;
            acfg.lambda = cell.lambda;
            acfg.k = cell.k;
            acfg.sigma = config.sigma;
            acfg.max_iter = config.max_iter;
            acfg.tol = config.tol;
            acfg.seed = seed;
            acfg.embed_dim = config.embed_dim;
            acfg.symmetrize = config.symmetrize;
            const auto& lap = cached_laplacian(lap_cache, data, cell.k, config);
            absorb_fit(trial, fit_afcm(data, lap, acfg, truth).fit);
        } else if (config.algorithm == "degenerate_afcm") {
            absorb_fit(trial, fit_degenerate_afcm(data, clusters, opts));
        } else if (config.algorithm == "fcm_er") {
            absorb_fit(trial, fit_fcm_er(data, clusters, cell.gamma, opts));
        } else if (config.algorithm == "kmeans") {
            const KmeansResult res = kmeans(data, clusters, seed, config.max_iter);
            trial.labels = res.labels;
            trial.iterations = res.iterations;
            trial.converged = res.iterations < config.max_iter;
        } else if (config.algorithm == "spectral" || config.algorithm == "ablation1") {
            const auto& lap = cached_laplacian(lap_cache, data, cell.k, config);
            const Embedding emb = spectral_embed(lap, clusters);
            const KmeansResult res = kmeans(emb.coords, clusters, seed, config.max_iter);
            trial.labels = res.labels;
            trial.iterations = res.iterations;
            trial.converged = res.iterations < config.max_iter;
        } else {  // ablation2
            const auto& lap = cached_laplacian(lap_cache, data, cell.k, config);
            const Embedding emb = spectral_embed(lap, clusters);
            Dataset projected;
            projected.features = emb.coords;
            projected.name = data.name + "_embedded";
            absorb_fit(trial, fit_degenerate_afcm(projected, clusters, opts));
        }
        fill_metrics(trial, data);
    } catch (const DegenerateClusterError& e) {
        trial.failed = true;
        trial.error = e.what();
    } catch (const EigenSolveError& e) {
        trial.failed = true;
        trial.error = e.what();
    }
    trial.wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - tick).count();
    return trial;
}

struct Moments {
    double mean = 0.0;
    double stddev = 0.0;  // population
};

Moments moments(const std::vector<double>& xs) {
    Moments m;
    if (xs.empty()) return m;
    double sum = 0.0;
    for (double x : xs) sum += x;
    m.mean = sum / xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - m.mean) * (x - m.mean);
    m.stddev = std::sqrt(std::max(0.0, var / xs.size()));
    return m;
}

SummaryRow summarize_cell(const ExperimentConfig& config, const Cell& cell,
                          const std::vector<const TrialReport*>& trials) {
    SummaryRow row;
    row.algorithm = config.algorithm;
    row.k = cell.k;
    row.lambda = cell.lambda;
    row.gamma_fixed = cell.gamma;
    row.repeats = static_cast<int>(trials.size());
    std::vector<double> acc, nm, ar, iters, gammas, wall;
    for (const TrialReport* t : trials) {
        if (t->failed) {
            ++row.failures;
            continue;
        }
        if (std::isfinite(t->acc)) {
            acc.push_back(t->acc);
            nm.push_back(t->nmi);
            ar.push_back(t->ari);
        }
        iters.push_back(t->iterations);
        if (std::isfinite(t->gamma_final)) gammas.push_back(t->gamma_final);
        wall.push_back(t->wall_ms);
    }
    row.has_metrics = !acc.empty();
    const Moments ma = moments(acc), mn = moments(nm), mr = moments(ar);
    row.acc_mean = ma.mean;
    row.acc_std = ma.stddev;
    row.nmi_mean = mn.mean;
    row.nmi_std = mn.stddev;
    row.ari_mean = mr.mean;
    row.ari_std = mr.stddev;
    row.iterations_mean = moments(iters).mean;
    row.gamma_mean = moments(gammas).mean;
    row.wall_ms_mean = moments(wall).mean;
    return row;
}

int select_best(const std::vector<SummaryRow>& rows) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        const SummaryRow& r = rows[i];
        if (!r.has_metrics) continue;
        if (best < 0) {
            best = i;
            continue;
        }
        const SummaryRow& b = rows[best];
        if (r.acc_mean != b.acc_mean) {
            if (r.acc_mean > b.acc_mean) best = i;
        } else if (r.nmi_mean != b.nmi_mean) {
            if (r.nmi_mean > b.nmi_mean) best = i;
        } else if (r.lambda != b.lambda) {
            if (r.lambda < b.lambda) best = i;
        } else if (r.gamma_fixed != b.gamma_fixed) {
            if (r.gamma_fixed < b.gamma_fixed) best = i;
        } else if (r.k < b.k) {
            best = i;
        }
    }
    if (best < 0 && !rows.empty()) best = 0;
    return best;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

void write_matrix_csv(const Eigen::MatrixXd& m, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out.precision(17);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << m(i, j);
        }
        out << '\n';
    }
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string svg_scatter(const Dataset& data, const std::vector<int>& labels) {
    const double pad = 24.0, side = 640.0;
    const double xmin = data.features.row(0).minCoeff();
    const double xmax = data.features.row(0).maxCoeff();
    const double ymin = data.features.row(1).minCoeff();
    const double ymax = data.features.row(1).maxCoeff();
    const double sx = (side - 2 * pad) / std::max(xmax - xmin, 1e-12);
    const double sy = (side - 2 * pad) / std::max(ymax - ymin, 1e-12);
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
                      "height=\"640\" viewBox=\"0 0 640 640\">\n";
    for (Eigen::Index i = 0; i < data.samples(); ++i) {
        const double x = pad + (data.features(0, i) - xmin) * sx;
        const double y = side - pad - (data.features(1, i) - ymin) * sy;
        svg += "<circle cx=\"" + fmt("%.2f", x) + "\" cy=\"" + fmt("%.2f", y) +
               "\" r=\"3\" fill=\"" + kPalette[labels[i] % 10] + "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::string svg_curve(const std::vector<double>& values) {
    const double pad = 40.0, w = 640.0, h = 400.0;
    double lo = values.front(), hi = values.front();
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = std::max(hi - lo, 1e-12);
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
                      "height=\"400\" viewBox=\"0 0 640 400\">\n<polyline fill=\"none\" "
                      "stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x =
            pad + (w - 2 * pad) * (values.size() == 1 ? 0.0
                                                      : static_cast<double>(i) /
                                                            (values.size() - 1));
        const double y = h - pad - (h - 2 * pad) * (values[i] - lo) / span;
        svg += fmt("%.2f", x) + "," + fmt("%.2f", y) + " ";
    }
    svg += "\"/>\n<line x1=\"40\" y1=\"360\" x2=\"600\" y2=\"360\" stroke=\"#333\"/>\n"
           "<line x1=\"40\" y1=\"40\" x2=\"40\" y2=\"360\" stroke=\"#333\"/>\n</svg>\n";
    return svg;
}

void emit_trials(const ExperimentConfig& config, const Dataset& data,
                 const std::vector<TrialReport>& trials, const fs::path& dir) {
    fs::create_directories(dir / "trials");
    for (const TrialReport& trial : trials) {
        write_text(dir / "trials" / (trial.id + ".json"), trial_json(trial, config));
        if (!trial.objective_trace.empty()) {
            std::string csv = "iteration,objective,acc\n";
            for (std::size_t i = 0; i < trial.objective_trace.size(); ++i) {
                csv += std::to_string(i + 1) + "," +
                       fmt("%.10g", trial.objective_trace[i]) + ",";
                if (i < trial.acc_trace.size()) csv += fmt("%.6f", trial.acc_trace[i]);
                csv += "\n";
            }
            write_text(dir / ("trace_" + trial.id + ".csv"), csv);
            if (config.write_svg)
                write_text(dir / ("trace_" + trial.id + ".svg"),
                           svg_curve(trial.objective_trace));
        }
        if (data.dim() == 2 && !trial.labels.empty()) {
            std::string csv = "x,y,predicted,truth\n";
            for (Eigen::Index i = 0; i < data.samples(); ++i) {
                csv += fmt("%.10g", data.features(0, i)) + "," +
                       fmt("%.10g", data.features(1, i)) + "," +
                       std::to_string(trial.labels[i]) + "," +
                       (data.has_labels() ? std::to_string(data.labels[i]) : "-1") + "\n";
            }
            write_text(dir / ("scatter_" + trial.id + ".csv"), csv);
            if (config.write_svg)
                write_text(dir / ("scatter_" + trial.id + ".svg"),
                           svg_scatter(data, trial.labels));
        }
    }
}

void dump_graphs(const ExperimentConfig& config, const Dataset& data, const fs::path& dir) {
    if (!config.dump_graph || !uses_graph(config.algorithm)) return;
    for (int k : config.ks) {
        const AffinityGraph g = knn_affinity(data, k, config.sigma, config.symmetrize);
        write_matrix_csv(g.weights, dir / ("graph_k" + std::to_string(k) + "_W.csv"));
        write_matrix_csv(normalized_laplacian(g).matrix,
                         dir / ("graph_k" + std::to_string(k) + "_Lhat.csv"));
    }
}

}  // namespace

Dataset resolve_dataset(const ExperimentConfig& config) {
    Dataset data;
    if (config.toy == "spirals") {
        data = gen_two_spirals(config.toy_samples, config.toy_noise, config.toy_seed);
    } else if (config.toy == "rings") {
        data = gen_three_rings(config.toy_samples, config.ring_radii, config.toy_noise,
                               config.toy_seed);
    } else if (!config.toy.empty()) {
        throw std::invalid_argument("unknown toy dataset '" + config.toy + "'");
    } else if (!config.data_path.empty()) {
        data = load_csv(config.data_path, config.label_column);
    } else {
        throw std::invalid_argument("no dataset: give a CSV path or a toy name");
    }
    if (config.normalize) data = minmax_normalize(data);
    return data;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    return run_experiment(config, resolve_dataset(config));
}

ExperimentResult run_experiment(const ExperimentConfig& config, const Dataset& data) {
    const int clusters = config.clusters > 0 ? config.clusters : data.num_classes();
    if (clusters < 1)
        throw std::invalid_argument("cluster count not given and no labels to infer it");

    ExperimentResult result;
    result.dataset_name = data.name;
    result.clusters = clusters;
    const auto cells = enumerate_cells(config);
    const auto seeds = resolve_seeds(config);
    std::map<int, NormalizedLaplacian> lap_cache;

    for (const Cell& cell : cells) {
        std::vector<const TrialReport*> cell_trials;
        const std::size_t first = result.trials.size();
        for (std::uint64_t seed : seeds)
            result.trials.push_back(
                run_trial(config, data, clusters, cell, seed, lap_cache));
        for (std::size_t i = first; i < result.trials.size(); ++i)
            cell_trials.push_back(&result.trials[i]);
        result.summary.push_back(summarize_cell(config, cell, cell_trials));
    }
    result.best_cell = select_best(result.summary);
    return result;
}

AblationResult run_ablation(const ExperimentConfig& config) {
    return run_ablation(config, resolve_dataset(config));
}

AblationResult run_ablation(const ExperimentConfig& config, const Dataset& data) {
    AblationResult out;
    ExperimentConfig c = config;
    c.algorithm = "ablation1";
    out.ablation1 = run_experiment(c, data);
    c.algorithm = "ablation2";
    out.ablation2 = run_experiment(c, data);
    c.algorithm = "afcm";
    out.afcm = run_experiment(c, data);
    return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows,
                        const std::string& dataset_name) {
    // Stddevs are population (divide by n), matching mean +/- std reporting
    // over a fixed seed list.
    std::string csv =
        "algorithm,dataset,k,lambda,gamma_fixed,repeats,failures,acc_mean,acc_std_pop,"
        "nmi_mean,nmi_std_pop,ari_mean,ari_std_pop,iterations_mean,gamma_mean,"
        "wall_ms_mean\n";
    for (const SummaryRow& r : rows) {
        csv += r.algorithm + "," + dataset_name + ",";
        csv += (r.k > 0 ? std::to_string(r.k) : "") + ",";
        csv += (r.lambda > 0.0 ? fmt("%g", r.lambda) : "") + ",";
        csv += (r.gamma_fixed > 0.0 ? fmt("%g", r.gamma_fixed) : "") + ",";
        csv += std::to_string(r.repeats) + "," + std::to_string(r.failures) + ",";
        if (r.has_metrics) {
            csv += fmt("%.6f", r.acc_mean) + "," + fmt("%.6f", r.acc_std) + "," +
                   fmt("%.6f", r.nmi_mean) + "," + fmt("%.6f", r.nmi_std) + "," +
                   fmt("%.6f", r.ari_mean) + "," + fmt("%.6f", r.ari_std) + ",";
        } else {
            csv += ",,,,,,";
        }
        csv += fmt("%.3f", r.iterations_mean) + "," + fmt("%.10g", r.gamma_mean) + "," +
               fmt("%.3f", r.wall_ms_mean) + "\n";
    }
    return csv;
}

std::string resolve_out_dir(const ExperimentConfig& config) {
    if (!config.out_dir.empty()) return config.out_dir;
    if (const char* env = std::getenv("AFCM_OUT_DIR"); env && *env) return env;
    return "afcm_out";
}

std::string trial_json(const TrialReport& trial, const ExperimentConfig& config) {
    nlohmann::json j;
    j["id"] = trial.id;
    j["algorithm"] = trial.algorithm;
    j["seed"] = trial.seed;
    j["config"] = {{"clusters", config.clusters},
                   {"k", trial.k},
                   {"lambda", trial.lambda},
                   {"gamma_fixed", trial.gamma_fixed},
                   {"sigma", config.sigma},
                   {"max_iter", config.max_iter},
                   {"tol", config.tol},
                   {"normalize", config.normalize},
                   {"embed_dim", config.embed_dim}};
    if (std::isfinite(trial.acc)) {
        j["metrics"] = {{"acc", trial.acc}, {"nmi", trial.nmi}, {"ari", trial.ari}};
    }
    j["iterations"] = trial.iterations;
    j["converged"] = trial.converged;
    if (std::isfinite(trial.gamma_final)) j["gamma_final"] = trial.gamma_final;
    j["objective_trace"] = trial.objective_trace;
    j["gamma_trace"] = trial.gamma_trace;
    j["acc_trace"] = trial.acc_trace;
    j["iter_wall_ms"] = trial.iter_wall_ms;
    j["wall_ms"] = trial.wall_ms;
    j["failed"] = trial.failed;
    if (trial.failed) j["error"] = trial.error;
    return j.dump(2) + "\n";
}

void emit_outputs(const ExperimentConfig& config, const Dataset& data,
                  const ExperimentResult& result) {
    const fs::path dir = resolve_out_dir(config);
    fs::create_directories(dir);
    write_text(dir / "summary.csv", summary_csv(result.summary, result.dataset_name));
    dump_graphs(config, data, dir);
    emit_trials(config, data, result.trials, dir);
}

void emit_outputs(const ExperimentConfig& config, const Dataset& data,
                  const AblationResult& result) {
    const fs::path dir = resolve_out_dir(config);
    fs::create_directories(dir);
    std::vector<SummaryRow> rows;
    for (const auto* part : {&result.ablation1, &result.ablation2, &result.afcm})
        rows.insert(rows.end(), part->summary.begin(), part->summary.end());
    write_text(dir / "summary.csv", summary_csv(rows, result.afcm.dataset_name));
    ExperimentConfig cfg = config;
    for (const auto* part : {&result.ablation1, &result.ablation2, &result.afcm}) {
        cfg.dump_graph = false;
        emit_trials(cfg, data, part->trials, dir);
    }
    dump_graphs(config, data, dir);
}

}  // namespace afcm
