// Command-line front end: single fits, hyper-parameter grids, ablation
// comparisons, toy-data generation, the mixture-equivalence check, and
// standalone metric evaluation.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "afcm/clustering.hpp"
#include "afcm/dataset.hpp"
#include "afcm/ggd.hpp"
#include "afcm/harness.hpp"
#include "afcm/metrics.hpp"

namespace {

void add_data_options(CLI::App* cmd, afcm::ExperimentConfig& cfg) {
    cmd->add_option("--data", cfg.data_path, "CSV file, one sample per row");
    cmd->add_option("--label-col", cfg.label_column,
                    "label column (header name or 0-based index)");
    cmd->add_option("--toy", cfg.toy, "built-in generator: spirals | rings");
    cmd->add_option("--toy-samples", cfg.toy_samples, "samples per toy cluster");
    cmd->add_option("--toy-noise", cfg.toy_noise, "toy jitter stddev");
    cmd->add_option("--radii", cfg.ring_radii, "three increasing ring radii")
        ->delimiter(',');
    cmd->add_option("--toy-seed", cfg.toy_seed, "toy generator seed");
    cmd->add_flag("--normalize", cfg.normalize, "min-max normalize features to [0,1]");
}

void add_run_options(CLI::App* cmd, afcm::ExperimentConfig& cfg) {
    cmd->add_option("--clusters,-c", cfg.clusters, "cluster count (0 = infer from labels)");
    cmd->add_option("--sigma", cfg.sigma, "Gaussian kernel width");
    cmd->add_option("--max-iter", cfg.max_iter, "iteration cap");
    cmd->add_option("--tol", cfg.tol, "relative objective-change tolerance");
    cmd->add_option("--embed-dim", cfg.embed_dim, "embedding dimension (0 = clusters)");
    cmd->add_option("--out", cfg.out_dir, "output directory (default $AFCM_OUT_DIR)");
    cmd->add_flag("--svg", cfg.write_svg, "also render SVG scatter/curves");
    cmd->add_flag("--dump-graph", cfg.dump_graph, "dump W and L_hat as dense CSV");
    cmd->add_option_function<std::string>(
           "--symmetrize",
           [&cfg](const std::string& s) {
               cfg.symmetrize =
                   s == "mean" ? afcm::Symmetrize::Mean : afcm::Symmetrize::Max;
           },
           "k-NN symmetrization: max (default) | mean")
        ->check(CLI::IsMember({"max", "mean"}));
}

void print_summary(const afcm::ExperimentResult& result) {
    std::printf("%-16s %4s %-8s %-8s %8s %8s %8s %8s\n", "algorithm", "k", "lambda",
                "gamma", "acc", "nmi", "ari", "fail");
    for (const auto& row : result.summary) {
        std::printf("%-16s %4d %-8g %-8g ", row.algorithm.c_str(), row.k, row.lambda,
                    row.gamma_fixed);
        if (row.has_metrics)
            std::printf("%8.2f %8.2f %8.2f", row.acc_mean, row.nmi_mean, row.ari_mean);
        else
            std::printf("%8s %8s %8s", "-", "-", "-");
        std::printf(" %8d\n", row.failures);
    }
    if (result.best_cell >= 0) {
        const auto& best = result.summary[result.best_cell];
        std::printf("best cell: k=%d lambda=%g gamma=%g", best.k, best.lambda,
                    best.gamma_fixed);
        if (best.has_metrics)
            std::printf("  acc %.2f(+-%.2f) nmi %.2f(+-%.2f) ari %.2f(+-%.2f)",
                        best.acc_mean, best.acc_std, best.nmi_mean, best.nmi_std,
                        best.ari_mean, best.ari_std);
        std::printf("\n");
    }
}

std::vector<int> read_label_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::vector<int> labels;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        try {
            labels.push_back(std::stoi(line));
        } catch (const std::exception&) {
            if (labels.empty()) continue;  // header
            throw std::runtime_error("'" + path + "': cannot parse '" + line + "'");
        }
    }
    return labels;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive fuzzy c-means clustering with graph embedding"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a key=value file");
    app.allow_config_extras(CLI::config_extras_mode::ignore_all);

    afcm::ExperimentConfig cfg;

    // fit: one algorithm at one hyper-parameter point, one seed
    auto* fit = app.add_subcommand("fit", "run one algorithm at fixed hyper-parameters");
    std::uint64_t fit_seed = 0;
    int fit_k = 5;
    double fit_lambda = 1e2, fit_gamma = 1.0;
    fit->add_option("--algo", cfg.algorithm,
                    "afcm | degenerate_afcm | fcm_er | kmeans | spectral | ablation1 | "
                    "ablation2");
    fit->add_option("--k", fit_k, "affinity graph neighbours");
    fit->add_option("--lambda", fit_lambda, "graph regularization weight");
    fit->add_option("--gamma", fit_gamma, "fixed gamma (fcm_er)");
    fit->add_option("--seed", fit_seed, "trial seed");
    add_data_options(fit, cfg);
    add_run_options(fit, cfg);

    // grid: full hyper-parameter grid with repeated seeded trials
    auto* grid = app.add_subcommand("grid", "grid search with repeated seeded trials");
    grid->add_option("--algo", cfg.algorithm, "algorithm id");
    grid->add_option("--ks", cfg.ks, "neighbour counts")->delimiter(',');
    grid->add_option("--lambdas", cfg.lambdas, "graph weights")->delimiter(',');
    grid->add_option("--gammas", cfg.gammas, "fixed gammas (fcm_er)")->delimiter(',');
    grid->add_option("--repeats", cfg.repeats, "trials per grid cell");
    grid->add_option("--seeds", cfg.seeds, "explicit seed list")->delimiter(',');
    add_data_options(grid, cfg);
    add_run_options(grid, cfg);

    // ablation: two-stage pipelines vs the one-stage fit
    auto* ablation =
        app.add_subcommand("ablation", "two-stage pipelines vs the joint fit");
    ablation->add_option("--ks", cfg.ks, "neighbour counts")->delimiter(',');
    ablation->add_option("--lambdas", cfg.lambdas, "graph weights")->delimiter(',');
    ablation->add_option("--repeats", cfg.repeats, "trials per grid cell");
    ablation->add_option("--seeds", cfg.seeds, "explicit seed list")->delimiter(',');
    add_data_options(ablation, cfg);
    add_run_options(ablation, cfg);

    // gen-toy: write a toy dataset as CSV
    auto* gen = app.add_subcommand("gen-toy", "write a synthetic toy dataset");
    std::string gen_kind = "spirals", gen_out = "toy.csv";
    int gen_samples = 500;
    double gen_noise = 0.0;
    std::array<double, 3> gen_radii{1.0, 2.0, 3.0};
    std::uint64_t gen_seed = 0;
    gen->add_option("--kind", gen_kind, "spirals | rings")
        ->check(CLI::IsMember({"spirals", "rings"}));
    gen->add_option("--samples", gen_samples, "samples per cluster");
    gen->add_option("--noise", gen_noise, "jitter stddev");
    gen->add_option("--radii", gen_radii, "ring radii")->delimiter(',');
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output CSV path");

    // verify-equivalence: mixture posterior vs closed-form membership
    auto* verify = app.add_subcommand(
        "verify-equivalence",
        "check the closed-form membership against the mixture posterior");
    int verify_trials = 1000;
    std::uint64_t verify_seed = 0;
    double verify_tol = 1e-10;
    verify->add_option("--trials", verify_trials, "randomized instances");
    verify->add_option("--seed", verify_seed, "instance seed");
    verify->add_option("--tolerance", verify_tol, "acceptable max discrepancy");

    // metrics: score a predicted labeling against ground truth
    auto* met = app.add_subcommand("metrics", "ACC/NMI/ARI for two label files");
    std::string met_pred, met_truth;
    met->add_option("--pred", met_pred, "predicted labels, one integer per line")
        ->required();
    met->add_option("--truth", met_truth, "true labels, one integer per line")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fit) {
            cfg.ks = {fit_k};
            cfg.lambdas = {fit_lambda};
            cfg.gammas = {fit_gamma};
            cfg.repeats = 1;
            cfg.seeds = {fit_seed};
            const afcm::Dataset data = afcm::resolve_dataset(cfg);
            const auto result = afcm::run_experiment(cfg, data);
            afcm::emit_outputs(cfg, data, result);
            const auto& trial = result.trials.front();
            if (trial.failed) {
                std::printf("failed: %s\n", trial.error.c_str());
                return 1;
            }
            std::printf("%s: iterations=%d converged=%s gamma=%g\n", trial.id.c_str(),
                        trial.iterations, trial.converged ? "yes" : "no",
                        trial.gamma_final);
            if (std::isfinite(trial.acc))
                std::printf("acc %.2f  nmi %.2f  ari %.2f\n", trial.acc, trial.nmi,
                            trial.ari);
            std::printf("outputs in %s\n", afcm::resolve_out_dir(cfg).c_str());
        } else if (*grid) {
            const afcm::Dataset data = afcm::resolve_dataset(cfg);
            const auto result = afcm::run_experiment(cfg, data);
            afcm::emit_outputs(cfg, data, result);
            print_summary(result);
            std::printf("outputs in %s\n", afcm::resolve_out_dir(cfg).c_str());
        } else if (*ablation) {
            const afcm::Dataset data = afcm::resolve_dataset(cfg);
            const auto result = afcm::run_ablation(cfg, data);
            afcm::emit_outputs(cfg, data, result);
            for (const auto* part :
                 {&result.ablation1, &result.ablation2, &result.afcm}) {
                if (part->best_cell < 0) continue;
                const auto& best = part->summary[part->best_cell];
                std::printf("%-16s acc %.2f(+-%.2f) nmi %.2f(+-%.2f) ari %.2f(+-%.2f)  "
                            "[k=%d lambda=%g]\n",
                            best.algorithm.c_str(), best.acc_mean, best.acc_std,
                            best.nmi_mean, best.nmi_std, best.ari_mean, best.ari_std,
                            best.k, best.lambda);
            }
            std::printf("outputs in %s\n", afcm::resolve_out_dir(cfg).c_str());
        } else if (*gen) {
            afcm::Dataset data;
            if (gen_kind == "spirals")
                data = afcm::gen_two_spirals(gen_samples, gen_noise, gen_seed);
            else
                data = afcm::gen_three_rings(gen_samples, gen_radii, gen_noise, gen_seed);
            afcm::write_csv(data, gen_out);
            std::printf("wrote %s: n=%d d=%d clusters=%d\n", gen_out.c_str(),
                        (int)data.samples(), (int)data.dim(), data.num_classes());
        } else if (*verify) {
            const double disc =
                afcm::equivalence_max_discrepancy(verify_trials, verify_seed);
            std::printf("max elementwise discrepancy over %d instances: %.3e\n",
                        verify_trials, disc);
            if (!(disc <= verify_tol)) {
                std::printf("exceeds tolerance %.3e\n", verify_tol);
                return 1;
            }
        } else if (*met) {
            const auto pred = read_label_file(met_pred);
            const auto truth = read_label_file(met_truth);
            std::printf("acc %.6f\nnmi %.6f\nari %.6f\n", afcm::accuracy(pred, truth),
                        afcm::nmi(pred, truth), afcm::ari(pred, truth));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
