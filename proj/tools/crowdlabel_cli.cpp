#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crowdlabel/io.hpp"

namespace {

// CROWDLABEL_THREADS caps internal parallelism; the pipelines currently
// run single-threaded for reproducibility, so the cap is recorded but
// never exceeded.
int thread_cap() {
    const char* env = std::getenv("CROWDLABEL_THREADS");
    if (!env) return 0;
    const int v = std::atoi(env);
    return v > 0 ? v : 0;
}

// optional JSON config with method hyperparameters
void apply_run_config_file(const std::string& path, crowdlabel::RunConfig& config) {
    std::ifstream in(path);
    if (!in) throw crowdlabel::InputError("cannot read " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw crowdlabel::InputError(path + ": invalid JSON: " + e.what());
    }
    if (j.contains("consensus_mode")) config.consensus_mode = j["consensus_mode"];
    if (j.contains("ds_max_iter")) config.ds.max_iter = j["ds_max_iter"];
    if (j.contains("ds_tol")) config.ds.tol = j["ds_tol"];
    if (j.contains("ds_smoothing")) config.ds.smoothing = j["ds_smoothing"];
    if (j.contains("glad_max_iter")) config.glad.max_iter = j["glad_max_iter"];
    if (j.contains("glad_tol")) config.glad.tol = j["glad_tol"];
    if (j.contains("glad_m_step_iters")) config.glad.m_step_iters = j["glad_m_step_iters"];
    if (j.contains("glad_prior_strength"))
        config.glad.prior_strength = j["glad_prior_strength"];
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crowdlabel: consensus labels and quality scores for multi-annotator data"};
    app.require_subcommand(1);
    (void)thread_cap();

    crowdlabel::RunConfig config;
    std::string config_path;
    std::string sim_config_path;
    std::string sim_out = ".";
    std::uint64_t seed = 0;
    bool seed_given = false;

    auto* score = app.add_subcommand("score", "infer consensus labels and quality scores");
    score->add_option("--annotations", config.annotations_path, "long-format annotations CSV")
        ->required();
    score->add_option("--pred-probs", config.pred_probs_path,
                      "classifier predicted-probabilities CSV");
    score->add_option("--method", config.method, "scoring method")
        ->check(CLI::IsMember(crowdlabel::known_methods()));
    score->add_option("--out", config.out_dir, "output directory");
    score->add_option("--config", config_path, "JSON config with hyperparameters");

    auto* evaluate = app.add_subcommand("evaluate", "score a method against ground truth");
    evaluate->add_option("--annotations", config.annotations_path, "annotations CSV")
        ->required();
    evaluate->add_option("--pred-probs", config.pred_probs_path, "predicted-probabilities CSV");
    evaluate->add_option("--truth", config.truth_path, "ground-truth CSV")->required();
    evaluate->add_option("--method", config.method, "scoring method")
        ->check(CLI::IsMember(crowdlabel::known_methods()));
    evaluate->add_option("--out", config.out_dir, "output directory");
    evaluate->add_option("--config", config_path, "JSON config with hyperparameters");
    evaluate->add_option("--lift-cutoffs", config.lift_cutoffs, "Lift@T cutoffs");

    auto* simulate = app.add_subcommand("simulate", "generate a synthetic dataset");
    simulate->add_option("--config", sim_config_path, "JSON simulator config")->required();
    simulate->add_option("--out", sim_out, "output directory");
    simulate->add_option("--seed", seed, "overrides the config seed")
        ->each([&](const std::string&) { seed_given = true; });

    std::string validate_annotations, validate_probs;
    auto* validate = app.add_subcommand("validate", "check input files for violations");
    validate->add_option("--annotations", validate_annotations, "annotations CSV")->required();
    validate->add_option("--pred-probs", validate_probs, "predicted-probabilities CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) apply_run_config_file(config_path, config);

        if (score->parsed()) {
            crowdlabel::run_score(config);
        } else if (evaluate->parsed()) {
            crowdlabel::run_evaluate(config);
        } else if (simulate->parsed()) {
            auto sim_config = crowdlabel::load_sim_config(sim_config_path);
            if (seed_given) sim_config.seed = seed;
            crowdlabel::run_simulate(sim_config, sim_out);
        } else if (validate->parsed()) {
            auto loaded = crowdlabel::load_annotations(validate_annotations);
            std::optional<crowdlabel::ProbMatrix> probs;
            if (!validate_probs.empty())
                probs = crowdlabel::load_probs(validate_probs, loaded);
            const auto summary =
                crowdlabel::validate(loaded.table, probs ? &*probs : nullptr);
            std::printf("n=%d m=%d K=%d multi_annotated=%d\n", summary.n, summary.m,
                        summary.num_classes, summary.num_multi_annotated);
            for (const auto& v : summary.violations)
                std::printf("violation: %s (%s)\n", v.kind.c_str(), v.detail.c_str());
            if (!summary.ok()) return 1;
        }
    } catch (const crowdlabel::InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const crowdlabel::NumericalError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
