#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "crowdlabel/crowdlab.hpp"
#include "crowdlabel/dataset.hpp"
#include "crowdlabel/dawid_skene.hpp"
#include "crowdlabel/glad.hpp"
#include "crowdlabel/label_quality.hpp"
#include "crowdlabel/metrics.hpp"
#include "crowdlabel/simulator.hpp"

namespace crowdlabel {

inline constexpr const char* kVersion = "0.1.0";

// Input problem (bad files, bad config): CLI exit code 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Numerical failure: CLI exit code 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// AnnotationTable plus the string ids it was built from.
struct LoadedAnnotations {
    AnnotationTable table;
    std::vector<std::string> example_ids;
    std::vector<std::string> annotator_ids;
    std::vector<std::string> label_names;  // index -> display name
};

namespace io_detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

inline std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// write-to-temp then rename, so partial outputs never appear
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw InputError("cannot write " + path.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace io_detail

// Long-format CSV `example_id,annotator_id,label`. Ids are arbitrary
// strings mapped to dense indices in order of first appearance. Labels
// parse as integers unless a label map is supplied.
inline LoadedAnnotations load_annotations(
    const std::string& path,
    const std::map<std::string, int>* label_map = nullptr,
    std::optional<int> num_classes_override = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw InputError(path + ": empty file");
    line = io_detail::strip_cr(line);
    if (io_detail::split_csv_line(line) !=
        std::vector<std::string>{"example_id", "annotator_id", "label"})
        throw InputError(path + ": missing header 'example_id,annotator_id,label'");

    std::map<std::string, int> example_index, annotator_index;
    std::vector<std::string> example_ids, annotator_ids;
    std::vector<Annotation> entries;
    std::map<std::pair<int, int>, int> seen;  // (example, annotator) -> line number
    int line_no = 1;
    int max_label = -1;
    while (std::getline(in, line)) {
        ++line_no;
        line = io_detail::strip_cr(line);
        if (line.empty()) continue;
        const auto fields = io_detail::split_csv_line(line);
        if (fields.size() != 3)
            throw InputError(path + ": malformed row at line " + std::to_string(line_no));
        auto [eit, enew] = example_index.try_emplace(fields[0], int(example_ids.size()));
        if (enew) example_ids.push_back(fields[0]);
        auto [ait, anew] = annotator_index.try_emplace(fields[1], int(annotator_ids.size()));
        if (anew) annotator_ids.push_back(fields[1]);

        int label;
        if (label_map) {
            const auto it = label_map->find(fields[2]);
            if (it == label_map->end())
                throw InputError(path + ": unknown label '" + fields[2] + "' at line " +
                                 std::to_string(line_no));
            label = it->second;
        } else {
            try {
                std::size_t pos = 0;
                label = std::stoi(fields[2], &pos);
                if (pos != fields[2].size() || label < 0) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw InputError(path + ": non-integer label '" + fields[2] + "' at line " +
                                 std::to_string(line_no) + " (supply a label map)");
            }
        }
        max_label = std::max(max_label, label);
        if (!seen.try_emplace({eit->second, ait->second}, line_no).second)
            throw InputError(path + ": duplicate annotation at line " + std::to_string(line_no));
        entries.push_back({eit->second, ait->second, label});
    }
    if (entries.empty()) throw InputError(path + ": no annotations");

    int num_classes = max_label + 1;
    if (label_map)
        for (const auto& [name, idx] : *label_map) num_classes = std::max(num_classes, idx + 1);
    if (num_classes_override) {
        if (*num_classes_override < num_classes)
            throw InputError(path + ": num_classes override smaller than observed labels");
        num_classes = *num_classes_override;
    }

    std::vector<std::string> label_names(num_classes);
    for (int c = 0; c < num_classes; ++c) label_names[c] = std::to_string(c);
    if (label_map)
        for (const auto& [name, idx] : *label_map) label_names[idx] = name;

    return LoadedAnnotations{
        AnnotationTable(int(example_ids.size()), num_classes, int(annotator_ids.size()),
                        std::move(entries)),
        std::move(example_ids), std::move(annotator_ids), std::move(label_names)};
}

// CSV `example_id,p_0,...,p_{K-1}` aligned against the loaded table.
// Rows within 1e-6 of summing to 1 are renormalized; values clamped.
// If the file has more probability columns than observed classes, the
// table is widened so never-annotated classes keep their columns.
inline ProbMatrix load_probs(const std::string& path, LoadedAnnotations& loaded) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw InputError(path + ": empty file");
    line = io_detail::strip_cr(line);
    const auto header = io_detail::split_csv_line(line);
    if (header.size() < 2 || header[0] != "example_id")
        throw InputError(path + ": missing header 'example_id,p_0,...'");
    const int file_k = int(header.size()) - 1;
    for (int c = 0; c < file_k; ++c)
        if (header[c + 1] != "p_" + std::to_string(c))
            throw InputError(path + ": expected column p_" + std::to_string(c));

    if (file_k < loaded.table.num_classes())
        throw InputError(path + ": " + std::to_string(file_k) +
                         " probability columns but table has " +
                         std::to_string(loaded.table.num_classes()) + " classes");
    if (file_k > loaded.table.num_classes()) {
        loaded.table = AnnotationTable(loaded.table.num_examples(), file_k,
                                       loaded.table.num_annotators(), loaded.table.entries());
        loaded.label_names.resize(file_k);
        for (int c = 0; c < file_k; ++c)
            if (loaded.label_names[c].empty()) loaded.label_names[c] = std::to_string(c);
    }

    std::map<std::string, int> example_index;
    for (std::size_t i = 0; i < loaded.example_ids.size(); ++i)
        example_index[loaded.example_ids[i]] = int(i);

    const int n = loaded.table.num_examples();
    std::vector<double> values(std::size_t(n) * file_k, -1.0);
    std::vector<bool> filled(n, false);
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = io_detail::strip_cr(line);
        if (line.empty()) continue;
        const auto fields = io_detail::split_csv_line(line);
        if (int(fields.size()) != file_k + 1)
            throw InputError(path + ": malformed row at line " + std::to_string(line_no));
        const auto it = example_index.find(fields[0]);
        if (it == example_index.end()) continue;  // extra rows are ignored
        double sum = 0.0;
        for (int c = 0; c < file_k; ++c) {
            double v;
            try {
                v = std::stod(fields[c + 1]);
            } catch (const std::exception&) {
                throw InputError(path + ": bad probability at line " + std::to_string(line_no));
            }
            if (v < 0.0 || v > 1.0)
                throw InputError(path + ": probability out of [0,1] for example '" + fields[0] +
                                 "'");
            values[std::size_t(it->second) * file_k + c] = v;
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-6)
            throw InputError(path + ": row for example '" + fields[0] + "' sums to " +
                             std::to_string(sum));
        for (int c = 0; c < file_k; ++c) values[std::size_t(it->second) * file_k + c] /= sum;
        filled[it->second] = true;
    }
    for (int i = 0; i < n; ++i)
        if (!filled[i])
            throw InputError(path + ": missing probabilities for example '" +
                             loaded.example_ids[i] + "'");
    return ProbMatrix(n, file_k, std::move(values));
}

// CSV `example_id,label` -> truth labels aligned to the table
inline std::vector<int> load_truth(const std::string& path, const LoadedAnnotations& loaded,
                                   const std::map<std::string, int>* label_map = nullptr) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw InputError(path + ": empty file");
    line = io_detail::strip_cr(line);
    if (io_detail::split_csv_line(line) != std::vector<std::string>{"example_id", "label"})
        throw InputError(path + ": missing header 'example_id,label'");
    std::map<std::string, int> example_index;
    for (std::size_t i = 0; i < loaded.example_ids.size(); ++i)
        example_index[loaded.example_ids[i]] = int(i);
    std::vector<int> truth(loaded.table.num_examples(), -1);
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = io_detail::strip_cr(line);
        if (line.empty()) continue;
        const auto fields = io_detail::split_csv_line(line);
        if (fields.size() != 2)
            throw InputError(path + ": malformed row at line " + std::to_string(line_no));
        const auto it = example_index.find(fields[0]);
        if (it == example_index.end()) continue;
        int label;
        if (label_map) {
            const auto lit = label_map->find(fields[1]);
            if (lit == label_map->end())
                throw InputError(path + ": unknown label '" + fields[1] + "'");
            label = lit->second;
        } else {
            label = std::stoi(fields[1]);
        }
        if (label < 0 || label >= loaded.table.num_classes())
            throw InputError(path + ": truth label out of range at line " +
                             std::to_string(line_no));
        truth[it->second] = label;
    }
    for (int i = 0; i < loaded.table.num_examples(); ++i)
        if (truth[i] < 0)
            throw InputError(path + ": missing truth for example '" + loaded.example_ids[i] +
                             "'");
    return truth;
}

struct RunConfig {
    std::string method = "crowdlab";
    std::string annotations_path;
    std::string pred_probs_path;  // empty for annotator-statistics methods
    std::string truth_path;
    std::string out_dir = ".";
    std::string consensus_mode = "native";  // native | majority
    DsConfig ds;
    GladConfig glad;
    std::vector<int> lift_cutoffs = {10, 50, 100, 300, 500};
    std::uint64_t seed = 0;
};

inline const std::vector<std::string>& known_methods() {
    static const std::vector<std::string> methods = {
        "majority",          "agreement",   "label-quality",   "crowdlab",
        "crowdlab-npw",      "dawid-skene", "dawid-skene-model", "glad",
        "glad-model",        "empirical-bayes", "active-label-cleaning"};
    return methods;
}

inline bool method_needs_probs(const std::string& method) {
    return method != "majority" && method != "agreement" && method != "dawid-skene" &&
           method != "glad";
}

inline bool method_has_annotator_scores(const std::string& method) {
    return method != "active-label-cleaning";
}

struct ScoreResult {
    ConsensusReport consensus;
    std::optional<AnnotatorReport> annotators;
    nlohmann::json fitted;  // fitted scalars for run.json
};

// Dispatch a method name to its (consensus, quality, annotator-quality)
// triple. `external_consensus` implements the benchmark protocol of
// scoring one fixed set of consensus labels with every method.
inline ScoreResult score_with_method(const std::string& method, const AnnotationTable& table,
                                     const ProbMatrix* probs, const RunConfig& config,
                                     const std::vector<int>* external_consensus = nullptr) {
    const int n = table.num_examples();
    const int k = table.num_classes();
    if (method_needs_probs(method) && !probs)
        throw InputError("method '" + method + "' requires --pred-probs");

    ScoreResult result;
    result.consensus.method = method;
    result.consensus.rows.resize(n);

    auto fill_consensus = [&](const std::vector<int>& labels, const std::vector<double>& q) {
        for (int i = 0; i < n; ++i)
            result.consensus.rows[i] = {labels[i], q[i], table.annotations_of(i)};
    };
    auto fill_from_posterior = [&](const ProbMatrix& posterior) {
        std::vector<int> labels(n);
        std::vector<double> q(n);
        for (int i = 0; i < n; ++i) {
            labels[i] = external_consensus ? (*external_consensus)[i]
                                           : select_consensus(posterior.row(i), k, table);
            q[i] = posterior.at(i, labels[i]);
        }
        fill_consensus(labels, q);
    };
    auto annotator_report = [&](const std::vector<double>& scores,
                                const std::vector<int>& consensus, int annotators) {
        AnnotatorReport report;
        report.method = method;
        const auto agreement = agreement_annotator_quality(table, consensus);
        report.rows.resize(annotators);
        for (int j = 0; j < annotators; ++j)
            report.rows[j] = {scores[j], table.labels_by(j), agreement[j]};
        return report;
    };

    if (method == "majority" || method == "agreement") {
        auto mv = majority_vote(table);
        auto labels = external_consensus ? *external_consensus : mv;
        fill_consensus(labels, agreement_consensus_quality(table, labels));
        result.annotators =
            annotator_report(agreement_annotator_quality(table, labels), labels, table.num_annotators());
    } else if (method == "label-quality") {
        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i)
            labels[i] = external_consensus ? (*external_consensus)[i]
                                           : select_consensus(probs->row(i), k, table);
        fill_consensus(labels, lqs_consensus_quality(labels, *probs));
        result.annotators =
            annotator_report(lqs_annotator_quality(table, *probs), labels, table.num_annotators());
    } else if (method == "crowdlab") {
        auto cr = crowdlab_score(table, *probs, external_consensus);
        result.consensus = std::move(cr.consensus);
        const auto consensus = result.consensus.labels();
        result.annotators =
            crowdlab_annotator_quality(table, cr.posterior, cr.weights, consensus);
        result.fitted = {{"P", cr.weights.p},
                         {"w_model", cr.weights.w_model},
                         {"A_model", cr.weights.a_model},
                         {"A_mlc", cr.weights.a_mlc}};
    } else if (method == "crowdlab-npw") {
        auto npw = npw_score(table, *probs, external_consensus);
        result.consensus = std::move(npw.consensus);
        result.annotators = std::move(npw.annotators);
        result.fitted = {{"w", npw.w}};
    } else if (method == "dawid-skene" || method == "dawid-skene-model") {
        const bool with_model = method == "dawid-skene-model";
        if (with_model) {
            auto augmented = augment_with_model(table, *probs);
            auto fit = ds_fit(augmented, config.ds);
            fill_from_posterior(fit.posterior);
            auto scores = ds_annotator_quality(fit.model);
            scores.resize(table.num_annotators());  // drop the synthetic annotator
            result.annotators =
                annotator_report(scores, result.consensus.labels(), table.num_annotators());
            result.fitted = {{"em_iterations", fit.iterations}};
        } else {
            auto fit = ds_fit(table, config.ds);
            fill_from_posterior(fit.posterior);
            result.annotators = annotator_report(ds_annotator_quality(fit.model),
                                                 result.consensus.labels(),
                                                 table.num_annotators());
            result.fitted = {{"em_iterations", fit.iterations}};
        }
    } else if (method == "glad" || method == "glad-model") {
        const bool with_model = method == "glad-model";
        if (with_model) {
            auto augmented = augment_with_model(table, *probs);
            auto fit = glad_fit(augmented, config.glad);
            fill_from_posterior(fit.posterior);
            auto scores = fit.alpha;
            scores.resize(table.num_annotators());
            result.annotators =
                annotator_report(scores, result.consensus.labels(), table.num_annotators());
            result.fitted = {{"em_iterations", fit.iterations}};
        } else {
            auto fit = glad_fit(table, config.glad);
            fill_from_posterior(fit.posterior);
            result.annotators = annotator_report(glad_annotator_quality(fit),
                                                 result.consensus.labels(),
                                                 table.num_annotators());
            result.fitted = {{"em_iterations", fit.iterations}};
        }
    } else if (method == "empirical-bayes") {
        auto fit = ds_fit(table, config.ds);
        auto posterior = empirical_bayes_posterior(table, *probs, fit.model);
        fill_from_posterior(posterior);
        result.annotators = annotator_report(ds_annotator_quality(fit.model),
                                             result.consensus.labels(), table.num_annotators());
        result.fitted = {{"em_iterations", fit.iterations}};
    } else if (method == "active-label-cleaning") {
        auto labels = external_consensus ? *external_consensus : majority_vote(table);
        fill_consensus(labels, alc_consensus_quality(table, *probs));
        // no annotator scores for this method
    } else {
        throw InputError("unknown method '" + method + "'");
    }
    return result;
}

inline void write_consensus_csv(const std::filesystem::path& path,
                                const ConsensusReport& report,
                                const std::vector<std::string>& example_ids,
                                const std::vector<std::string>& label_names) {
    std::string out = "example_id,consensus_label,quality_score,num_annotations\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& r = report.rows[i];
        out += example_ids[i] + "," + label_names[r.consensus_label] + "," +
               io_detail::format_double(r.quality_score) + "," +
               std::to_string(r.num_annotations) + "\n";
    }
    io_detail::atomic_write(path, out);
}

inline void write_annotators_csv(const std::filesystem::path& path,
                                 const AnnotatorReport& report,
                                 const std::vector<std::string>& annotator_ids) {
    std::string out = "annotator_id,quality_score,num_labeled\n";
    for (std::size_t j = 0; j < report.rows.size(); ++j) {
        const auto& r = report.rows[j];
        out += annotator_ids[j] + "," + io_detail::format_double(r.quality_score) + "," +
               std::to_string(r.num_labeled) + "\n";
    }
    io_detail::atomic_write(path, out);
}

// score command: consensus.csv + annotators.csv + run.json
inline void run_score(const RunConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    auto loaded = load_annotations(config.annotations_path);
    std::optional<ProbMatrix> probs;
    if (!config.pred_probs_path.empty())
        probs = load_probs(config.pred_probs_path, loaded);

    std::optional<std::vector<int>> external;
    if (config.consensus_mode == "majority")
        external = majority_vote(loaded.table);
    else if (config.consensus_mode != "native")
        throw InputError("unknown consensus mode '" + config.consensus_mode + "'");

    auto result = score_with_method(config.method, loaded.table,
                                    probs ? &*probs : nullptr, config,
                                    external ? &*external : nullptr);
    const auto t1 = std::chrono::steady_clock::now();

    std::filesystem::create_directories(config.out_dir);
    const std::filesystem::path out(config.out_dir);
    write_consensus_csv(out / "consensus.csv", result.consensus, loaded.example_ids,
                        loaded.label_names);
    if (result.annotators)
        write_annotators_csv(out / "annotators.csv", *result.annotators, loaded.annotator_ids);

    nlohmann::json run;
    run["method"] = config.method;
    run["version"] = kVersion;
    run["n"] = loaded.table.num_examples();
    run["m"] = loaded.table.num_annotators();
    run["num_classes"] = loaded.table.num_classes();
    run["consensus_mode"] = config.consensus_mode;
    run["hyperparameters"] = {{"ds_max_iter", config.ds.max_iter},
                              {"ds_tol", config.ds.tol},
                              {"ds_smoothing", config.ds.smoothing},
                              {"glad_max_iter", config.glad.max_iter},
                              {"glad_tol", config.glad.tol},
                              {"glad_m_step_iters", config.glad.m_step_iters},
                              {"glad_prior_strength", config.glad.prior_strength}};
    run["fitted"] = result.fitted;
    io_detail::atomic_write(out / "run.json", run.dump(2) + "\n");
    // timing goes to stderr so reruns stay byte-identical
    std::fprintf(stderr, "scored %d examples with %s in %.3f s\n",
                 loaded.table.num_examples(), config.method.c_str(),
                 std::chrono::duration<double>(t1 - t0).count());
}

// evaluate command: runs the method inline against ground truth and
// writes metrics.json
inline void run_evaluate(const RunConfig& config) {
    auto loaded = load_annotations(config.annotations_path);
    std::optional<ProbMatrix> probs;
    if (!config.pred_probs_path.empty())
        probs = load_probs(config.pred_probs_path, loaded);
    const auto truth = load_truth(config.truth_path, loaded);

    std::optional<std::vector<int>> external;
    if (config.consensus_mode == "majority") external = majority_vote(loaded.table);

    auto result = score_with_method(config.method, loaded.table,
                                    probs ? &*probs : nullptr, config,
                                    external ? &*external : nullptr);
    const auto consensus = result.consensus.labels();
    const auto quality = result.consensus.qualities();
    const auto errors = error_target(truth, consensus);

    nlohmann::json metrics;
    metrics["method"] = config.method;
    metrics["version"] = kVersion;
    metrics["consensus_mode"] = config.consensus_mode;
    metrics["consensus_accuracy"] = consensus_accuracy(truth, consensus);
    long long num_errors = 0;
    for (int e : errors) num_errors += e;
    metrics["num_errors"] = num_errors;
    const long long n = (long long)errors.size();
    if (num_errors > 0 && num_errors < n) {
        metrics["auroc"] = auroc(quality, errors);
        metrics["auprc"] = auprc(quality, errors);
    } else {
        metrics["auroc"] = nullptr;
        metrics["auprc"] = nullptr;
    }
    nlohmann::json lift = nlohmann::json::object();
    for (int t : config.lift_cutoffs) {
        const std::string key = "lift@" + std::to_string(t);
        if (num_errors > 0 && t >= 1 && t <= n)
            lift[key] = lift_at_t(quality, errors, t);
        else
            lift[key] = nullptr;
    }
    metrics["lift"] = lift;
    if (result.annotators) {
        const auto acc = annotator_truth_accuracy(loaded.table, truth);
        try {
            metrics["spearman"] = spearman(result.annotators->scores(), acc);
        } catch (const std::domain_error&) {
            metrics["spearman"] = nullptr;
        }
    }
    std::filesystem::create_directories(config.out_dir);
    io_detail::atomic_write(std::filesystem::path(config.out_dir) / "metrics.json",
                            metrics.dump(2) + "\n");
}

// simulate command: writes annotations.csv, pred_probs.csv, truth.csv,
// sim.json in the exact load formats
inline void run_simulate(const SimConfig& config, const std::string& out_dir) {
    const auto sim = simulate(config);
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path out(out_dir);

    std::string ann = "example_id,annotator_id,label\n";
    for (const auto& e : sim.table.entries())
        ann += "e" + std::to_string(e.example) + ",a" + std::to_string(e.annotator) + "," +
               std::to_string(e.label) + "\n";
    io_detail::atomic_write(out / "annotations.csv", ann);

    std::string probs = "example_id";
    for (int c = 0; c < sim.table.num_classes(); ++c) probs += ",p_" + std::to_string(c);
    probs += "\n";
    for (int i = 0; i < sim.table.num_examples(); ++i) {
        probs += "e" + std::to_string(i);
        char buf[32];
        for (int c = 0; c < sim.table.num_classes(); ++c) {
            std::snprintf(buf, sizeof(buf), ",%.17g", sim.probs.at(i, c));
            probs += buf;
        }
        probs += "\n";
    }
    io_detail::atomic_write(out / "pred_probs.csv", probs);

    std::string truth = "example_id,label\n";
    for (int i = 0; i < sim.table.num_examples(); ++i)
        truth += "e" + std::to_string(i) + "," + std::to_string(sim.truth[i]) + "\n";
    io_detail::atomic_write(out / "truth.csv", truth);

    nlohmann::json meta;
    meta["version"] = kVersion;
    meta["seed"] = config.seed;
    meta["n"] = config.n;
    meta["num_classes"] = config.num_classes;
    meta["m"] = config.m;
    meta["model_accuracy"] = config.model_accuracy;
    meta["model_sharpness"] = config.model_sharpness;
    meta["realized_annotator_accuracy"] = sim.realized_annotator_accuracy;
    meta["configured_annotator_accuracy"] = sim.annotator_accuracy;
    io_detail::atomic_write(out / "sim.json", meta.dump(2) + "\n");
}

// SimConfig from a JSON config file
inline SimConfig load_sim_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": invalid JSON: " + e.what());
    }
    SimConfig c;
    if (j.contains("preset")) c = regime_preset(j["preset"].get<std::string>());
    if (j.contains("n")) c.n = j["n"].get<int>();
    if (j.contains("num_classes")) c.num_classes = j["num_classes"].get<int>();
    if (j.contains("m")) c.m = j["m"].get<int>();
    if (j.contains("class_marginal"))
        c.class_marginal = j["class_marginal"].get<std::vector<double>>();
    if (j.contains("annotations_per_example")) {
        const auto& a = j["annotations_per_example"];
        if (a.contains("fixed"))
            c.annotations_per_example = CountSpec::fixed_count(a["fixed"].get<int>());
        else
            c.annotations_per_example =
                CountSpec::uniform_range(a["lo"].get<int>(), a["hi"].get<int>());
    }
    if (j.contains("annotator_accuracy")) {
        const auto& a = j["annotator_accuracy"];
        if (a.contains("values"))
            c.annotator_accuracy =
                AccuracySpec::explicit_list(a["values"].get<std::vector<double>>());
        else if (a.contains("beta_a"))
            c.annotator_accuracy =
                AccuracySpec::beta(a["beta_a"].get<double>(), a["beta_b"].get<double>());
        else
            c.annotator_accuracy =
                AccuracySpec::uniform_range(a["lo"].get<double>(), a["hi"].get<double>());
    }
    if (j.contains("noise_model")) {
        const auto name = j["noise_model"].get<std::string>();
        if (name == "symmetric")
            c.noise_model = NoiseModel::Symmetric;
        else if (name == "confusion")
            c.noise_model = NoiseModel::Confusion;
        else
            throw InputError(path + ": unknown noise_model '" + name + "'");
    }
    if (j.contains("model_accuracy")) c.model_accuracy = j["model_accuracy"].get<double>();
    if (j.contains("model_sharpness")) c.model_sharpness = j["model_sharpness"].get<double>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    return c;
}

}  // namespace crowdlabel
