#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "crowdlabel/dataset.hpp"

namespace crowdlabel {

// Per-annotator K x K confusion matrices plus the class prior.
// confusion(j, k, l) = P(annotator j says l | true class k).
struct ConfusionModel {
    int num_classes = 0;
    std::vector<std::vector<double>> confusion;  // per annotator, row-major K*K
    std::vector<double> prior;

    double at(int j, int true_class, int label) const {
        return confusion[j][std::size_t(true_class) * num_classes + label];
    }
};

struct DsConfig {
    int max_iter = 100;
    double tol = 1e-5;          // max absolute posterior change
    double smoothing = 1.0;     // Laplace pseudocount per confusion cell
};

struct DsFit {
    ConfusionModel model;
    ProbMatrix posterior;
    int iterations = 0;
    // observed-data log-likelihood plus the Dirichlet smoothing term,
    // one entry per iteration; this penalized sequence is non-decreasing
    std::vector<double> log_likelihood;
};

namespace detail {

// log-space E-step: log post[k] = log prior[k] + sum_j log pi(j, k, Y_ij),
// normalized with log-sum-exp. Also accumulates the observed-data
// log-likelihood sum_i log sum_k exp(...).
inline double ds_e_step(const AnnotationTable& table, const ConfusionModel& model,
                        const std::vector<const double*>& prior_rows,
                        std::vector<double>& posterior) {
    const int n = table.num_examples();
    const int k = table.num_classes();
    double ll = 0.0;
    std::vector<double> logp(k);
    for (int i = 0; i < n; ++i) {
        const double* prior = prior_rows.empty() ? model.prior.data() : prior_rows[i];
        for (int c = 0; c < k; ++c) logp[c] = std::log(prior[c]);
        for (const auto& e : table.of_example(i))
            for (int c = 0; c < k; ++c) logp[c] += std::log(model.at(e.annotator, c, e.label));
        const double mx = *std::max_element(logp.begin(), logp.end());
        double sum = 0.0;
        for (int c = 0; c < k; ++c) sum += std::exp(logp[c] - mx);
        ll += mx + std::log(sum);
        double* row = posterior.data() + std::size_t(i) * k;
        for (int c = 0; c < k; ++c) row[c] = std::exp(logp[c] - mx) / sum;
    }
    return ll;
}

}  // namespace detail

// Empirical marginal distribution of the given annotations.
inline std::vector<double> empirical_label_marginal(const AnnotationTable& table) {
    const int k = table.num_classes();
    std::vector<double> prior(k, 0.0);
    double total = 0.0;
    for (int c = 0; c < k; ++c) {
        prior[c] = double(table.class_totals()[c]);
        total += prior[c];
    }
    if (total <= 0.0) throw std::invalid_argument("empirical_label_marginal: empty table");
    for (auto& p : prior) p = std::max(kProbClamp, p / total);
    double norm = 0.0;
    for (double p : prior) norm += p;
    for (auto& p : prior) p /= norm;
    return prior;
}

// M-step from soft responsibilities, with Laplace smoothing per cell.
inline ConfusionModel ds_m_step(const AnnotationTable& table, const std::vector<double>& resp,
                                std::vector<double> prior, double smoothing) {
    const int k = table.num_classes();
    const int m = table.num_annotators();
    ConfusionModel model;
    model.num_classes = k;
    model.prior = std::move(prior);
    model.confusion.assign(m, std::vector<double>(std::size_t(k) * k, smoothing));
    for (int j = 0; j < m; ++j) {
        auto& pi = model.confusion[j];
        for (const auto& e : table.of_annotator(j)) {
            const double* r = resp.data() + std::size_t(e.example) * k;
            for (int c = 0; c < k; ++c) pi[std::size_t(c) * k + e.label] += r[c];
        }
        for (int c = 0; c < k; ++c) {
            double row_sum = 0.0;
            for (int l = 0; l < k; ++l) row_sum += pi[std::size_t(c) * k + l];
            for (int l = 0; l < k; ++l) pi[std::size_t(c) * k + l] /= row_sum;
        }
    }
    return model;
}

// Dawid-Skene EM. Responsibilities initialized one-hot from majority vote;
// the class prior is held fixed at the empirical annotation marginal.
inline DsFit ds_fit(const AnnotationTable& table, const DsConfig& config = {}) {
    const int n = table.num_examples();
    const int k = table.num_classes();
    if (table.entries().empty()) throw std::invalid_argument("ds_fit: empty table");

    auto prior = empirical_label_marginal(table);
    const auto mv = majority_vote(table);
    std::vector<double> resp(std::size_t(n) * k, 0.0);
    for (int i = 0; i < n; ++i) resp[std::size_t(i) * k + mv[i]] = 1.0;

    DsFit fit{ConfusionModel{}, ProbMatrix(n, k, resp, /*clamp=*/false), 0, {}};
    std::vector<double> posterior = resp;
    for (int iter = 0; iter < config.max_iter; ++iter) {
        fit.model = ds_m_step(table, resp, prior, config.smoothing);
        const double ll = detail::ds_e_step(table, fit.model, {}, posterior);
        // include the Dirichlet smoothing term: the M-step maximizes the
        // smoothed objective, so only this penalized sequence is monotone
        double log_prior = 0.0;
        for (const auto& pi : fit.model.confusion)
            for (double v : pi) log_prior += config.smoothing * std::log(v);
        fit.log_likelihood.push_back(ll + log_prior);
        fit.iterations = iter + 1;
        double max_change = 0.0;
        for (std::size_t t = 0; t < posterior.size(); ++t)
            max_change = std::max(max_change, std::abs(posterior[t] - resp[t]));
        resp = posterior;
        if (max_change < config.tol) break;
    }
    fit.posterior = ProbMatrix(n, k, std::move(resp), /*clamp=*/false);
    return fit;
}

inline std::vector<double> ds_consensus_quality(const ProbMatrix& posterior,
                                                const std::vector<int>& consensus) {
    std::vector<double> q(consensus.size());
    for (std::size_t i = 0; i < consensus.size(); ++i)
        q[i] = posterior.at(int(i), consensus[i]);
    return q;
}

// a_j = mean diagonal of the annotator's confusion matrix
inline std::vector<double> ds_annotator_quality(const ConfusionModel& model) {
    const int k = model.num_classes;
    std::vector<double> a(model.confusion.size(), 0.0);
    for (std::size_t j = 0; j < model.confusion.size(); ++j) {
        double trace = 0.0;
        for (int c = 0; c < k; ++c) trace += model.confusion[j][std::size_t(c) * k + c];
        a[j] = trace / k;
    }
    return a;
}

// Adds the classifier's hard predictions as one extra annotator (index m)
// labeling every example.
inline AnnotationTable augment_with_model(const AnnotationTable& table, const ProbMatrix& probs) {
    auto entries = table.entries();
    entries.reserve(entries.size() + table.num_examples());
    for (int i = 0; i < table.num_examples(); ++i)
        entries.push_back({i, table.num_annotators(), probs.argmax(i)});
    return AnnotationTable(table.num_examples(), table.num_classes(),
                           table.num_annotators() + 1, std::move(entries));
}

// Empirical Bayes posterior: the Dawid-Skene likelihood with the model's
// probability row substituted for the class prior, per example.
inline ProbMatrix empirical_bayes_posterior(const AnnotationTable& table, const ProbMatrix& probs,
                                            const ConfusionModel& model) {
    const int n = table.num_examples();
    const int k = table.num_classes();
    std::vector<const double*> prior_rows(n);
    for (int i = 0; i < n; ++i) prior_rows[i] = probs.row(i);
    std::vector<double> buffer(std::size_t(n) * k, 0.0);
    detail::ds_e_step(table, model, prior_rows, buffer);
    return ProbMatrix(n, k, std::move(buffer), /*clamp=*/false);
}

}  // namespace crowdlabel
