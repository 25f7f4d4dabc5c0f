#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "crowdlabel/dataset.hpp"
#include "crowdlabel/label_quality.hpp"

namespace crowdlabel {

// Trust weights governing each predictor's influence in the ensemble.
struct TrustWeights {
    double p = 0.0;                    // shared annotator-accuracy likelihood parameter
    std::vector<double> s;             // inter-annotator agreement per annotator
    std::vector<double> w_annotator;   // per-annotator weight, clamped at 0
    double w_model = 0.0;
    double a_model = 0.0;              // classifier accuracy vs MV consensus on multi-annotated
    double a_mlc = 0.0;                // most-labeled-class baseline accuracy
};

// Average annotator agreement with majority vote across multiply-annotated
// examples, clamped to [1/K + eps, 1 - eps]. Falls back to agreement with
// the model's hard predictions when no example has more than one annotation.
inline double estimate_p(const AnnotationTable& table, const std::vector<int>& mv_labels,
                         const ProbMatrix* probs = nullptr) {
    const int k = table.num_classes();
    double raw;
    if (!table.multi_annotated().empty()) {
        double sum = 0.0;
        for (int i : table.multi_annotated()) {
            int agree = 0;
            for (const auto& e : table.of_example(i))
                if (e.label == mv_labels[i]) agree++;
            sum += double(agree) / table.annotations_of(i);
        }
        raw = sum / table.multi_annotated().size();
    } else if (probs) {
        long long agree = 0;
        for (const auto& e : table.entries())
            if (e.label == probs->argmax(e.example)) agree++;
        raw = table.entries().empty() ? 1.0 / k
                                      : double(agree) / double(table.entries().size());
    } else {
        raw = 1.0 / k;  // uninformative; clamp lifts it just above uniform
    }
    return std::min(1.0 - kProbClamp, std::max(1.0 / k + kProbClamp, raw));
}

// Likelihood vector treating one annotation as a probabilistic prediction:
// P on the chosen class, (1-P)/(K-1) elsewhere.
inline std::vector<double> annotator_likelihood(int label, double p, int k) {
    if (k < 2) throw std::invalid_argument("annotator_likelihood: K must be >= 2");
    std::vector<double> v(k, (1.0 - p) / (k - 1));
    v[label] = p;
    return v;
}

// s_j: each annotator's agreement with the other annotators on shared
// examples; fallback to the mean of defined values.
inline std::vector<double> annotator_agreement(const AnnotationTable& table) {
    const int m = table.num_annotators();
    std::vector<double> s(m);
    std::vector<bool> defined(m, false);
    double sum_defined = 0.0;
    int num_defined = 0;
    for (int j = 0; j < m; ++j) {
        long long matches = 0, pairs = 0;
        for (const auto& e : table.of_annotator(j)) {
            for (const auto& other : table.of_example(e.example)) {
                if (other.annotator == j) continue;
                pairs++;
                if (other.label == e.label) matches++;
            }
        }
        if (pairs > 0) {
            s[j] = double(matches) / double(pairs);
            defined[j] = true;
            sum_defined += s[j];
            num_defined++;
        }
    }
    const double fallback = num_defined > 0 ? sum_defined / num_defined : 0.5;
    for (int j = 0; j < m; ++j)
        if (!defined[j]) s[j] = fallback;
    return s;
}

// A_M: classifier hard-prediction accuracy vs majority vote on the
// multiply-annotated subset; over all examples when that subset is empty.
inline double model_accuracy(const AnnotationTable& table, const ProbMatrix& probs,
                             const std::vector<int>& mv_labels) {
    const auto& multi = table.multi_annotated();
    long long agree = 0;
    if (!multi.empty()) {
        for (int i : multi)
            if (probs.argmax(i) == mv_labels[i]) agree++;
        return double(agree) / double(multi.size());
    }
    for (int i = 0; i < table.num_examples(); ++i)
        if (probs.argmax(i) == mv_labels[i]) agree++;
    return double(agree) / double(table.num_examples());
}

// A_MLC: accuracy of always predicting the overall most-labeled class,
// clamped into [1/K - eps, 1 - eps] so the weight denominators stay finite.
inline double mlc_accuracy(const AnnotationTable& table, const std::vector<int>& mv_labels) {
    const int mlc = table.most_labeled_class();
    const auto& multi = table.multi_annotated();
    long long agree = 0;
    double raw;
    if (!multi.empty()) {
        for (int i : multi)
            if (mv_labels[i] == mlc) agree++;
        raw = double(agree) / double(multi.size());
    } else {
        for (int i = 0; i < table.num_examples(); ++i)
            if (mv_labels[i] == mlc) agree++;
        raw = double(agree) / double(table.num_examples());
    }
    const double lo = 1.0 / table.num_classes() - kProbClamp;
    return std::min(1.0 - kProbClamp, std::max(lo, raw));
}

// w_j = 1 - (1-s_j)/(1-A_MLC); w_M additionally scaled by the root of the
// mean annotation count. Negative weights are clamped to 0 (no trust).
inline TrustWeights compute_weights(std::vector<double> s, double a_model, double a_mlc,
                                    const AnnotationTable& table, double p) {
    TrustWeights w;
    w.p = p;
    w.s = std::move(s);
    w.a_model = a_model;
    w.a_mlc = a_mlc;
    w.w_annotator.resize(w.s.size());
    for (std::size_t j = 0; j < w.s.size(); ++j)
        w.w_annotator[j] = std::max(0.0, 1.0 - (1.0 - w.s[j]) / (1.0 - a_mlc));
    const double scale = std::sqrt(table.mean_annotations_per_example());
    w.w_model = std::max(0.0, (1.0 - (1.0 - a_model) / (1.0 - a_mlc)) * scale);
    return w;
}

inline TrustWeights estimate_trust_weights(const AnnotationTable& table, const ProbMatrix& probs,
                                           const std::vector<int>& mv_labels) {
    const double p = estimate_p(table, mv_labels, &probs);
    auto s = annotator_agreement(table);
    const double a_m = model_accuracy(table, probs, mv_labels);
    const double a_mlc = mlc_accuracy(table, mv_labels);
    return compute_weights(std::move(s), a_m, a_mlc, table, p);
}

// Weighted ensemble of the classifier row and the likelihood vectors of an
// example's annotators. Returned rows sum to 1.
inline ProbMatrix crowdlab_posterior(const AnnotationTable& table, const ProbMatrix& probs,
                                     const TrustWeights& weights) {
    const int n = table.num_examples();
    const int k = table.num_classes();
    std::vector<double> out(std::size_t(n) * k, 0.0);
    const double off = (1.0 - weights.p) / (k - 1);
    for (int i = 0; i < n; ++i) {
        double* row = out.data() + std::size_t(i) * k;
        double total = weights.w_model;
        for (int c = 0; c < k; ++c) row[c] = weights.w_model * probs.at(i, c);
        for (const auto& e : table.of_example(i)) {
            const double wj = weights.w_annotator[e.annotator];
            total += wj;
            for (int c = 0; c < k; ++c) row[c] += wj * (c == e.label ? weights.p : off);
        }
        if (total <= 0.0) {
            // all weights zero: unweighted mean of model row and likelihoods
            const int terms = 1 + table.annotations_of(i);
            for (int c = 0; c < k; ++c) row[c] = probs.at(i, c);
            for (const auto& e : table.of_example(i))
                for (int c = 0; c < k; ++c) row[c] += (c == e.label ? weights.p : off);
            for (int c = 0; c < k; ++c) row[c] /= terms;
        } else {
            for (int c = 0; c < k; ++c) row[c] /= total;
        }
    }
    return ProbMatrix(n, k, std::move(out), /*clamp=*/false);
}

struct CrowdlabResult {
    ConsensusReport consensus;
    ProbMatrix posterior;
    TrustWeights weights;
};

// Full CROWDLAB pipeline. When external consensus labels are supplied
// (benchmark protocol), quality scores are read off at those labels
// instead of the ensemble argmax.
inline CrowdlabResult crowdlab_score(const AnnotationTable& table, const ProbMatrix& probs,
                                     const std::vector<int>* external_consensus = nullptr) {
    const auto mv = majority_vote(table);
    auto weights = estimate_trust_weights(table, probs, mv);
    auto posterior = crowdlab_posterior(table, probs, weights);
    const int n = table.num_examples();
    const int k = table.num_classes();
    ConsensusReport report;
    report.method = "crowdlab";
    report.rows.resize(n);
    for (int i = 0; i < n; ++i) {
        const int label = external_consensus ? (*external_consensus)[i]
                                             : select_consensus(posterior.row(i), k, table);
        report.rows[i] = {label, posterior.at(i, label), table.annotations_of(i)};
    }
    return {std::move(report), std::move(posterior), std::move(weights)};
}

// Annotator quality a_j = wbar*Q_j + (1-wbar)*A_j, with Q_j the average
// ensemble self-confidence of the annotator's labels and A_j their
// agreement with the CROWDLAB consensus on multiply-annotated examples.
inline AnnotatorReport crowdlab_annotator_quality(const AnnotationTable& table,
                                                  const ProbMatrix& posterior,
                                                  const TrustWeights& weights,
                                                  const std::vector<int>& consensus) {
    const int n = table.num_examples();
    const int m = table.num_annotators();

    double sum_w = 0.0;
    for (double wj : weights.w_annotator) sum_w += wj;
    long long total_annotations = 0;
    for (int i = 0; i < n; ++i) total_annotations += table.annotations_of(i);
    const double w0 = sum_w * double(total_annotations) / (double(n) * double(m));
    const double denom = weights.w_model + w0;
    const double wbar = denom > 0.0 ? weights.w_model / denom : 0.0;

    const auto agreement = agreement_annotator_quality(table, consensus);
    AnnotatorReport report;
    report.method = "crowdlab";
    report.rows.resize(m);
    for (int j = 0; j < m; ++j) {
        double q_sum = 0.0;
        for (const auto& e : table.of_annotator(j)) q_sum += posterior.at(e.example, e.label);
        const double qj = table.labels_by(j) > 0 ? q_sum / table.labels_by(j) : 0.0;
        const double aj = wbar * qj + (1.0 - wbar) * agreement[j];
        report.rows[j] = {aj, table.labels_by(j), agreement[j]};
    }
    return report;
}

struct NpwResult {
    ConsensusReport consensus;
    AnnotatorReport annotators;
    ProbMatrix posterior;
    double w = 0.0;  // model-vs-average-annotator balance
};

// No-Perannotator-Weights variant: one aggregate annotator likelihood per
// example (built from the s_j agreements) weighed against the model by a
// single scalar w = A_M / (A_M + Abar).
inline NpwResult npw_score(const AnnotationTable& table, const ProbMatrix& probs,
                           const std::vector<int>* external_consensus = nullptr) {
    const int n = table.num_examples();
    const int k = table.num_classes();
    const auto mv = majority_vote(table);
    const auto s = annotator_agreement(table);
    const double a_m = model_accuracy(table, probs, mv);

    const auto a_vs_mv = agreement_annotator_quality(table, mv);
    double weighted_acc = 0.0;
    long long total_labels = 0;
    for (int j = 0; j < table.num_annotators(); ++j) {
        weighted_acc += a_vs_mv[j] * table.labels_by(j);
        total_labels += table.labels_by(j);
    }
    const double a_bar = total_labels > 0 ? weighted_acc / double(total_labels) : 0.0;
    const double w = (a_m + a_bar) > 0.0 ? a_m / (a_m + a_bar) : 0.5;

    double mean_sqrt = 0.0;
    for (int i = 0; i < n; ++i) mean_sqrt += std::sqrt(double(table.annotations_of(i)));
    mean_sqrt /= n;
    const double w_model = w * mean_sqrt;

    std::vector<double> post(std::size_t(n) * k, 0.0);
    std::vector<double> agg(k);
    for (int i = 0; i < n; ++i) {
        std::fill(agg.begin(), agg.end(), 0.0);
        for (const auto& e : table.of_example(i)) {
            const double sj = s[e.annotator];
            const double off = (1.0 - sj) / (k - 1);
            for (int c = 0; c < k; ++c) agg[c] += (c == e.label ? sj : off);
        }
        const int count = table.annotations_of(i);
        for (int c = 0; c < k; ++c) agg[c] /= std::max(1, count);

        const double w_ann = (1.0 - w) * std::sqrt(double(count));
        const double total = w_model + w_ann;
        double* row = post.data() + std::size_t(i) * k;
        if (total <= 0.0) {
            for (int c = 0; c < k; ++c) row[c] = 0.5 * (probs.at(i, c) + agg[c]);
        } else {
            for (int c = 0; c < k; ++c)
                row[c] = (w_model * probs.at(i, c) + w_ann * agg[c]) / total;
        }
    }
    ProbMatrix posterior(n, k, std::move(post), /*clamp=*/false);

    NpwResult result{ConsensusReport{}, AnnotatorReport{}, posterior, w};
    result.consensus.method = "crowdlab-npw";
    result.consensus.rows.resize(n);
    for (int i = 0; i < n; ++i) {
        const int label = external_consensus ? (*external_consensus)[i]
                                             : select_consensus(posterior.row(i), k, table);
        result.consensus.rows[i] = {label, posterior.at(i, label), table.annotations_of(i)};
    }

    result.annotators.method = "crowdlab-npw";
    result.annotators.rows.resize(table.num_annotators());
    for (int j = 0; j < table.num_annotators(); ++j) {
        double q_sum = 0.0;
        for (const auto& e : table.of_annotator(j)) q_sum += posterior.at(e.example, e.label);
        const double qj = table.labels_by(j) > 0 ? q_sum / table.labels_by(j) : 0.0;
        const double aj = w * qj + (1.0 - w) * a_vs_mv[j];
        result.annotators.rows[j] = {aj, table.labels_by(j), a_vs_mv[j]};
    }
    return result;
}

}  // namespace crowdlabel
