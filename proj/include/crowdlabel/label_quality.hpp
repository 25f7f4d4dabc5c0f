#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "crowdlabel/dataset.hpp"

namespace crowdlabel {

// Self-confidence label quality score: L(Y, p) = p[Y].
inline double self_confidence(int label, const double* p, int k) {
    if (label < 0 || label >= k)
        throw std::out_of_range("self_confidence: label out of range");
    return p[label];
}

inline double self_confidence(int label, const std::vector<double>& p) {
    return self_confidence(label, p.data(), int(p.size()));
}

// Fraction of annotators agreeing with the consensus label, per example.
inline std::vector<double> agreement_consensus_quality(const AnnotationTable& table,
                                                       const std::vector<int>& consensus) {
    const int n = table.num_examples();
    std::vector<double> q(n, 0.0);
    for (int i = 0; i < n; ++i) {
        int agree = 0;
        for (const auto& e : table.of_example(i))
            if (e.label == consensus[i]) agree++;
        q[i] = table.annotations_of(i) > 0 ? double(agree) / table.annotations_of(i) : 0.0;
    }
    return q;
}

// q_i = p_M[i][consensus_i]
inline std::vector<double> lqs_consensus_quality(const std::vector<int>& consensus,
                                                 const ProbMatrix& probs) {
    std::vector<double> q(consensus.size());
    for (std::size_t i = 0; i < consensus.size(); ++i)
        q[i] = probs.at(int(i), consensus[i]);
    return q;
}

// Empirical accuracy of each annotator against consensus, restricted to
// multiply-annotated examples. Annotators with no such examples get the
// mean of the defined scores (neutral rank).
inline std::vector<double> agreement_annotator_quality(const AnnotationTable& table,
                                                       const std::vector<int>& consensus) {
    const int m = table.num_annotators();
    std::vector<double> a(m);
    std::vector<bool> defined(m, false);
    double sum_defined = 0.0;
    int num_defined = 0;
    for (int j = 0; j < m; ++j) {
        int agree = 0, total = 0;
        for (const auto& e : table.of_annotator(j)) {
            if (table.annotations_of(e.example) <= 1) continue;
            total++;
            if (e.label == consensus[e.example]) agree++;
        }
        if (total > 0) {
            a[j] = double(agree) / total;
            defined[j] = true;
            sum_defined += a[j];
            num_defined++;
        }
    }
    const double fallback = num_defined > 0 ? sum_defined / num_defined : 0.5;
    for (int j = 0; j < m; ++j)
        if (!defined[j]) a[j] = fallback;
    return a;
}

// Average self-confidence of each annotator's labels under the classifier.
inline std::vector<double> lqs_annotator_quality(const AnnotationTable& table,
                                                 const ProbMatrix& probs) {
    const int m = table.num_annotators();
    std::vector<double> a(m, 0.0);
    for (int j = 0; j < m; ++j) {
        double sum = 0.0;
        for (const auto& e : table.of_annotator(j))
            sum += probs.at(e.example, e.label);
        a[j] = table.labels_by(j) > 0 ? sum / table.labels_by(j) : 0.0;
    }
    return a;
}

// Active Label Cleaning score, negated so higher = better quality like
// every other method here: q_i = -(CE(p_emp, p_M) - H(p_M)). Natural log.
inline std::vector<double> alc_consensus_quality(const AnnotationTable& table,
                                                 const ProbMatrix& probs) {
    const int n = table.num_examples();
    const int k = table.num_classes();
    std::vector<double> q(n, 0.0);
    std::vector<double> emp(k);
    for (int i = 0; i < n; ++i) {
        std::fill(emp.begin(), emp.end(), 0.0);
        for (const auto& e : table.of_example(i)) emp[e.label] += 1.0;
        const double total = double(table.annotations_of(i));
        double cross_entropy = 0.0, entropy = 0.0;
        for (int c = 0; c < k; ++c) {
            const double p = probs.at(i, c);
            if (total > 0.0) cross_entropy -= (emp[c] / total) * std::log(p);
            entropy -= p * std::log(p);
        }
        q[i] = -(cross_entropy - entropy);
    }
    return q;
}

}  // namespace crowdlabel
