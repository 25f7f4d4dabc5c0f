#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "crowdlabel/dataset.hpp"

namespace crowdlabel {

inline double consensus_accuracy(const std::vector<int>& truth,
                                 const std::vector<int>& consensus) {
    if (truth.size() != consensus.size())
        throw std::invalid_argument("consensus_accuracy: length mismatch");
    if (truth.empty()) throw std::invalid_argument("consensus_accuracy: empty input");
    long long agree = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (truth[i] == consensus[i]) agree++;
    return double(agree) / double(truth.size());
}

inline std::vector<int> error_target(const std::vector<int>& truth,
                                     const std::vector<int>& consensus) {
    std::vector<int> err(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) err[i] = truth[i] != consensus[i] ? 1 : 0;
    return err;
}

namespace metric_detail {

// average ranks (1-based, ties get mean rank)
inline std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double mean_rank = 0.5 * double(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

}  // namespace metric_detail

// AUROC of detecting errors by low quality, via the Mann-Whitney rank-sum
// formulation with tie correction: P(score_err > score_ok) + P(tie)/2
// where the detection score is -quality.
inline double auroc(const std::vector<double>& quality, const std::vector<int>& errors) {
    if (quality.size() != errors.size()) throw std::invalid_argument("auroc: length mismatch");
    long long pos = 0;
    for (int e : errors) pos += e;
    const long long neg = (long long)errors.size() - pos;
    if (pos == 0 || neg == 0)
        throw std::domain_error("auroc: undefined when one class is empty");
    std::vector<double> detection(quality.size());
    for (std::size_t i = 0; i < quality.size(); ++i) detection[i] = -quality[i];
    const auto ranks = metric_detail::average_ranks(detection);
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < errors.size(); ++i)
        if (errors[i]) rank_sum += ranks[i];
    const double u = rank_sum - double(pos) * (double(pos) + 1.0) / 2.0;
    return u / (double(pos) * double(neg));
}

// Average precision over the list ranked by descending detection score
// (= ascending quality); tied scores enter as one block.
inline double auprc(const std::vector<double>& quality, const std::vector<int>& errors) {
    if (quality.size() != errors.size()) throw std::invalid_argument("auprc: length mismatch");
    long long pos = 0;
    for (int e : errors) pos += e;
    if (pos == 0) throw std::domain_error("auprc: no positives");
    const std::size_t n = quality.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return quality[a] < quality[b]; });
    double ap = 0.0;
    long long cum_tp = 0;
    std::size_t i = 0, seen = 0;
    while (i < n) {
        std::size_t j = i;
        long long block_tp = errors[order[i]];
        while (j + 1 < n && quality[order[j + 1]] == quality[order[i]]) {
            ++j;
            block_tp += errors[order[j]];
        }
        cum_tp += block_tp;
        seen = j + 1;
        const double precision = double(cum_tp) / double(seen);
        ap += (double(block_tp) / double(pos)) * precision;
        i = j + 1;
    }
    return ap;
}

// Precision of the T lowest-quality examples at catching errors, relative
// to the base error rate. Ties at the cutoff break by stable input order.
inline double lift_at_t(const std::vector<double>& quality, const std::vector<int>& errors,
                        int t) {
    const int n = int(quality.size());
    if (t < 1 || t > n) throw std::invalid_argument("lift_at_t: T out of range");
    long long pos = 0;
    for (int e : errors) pos += e;
    if (pos == 0) throw std::domain_error("lift_at_t: zero total errors");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return quality[a] < quality[b]; });
    long long caught = 0;
    for (int i = 0; i < t; ++i) caught += errors[order[i]];
    const double precision = double(caught) / double(t);
    const double base_rate = double(pos) / double(n);
    return precision / base_rate;
}

// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("spearman: length mismatch");
    if (a.size() < 2) throw std::invalid_argument("spearman: need >= 2 values");
    const auto ra = metric_detail::average_ranks(a);
    const auto rb = metric_detail::average_ranks(b);
    const double n = double(a.size());
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean_a += ra[i];
        mean_b += rb[i];
    }
    mean_a /= n;
    mean_b /= n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = ra[i] - mean_a;
        const double db = rb[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0)
        throw std::domain_error("spearman: constant input vector");
    return cov / std::sqrt(var_a * var_b);
}

// ACC_j: each annotator's accuracy against ground truth on their labels.
inline std::vector<double> annotator_truth_accuracy(const AnnotationTable& table,
                                                    const std::vector<int>& truth) {
    const int m = table.num_annotators();
    std::vector<double> acc(m, 0.0);
    for (int j = 0; j < m; ++j) {
        int correct = 0;
        for (const auto& e : table.of_annotator(j))
            if (e.label == truth[e.example]) correct++;
        acc[j] = table.labels_by(j) > 0 ? double(correct) / table.labels_by(j) : 0.0;
    }
    return acc;
}

}  // namespace crowdlabel
