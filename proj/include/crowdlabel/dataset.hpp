#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crowdlabel {

inline constexpr double kProbClamp = 1e-6;

struct Annotation {
    int example;
    int annotator;
    int label;
};

// Sparse record of which annotator gave which class to which example,
// with the per-example and per-annotator indexes the estimators need.
class AnnotationTable {
public:
    AnnotationTable(int n, int num_classes, int m, std::vector<Annotation> entries)
        : n_(n), k_(num_classes), m_(m), entries_(std::move(entries)) {
        if (n <= 0 || num_classes <= 0 || m <= 0)
            throw std::invalid_argument("AnnotationTable: sizes must be positive");
        by_example_.resize(n_);
        by_annotator_.resize(m_);
        class_totals_.assign(k_, 0);
        for (const auto& e : entries_) {
            if (e.example < 0 || e.example >= n_ || e.annotator < 0 || e.annotator >= m_)
                throw std::out_of_range("AnnotationTable: entry index out of range");
            by_example_[e.example].push_back(e);
            by_annotator_[e.annotator].push_back(e);
            if (e.label >= 0 && e.label < k_) class_totals_[e.label]++;
        }
        for (int i = 0; i < n_; ++i)
            if (by_example_[i].size() > 1) multi_.push_back(i);
    }

    int num_examples() const { return n_; }
    int num_classes() const { return k_; }
    int num_annotators() const { return m_; }
    const std::vector<Annotation>& entries() const { return entries_; }

    // annotations of example i (the set J_i)
    const std::vector<Annotation>& of_example(int i) const { return by_example_[i]; }
    // annotations by annotator j (the set I_j)
    const std::vector<Annotation>& of_annotator(int j) const { return by_annotator_[j]; }
    // examples with more than one annotation
    const std::vector<int>& multi_annotated() const { return multi_; }

    int annotations_of(int i) const { return int(by_example_[i].size()); }
    int labels_by(int j) const { return int(by_annotator_[j].size()); }

    // dataset-wide annotation count per class (tie-break statistic)
    const std::vector<long long>& class_totals() const { return class_totals_; }

    // class with the most annotations overall; ties by lowest index
    int most_labeled_class() const {
        return int(std::max_element(class_totals_.begin(), class_totals_.end()) -
                   class_totals_.begin());
    }

    double mean_annotations_per_example() const {
        return double(entries_.size()) / double(n_);
    }

private:
    int n_, k_, m_;
    std::vector<Annotation> entries_;
    std::vector<std::vector<Annotation>> by_example_;
    std::vector<std::vector<Annotation>> by_annotator_;
    std::vector<int> multi_;
    std::vector<long long> class_totals_;
};

// n x K classifier-predicted class probabilities, clamped away from 0/1
// on construction so downstream log-based scores stay finite.
class ProbMatrix {
public:
    ProbMatrix(int n, int num_classes, std::vector<double> values, bool clamp = true)
        : n_(n), k_(num_classes), values_(std::move(values)) {
        if (int(values_.size()) != n_ * k_)
            throw std::invalid_argument("ProbMatrix: size mismatch");
        if (clamp) {
            for (auto& v : values_)
                v = std::min(1.0 - kProbClamp, std::max(kProbClamp, v));
        }
    }

    int num_rows() const { return n_; }
    int num_classes() const { return k_; }
    double at(int i, int k) const { return values_[std::size_t(i) * k_ + k]; }
    const double* row(int i) const { return values_.data() + std::size_t(i) * k_; }
    const std::vector<double>& values() const { return values_; }

    int argmax(int i) const {
        const double* r = row(i);
        return int(std::max_element(r, r + k_) - r);
    }

    std::vector<int> hard_predictions() const {
        std::vector<int> out(n_);
        for (int i = 0; i < n_; ++i) out[i] = argmax(i);
        return out;
    }

private:
    int n_, k_;
    std::vector<double> values_;
};

struct ConsensusRow {
    int consensus_label;
    double quality_score;
    int num_annotations;
};

struct ConsensusReport {
    std::string method;
    std::vector<ConsensusRow> rows;

    std::vector<int> labels() const {
        std::vector<int> out(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) out[i] = rows[i].consensus_label;
        return out;
    }
    std::vector<double> qualities() const {
        std::vector<double> out(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) out[i] = rows[i].quality_score;
        return out;
    }
};

struct AnnotatorRow {
    double quality_score;
    int num_labeled;
    double agreement_with_consensus;
};

struct AnnotatorReport {
    std::string method;
    std::vector<AnnotatorRow> rows;

    std::vector<double> scores() const {
        std::vector<double> out(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) out[i] = rows[i].quality_score;
        return out;
    }
};

struct Violation {
    std::string kind;
    std::string detail;
};

struct ValidationSummary {
    int n = 0;
    int m = 0;
    int num_classes = 0;
    int num_multi_annotated = 0;
    std::vector<int> annotations_per_example_histogram;  // index = count
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

inline ValidationSummary validate(const AnnotationTable& table,
                                  const ProbMatrix* probs = nullptr) {
    ValidationSummary s;
    s.n = table.num_examples();
    s.m = table.num_annotators();
    s.num_classes = table.num_classes();
    s.num_multi_annotated = int(table.multi_annotated().size());

    int max_count = 0;
    for (int i = 0; i < s.n; ++i) max_count = std::max(max_count, table.annotations_of(i));
    s.annotations_per_example_histogram.assign(max_count + 1, 0);
    for (int i = 0; i < s.n; ++i) s.annotations_per_example_histogram[table.annotations_of(i)]++;

    for (int i = 0; i < s.n; ++i) {
        if (table.annotations_of(i) == 0)
            s.violations.push_back({"unlabeled example",
                                    "example " + std::to_string(i) + " has no annotations"});
        std::vector<int> seen;
        for (const auto& e : table.of_example(i)) {
            if (std::find(seen.begin(), seen.end(), e.annotator) != seen.end())
                s.violations.push_back({"duplicate annotation",
                                        "example " + std::to_string(i) + ", annotator " +
                                            std::to_string(e.annotator)});
            seen.push_back(e.annotator);
            if (e.label < 0 || e.label >= table.num_classes())
                s.violations.push_back({"label out of range",
                                        "example " + std::to_string(i) + ", label " +
                                            std::to_string(e.label)});
        }
    }
    for (int j = 0; j < s.m; ++j) {
        if (table.labels_by(j) < 2)
            s.violations.push_back({"annotator with <2 labels",
                                    "annotator " + std::to_string(j) + " labeled " +
                                        std::to_string(table.labels_by(j)) + " example(s)"});
    }
    if (probs) {
        if (probs->num_rows() != table.num_examples() ||
            probs->num_classes() != table.num_classes()) {
            s.violations.push_back({"dimension mismatch",
                                    "probs " + std::to_string(probs->num_rows()) + "x" +
                                        std::to_string(probs->num_classes()) + " vs table " +
                                        std::to_string(s.n) + "x" +
                                        std::to_string(s.num_classes)});
        } else {
            for (int i = 0; i < probs->num_rows(); ++i) {
                double sum = 0.0;
                for (int k = 0; k < probs->num_classes(); ++k) sum += probs->at(i, k);
                // clamp adds at most K*eps per row
                if (std::abs(sum - 1.0) > 1e-6 + probs->num_classes() * kProbClamp)
                    s.violations.push_back({"row sum",
                                            "row " + std::to_string(i) + " sums to " +
                                                std::to_string(sum)});
            }
        }
    }
    return s;
}

// Shared tie-break: prefer the class annotated more often overall, then
// the lowest class index.
inline int break_tie(const AnnotationTable& table, const std::vector<int>& tied) {
    const auto& totals = table.class_totals();
    int best = tied.front();
    for (int c : tied)
        if (totals[c] > totals[best]) best = c;
    return best;
}

inline std::vector<int> majority_vote(const AnnotationTable& table) {
    const int n = table.num_examples();
    const int k = table.num_classes();
    std::vector<int> out(n);
    std::vector<int> counts(k);
    for (int i = 0; i < n; ++i) {
        std::fill(counts.begin(), counts.end(), 0);
        for (const auto& e : table.of_example(i)) counts[e.label]++;
        const int top = *std::max_element(counts.begin(), counts.end());
        std::vector<int> tied;
        for (int c = 0; c < k; ++c)
            if (counts[c] == top) tied.push_back(c);
        out[i] = tied.size() == 1 ? tied.front() : break_tie(table, tied);
    }
    return out;
}

// argmax of a posterior row; exact ties resolved by the majority-vote rule
inline int select_consensus(const double* posterior, int k, const AnnotationTable& table) {
    for (int c = 0; c < k; ++c)
        if (!std::isfinite(posterior[c]))
            throw std::domain_error("select_consensus: non-finite posterior value");
    const double top = *std::max_element(posterior, posterior + k);
    std::vector<int> tied;
    for (int c = 0; c < k; ++c)
        if (posterior[c] == top) tied.push_back(c);
    return tied.size() == 1 ? tied.front() : break_tie(table, tied);
}

inline int select_consensus(const std::vector<double>& posterior, const AnnotationTable& table) {
    return select_consensus(posterior.data(), int(posterior.size()), table);
}

}  // namespace crowdlabel
