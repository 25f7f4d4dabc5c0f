#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "crowdlabel/dataset.hpp"
#include "crowdlabel/rng.hpp"

namespace crowdlabel {

// How many annotations each example receives.
struct CountSpec {
    enum class Kind { Fixed, Uniform };
    Kind kind = Kind::Fixed;
    int fixed = 1;
    int lo = 1, hi = 1;

    static CountSpec fixed_count(int c) { return {Kind::Fixed, c, c, c}; }
    static CountSpec uniform_range(int lo, int hi) { return {Kind::Uniform, lo, lo, hi}; }
};

// Distribution of per-annotator accuracies.
struct AccuracySpec {
    enum class Kind { Uniform, Beta, Explicit };
    Kind kind = Kind::Uniform;
    double lo = 0.5, hi = 1.0;  // Uniform
    double a = 2.0, b = 2.0;    // Beta
    std::vector<double> values; // Explicit

    static AccuracySpec uniform_range(double lo, double hi) {
        AccuracySpec s;
        s.kind = Kind::Uniform;
        s.lo = lo;
        s.hi = hi;
        return s;
    }
    static AccuracySpec beta(double a, double b) {
        AccuracySpec s;
        s.kind = Kind::Beta;
        s.a = a;
        s.b = b;
        return s;
    }
    static AccuracySpec explicit_list(std::vector<double> v) {
        AccuracySpec s;
        s.kind = Kind::Explicit;
        s.values = std::move(v);
        return s;
    }
};

enum class NoiseModel {
    Symmetric,  // wrong mass spread uniformly over the other classes
    Confusion,  // random row-stochastic confusion matrix with given diagonal
};

struct SimConfig {
    int n = 2000;
    int num_classes = 10;
    int m = 50;
    std::vector<double> class_marginal;  // empty = uniform
    CountSpec annotations_per_example = CountSpec::uniform_range(1, 3);
    AccuracySpec annotator_accuracy = AccuracySpec::uniform_range(0.35, 0.95);
    NoiseModel noise_model = NoiseModel::Symmetric;
    double model_accuracy = 0.85;
    double model_sharpness = 1.0;
    std::uint64_t seed = 0;
};

struct SimDataset {
    AnnotationTable table;
    std::vector<int> truth;
    ProbMatrix probs;
    std::vector<double> annotator_accuracy;       // configured parameter
    std::vector<double> realized_annotator_accuracy;
    SimConfig config;
};

namespace sim_detail {

inline int draw_class(Rng& rng, const std::vector<double>& marginal) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t c = 0; c < marginal.size(); ++c) {
        acc += marginal[c];
        if (u < acc) return int(c);
    }
    return int(marginal.size()) - 1;
}

// Calibrate the true-class logit boost by bisection on a separate
// calibration draw so argmax accuracy hits the target.
inline double calibrate_boost(std::uint64_t seed, int k, double target) {
    constexpr int kCalibration = 20000;
    Rng rng(seed ^ 0x5ca1ab1e00000001ULL);
    std::vector<double> noise(std::size_t(kCalibration) * k);
    for (auto& z : noise) z = rng.normal();
    auto accuracy_at = [&](double boost) {
        int correct = 0;
        for (int t = 0; t < kCalibration; ++t) {
            const double* z = noise.data() + std::size_t(t) * k;
            // true class fixed at 0 by symmetry
            double best_other = z[1];
            for (int c = 2; c < k; ++c) best_other = std::max(best_other, z[c]);
            if (z[0] + boost > best_other) correct++;
        }
        return double(correct) / kCalibration;
    };
    double lo = 0.0, hi = 20.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (accuracy_at(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace sim_detail

// Deterministic synthetic dataset: ground truth, annotators of known
// accuracy, and a simulated classifier whose argmax accuracy is
// calibrated to the configured target.
inline SimDataset simulate(const SimConfig& config) {
    const int n = config.n;
    const int k = config.num_classes;
    const int m = config.m;
    if (n <= 0 || k < 2 || m <= 0) throw std::invalid_argument("simulate: bad sizes");
    const int max_count = config.annotations_per_example.kind == CountSpec::Kind::Fixed
                              ? config.annotations_per_example.fixed
                              : config.annotations_per_example.hi;
    if (max_count > m)
        throw std::invalid_argument("simulate: annotations_per_example exceeds annotator count");
    if (config.model_accuracy <= 1.0 / k || config.model_accuracy >= 1.0)
        throw std::invalid_argument("simulate: model_accuracy must be in (1/K, 1)");
    if (config.model_sharpness <= 0.0)
        throw std::invalid_argument("simulate: model_sharpness must be positive");

    std::vector<double> marginal = config.class_marginal;
    if (marginal.empty()) marginal.assign(k, 1.0 / k);
    if (int(marginal.size()) != k)
        throw std::invalid_argument("simulate: class_marginal size mismatch");

    Rng rng(config.seed);

    // ground truth
    std::vector<int> truth(n);
    for (int i = 0; i < n; ++i) truth[i] = sim_detail::draw_class(rng, marginal);

    // annotator accuracies
    std::vector<double> acc(m);
    switch (config.annotator_accuracy.kind) {
        case AccuracySpec::Kind::Uniform:
            for (int j = 0; j < m; ++j)
                acc[j] = config.annotator_accuracy.lo +
                         (config.annotator_accuracy.hi - config.annotator_accuracy.lo) *
                             rng.uniform();
            break;
        case AccuracySpec::Kind::Beta:
            for (int j = 0; j < m; ++j)
                acc[j] = rng.beta(config.annotator_accuracy.a, config.annotator_accuracy.b);
            break;
        case AccuracySpec::Kind::Explicit:
            if (int(config.annotator_accuracy.values.size()) != m)
                throw std::invalid_argument("simulate: explicit accuracy list size mismatch");
            acc = config.annotator_accuracy.values;
            break;
    }

    // per-annotator confusion rows (confusion mode only)
    std::vector<std::vector<double>> confusion;
    if (config.noise_model == NoiseModel::Confusion) {
        confusion.assign(m, std::vector<double>(std::size_t(k) * k, 0.0));
        for (int j = 0; j < m; ++j) {
            for (int c = 0; c < k; ++c) {
                double* row = confusion[j].data() + std::size_t(c) * k;
                double sum = 0.0;
                for (int l = 0; l < k; ++l) {
                    if (l == c) continue;
                    row[l] = rng.gamma(1.0);
                    sum += row[l];
                }
                row[c] = acc[j];
                const double off_mass = 1.0 - acc[j];
                for (int l = 0; l < k; ++l)
                    if (l != c) row[l] = sum > 0.0 ? off_mass * row[l] / sum : off_mass / (k - 1);
            }
        }
    }

    // annotations
    std::vector<Annotation> entries;
    std::vector<int> pool(m);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < n; ++i) {
        int count = config.annotations_per_example.kind == CountSpec::Kind::Fixed
                        ? config.annotations_per_example.fixed
                        : config.annotations_per_example.lo +
                              int(rng.uniform_int(std::uint64_t(
                                  config.annotations_per_example.hi -
                                  config.annotations_per_example.lo + 1)));
        // partial Fisher-Yates: first `count` entries are the chosen subset
        for (int t = 0; t < count; ++t) {
            const int swap = t + int(rng.uniform_int(std::uint64_t(m - t)));
            std::swap(pool[t], pool[swap]);
        }
        for (int t = 0; t < count; ++t) {
            const int j = pool[t];
            int label;
            if (config.noise_model == NoiseModel::Symmetric) {
                if (rng.uniform() < acc[j]) {
                    label = truth[i];
                } else {
                    label = int(rng.uniform_int(std::uint64_t(k - 1)));
                    if (label >= truth[i]) label++;
                }
            } else {
                const double* row = confusion[j].data() + std::size_t(truth[i]) * k;
                const double u = rng.uniform();
                double cum = 0.0;
                label = k - 1;
                for (int l = 0; l < k; ++l) {
                    cum += row[l];
                    if (u < cum) {
                        label = l;
                        break;
                    }
                }
            }
            entries.push_back({i, j, label});
        }
    }

    // simulated classifier probabilities
    const double boost = sim_detail::calibrate_boost(config.seed, k, config.model_accuracy);
    std::vector<double> probs(std::size_t(n) * k);
    for (int i = 0; i < n; ++i) {
        double* row = probs.data() + std::size_t(i) * k;
        double mx = -1e300;
        for (int c = 0; c < k; ++c) {
            row[c] = rng.normal() + (c == truth[i] ? boost : 0.0);
            mx = std::max(mx, row[c]);
        }
        double sum = 0.0;
        for (int c = 0; c < k; ++c) {
            row[c] = std::exp(config.model_sharpness * (row[c] - mx));
            sum += row[c];
        }
        for (int c = 0; c < k; ++c) row[c] /= sum;
    }

    AnnotationTable table(n, k, m, std::move(entries));
    std::vector<double> realized(m, 0.0);
    for (int j = 0; j < m; ++j) {
        int correct = 0;
        for (const auto& e : table.of_annotator(j))
            if (e.label == truth[e.example]) correct++;
        realized[j] = table.labels_by(j) > 0 ? double(correct) / table.labels_by(j) : 0.0;
    }
    return SimDataset{std::move(table), std::move(truth),
                      ProbMatrix(n, k, std::move(probs)), std::move(acc), std::move(realized),
                      config};
}

// Named regimes mirroring the benchmark dataset shapes, at desk scale.
inline SimConfig regime_preset(const std::string& name) {
    SimConfig c;
    if (name == "hardest") {
        c.n = 2000;
        c.num_classes = 10;
        c.m = 50;
        c.annotations_per_example = CountSpec::uniform_range(1, 3);
        c.annotator_accuracy = AccuracySpec::uniform_range(0.35, 0.95);
        c.model_accuracy = 0.85;
    } else if (name == "uniform") {
        c.n = 2000;
        c.num_classes = 10;
        c.m = 60;
        c.annotations_per_example = CountSpec::uniform_range(1, 5);
        c.annotator_accuracy = AccuracySpec::uniform_range(0.6, 0.98);
        c.model_accuracy = 0.85;
    } else if (name == "complete") {
        c.n = 500;
        c.num_classes = 10;
        c.m = 120;
        c.annotations_per_example = CountSpec::fixed_count(50);
        c.annotator_accuracy = AccuracySpec::uniform_range(0.6, 0.95);
        c.model_accuracy = 0.85;
    } else {
        throw std::invalid_argument("regime_preset: unknown name '" + name + "'");
    }
    return c;
}

}  // namespace crowdlabel
