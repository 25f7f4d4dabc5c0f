#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "crowdlabel/dataset.hpp"
#include "crowdlabel/dawid_skene.hpp"

namespace crowdlabel {

struct GladConfig {
    int max_iter = 50;
    double tol = 1e-4;            // observed log-likelihood change
    int m_step_iters = 25;        // inner gradient-ascent steps
    double prior_strength = 1.0;  // precision of the Gaussian penalties
};

struct GladModel {
    std::vector<double> alpha;     // annotator ability
    std::vector<double> log_beta;  // per-example log-difficulty; beta = exp(log_beta) > 0
    ProbMatrix posterior;
    std::vector<double> prior;
    int iterations = 0;
    // observed-data log-likelihood plus the Gaussian penalty terms, per EM
    // iteration; only this penalized sequence is non-decreasing
    std::vector<double> log_likelihood;
};

namespace glad_detail {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log sigma(ab) and log((1-sigma(ab))/(K-1)) via log1p for stability
inline double log_term(double ab, bool match, int k) {
    const double log_sig =
        ab >= 0.0 ? -std::log1p(std::exp(-ab)) : ab - std::log1p(std::exp(ab));
    if (match) return log_sig;
    return log_sig - ab - std::log(double(k - 1));
}

// E-step with log-sum-exp; returns the observed-data log-likelihood.
inline double e_step(const AnnotationTable& table, const std::vector<double>& alpha,
                     const std::vector<double>& log_beta, const std::vector<double>& prior,
                     std::vector<double>& posterior) {
    const int n = table.num_examples();
    const int k = table.num_classes();
    double ll = 0.0;
    std::vector<double> logp(k);
    for (int i = 0; i < n; ++i) {
        const double beta = std::exp(log_beta[i]);
        for (int c = 0; c < k; ++c) logp[c] = std::log(prior[c]);
        for (const auto& e : table.of_example(i)) {
            const double ab = alpha[e.annotator] * beta;
            for (int c = 0; c < k; ++c) logp[c] += log_term(ab, e.label == c, k);
        }
        const double mx = *std::max_element(logp.begin(), logp.end());
        double sum = 0.0;
        for (int c = 0; c < k; ++c) sum += std::exp(logp[c] - mx);
        ll += mx + std::log(sum);
        double* row = posterior.data() + std::size_t(i) * k;
        for (int c = 0; c < k; ++c) row[c] = std::exp(logp[c] - mx) / sum;
    }
    return ll;
}

// Expected complete-data log-likelihood plus Gaussian penalties
// alpha_j ~ N(1, 1/strength), log beta_i ~ N(1, 1/strength).
// Per annotation the class sum collapses to
//   r * log sigma + (1 - r) * (log(1 - sigma) - log(K-1))
// with r the responsibility of the annotated class.
inline double objective(const AnnotationTable& table, const std::vector<double>& alpha,
                        const std::vector<double>& log_beta,
                        const std::vector<double>& posterior, double strength) {
    const int k = table.num_classes();
    double obj = 0.0;
    for (const auto& e : table.entries()) {
        const double ab = alpha[e.annotator] * std::exp(log_beta[e.example]);
        const double r = posterior[std::size_t(e.example) * k + e.label];
        obj += r * log_term(ab, true, k) + (1.0 - r) * log_term(ab, false, k);
    }
    for (double a : alpha) obj -= 0.5 * strength * (a - 1.0) * (a - 1.0);
    for (double lb : log_beta) obj -= 0.5 * strength * (lb - 1.0) * (lb - 1.0);
    return obj;
}

// Analytic gradients of the objective wrt alpha and log beta.
inline void gradients(const AnnotationTable& table, const std::vector<double>& alpha,
                      const std::vector<double>& log_beta, const std::vector<double>& posterior,
                      double strength, std::vector<double>& g_alpha,
                      std::vector<double>& g_log_beta) {
    const int k = table.num_classes();
    g_alpha.assign(alpha.size(), 0.0);
    g_log_beta.assign(log_beta.size(), 0.0);
    // fixed iteration order over entries keeps the reduction deterministic
    for (const auto& e : table.entries()) {
        const double beta = std::exp(log_beta[e.example]);
        const double ab = alpha[e.annotator] * beta;
        const double r = posterior[std::size_t(e.example) * k + e.label];
        const double delta = r - sigmoid(ab);
        g_alpha[e.annotator] += beta * delta;
        g_log_beta[e.example] += alpha[e.annotator] * beta * delta;
    }
    for (std::size_t j = 0; j < alpha.size(); ++j) g_alpha[j] -= strength * (alpha[j] - 1.0);
    for (std::size_t i = 0; i < log_beta.size(); ++i)
        g_log_beta[i] -= strength * (log_beta[i] - 1.0);
}

// Full-batch gradient ascent with backtracking step halving.
inline void m_step(const AnnotationTable& table, std::vector<double>& alpha,
                   std::vector<double>& log_beta, const std::vector<double>& posterior,
                   const GladConfig& config) {
    std::vector<double> g_alpha, g_log_beta, trial_alpha, trial_log_beta;
    double obj = objective(table, alpha, log_beta, posterior, config.prior_strength);
    double step = 0.1;
    for (int it = 0; it < config.m_step_iters; ++it) {
        gradients(table, alpha, log_beta, posterior, config.prior_strength, g_alpha, g_log_beta);
        double grad_norm = 0.0;
        for (double g : g_alpha) grad_norm += g * g;
        for (double g : g_log_beta) grad_norm += g * g;
        if (grad_norm < 1e-16) break;

        bool accepted = false;
        for (int halving = 0; halving < 30; ++halving) {
            trial_alpha = alpha;
            trial_log_beta = log_beta;
            for (std::size_t j = 0; j < alpha.size(); ++j) trial_alpha[j] += step * g_alpha[j];
            for (std::size_t i = 0; i < log_beta.size(); ++i)
                trial_log_beta[i] += step * g_log_beta[i];
            const double trial_obj =
                objective(table, trial_alpha, trial_log_beta, posterior, config.prior_strength);
            if (trial_obj >= obj - 1e-12) {
                alpha = std::move(trial_alpha);
                log_beta = std::move(trial_log_beta);
                obj = trial_obj;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        step *= 1.5;  // regrow after a successful step
    }
}

}  // namespace glad_detail

// GLAD EM: annotator ability alpha and example log-difficulty, with the
// binary agree-probability sigma(alpha*beta) spread uniformly over the
// K-1 wrong classes. Prior fixed to the empirical annotation marginal.
inline GladModel glad_fit(const AnnotationTable& table, const GladConfig& config = {}) {
    const int n = table.num_examples();
    const int k = table.num_classes();
    if (table.entries().empty()) throw std::invalid_argument("glad_fit: empty table");

    GladModel model{std::vector<double>(table.num_annotators(), 1.0),
                    std::vector<double>(n, 0.0),
                    ProbMatrix(n, k, std::vector<double>(std::size_t(n) * k, 0.0), false),
                    empirical_label_marginal(table),
                    0,
                    {}};

    std::vector<double> posterior(std::size_t(n) * k, 0.0);
    double prev_ll = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < config.max_iter; ++iter) {
        const double ll =
            glad_detail::e_step(table, model.alpha, model.log_beta, model.prior, posterior);
        // add the Gaussian penalties the M-step maximizes against, so the
        // recorded sequence matches the monotone MAP objective
        double log_prior = 0.0;
        for (double a : model.alpha)
            log_prior -= 0.5 * config.prior_strength * (a - 1.0) * (a - 1.0);
        for (double lb : model.log_beta)
            log_prior -= 0.5 * config.prior_strength * (lb - 1.0) * (lb - 1.0);
        model.log_likelihood.push_back(ll + log_prior);
        model.iterations = iter + 1;
        if (std::abs(ll + log_prior - prev_ll) < config.tol) break;
        prev_ll = ll + log_prior;
        glad_detail::m_step(table, model.alpha, model.log_beta, posterior, config);
    }
    // final E-step so the posterior reflects the last parameter update
    glad_detail::e_step(table, model.alpha, model.log_beta, model.prior, posterior);
    model.posterior = ProbMatrix(n, k, std::move(posterior), /*clamp=*/false);
    return model;
}

inline std::vector<double> glad_consensus_quality(const GladModel& model,
                                                  const std::vector<int>& consensus) {
    std::vector<double> q(consensus.size());
    for (std::size_t i = 0; i < consensus.size(); ++i)
        q[i] = model.posterior.at(int(i), consensus[i]);
    return q;
}

// a_j = alpha_j, unbounded; consumed rank-wise downstream
inline std::vector<double> glad_annotator_quality(const GladModel& model) {
    return model.alpha;
}

}  // namespace crowdlabel
