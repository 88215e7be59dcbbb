#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "styloguard/vocabulary.hpp"

namespace styloguard {

// Multinomial logistic regression ("maximum entropy") trained by full-batch
// gradient descent with backtracking step halving. Deterministic: no
// stochastic shuffling, weights start at zero.
struct MaxEntModel {
    std::vector<std::string> classes;
    std::vector<std::vector<double>> weights;  // [class][term..., bias]
    double lambda = 1e-4;
    std::vector<double> loss_trace;            // per accepted step
    uint64_t vocab_hash = 0;
};

namespace detail {

inline void maxent_logits(const MaxEntModel& m, const TokenCountVector& v,
                          std::vector<double>& out) {
    const size_t C = m.classes.size();
    const size_t V = m.weights[0].size() - 1;
    out.assign(C, 0.0);
    for (size_t c = 0; c < C; ++c) out[c] = m.weights[c][V];  // bias
    for (const auto& [t, n] : v.counts)
        for (size_t c = 0; c < C; ++c) out[c] += m.weights[c][t] * static_cast<double>(n);
}

inline void softmax_inplace(std::vector<double>& z) {
    double mx = z[0];
    for (double v : z) mx = std::max(mx, v);
    double sum = 0;
    for (double& v : z) { v = std::exp(v - mx); sum += v; }
    for (double& v : z) v /= sum;
}

// mean cross-entropy + (lambda/2) |W|^2, bias excluded from the penalty
inline double maxent_loss(const MaxEntModel& m, const std::vector<TokenCountVector>& xs,
                          const std::vector<uint32_t>& ys) {
    const size_t V = m.weights[0].size() - 1;
    double loss = 0;
    std::vector<double> z;
    for (size_t i = 0; i < xs.size(); ++i) {
        maxent_logits(m, xs[i], z);
        double mx = z[0];
        for (double v : z) mx = std::max(mx, v);
        double lse = 0;
        for (double v : z) lse += std::exp(v - mx);
        loss += (mx + std::log(lse)) - z[ys[i]];
    }
    loss /= static_cast<double>(xs.size());
    double reg = 0;
    for (const auto& row : m.weights)
        for (size_t t = 0; t < V; ++t) reg += row[t] * row[t];
    return loss + 0.5 * m.lambda * reg;
}

inline void maxent_gradient(const MaxEntModel& m, const std::vector<TokenCountVector>& xs,
                            const std::vector<uint32_t>& ys,
                            std::vector<std::vector<double>>& grad) {
    const size_t C = m.classes.size();
    const size_t V = m.weights[0].size() - 1;
    grad.assign(C, std::vector<double>(V + 1, 0.0));
    std::vector<double> p;
    for (size_t i = 0; i < xs.size(); ++i) {
        maxent_logits(m, xs[i], p);
        softmax_inplace(p);
        for (size_t c = 0; c < C; ++c) {
            const double r = p[c] - (c == ys[i] ? 1.0 : 0.0);
            for (const auto& [t, n] : xs[i].counts) grad[c][t] += r * static_cast<double>(n);
            grad[c][V] += r;
        }
    }
    const double inv = 1.0 / static_cast<double>(xs.size());
    for (size_t c = 0; c < C; ++c) {
        for (size_t t = 0; t < V; ++t) grad[c][t] = grad[c][t] * inv + m.lambda * m.weights[c][t];
        grad[c][V] *= inv;
    }
}

}  // namespace detail

struct MaxEntOptions {
    double lambda = 1e-4;
    double initial_lr = 0.5;
    size_t max_epochs = 200;
    double tol = 1e-6;
};

inline MaxEntModel maxent_train(const std::vector<TokenCountVector>& vectors,
                                const std::vector<uint32_t>& labels,
                                const std::vector<std::string>& classes, size_t vocab_size,
                                const MaxEntOptions& opts = {}) {
    if (classes.size() < 2) throw std::runtime_error("maxent_train: needs at least 2 classes");
    MaxEntModel m;
    m.classes = classes;
    m.lambda = opts.lambda;
    m.weights.assign(classes.size(), std::vector<double>(vocab_size + 1, 0.0));

    double lr = opts.initial_lr;
    double loss = detail::maxent_loss(m, vectors, labels);
    if (!std::isfinite(loss)) throw std::runtime_error("maxent_train: non-finite initial loss");
    m.loss_trace.push_back(loss);
    std::vector<std::vector<double>> grad;
    for (size_t epoch = 0; epoch < opts.max_epochs; ++epoch) {
        detail::maxent_gradient(m, vectors, labels, grad);
        MaxEntModel trial = m;
        double trial_loss = 0;
        bool accepted = false;
        for (int halvings = 0; halvings < 60; ++halvings) {
            for (size_t c = 0; c < classes.size(); ++c)
                for (size_t t = 0; t < vocab_size + 1; ++t)
                    trial.weights[c][t] = m.weights[c][t] - lr * grad[c][t];
            trial_loss = detail::maxent_loss(trial, vectors, labels);
            if (!std::isfinite(trial_loss))
                throw std::runtime_error("maxent_train: non-finite loss at epoch " +
                                         std::to_string(epoch));
            if (trial_loss <= loss + 1e-12) { accepted = true; break; }
            lr *= 0.5;
        }
        if (!accepted) break;  // no improving step representable
        m.weights.swap(trial.weights);
        const double rel = std::abs(loss - trial_loss) / std::max(std::abs(loss), 1e-12);
        loss = trial_loss;
        m.loss_trace.push_back(loss);
        lr *= 1.2;
        if (rel < opts.tol) break;
    }
    return m;
}

struct MaxEntPrediction {
    uint32_t label = 0;
    std::vector<double> probabilities;
};

inline MaxEntPrediction maxent_classify(const MaxEntModel& m, const TokenCountVector& v) {
    MaxEntPrediction out;
    detail::maxent_logits(m, v, out.probabilities);
    detail::softmax_inplace(out.probabilities);
    for (size_t c = 1; c < m.classes.size(); ++c)
        if (out.probabilities[c] > out.probabilities[out.label])
            out.label = static_cast<uint32_t>(c);
    return out;
}

inline nlohmann::json maxent_to_json(const MaxEntModel& m, const Vocabulary& vocab) {
    return {{"kind", "maxent"},
            {"version", 1},
            {"vocab_hash", hex64(m.vocab_hash)},
            {"params",
             {{"classes", m.classes},
              {"lambda", m.lambda},
              {"weights", m.weights},
              {"loss_trace", m.loss_trace},
              {"terms", vocab.terms},
              {"min_df", vocab.min_document_frequency}}}};
}

inline std::pair<MaxEntModel, Vocabulary> maxent_from_json(const nlohmann::json& j) {
    if (j.at("kind") != "maxent") throw std::runtime_error("model file is not a maxent model");
    MaxEntModel m;
    const auto& p = j.at("params");
    m.classes = p.at("classes").get<std::vector<std::string>>();
    m.lambda = p.at("lambda").get<double>();
    m.weights = p.at("weights").get<std::vector<std::vector<double>>>();
    m.loss_trace = p.at("loss_trace").get<std::vector<double>>();
    Vocabulary v;
    v.terms = p.at("terms").get<std::vector<std::string>>();
    v.min_document_frequency = p.at("min_df").get<uint32_t>();
    for (uint32_t i = 0; i < v.terms.size(); ++i) v.index.emplace(v.terms[i], i);
    m.vocab_hash = v.content_hash();
    return {std::move(m), std::move(v)};
}

}  // namespace styloguard
