#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "styloguard/vocabulary.hpp"

namespace styloguard {

// One-vs-rest positive Winnow over binarized (presence) features. Mistake
// driven: a false negative multiplies the active weights by alpha, a false
// positive by beta. All weights stay strictly positive for beta > 0.
struct WinnowModel {
    std::vector<std::string> classes;
    std::vector<std::vector<double>> weights;  // [class][term], init 1.0
    double alpha = 2.0;
    double beta = 0.5;
    double theta = 0.0;  // defaults to V at train time
    uint64_t vocab_hash = 0;
};

struct WinnowOptions {
    double alpha = 2.0;
    double beta = 0.5;
    double theta = 0.0;  // 0 -> use vocabulary size
    size_t epochs = 10;
};

inline WinnowModel winnow_train(const std::vector<TokenCountVector>& vectors,
                                const std::vector<uint32_t>& labels,
                                const std::vector<std::string>& classes, size_t vocab_size,
                                const WinnowOptions& opts = {}) {
    WinnowModel m;
    m.classes = classes;
    m.alpha = opts.alpha;
    m.beta = opts.beta;
    m.theta = opts.theta > 0 ? opts.theta : static_cast<double>(vocab_size);
    m.weights.assign(classes.size(), std::vector<double>(vocab_size, 1.0));

    for (size_t epoch = 0; epoch < opts.epochs; ++epoch) {
        for (size_t i = 0; i < vectors.size(); ++i) {  // fixed manifest order
            for (size_t c = 0; c < classes.size(); ++c) {
                double sum = 0;
                for (const auto& [t, n] : vectors[i].counts) sum += m.weights[c][t];
                const bool fired = sum >= m.theta;
                const bool positive = labels[i] == c;
                if (positive && !fired) {
                    for (const auto& [t, n] : vectors[i].counts) m.weights[c][t] *= m.alpha;
                } else if (!positive && fired) {
                    for (const auto& [t, n] : vectors[i].counts) m.weights[c][t] *= m.beta;
                }
            }
        }
    }
    return m;
}

struct WinnowPrediction {
    uint32_t label = 0;
    std::vector<double> scores;  // active-weight sums per class
};

inline WinnowPrediction winnow_classify(const WinnowModel& m, const TokenCountVector& v) {
    WinnowPrediction out;
    out.scores.assign(m.classes.size(), 0.0);
    for (const auto& [t, n] : v.counts) {
        if (t >= m.weights[0].size()) throw std::runtime_error("winnow_classify: index out of vocabulary");
        for (size_t c = 0; c < m.classes.size(); ++c) out.scores[c] += m.weights[c][t];
    }
    for (size_t c = 1; c < m.classes.size(); ++c)
        if (out.scores[c] > out.scores[out.label]) out.label = static_cast<uint32_t>(c);
    return out;
}

inline nlohmann::json winnow_to_json(const WinnowModel& m, const Vocabulary& vocab) {
    return {{"kind", "winnow"},
            {"version", 1},
            {"vocab_hash", hex64(m.vocab_hash)},
            {"params",
             {{"classes", m.classes},
              {"alpha", m.alpha},
              {"beta", m.beta},
              {"theta", m.theta},
              {"weights", m.weights},
              {"terms", vocab.terms},
              {"min_df", vocab.min_document_frequency}}}};
}

inline std::pair<WinnowModel, Vocabulary> winnow_from_json(const nlohmann::json& j) {
    if (j.at("kind") != "winnow") throw std::runtime_error("model file is not a winnow model");
    WinnowModel m;
    const auto& p = j.at("params");
    m.classes = p.at("classes").get<std::vector<std::string>>();
    m.alpha = p.at("alpha").get<double>();
    m.beta = p.at("beta").get<double>();
    m.theta = p.at("theta").get<double>();
    m.weights = p.at("weights").get<std::vector<std::vector<double>>>();
    Vocabulary v;
    v.terms = p.at("terms").get<std::vector<std::string>>();
    v.min_document_frequency = p.at("min_df").get<uint32_t>();
    for (uint32_t i = 0; i < v.terms.size(); ++i) v.index.emplace(v.terms[i], i);
    m.vocab_hash = v.content_hash();
    return {std::move(m), std::move(v)};
}

}  // namespace styloguard
