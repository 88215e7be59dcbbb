#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "styloguard/vocabulary.hpp"

namespace styloguard {

// Multinomial Naive Bayes with Laplace smoothing:
//   prior(c) = docs_c / total,  p(w|c) = (count_wc + a) / (total_c + a V)
struct NBModel {
    std::vector<std::string> classes;
    std::vector<double> log_priors;             // per class
    std::vector<std::vector<double>> log_cond;  // [class][term]
    double alpha = 1.0;
    uint64_t vocab_hash = 0;
};

inline NBModel nb_train(const std::vector<TokenCountVector>& vectors,
                        const std::vector<uint32_t>& labels,
                        const std::vector<std::string>& classes, size_t vocab_size,
                        double alpha = 1.0) {
    NBModel m;
    m.classes = classes;
    m.alpha = alpha;
    const size_t C = classes.size();
    std::vector<double> doc_counts(C, 0.0);
    std::vector<std::vector<double>> term_counts(C, std::vector<double>(vocab_size, 0.0));
    std::vector<double> totals(C, 0.0);
    for (size_t i = 0; i < vectors.size(); ++i) {
        const uint32_t c = labels[i];
        doc_counts[c] += 1;
        for (const auto& [t, n] : vectors[i].counts) {
            term_counts[c][t] += n;
            totals[c] += n;
        }
    }
    m.log_priors.resize(C);
    m.log_cond.resize(C);
    for (size_t c = 0; c < C; ++c) {
        if (doc_counts[c] == 0)
            throw std::runtime_error("nb_train: class '" + classes[c] + "' has no documents");
        m.log_priors[c] = std::log(doc_counts[c] / static_cast<double>(vectors.size()));
        m.log_cond[c].resize(vocab_size);
        const double denom = totals[c] + alpha * static_cast<double>(vocab_size);
        for (size_t t = 0; t < vocab_size; ++t)
            m.log_cond[c][t] = std::log((term_counts[c][t] + alpha) / denom);
    }
    return m;
}

struct NBPrediction {
    uint32_t label = 0;
    std::vector<double> log_posteriors;  // unnormalized, per class
};

// argmax_c [log prior + sum count * log p(w|c)]; ties go to the earlier
// class in manifest order. An empty vector classifies by prior alone.
inline NBPrediction nb_classify(const NBModel& m, const TokenCountVector& v) {
    NBPrediction out;
    out.log_posteriors = m.log_priors;
    for (const auto& [t, n] : v.counts) {
        if (t >= m.log_cond[0].size()) throw std::runtime_error("nb_classify: index out of vocabulary");
        for (size_t c = 0; c < m.classes.size(); ++c)
            out.log_posteriors[c] += static_cast<double>(n) * m.log_cond[c][t];
    }
    for (size_t c = 1; c < m.classes.size(); ++c)
        if (out.log_posteriors[c] > out.log_posteriors[out.label]) out.label = static_cast<uint32_t>(c);
    return out;
}

inline nlohmann::json nb_to_json(const NBModel& m, const Vocabulary& vocab) {
    return {{"kind", "nb"},
            {"version", 1},
            {"vocab_hash", hex64(m.vocab_hash)},
            {"params",
             {{"classes", m.classes},
              {"alpha", m.alpha},
              {"log_priors", m.log_priors},
              {"log_cond", m.log_cond},
              {"terms", vocab.terms},
              {"min_df", vocab.min_document_frequency}}}};
}

inline std::pair<NBModel, Vocabulary> nb_from_json(const nlohmann::json& j) {
    if (j.at("kind") != "nb") throw std::runtime_error("model file is not a naive bayes model");
    NBModel m;
    const auto& p = j.at("params");
    m.classes = p.at("classes").get<std::vector<std::string>>();
    m.alpha = p.at("alpha").get<double>();
    m.log_priors = p.at("log_priors").get<std::vector<double>>();
    m.log_cond = p.at("log_cond").get<std::vector<std::vector<double>>>();
    Vocabulary v;
    v.terms = p.at("terms").get<std::vector<std::string>>();
    v.min_document_frequency = p.at("min_df").get<uint32_t>();
    for (uint32_t i = 0; i < v.terms.size(); ++i) v.index.emplace(v.terms[i], i);
    m.vocab_hash = v.content_hash();
    return {std::move(m), std::move(v)};
}

}  // namespace styloguard
