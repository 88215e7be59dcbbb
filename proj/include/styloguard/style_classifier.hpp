#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "styloguard/style_schema.hpp"

namespace styloguard {

inline constexpr double kFisherScoreCap = 1e6;

// Per-descriptor Fisher discriminant score plus the training moments used
// for z-scoring. score = Var_between / Var_within over class means; a zero
// within-class variance with separated means is capped, a constant feature
// scores 0 and is excluded from distances.
struct FeatureWeights {
    std::vector<double> scores;
    std::vector<double> means;  // training mean per descriptor
    std::vector<double> stds;   // training std per descriptor (population)
    std::string schema_version = kStyleSchemaVersion;
};

inline FeatureWeights fisher_scores(const std::vector<StyleVector>& train,
                                    const std::vector<uint32_t>& labels, size_t class_count) {
    if (train.empty()) throw std::runtime_error("fisher_scores: empty training set");
    const size_t F = train[0].values.size();
    std::vector<size_t> n_c(class_count, 0);
    for (uint32_t y : labels) ++n_c[y];
    if (class_count < 2) throw std::runtime_error("fisher_scores: needs >= 2 classes");
    for (size_t c = 0; c < class_count; ++c)
        if (n_c[c] < 2)
            throw std::runtime_error("fisher_scores: class " + std::to_string(c) +
                                     " has fewer than 2 samples");

    FeatureWeights w;
    w.scores.assign(F, 0.0);
    w.means.assign(F, 0.0);
    w.stds.assign(F, 0.0);

    std::vector<std::vector<double>> class_mean(class_count, std::vector<double>(F, 0.0));
    std::vector<std::vector<double>> class_m2(class_count, std::vector<double>(F, 0.0));
    for (size_t i = 0; i < train.size(); ++i) {
        const uint32_t c = labels[i];
        for (size_t f = 0; f < F; ++f) {
            const double v = train[i].values[f];
            class_mean[c][f] += v;
            class_m2[c][f] += v * v;
            w.means[f] += v;
            w.stds[f] += v * v;
        }
    }
    const double N = static_cast<double>(train.size());
    for (size_t f = 0; f < F; ++f) {
        w.means[f] /= N;
        const double var = std::max(0.0, w.stds[f] / N - w.means[f] * w.means[f]);
        w.stds[f] = std::sqrt(var);
    }
    for (size_t f = 0; f < F; ++f) {
        double between = 0, within = 0, grand = 0;
        for (size_t c = 0; c < class_count; ++c) {
            const double nc = static_cast<double>(n_c[c]);
            const double mean = class_mean[c][f] / nc;
            grand += mean;
            within += std::max(0.0, class_m2[c][f] / nc - mean * mean);
        }
        grand /= static_cast<double>(class_count);
        for (size_t c = 0; c < class_count; ++c) {
            const double mean = class_mean[c][f] / static_cast<double>(n_c[c]);
            between += (mean - grand) * (mean - grand);
        }
        between /= static_cast<double>(class_count);
        within /= static_cast<double>(class_count);
        if (within > 0) w.scores[f] = between / within;
        else if (between > 0) w.scores[f] = kFisherScoreCap;
        else w.scores[f] = 0.0;
        if (!std::isfinite(w.scores[f])) w.scores[f] = kFisherScoreCap;
    }
    return w;
}

// Score-weighted nearest neighbor over z-scored style vectors.
struct StyleModel {
    FeatureWeights weights;
    std::vector<std::string> classes;
    std::vector<std::vector<double>> train_z;  // z-scored rows
    std::vector<uint32_t> train_labels;
    std::vector<std::string> train_ids;
    size_t k = 1;
};

namespace detail {

inline std::vector<double> z_score(const FeatureWeights& w, const std::vector<double>& v) {
    std::vector<double> z(v.size(), 0.0);
    for (size_t f = 0; f < v.size(); ++f)
        if (w.stds[f] > 0 && w.scores[f] > 0) z[f] = (v[f] - w.means[f]) / w.stds[f];
    return z;
}

}  // namespace detail

inline StyleModel style_train(const std::vector<StyleVector>& train,
                              const std::vector<uint32_t>& labels,
                              const std::vector<std::string>& classes, size_t k = 1) {
    StyleModel m;
    m.weights = fisher_scores(train, labels, classes.size());
    m.classes = classes;
    m.k = k;
    m.train_labels = labels;
    m.train_z.reserve(train.size());
    for (const auto& sv : train) {
        m.train_z.push_back(detail::z_score(m.weights, sv.values));
        m.train_ids.push_back(sv.doc_id);
    }
    return m;
}

struct WnnPrediction {
    uint32_t label = 0;
    std::vector<std::string> neighbor_ids;
    double weighted_distance = 0;
};

// distance(q,t) = sum_f score_f (z_q - z_t)^2 over non-constant features;
// prediction is the nearest neighbor's label (k=1), or the majority of k
// with ties resolved by the smaller distance sum.
inline WnnPrediction wnn_classify(const StyleModel& m, const StyleVector& query) {
    if (query.values.size() != m.weights.scores.size())
        throw std::runtime_error("wnn_classify: query does not match the model schema");
    const std::vector<double> qz = detail::z_score(m.weights, query.values);
    const size_t F = qz.size();

    std::vector<std::pair<double, size_t>> dist(m.train_z.size());
    for (size_t i = 0; i < m.train_z.size(); ++i) {
        double d = 0;
        const auto& t = m.train_z[i];
        for (size_t f = 0; f < F; ++f) {
            if (m.weights.scores[f] <= 0) continue;
            const double diff = qz[f] - t[f];
            d += m.weights.scores[f] * diff * diff;
        }
        dist[i] = {d, i};
    }
    const size_t k = std::min(m.k == 0 ? size_t{1} : m.k, dist.size());
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

    WnnPrediction out;
    std::vector<double> votes(m.classes.size(), 0.0);
    std::vector<double> dist_sum(m.classes.size(), 0.0);
    for (size_t j = 0; j < k; ++j) {
        const uint32_t y = m.train_labels[dist[j].second];
        votes[y] += 1;
        dist_sum[y] += dist[j].first;
        out.neighbor_ids.push_back(m.train_ids[dist[j].second]);
    }
    out.label = 0;
    for (size_t c = 1; c < votes.size(); ++c) {
        if (votes[c] > votes[out.label] ||
            (votes[c] == votes[out.label] && votes[c] > 0 && dist_sum[c] < dist_sum[out.label]))
            out.label = static_cast<uint32_t>(c);
    }
    out.weighted_distance = dist[0].first;
    return out;
}

struct RankedFeature {
    std::string name;
    double score = 0;
    std::vector<double> class_means;
    std::vector<double> class_stderr;
};

// Descriptors sorted by Fisher score, with per-class mean +- standard
// error, the shape of the feature-ranking report.
inline std::vector<RankedFeature> rank_features(const FeatureWeights& weights,
                                                const std::vector<StyleVector>& samples,
                                                const std::vector<uint32_t>& labels,
                                                size_t class_count) {
    const FeatureSchema& schema = FeatureSchema::instance();
    const size_t F = schema.size();
    std::vector<size_t> n_c(class_count, 0);
    for (uint32_t y : labels) ++n_c[y];

    std::vector<RankedFeature> out(F);
    for (size_t f = 0; f < F; ++f) {
        RankedFeature& r = out[f];
        r.name = schema.at(f).name;
        r.score = weights.scores[f];
        r.class_means.assign(class_count, 0.0);
        r.class_stderr.assign(class_count, 0.0);
        for (size_t i = 0; i < samples.size(); ++i)
            r.class_means[labels[i]] += samples[i].values[f];
        for (size_t c = 0; c < class_count; ++c) r.class_means[c] /= static_cast<double>(n_c[c]);
        for (size_t i = 0; i < samples.size(); ++i) {
            const double d = samples[i].values[f] - r.class_means[labels[i]];
            r.class_stderr[labels[i]] += d * d;
        }
        for (size_t c = 0; c < class_count; ++c) {
            const double nc = static_cast<double>(n_c[c]);
            r.class_stderr[c] = nc > 1 ? std::sqrt(r.class_stderr[c] / (nc - 1)) / std::sqrt(nc) : 0.0;
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const RankedFeature& a, const RankedFeature& b) {
        return a.score > b.score;
    });
    return out;
}

inline nlohmann::json style_model_to_json(const StyleModel& m) {
    return {{"kind", "style_knn"},
            {"version", 1},
            {"schema", m.weights.schema_version},
            {"params",
             {{"classes", m.classes},
              {"k", m.k},
              {"scores", m.weights.scores},
              {"means", m.weights.means},
              {"stds", m.weights.stds},
              {"train_z", m.train_z},
              {"train_labels", m.train_labels},
              {"train_ids", m.train_ids}}}};
}

inline StyleModel style_model_from_json(const nlohmann::json& j) {
    if (j.at("kind") != "style_knn") throw std::runtime_error("model file is not a style_knn model");
    if (j.at("schema") != kStyleSchemaVersion)
        throw std::runtime_error("style model schema mismatch");
    StyleModel m;
    const auto& p = j.at("params");
    m.classes = p.at("classes").get<std::vector<std::string>>();
    m.k = p.at("k").get<size_t>();
    m.weights.scores = p.at("scores").get<std::vector<double>>();
    m.weights.means = p.at("means").get<std::vector<double>>();
    m.weights.stds = p.at("stds").get<std::vector<double>>();
    m.train_z = p.at("train_z").get<std::vector<std::vector<double>>>();
    m.train_labels = p.at("train_labels").get<std::vector<uint32_t>>();
    m.train_ids = p.at("train_ids").get<std::vector<std::string>>();
    return m;
}

}  // namespace styloguard
