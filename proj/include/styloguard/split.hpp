#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "styloguard/corpus.hpp"
#include "styloguard/hash.hpp"
#include "styloguard/rng.hpp"

namespace styloguard {

struct SplitPlan {
    uint64_t seed = 0;
    std::map<std::string, std::vector<std::string>> train_ids;  // per class
    std::map<std::string, std::vector<std::string>> test_ids;
    bool fallback_applied = false;

    std::vector<std::string> all_train() const { return flatten(train_ids); }
    std::vector<std::string> all_test() const { return flatten(test_ids); }

  private:
    static std::vector<std::string> flatten(
        const std::map<std::string, std::vector<std::string>>& m) {
        std::vector<std::string> out;
        for (const auto& [cls, ids] : m) out.insert(out.end(), ids.begin(), ids.end());
        return out;
    }
};

namespace detail {

// Per-class shuffle seeded from (seed, class name) so adding a class does
// not perturb the others.
inline std::vector<std::string> shuffled_class_ids(const CorpusManifest& m,
                                                   const std::string& cls, uint64_t seed) {
    std::vector<std::string> ids = m.ids_of_class(cls);
    Rng rng(Rng::derive(seed, fnv1a64(cls)));
    rng.shuffle(ids);
    return ids;
}

}  // namespace detail

// Uniform sampling without replacement, driven solely by the seed. When a
// class cannot supply train+test documents and fallback is enabled, the
// class is split proportionally at the same train:test ratio.
inline SplitPlan stratified_split(const CorpusManifest& manifest, size_t train_per_class,
                                  size_t test_per_class, uint64_t seed,
                                  bool proportional_fallback = false) {
    SplitPlan plan;
    plan.seed = seed;
    for (const auto& cls : manifest.classes) {
        std::vector<std::string> ids = detail::shuffled_class_ids(manifest, cls, seed);
        size_t n_train = train_per_class, n_test = test_per_class;
        if (ids.size() < train_per_class + test_per_class) {
            if (!proportional_fallback)
                throw std::runtime_error(
                    "class '" + cls + "' has " + std::to_string(ids.size()) +
                    " documents, needs " + std::to_string(train_per_class + test_per_class) +
                    " (short by " +
                    std::to_string(train_per_class + test_per_class - ids.size()) + ")");
            n_train = ids.size() * train_per_class / (train_per_class + test_per_class);
            n_test = ids.size() - n_train;
            plan.fallback_applied = true;
        }
        auto& tr = plan.train_ids[cls];
        auto& te = plan.test_ids[cls];
        tr.assign(ids.begin(), ids.begin() + n_train);
        te.assign(ids.begin() + n_train, ids.begin() + n_train + n_test);
        std::sort(tr.begin(), tr.end());
        std::sort(te.begin(), te.end());
    }
    return plan;
}

struct Fold {
    std::vector<std::string> train_ids;
    std::vector<std::string> test_ids;
};

// Class-stratified k-fold partition: every document lands in exactly one
// test fold; per-class fold sizes differ by at most one.
inline std::vector<Fold> kfold(const CorpusManifest& manifest, size_t k, uint64_t seed) {
    if (k < 2) throw std::runtime_error("kfold: k must be >= 2");
    std::vector<Fold> folds(k);
    for (const auto& cls : manifest.classes) {
        std::vector<std::string> ids = detail::shuffled_class_ids(manifest, cls, seed);
        if (ids.size() < k)
            throw std::runtime_error("class '" + cls + "' has fewer documents than k=" +
                                     std::to_string(k));
        const size_t base = ids.size() / k, extra = ids.size() % k;
        size_t pos = 0;
        for (size_t f = 0; f < k; ++f) {
            const size_t take = base + (f < extra ? 1 : 0);
            for (size_t j = 0; j < take; ++j) folds[f].test_ids.push_back(ids[pos + j]);
            for (size_t j = 0; j < ids.size(); ++j)
                if (j < pos || j >= pos + take) folds[f].train_ids.push_back(ids[j]);
            pos += take;
        }
    }
    for (auto& f : folds) {
        std::sort(f.train_ids.begin(), f.train_ids.end());
        std::sort(f.test_ids.begin(), f.test_ids.end());
    }
    return folds;
}

inline nlohmann::json split_plan_to_json(const SplitPlan& p) {
    return {{"seed", p.seed},
            {"fallback_applied", p.fallback_applied},
            {"train", p.train_ids},
            {"test", p.test_ids}};
}

inline SplitPlan split_plan_from_json(const nlohmann::json& j) {
    SplitPlan p;
    p.seed = j.at("seed").get<uint64_t>();
    p.fallback_applied = j.value("fallback_applied", false);
    p.train_ids = j.at("train").get<std::map<std::string, std::vector<std::string>>>();
    p.test_ids = j.at("test").get<std::map<std::string, std::vector<std::string>>>();
    return p;
}

}  // namespace styloguard
