#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace styloguard {

struct ConfusionMatrix {
    std::vector<std::string> classes;
    std::vector<std::vector<uint64_t>> counts;  // [actual][predicted]

    explicit ConfusionMatrix(std::vector<std::string> cls = {}) : classes(std::move(cls)) {
        counts.assign(classes.size(), std::vector<uint64_t>(classes.size(), 0));
    }

    void add(size_t actual, size_t predicted, uint64_t n = 1) { counts[actual][predicted] += n; }

    void merge(const ConfusionMatrix& other) {
        for (size_t a = 0; a < counts.size(); ++a)
            for (size_t p = 0; p < counts.size(); ++p) counts[a][p] += other.counts[a][p];
    }

    uint64_t total() const {
        uint64_t t = 0;
        for (const auto& row : counts)
            for (uint64_t v : row) t += v;
        return t;
    }

    uint64_t row_sum(size_t a) const {
        uint64_t t = 0;
        for (uint64_t v : counts[a]) t += v;
        return t;
    }

    double accuracy() const {
        uint64_t diag = 0;
        for (size_t i = 0; i < counts.size(); ++i) diag += counts[i][i];
        const uint64_t t = total();
        return t ? static_cast<double>(diag) / static_cast<double>(t) : 0.0;
    }

    // row-normalized percentage view of the counts
    std::vector<std::vector<double>> percent_view() const {
        std::vector<std::vector<double>> out(counts.size(),
                                             std::vector<double>(counts.size(), 0.0));
        for (size_t a = 0; a < counts.size(); ++a) {
            const uint64_t rs = row_sum(a);
            if (rs == 0) continue;
            for (size_t p = 0; p < counts.size(); ++p)
                out[a][p] = 100.0 * static_cast<double>(counts[a][p]) / static_cast<double>(rs);
        }
        return out;
    }
};

struct ClassMetrics {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    double specificity = 0;  // true negatives over all negatives
    bool degenerate = false; // a zero denominator was flagged and reported as 0
};

struct MetricSet {
    double accuracy = 0;
    std::vector<ClassMetrics> per_class;
    double macro_precision = 0;
    double macro_recall = 0;
    double macro_f1 = 0;
    std::vector<double> fold_accuracies;
    double fold_accuracy_mean = 0;
    double fold_accuracy_std = 0;
};

// Standard definitions; specificity is reported in its own column so the
// negative-rate reading of precision is also available.
inline ClassMetrics metrics(const ConfusionMatrix& cm, size_t positive) {
    if (cm.total() == 0) throw std::runtime_error("metrics: empty confusion matrix");
    const size_t C = cm.classes.size();
    uint64_t tp = cm.counts[positive][positive], fn = 0, fp = 0, tn = 0;
    for (size_t p = 0; p < C; ++p)
        if (p != positive) fn += cm.counts[positive][p];
    for (size_t a = 0; a < C; ++a) {
        if (a == positive) continue;
        fp += cm.counts[a][positive];
        for (size_t p = 0; p < C; ++p)
            if (p != positive) tn += cm.counts[a][p];
    }
    ClassMetrics m;
    if (tp + fn > 0) m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    else m.degenerate = true;
    if (tp + fp > 0) m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    else m.degenerate = true;
    if (tn + fp > 0) m.specificity = static_cast<double>(tn) / static_cast<double>(tn + fp);
    m.f1 = (m.precision + m.recall) > 0
               ? 2 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

inline MetricSet metric_set(const ConfusionMatrix& cm,
                            const std::vector<double>& fold_accuracies = {}) {
    MetricSet s;
    s.accuracy = cm.accuracy();
    for (size_t c = 0; c < cm.classes.size(); ++c) {
        s.per_class.push_back(metrics(cm, c));
        s.macro_precision += s.per_class.back().precision;
        s.macro_recall += s.per_class.back().recall;
        s.macro_f1 += s.per_class.back().f1;
    }
    const double C = static_cast<double>(cm.classes.size());
    s.macro_precision /= C;
    s.macro_recall /= C;
    s.macro_f1 /= C;
    s.fold_accuracies = fold_accuracies;
    if (!fold_accuracies.empty()) {
        for (double a : fold_accuracies) s.fold_accuracy_mean += a;
        s.fold_accuracy_mean /= static_cast<double>(fold_accuracies.size());
        for (double a : fold_accuracies) {
            const double d = a - s.fold_accuracy_mean;
            s.fold_accuracy_std += d * d;
        }
        s.fold_accuracy_std =
            std::sqrt(s.fold_accuracy_std / static_cast<double>(fold_accuracies.size()));
    }
    return s;
}

inline nlohmann::json confusion_to_json(const ConfusionMatrix& cm) {
    return {{"classes", cm.classes}, {"counts", cm.counts}, {"percent", cm.percent_view()}};
}

}  // namespace styloguard
