#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "styloguard/evaluation.hpp"
#include "styloguard/style_classifier.hpp"

namespace styloguard {

namespace report_detail {

inline std::string fmt(double v, int precision = 6) {
    std::ostringstream ss;
    ss << std::setprecision(precision) << std::fixed << v;
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
}

}  // namespace report_detail

inline std::string confusion_csv(const ConfusionMatrix& cm, bool percent) {
    std::ostringstream ss;
    ss << "actual";
    for (const auto& c : cm.classes) ss << "," << c;
    ss << "\n";
    const auto pv = cm.percent_view();
    for (size_t a = 0; a < cm.classes.size(); ++a) {
        ss << cm.classes[a];
        for (size_t p = 0; p < cm.classes.size(); ++p) {
            if (percent) ss << "," << report_detail::fmt(pv[a][p], 2);
            else ss << "," << cm.counts[a][p];
        }
        ss << "\n";
    }
    return ss.str();
}

inline std::string metrics_csv(const MetricSet& m, const std::vector<std::string>& classes) {
    std::ostringstream ss;
    ss << "class,precision,recall,f1,specificity,degenerate\n";
    for (size_t c = 0; c < classes.size(); ++c) {
        const auto& pm = m.per_class[c];
        ss << classes[c] << "," << report_detail::fmt(pm.precision) << ","
           << report_detail::fmt(pm.recall) << "," << report_detail::fmt(pm.f1) << ","
           << report_detail::fmt(pm.specificity) << "," << (pm.degenerate ? 1 : 0) << "\n";
    }
    ss << "macro," << report_detail::fmt(m.macro_precision) << ","
       << report_detail::fmt(m.macro_recall) << "," << report_detail::fmt(m.macro_f1) << ",,\n";
    ss << "accuracy," << report_detail::fmt(m.accuracy) << ",,,,\n";
    return ss.str();
}

// Feature-ranking table: descriptor, Fisher score, per-class mean +- stderr.
inline std::string ranking_csv(const std::vector<RankedFeature>& ranking,
                               const std::vector<std::string>& classes,
                               const std::vector<double>* anova_p = nullptr,
                               const std::vector<std::string>* anova_names = nullptr) {
    std::ostringstream ss;
    ss << "descriptor,score";
    for (const auto& c : classes) ss << "," << c << "_mean," << c << "_stderr";
    if (anova_p) ss << ",anova_p";
    ss << "\n";
    for (size_t i = 0; i < ranking.size(); ++i) {
        const auto& r = ranking[i];
        ss << r.name << "," << report_detail::fmt(r.score);
        for (size_t c = 0; c < classes.size(); ++c)
            ss << "," << report_detail::fmt(r.class_means[c]) << ","
               << report_detail::fmt(r.class_stderr[c]);
        if (anova_p && anova_names) {
            double p = 1.0;
            for (size_t j = 0; j < anova_names->size(); ++j)
                if ((*anova_names)[j] == r.name) { p = (*anova_p)[j]; break; }
            ss << "," << std::setprecision(6) << std::scientific << p << std::fixed;
        }
        ss << "\n";
    }
    return ss.str();
}

// Style vector CSV: doc_id,label,<96 descriptor columns>, with the schema
// version pinned in a leading comment line.
inline std::string style_csv(const std::vector<StyleVector>& vectors) {
    const FeatureSchema& schema = FeatureSchema::instance();
    std::ostringstream ss;
    ss << "# schema=" << schema.version() << "\n";
    ss << "doc_id,label";
    for (const auto& d : schema.descriptors()) ss << "," << d.name;
    ss << "\n";
    for (const auto& sv : vectors) {
        ss << sv.doc_id << "," << sv.label;
        for (double v : sv.values) ss << "," << report_detail::fmt(v, 9);
        ss << "\n";
    }
    return ss.str();
}

struct RunReport {
    std::string classifier;
    CvResult cv{};
    nlohmann::json extra;  // seeds, hashes, config echo
};

// Writes the bundle for one cross-validation run: confusion matrices
// (counts and percent), metric table, and a machine-readable summary.
inline void write_cv_report(const std::filesystem::path& out_dir, const RunReport& report,
                            const Lexicons& lex, const nlohmann::json& effective_config) {
    using report_detail::write_file;
    const auto& cv = report.cv;
    write_file(out_dir / ("confusion_counts_" + report.classifier + ".csv"),
               confusion_csv(cv.confusion, false));
    write_file(out_dir / ("confusion_percent_" + report.classifier + ".csv"),
               confusion_csv(cv.confusion, true));
    write_file(out_dir / ("metrics_" + report.classifier + ".csv"),
               metrics_csv(cv.metrics, cv.confusion.classes));

    nlohmann::json summary = {
        {"classifier", report.classifier},
        {"seed", cv.seed},
        {"k", cv.k},
        {"accuracy", cv.metrics.accuracy},
        {"fold_accuracies", cv.fold_accuracies},
        {"fold_accuracy_mean", cv.metrics.fold_accuracy_mean},
        {"fold_accuracy_std", cv.metrics.fold_accuracy_std},
        {"confusion", confusion_to_json(cv.confusion)},
        {"lexicon_hashes", lex.content_hashes()},
        {"schema_version", kStyleSchemaVersion},
        {"config", effective_config},
    };
    if (!report.extra.is_null()) summary["extra"] = report.extra;
    write_file(out_dir / ("summary_" + report.classifier + ".json"), summary.dump(2) + "\n");
}

}  // namespace styloguard
