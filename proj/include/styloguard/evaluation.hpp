#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "styloguard/annotate.hpp"
#include "styloguard/anova.hpp"
#include "styloguard/corpus.hpp"
#include "styloguard/ensemble.hpp"
#include "styloguard/lstm.hpp"
#include "styloguard/maxent.hpp"
#include "styloguard/metrics.hpp"
#include "styloguard/naive_bayes.hpp"
#include "styloguard/parallel.hpp"
#include "styloguard/rng.hpp"
#include "styloguard/split.hpp"
#include "styloguard/style_classifier.hpp"
#include "styloguard/style_features.hpp"
#include "styloguard/vocabulary.hpp"
#include "styloguard/winnow.hpp"

namespace styloguard {

enum class ClassifierKind { Nb, MaxEnt, Winnow, StyleKnn, Lstm, Ensemble };

inline ClassifierKind classifier_from_name(const std::string& name) {
    if (name == "nb") return ClassifierKind::Nb;
    if (name == "maxent") return ClassifierKind::MaxEnt;
    if (name == "winnow") return ClassifierKind::Winnow;
    if (name == "style_knn") return ClassifierKind::StyleKnn;
    if (name == "lstm") return ClassifierKind::Lstm;
    if (name == "ensemble") return ClassifierKind::Ensemble;
    throw std::runtime_error("unknown classifier: " + name);
}

inline std::string classifier_name(ClassifierKind k) {
    switch (k) {
        case ClassifierKind::Nb: return "nb";
        case ClassifierKind::MaxEnt: return "maxent";
        case ClassifierKind::Winnow: return "winnow";
        case ClassifierKind::StyleKnn: return "style_knn";
        case ClassifierKind::Lstm: return "lstm";
        case ClassifierKind::Ensemble: return "ensemble";
    }
    return "?";
}

// Shared per-corpus state: annotations and style vectors are computed once
// and reused across folds and classifiers.
struct PipelineData {
    const Corpus* corpus = nullptr;
    const Lexicons* lexicons = nullptr;
    std::vector<AnnotatedDocument> annotated;  // index-aligned with corpus->documents
    std::vector<StyleVector> style;
    std::unordered_map<std::string, size_t> index_of_id;
};

inline PipelineData prepare_pipeline(const Corpus& corpus, const Lexicons& lex,
                                     unsigned threads = 1) {
    PipelineData d;
    d.corpus = &corpus;
    d.lexicons = &lex;
    d.annotated.resize(corpus.documents.size());
    d.style.resize(corpus.documents.size());
    parallel_for(corpus.documents.size(), threads, [&](size_t i) {
        const EmailDocument& doc = corpus.documents[i];
        d.annotated[i] = annotate(doc.id, doc.raw_text, lex);
        d.style[i] = extract_style(d.annotated[i]);
        d.style[i].label = doc.label;
    });
    for (size_t i = 0; i < corpus.documents.size(); ++i)
        d.index_of_id[corpus.documents[i].id] = i;
    return d;
}

struct ClassifierOptions {
    double nb_alpha = 1.0;
    MaxEntOptions maxent;
    WinnowOptions winnow;
    size_t knn_k = 1;
    uint32_t min_df = 2;
    size_t lstm_vocab_cap = kLstmVocabCap;
    TrainConfig lstm;
};

struct TrainedModel {
    ClassifierKind kind = ClassifierKind::Nb;
    std::vector<std::string> classes;
    Vocabulary vocab;  // token models and the lstm
    std::optional<NBModel> nb;
    std::optional<MaxEntModel> maxent;
    std::optional<WinnowModel> winnow;
    std::optional<StyleModel> style;
    std::optional<LstmModel<float>> lstm;
};

namespace detail {

inline std::vector<size_t> resolve_ids(const PipelineData& d,
                                       const std::vector<std::string>& ids) {
    std::vector<size_t> out;
    out.reserve(ids.size());
    for (const auto& id : ids) {
        auto it = d.index_of_id.find(id);
        if (it == d.index_of_id.end()) throw std::runtime_error("unknown document id: " + id);
        out.push_back(it->second);
    }
    return out;
}

inline uint32_t class_index(const std::vector<std::string>& classes, const std::string& label) {
    for (uint32_t i = 0; i < classes.size(); ++i)
        if (classes[i] == label) return i;
    throw std::runtime_error("label not in experiment classes: " + label);
}

inline std::vector<TokenCountVector> vectorize_all(const PipelineData& d,
                                                   const std::vector<size_t>& doc_idx,
                                                   const Vocabulary& vocab) {
    std::vector<TokenCountVector> out;
    out.reserve(doc_idx.size());
    for (size_t i : doc_idx) out.push_back(vectorize(d.annotated[i], vocab));
    return out;
}

}  // namespace detail

// Trains one classifier (or the three ensemble voters) on the given ids.
// All randomness comes from `seed`; permuting labels first is the baseline
// used for significance testing.
inline TrainedModel train_model(const PipelineData& d, const std::vector<std::string>& classes,
                                const std::vector<std::string>& train_ids, ClassifierKind kind,
                                const ClassifierOptions& opts, uint64_t seed,
                                bool permute_labels = false) {
    TrainedModel m;
    m.kind = kind;
    m.classes = classes;
    const std::vector<size_t> idx = detail::resolve_ids(d, train_ids);
    std::vector<uint32_t> labels(idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
        labels[i] = detail::class_index(classes, d.corpus->documents[idx[i]].label);
    if (permute_labels) {
        Rng rng(Rng::derive(seed, 0xBA5EULL));
        rng.shuffle(labels);
    }

    const bool needs_tokens = kind == ClassifierKind::Nb || kind == ClassifierKind::MaxEnt ||
                              kind == ClassifierKind::Winnow || kind == ClassifierKind::Lstm ||
                              kind == ClassifierKind::Ensemble;
    if (needs_tokens) {
        std::vector<const AnnotatedDocument*> docs;
        docs.reserve(idx.size());
        for (size_t i : idx) docs.push_back(&d.annotated[i]);
        const size_t cap =
            (kind == ClassifierKind::Lstm) ? opts.lstm_vocab_cap
                                           : (kind == ClassifierKind::Ensemble ? opts.lstm_vocab_cap : 0);
        m.vocab = build_vocabulary(docs, *d.lexicons, opts.min_df, cap);
    }

    auto train_tokens = [&](auto&& fn) {
        const auto vecs = detail::vectorize_all(d, idx, m.vocab);
        fn(vecs);
    };

    if (kind == ClassifierKind::Nb || kind == ClassifierKind::Ensemble)
        train_tokens([&](const auto& vecs) {
            m.nb = nb_train(vecs, labels, classes, m.vocab.size(), opts.nb_alpha);
            m.nb->vocab_hash = m.vocab.content_hash();
        });
    if (kind == ClassifierKind::MaxEnt)
        train_tokens([&](const auto& vecs) {
            m.maxent = maxent_train(vecs, labels, classes, m.vocab.size(), opts.maxent);
            m.maxent->vocab_hash = m.vocab.content_hash();
        });
    if (kind == ClassifierKind::Winnow)
        train_tokens([&](const auto& vecs) {
            m.winnow = winnow_train(vecs, labels, classes, m.vocab.size(), opts.winnow);
            m.winnow->vocab_hash = m.vocab.content_hash();
        });
    if (kind == ClassifierKind::StyleKnn || kind == ClassifierKind::Ensemble) {
        std::vector<StyleVector> train_style;
        train_style.reserve(idx.size());
        for (size_t i : idx) train_style.push_back(d.style[i]);
        m.style = style_train(train_style, labels, classes, opts.knn_k);
    }
    if (kind == ClassifierKind::Lstm || kind == ClassifierKind::Ensemble) {
        std::vector<SequenceEncoding> seqs;
        seqs.reserve(idx.size());
        for (size_t i : idx) seqs.push_back(encode_sequence(d.annotated[i], m.vocab));
        auto model = lstm_init<float>(static_cast<uint32_t>(m.vocab.size()) + 1, 100, 100,
                                      static_cast<uint32_t>(classes.size()), kLstmSeqLen, seed);
        model.class_names = classes;
        model.vocab_terms = m.vocab.terms;
        TrainConfig cfg = opts.lstm;
        cfg.seed = seed;
        lstm_train(model, seqs, labels, cfg);
        m.lstm = std::move(model);
    }
    return m;
}

struct DocPrediction {
    uint32_t label = 0;
    std::optional<EnsemblePrediction> ensemble;
};

inline DocPrediction classify_doc(const TrainedModel& m, const PipelineData& d, size_t doc_idx) {
    DocPrediction out;
    switch (m.kind) {
        case ClassifierKind::Nb:
            out.label = nb_classify(*m.nb, vectorize(d.annotated[doc_idx], m.vocab)).label;
            break;
        case ClassifierKind::MaxEnt:
            out.label = maxent_classify(*m.maxent, vectorize(d.annotated[doc_idx], m.vocab)).label;
            break;
        case ClassifierKind::Winnow:
            out.label = winnow_classify(*m.winnow, vectorize(d.annotated[doc_idx], m.vocab)).label;
            break;
        case ClassifierKind::StyleKnn:
            out.label = wnn_classify(*m.style, d.style[doc_idx]).label;
            break;
        case ClassifierKind::Lstm:
            out.label = lstm_classify(*m.lstm, encode_sequence(d.annotated[doc_idx], m.vocab));
            break;
        case ClassifierKind::Ensemble: {
            const uint32_t nb = nb_classify(*m.nb, vectorize(d.annotated[doc_idx], m.vocab)).label;
            const uint32_t st = wnn_classify(*m.style, d.style[doc_idx]).label;
            const uint32_t ls = lstm_classify(*m.lstm, encode_sequence(d.annotated[doc_idx], m.vocab));
            EnsemblePrediction ep = majority_vote({Vote{"nb", m.classes[nb]},
                                                   Vote{"style_knn", m.classes[st]},
                                                   Vote{"lstm", m.classes[ls]}});
            out.label = detail::class_index(m.classes, ep.final_label);
            out.ensemble = std::move(ep);
            break;
        }
    }
    return out;
}

// Evaluates a trained model over test ids into a confusion matrix.
inline ConfusionMatrix evaluate_model(const TrainedModel& m, const PipelineData& d,
                                      const std::vector<std::string>& test_ids) {
    ConfusionMatrix cm(m.classes);
    for (size_t i : detail::resolve_ids(d, test_ids)) {
        const uint32_t actual = detail::class_index(m.classes, d.corpus->documents[i].label);
        cm.add(actual, classify_doc(m, d, i).label);
    }
    return cm;
}

struct CvResult {
    ConfusionMatrix confusion{std::vector<std::string>{}};
    MetricSet metrics;
    std::vector<double> fold_accuracies;
    uint64_t seed = 0;
    size_t k = 0;
};

// k-fold driver. Fold seeds derive from (seed, fold), so results do not
// depend on scheduling; folds may run in parallel. For the ensemble all
// three voters see identical folds by construction.
inline CvResult run_cv(const PipelineData& d, const CorpusManifest& manifest,
                       ClassifierKind kind, size_t k, uint64_t seed,
                       const ClassifierOptions& opts, unsigned threads = 1,
                       bool permute_labels = false) {
    const auto folds = kfold(manifest, k, seed);
    CvResult result;
    result.seed = seed;
    result.k = k;
    result.confusion = ConfusionMatrix(manifest.classes);

    std::vector<ConfusionMatrix> fold_cm(folds.size(), ConfusionMatrix(manifest.classes));
    parallel_for(folds.size(), threads, [&](size_t f) {
        const uint64_t fold_seed = Rng::derive(seed, 0xF01D + f);
        TrainedModel m = train_model(d, manifest.classes, folds[f].train_ids, kind, opts,
                                     fold_seed, permute_labels);
        fold_cm[f] = evaluate_model(m, d, folds[f].test_ids);
    });
    for (const auto& cm : fold_cm) {
        result.confusion.merge(cm);
        result.fold_accuracies.push_back(cm.accuracy());
    }
    result.metrics = metric_set(result.confusion, result.fold_accuracies);
    return result;
}

// Significance of an accuracy list against a permuted-label baseline run on
// identical folds (one-way ANOVA over the two per-fold accuracy lists).
inline AnovaResult significance_vs_permuted(const PipelineData& d,
                                            const CorpusManifest& manifest, ClassifierKind kind,
                                            size_t k, uint64_t seed,
                                            const ClassifierOptions& opts, unsigned threads,
                                            const CvResult& real) {
    CvResult baseline = run_cv(d, manifest, kind, k, seed, opts, threads, true);
    return anova_f({real.fold_accuracies, baseline.fold_accuracies});
}

// Restricts a manifest to a subset of classes (two-way experiments).
inline CorpusManifest subset_manifest(const CorpusManifest& m,
                                      const std::vector<std::string>& classes) {
    CorpusManifest out;
    out.classes = classes;
    for (const auto& doc : m.documents)
        for (const auto& c : classes)
            if (doc.label == c) {
                out.documents.push_back(doc);
                ++out.per_class_counts[c];
            }
    return out;
}

// Restricts a manifest to the ids in a split plan (both sides), keeping the
// 600/100-per-class experiment scale for cross-validation.
inline CorpusManifest restrict_manifest(const CorpusManifest& m, const SplitPlan& plan) {
    std::unordered_map<std::string, bool> keep;
    for (const auto& [cls, ids] : plan.train_ids)
        for (const auto& id : ids) keep[id] = true;
    for (const auto& [cls, ids] : plan.test_ids)
        for (const auto& id : ids) keep[id] = true;
    CorpusManifest out;
    out.classes = m.classes;
    for (const auto& doc : m.documents)
        if (keep.count(doc.id)) {
            out.documents.push_back(doc);
            ++out.per_class_counts[doc.label];
        }
    return out;
}

}  // namespace styloguard
