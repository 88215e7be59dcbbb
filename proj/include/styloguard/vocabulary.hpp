#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "styloguard/hash.hpp"
#include "styloguard/lexicon.hpp"
#include "styloguard/token.hpp"

namespace styloguard {

struct Vocabulary {
    std::vector<std::string> terms;                // index -> lemma
    std::unordered_map<std::string, uint32_t> index;
    uint32_t min_document_frequency = 2;
    uint64_t stopword_hash = 0;

    size_t size() const { return terms.size(); }
    uint64_t content_hash() const {
        uint64_t h = 0xcbf29ce484222325ULL;
        for (const auto& t : terms) h = fnv1a64(t, fnv1a64("\x1f", h));
        return h;
    }
};

struct TokenCountVector {
    std::string doc_id;
    std::vector<std::pair<uint32_t, uint32_t>> counts;  // (index, count), index ascending
    uint64_t total_count = 0;
};

// Lemmata of word tokens, stop words removed, rare terms dropped. Indices
// are assigned by descending corpus frequency, ties broken lexicographically,
// so the same corpus always yields the same vocabulary.
inline Vocabulary build_vocabulary(const std::vector<const AnnotatedDocument*>& train_docs,
                                   const Lexicons& lex, uint32_t min_df = 2,
                                   size_t max_terms = 0) {
    if (train_docs.empty()) throw std::runtime_error("build_vocabulary: no training documents");
    std::map<std::string, std::pair<uint64_t, uint64_t>> stats;  // lemma -> (corpus freq, df)
    for (const AnnotatedDocument* doc : train_docs) {
        std::map<std::string, uint64_t> in_doc;
        for (const Token& t : doc->tokens) {
            if (t.kind != TokenKind::Word || t.lemma.empty()) continue;
            if (lex.is_stopword(t.lemma)) continue;
            ++in_doc[t.lemma];
        }
        for (const auto& [lemma, c] : in_doc) {
            stats[lemma].first += c;
            stats[lemma].second += 1;
        }
    }

    std::vector<std::pair<std::string, uint64_t>> kept;
    for (const auto& [lemma, s] : stats)
        if (s.second >= min_df) kept.emplace_back(lemma, s.first);
    if (kept.empty()) throw std::runtime_error("build_vocabulary: empty vocabulary after filtering");
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (max_terms > 0 && kept.size() > max_terms) kept.resize(max_terms);

    Vocabulary v;
    v.min_document_frequency = min_df;
    v.stopword_hash = lex.stopword_hash();
    v.terms.reserve(kept.size());
    for (uint32_t i = 0; i < kept.size(); ++i) {
        v.index.emplace(kept[i].first, i);
        v.terms.push_back(std::move(kept[i].first));
    }
    return v;
}

inline TokenCountVector vectorize(const AnnotatedDocument& doc, const Vocabulary& vocab) {
    std::map<uint32_t, uint32_t> counts;
    for (const Token& t : doc.tokens) {
        if (t.kind != TokenKind::Word) continue;
        auto it = vocab.index.find(t.lemma);
        if (it != vocab.index.end()) ++counts[it->second];
    }
    TokenCountVector out;
    out.doc_id = doc.doc_id;
    out.counts.assign(counts.begin(), counts.end());
    for (const auto& [i, c] : out.counts) out.total_count += c;
    return out;
}

}  // namespace styloguard
