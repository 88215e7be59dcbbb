#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "styloguard/soundex.hpp"
#include "styloguard/style_schema.hpp"
#include "styloguard/text.hpp"
#include "styloguard/token.hpp"

namespace styloguard {

// distinct lemmata / total word tokens
inline double lemma_diversity(const AnnotatedDocument& doc) {
    std::set<std::string> distinct;
    size_t total = 0;
    for (const Token& t : doc.tokens) {
        if (t.kind != TokenKind::Word) continue;
        distinct.insert(t.lemma);
        ++total;
    }
    if (total == 0) throw std::runtime_error("lemma_diversity: no word tokens");
    return static_cast<double>(distinct.size()) / static_cast<double>(total);
}

// CLI = 0.0588 L - 0.296 S - 15.8 with L letters per 100 words and S
// sentences per 100 words; words are word-kind tokens, letters the
// alphabetic characters inside them.
inline double coleman_liau(const AnnotatedDocument& doc) {
    size_t words = 0;
    for (const Token& t : doc.tokens)
        if (t.kind == TokenKind::Word) ++words;
    if (words == 0 || doc.sentences.empty())
        throw std::runtime_error("coleman_liau: needs at least one word and one sentence");
    const double L = 100.0 * static_cast<double>(doc.letter_count) / static_cast<double>(words);
    const double S = 100.0 * static_cast<double>(doc.sentences.size()) / static_cast<double>(words);
    return 0.0588 * L - 0.296 * S - 15.8;
}

namespace detail {

inline std::vector<PosTag> tagged_stream(const AnnotatedDocument& doc) {
    std::vector<PosTag> tags;
    for (const Token& t : doc.tokens)
        if (t.kind == TokenKind::Word || t.kind == TokenKind::Number) tags.push_back(t.pos);
    return tags;
}

inline double ngram_diversity(const std::vector<PosTag>& tags, size_t n) {
    if (tags.size() < n) return 0.0;
    std::set<std::vector<PosTag>> distinct;
    const size_t total = tags.size() - n + 1;
    for (size_t i = 0; i < total; ++i)
        distinct.insert(std::vector<PosTag>(tags.begin() + i, tags.begin() + i + n));
    return static_cast<double>(distinct.size()) / static_cast<double>(total);
}

inline double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double pop_std(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace detail

// distinct POS trigram patterns / total POS trigrams over word+number tokens
inline double pos_diversity(const AnnotatedDocument& doc) {
    auto tags = detail::tagged_stream(doc);
    if (tags.size() < 3) throw std::runtime_error("pos_diversity: fewer than 3 tagged tokens");
    return detail::ngram_diversity(tags, 3);
}

// Maps an annotated document onto the fixed schema. Pure and deterministic.
inline StyleVector extract_style(const AnnotatedDocument& doc) {
    const FeatureSchema& schema = FeatureSchema::instance();
    StyleVector sv;
    sv.doc_id = doc.doc_id;
    sv.values.assign(schema.size(), 0.0);
    auto set = [&](const char* name, double v) { sv.values[schema.index_of(name)] = v; };

    // token partitions
    std::vector<const Token*> words;
    std::vector<const Token*> numbers;
    size_t emoticons = 0;
    for (const Token& t : doc.tokens) {
        if (t.kind == TokenKind::Word) words.push_back(&t);
        else if (t.kind == TokenKind::Number) numbers.push_back(&t);
        else if (t.kind == TokenKind::Emoticon) ++emoticons;
    }
    const double n_tokens = static_cast<double>(doc.tokens.size());
    const double n_words = static_cast<double>(words.size());
    const double n_sentences = static_cast<double>(doc.sentences.size());
    if (words.empty() || doc.sentences.empty())
        throw std::runtime_error("extract_style: document needs a word token and a sentence");

    // ---- word length
    std::vector<double> wlens;
    wlens.reserve(words.size());
    std::vector<double> wl_hist(10, 0.0);
    for (const Token* w : words) {
        const double len = static_cast<double>(utf8_length(w->surface));
        wlens.push_back(len);
        wl_hist[static_cast<size_t>(std::min(len, 10.0)) - 1] += 1.0;
    }
    const double wl_mean = detail::mean_of(wlens);
    set("word_length_mean", wl_mean);
    set("word_length_std", detail::pop_std(wlens, wl_mean));
    set("word_length_max", *std::max_element(wlens.begin(), wlens.end()));
    for (int i = 0; i < 10; ++i)
        sv.values[schema.index_of("word_length_hist_" +
                                  std::string(i == 9 ? "10p" : std::to_string(i + 1)))] =
            wl_hist[i] / n_words;

    // ---- diversity
    std::map<std::string, size_t> lemma_counts;
    std::set<std::string> surfaces;
    for (const Token* w : words) {
        ++lemma_counts[w->lemma];
        surfaces.insert(lower_ascii(w->surface));
    }
    set("lemma_diversity", static_cast<double>(lemma_counts.size()) / n_words);
    size_t hapax = 0, top = 0;
    double entropy = 0;
    for (const auto& [lemma, c] : lemma_counts) {
        if (c == 1) ++hapax;
        top = std::max(top, c);
        const double p = static_cast<double>(c) / n_words;
        entropy -= p * std::log(p);
    }
    set("hapax_lemma_ratio", static_cast<double>(hapax) / n_words);
    set("surface_diversity", static_cast<double>(surfaces.size()) / n_words);
    set("lemma_entropy", words.size() > 1 ? entropy / std::log(n_words) : 0.0);
    set("top_lemma_share", static_cast<double>(top) / n_words);

    // ---- drift between the first and second halves of the word stream
    {
        const size_t mid = words.size() / 2;
        std::map<std::string, double> a, b;
        for (size_t i = 0; i < words.size(); ++i)
            ++(i < mid ? a : b)[words[i]->lemma];
        if (!a.empty() && !b.empty()) {
            double dot = 0, na = 0, nb = 0, inter = 0;
            std::set<std::string> uni;
            for (const auto& [k, v] : a) {
                na += v * v;
                uni.insert(k);
                auto it = b.find(k);
                if (it != b.end()) { dot += v * it->second; inter += 1; }
            }
            for (const auto& [k, v] : b) { nb += v * v; uni.insert(k); }
            set("word_freq_drift", 1.0 - dot / (std::sqrt(na) * std::sqrt(nb)));
            set("lemma_halves_jaccard", inter / static_cast<double>(uni.size()));
            std::vector<double> la(wlens.begin(), wlens.begin() + mid);
            std::vector<double> lb(wlens.begin() + mid, wlens.end());
            set("word_length_drift", detail::mean_of(lb) - detail::mean_of(la));
        }
    }

    // ---- punctuation
    {
        std::vector<double> cls(8, 0.0);
        size_t punct_total = 0;
        for (const Token& t : doc.tokens) {
            if (t.kind != TokenKind::Punctuation) continue;
            ++punct_total;
            switch (t.surface[0]) {
                case ',': cls[0] += 1; break;
                case '.': cls[1] += 1; break;
                case '!': cls[2] += 1; break;
                case '?': cls[3] += 1; break;
                case ':': cls[4] += 1; break;
                case ';': cls[5] += 1; break;
                case '"': cls[6] += 1; break;
                default: cls[7] += 1; break;
            }
        }
        static const char* names[] = {"comma", "period", "exclamation", "question",
                                      "colon", "semicolon", "quote", "other"};
        size_t used = 0;
        for (int i = 0; i < 8; ++i) {
            if (cls[i] > 0) ++used;
            sv.values[schema.index_of(std::string("punct_") + names[i] + "_freq")] =
                cls[i] / n_tokens;
        }
        set("punct_total_freq", static_cast<double>(punct_total) / n_tokens);
        set("punct_diversity", static_cast<double>(used) / 8.0);
        set("punct_per_sentence", static_cast<double>(punct_total) / n_sentences);
        size_t excl = 0, quest = 0;
        for (const Sentence& s : doc.sentences) {
            bool has_e = false, has_q = false;
            for (uint32_t i = s.first_token; i < s.end_token; ++i) {
                if (doc.tokens[i].kind != TokenKind::Punctuation) continue;
                if (doc.tokens[i].surface[0] == '!') has_e = true;
                if (doc.tokens[i].surface[0] == '?') has_q = true;
            }
            excl += has_e;
            quest += has_q;
        }
        set("exclamation_sentence_ratio", static_cast<double>(excl) / n_sentences);
        set("question_sentence_ratio", static_cast<double>(quest) / n_sentences);
    }

    // ---- uppercase
    {
        set("uppercase_letter_ratio",
            doc.letter_count ? static_cast<double>(doc.uppercase_letter_count) /
                                   static_cast<double>(doc.letter_count)
                             : 0.0);
        size_t allcaps = 0;
        for (const Token* w : words) allcaps += w->is_uppercase_word;
        set("allcaps_word_freq", static_cast<double>(allcaps) / n_words);
        std::set<const Token*> initial;
        for (const Sentence& s : doc.sentences)
            for (uint32_t i = s.first_token; i < s.end_token; ++i)
                if (doc.tokens[i].kind == TokenKind::Word) { initial.insert(&doc.tokens[i]); break; }
        size_t capitalized = 0;
        for (const Token* w : words) {
            if (initial.count(w) || w->is_uppercase_word) continue;
            if (w->surface[0] >= 'A' && w->surface[0] <= 'Z') ++capitalized;
        }
        set("capitalized_word_freq", static_cast<double>(capitalized) / n_words);
    }

    // ---- quotations (double-quote delimited spans)
    {
        size_t spans = 0, quoted_tokens = 0, quoted_words = 0;
        int open = -1;
        for (size_t i = 0; i < doc.tokens.size(); ++i) {
            const Token& t = doc.tokens[i];
            if (t.kind != TokenKind::Punctuation || t.surface[0] != '"') continue;
            if (open < 0) { open = static_cast<int>(i); continue; }
            ++spans;
            for (size_t j = static_cast<size_t>(open) + 1; j < i; ++j) {
                ++quoted_tokens;
                if (doc.tokens[j].kind == TokenKind::Word) ++quoted_words;
            }
            open = -1;
        }
        set("quotation_per_100_tokens", 100.0 * static_cast<double>(spans) / n_tokens);
        set("quoted_span_mean_words",
            spans ? static_cast<double>(quoted_words) / static_cast<double>(spans) : 0.0);
        set("quoted_token_ratio", static_cast<double>(quoted_tokens) / n_tokens);
    }

    set("emoticon_per_100_tokens", 100.0 * static_cast<double>(emoticons) / n_tokens);

    // ---- sentence length
    {
        std::vector<double> slen, swords;
        std::vector<double> hist(8, 0.0);
        auto bucket = [](double len) {
            if (len <= 3) return 0;
            if (len <= 6) return 1;
            if (len <= 9) return 2;
            if (len <= 12) return 3;
            if (len <= 16) return 4;
            if (len <= 21) return 5;
            if (len <= 30) return 6;
            return 7;
        };
        for (const Sentence& s : doc.sentences) {
            const double len = static_cast<double>(s.end_token - s.first_token);
            slen.push_back(len);
            hist[bucket(len)] += 1.0;
            double w = 0;
            for (uint32_t i = s.first_token; i < s.end_token; ++i)
                if (doc.tokens[i].kind == TokenKind::Word) ++w;
            swords.push_back(w);
        }
        const double sl_mean = detail::mean_of(slen);
        const double sw_mean = detail::mean_of(swords);
        set("sentence_length_mean", sl_mean);
        set("sentence_length_std", detail::pop_std(slen, sl_mean));
        for (int i = 0; i < 8; ++i)
            sv.values[schema.index_of("sentence_length_hist_" + std::to_string(i + 1))] =
                hist[i] / n_sentences;
        set("sentence_length_words_mean", sw_mean);
        set("sentence_length_words_std", detail::pop_std(swords, sw_mean));
        if (slen.size() >= 2) {
            const size_t mid = slen.size() / 2;
            std::vector<double> first(slen.begin(), slen.begin() + mid);
            std::vector<double> second(slen.begin() + mid, slen.end());
            set("sentence_length_drift", detail::mean_of(second) - detail::mean_of(first));
        }
    }

    // ---- numbers
    {
        const double tagged = n_words + static_cast<double>(numbers.size());
        set("cardinal_number_freq", static_cast<double>(numbers.size()) / tagged);
        size_t digits = 0;
        double digit_len_sum = 0;
        for (const Token* t : numbers) {
            size_t d = 0;
            for (char c : t->surface)
                if (is_ascii_digit(c)) ++d;
            digits += d;
            digit_len_sum += static_cast<double>(d);
        }
        size_t word_digits = 0;
        for (const Token* w : words)
            for (char c : w->surface)
                if (is_ascii_digit(c)) ++word_digits;
        const double all_chars =
            static_cast<double>(doc.letter_count + digits + word_digits);
        set("digit_char_ratio",
            all_chars > 0 ? static_cast<double>(digits + word_digits) / all_chars : 0.0);
        set("number_token_mean_length",
            numbers.empty() ? 0.0 : digit_len_sum / static_cast<double>(numbers.size()));
        size_t with_num = 0;
        for (const Sentence& s : doc.sentences)
            for (uint32_t i = s.first_token; i < s.end_token; ++i)
                if (doc.tokens[i].kind == TokenKind::Number) { ++with_num; break; }
        set("number_sentence_ratio", static_cast<double>(with_num) / n_sentences);
    }

    // ---- soundex distribution over consonant classes
    {
        std::vector<double> classes(6, 0.0);
        double total = 0;
        std::set<std::string> codes;
        for (const Token* w : words) {
            auto code = soundex(w->surface);
            if (!code) continue;
            codes.insert(*code);
            for (size_t i = 1; i < code->size(); ++i) {
                const char c = (*code)[i];
                if (c >= '1' && c <= '6') { classes[c - '1'] += 1; total += 1; }
            }
        }
        if (total > 0) {
            for (int i = 0; i < 6; ++i)
                sv.values[schema.index_of("soundex_class_" + std::to_string(i + 1))] =
                    classes[i] / total;
            set("soundex_valid", 1.0);
        }
        set("soundex_diversity", static_cast<double>(codes.size()) / n_words);
        size_t vowel_initial = 0;
        for (const Token* w : words) {
            const char c = to_lower_ascii(w->surface[0]);
            if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') ++vowel_initial;
        }
        set("vowel_initial_word_ratio", static_cast<double>(vowel_initial) / n_words);
    }

    // ---- readability
    set("coleman_liau_index", coleman_liau(doc));
    {
        size_t digits = 0;
        for (const Token* t : numbers)
            for (char c : t->surface)
                if (is_ascii_digit(c)) ++digits;
        const double chars = static_cast<double>(doc.letter_count + digits);
        const double units = n_words + static_cast<double>(numbers.size());
        set("automated_readability_index",
            4.71 * chars / units + 0.5 * units / n_sentences - 21.43);
    }

    // ---- parts of speech over word+number tokens
    {
        const auto tags = detail::tagged_stream(doc);
        const double tagged = static_cast<double>(tags.size());
        std::vector<double> counts(kTagCount, 0.0);
        for (PosTag t : tags) counts[static_cast<size_t>(t)] += 1;
        for (const char* name : {"NN", "NNP", "VB", "VBD", "PRP", "DT", "IN", "JJ", "RB",
                                 "MD", "TO", "CC"})
            sv.values[schema.index_of(std::string("pos_freq_") + name)] =
                counts[static_cast<size_t>(tag_from_name(name))] / tagged;
        const double tri = detail::ngram_diversity(tags, 3);
        const double bi = detail::ngram_diversity(tags, 2);
        set("pos_diversity", tri);
        set("pos_trigram_repetition", tags.size() >= 3 ? 1.0 - tri : 0.0);
        set("pos_bigram_repetition", tags.size() >= 2 ? 1.0 - bi : 0.0);
        size_t second = 0, first = 0;
        for (const Token* w : words) {
            const std::string lw = lower_ascii(w->surface);
            if (lw == "you" || lw == "your" || lw == "yours" || lw == "yourself" ||
                lw == "yourselves")
                ++second;
            if (lw == "i" || lw == "me" || lw == "my" || lw == "mine" || lw == "myself" ||
                lw == "we" || lw == "us" || lw == "our" || lw == "ours" || lw == "ourselves")
                ++first;
        }
        set("second_person_pronoun_freq", static_cast<double>(second) / n_words);
        set("first_person_pronoun_freq", static_cast<double>(first) / n_words);
    }

    // ---- sentiment over sentences
    {
        std::vector<double> scores;
        std::vector<double> hist(5, 0.0);
        size_t pos_s = 0, neg_s = 0;
        for (const Sentence& s : doc.sentences) {
            scores.push_back(static_cast<double>(s.sentiment));
            hist[static_cast<size_t>(s.sentiment)] += 1;
            if (s.sentiment >= 3) ++pos_s;
            if (s.sentiment <= 1) ++neg_s;
        }
        const double mean = detail::mean_of(scores);
        set("sentiment_mean", mean);
        set("sentiment_std", detail::pop_std(scores, mean));
        for (int i = 0; i < 5; ++i)
            sv.values[schema.index_of("sentiment_hist_" + std::to_string(i))] =
                hist[i] / n_sentences;
        if (scores.size() >= 2) {
            const size_t mid = scores.size() / 2;
            std::vector<double> a(scores.begin(), scores.begin() + mid);
            std::vector<double> b(scores.begin() + mid, scores.end());
            set("sentiment_drift", detail::mean_of(b) - detail::mean_of(a));
        }
        set("positive_sentence_ratio", static_cast<double>(pos_s) / n_sentences);
        set("negative_sentence_ratio", static_cast<double>(neg_s) / n_sentences);
    }

    for (double v : sv.values)
        if (!std::isfinite(v)) throw std::runtime_error("extract_style: non-finite descriptor");
    return sv;
}

}  // namespace styloguard
