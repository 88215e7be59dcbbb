#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace styloguard {

inline constexpr const char* kStyleSchemaVersion = "stylefeat-v1";

enum class FeatureFamily {
    WordLength, Diversity, Drift, Punctuation, Uppercase, Quotation,
    Emoticon, SentenceLength, Numbers, Soundex, Readability, Pos, Sentiment
};

// Value ranges: Frequency in [0,1], Rate >= 0, Raw unconstrained,
// Flag in {0,1}.
enum class FeatureType { Frequency, Rate, Raw, Flag };

struct FeatureDescriptor {
    std::string name;
    FeatureFamily family;
    FeatureType type;
    // Index of the histogram block this entry belongs to, -1 otherwise.
    // Blocks sum to 1 unless their support is empty.
    int histogram_block = -1;
};

// Fixed-order descriptor schema. The headline descriptors
// (word_length_mean, lemma_diversity, sentence_length_mean,
// cardinal_number_freq, coleman_liau_index, pos_freq_*, pos_diversity,
// sentiment_mean) are named members of this list.
class FeatureSchema {
  public:
    static const FeatureSchema& instance() {
        static const FeatureSchema schema;
        return schema;
    }

    size_t size() const { return descriptors_.size(); }
    const std::vector<FeatureDescriptor>& descriptors() const { return descriptors_; }
    const FeatureDescriptor& at(size_t i) const { return descriptors_[i]; }

    size_t index_of(const std::string& name) const {
        for (size_t i = 0; i < descriptors_.size(); ++i)
            if (descriptors_[i].name == name) return i;
        throw std::runtime_error("unknown style descriptor: " + name);
    }

    std::string version() const { return kStyleSchemaVersion; }

  private:
    FeatureSchema() {
        using F = FeatureFamily;
        using T = FeatureType;
        auto add = [this](std::string name, F f, T t, int block = -1) {
            descriptors_.push_back({std::move(name), f, t, block});
        };

        add("word_length_mean", F::WordLength, T::Raw);
        add("word_length_std", F::WordLength, T::Raw);
        add("word_length_max", F::WordLength, T::Raw);
        for (int i = 1; i <= 10; ++i)
            add("word_length_hist_" + std::string(i == 10 ? "10p" : std::to_string(i)),
                F::WordLength, T::Frequency, 0);

        add("lemma_diversity", F::Diversity, T::Frequency);
        add("hapax_lemma_ratio", F::Diversity, T::Frequency);
        add("surface_diversity", F::Diversity, T::Frequency);
        add("lemma_entropy", F::Diversity, T::Frequency);
        add("top_lemma_share", F::Diversity, T::Frequency);

        add("word_freq_drift", F::Drift, T::Frequency);
        add("lemma_halves_jaccard", F::Drift, T::Frequency);
        add("word_length_drift", F::Drift, T::Raw);
        add("sentence_length_drift", F::Drift, T::Raw);

        for (const char* cls : {"comma", "period", "exclamation", "question", "colon",
                                "semicolon", "quote", "other"})
            add(std::string("punct_") + cls + "_freq", F::Punctuation, T::Frequency);
        add("punct_total_freq", F::Punctuation, T::Frequency);
        add("punct_diversity", F::Punctuation, T::Frequency);
        add("punct_per_sentence", F::Punctuation, T::Rate);
        add("exclamation_sentence_ratio", F::Punctuation, T::Frequency);
        add("question_sentence_ratio", F::Punctuation, T::Frequency);

        add("uppercase_letter_ratio", F::Uppercase, T::Frequency);
        add("allcaps_word_freq", F::Uppercase, T::Frequency);
        add("capitalized_word_freq", F::Uppercase, T::Frequency);

        add("quotation_per_100_tokens", F::Quotation, T::Rate);
        add("quoted_span_mean_words", F::Quotation, T::Rate);
        add("quoted_token_ratio", F::Quotation, T::Frequency);

        add("emoticon_per_100_tokens", F::Emoticon, T::Rate);

        add("sentence_length_mean", F::SentenceLength, T::Raw);
        add("sentence_length_std", F::SentenceLength, T::Raw);
        for (int i = 1; i <= 8; ++i)
            add("sentence_length_hist_" + std::to_string(i), F::SentenceLength, T::Frequency, 1);
        add("sentence_length_words_mean", F::SentenceLength, T::Raw);
        add("sentence_length_words_std", F::SentenceLength, T::Raw);

        add("cardinal_number_freq", F::Numbers, T::Frequency);
        add("digit_char_ratio", F::Numbers, T::Frequency);
        add("number_token_mean_length", F::Numbers, T::Rate);
        add("number_sentence_ratio", F::Numbers, T::Frequency);

        for (int i = 1; i <= 6; ++i)
            add("soundex_class_" + std::to_string(i), F::Soundex, T::Frequency, 2);
        add("soundex_diversity", F::Soundex, T::Frequency);
        add("soundex_valid", F::Soundex, T::Flag);
        add("vowel_initial_word_ratio", F::Soundex, T::Frequency);

        add("coleman_liau_index", F::Readability, T::Raw);
        add("automated_readability_index", F::Readability, T::Raw);

        for (const char* tag : {"NN", "NNP", "VB", "VBD", "PRP", "DT", "IN", "JJ", "RB",
                                "MD", "TO", "CC"})
            add(std::string("pos_freq_") + tag, F::Pos, T::Frequency);
        add("pos_diversity", F::Pos, T::Frequency);
        add("pos_trigram_repetition", F::Pos, T::Frequency);
        add("pos_bigram_repetition", F::Pos, T::Frequency);
        add("second_person_pronoun_freq", F::Pos, T::Frequency);
        add("first_person_pronoun_freq", F::Pos, T::Frequency);

        add("sentiment_mean", F::Sentiment, T::Raw);
        add("sentiment_std", F::Sentiment, T::Raw);
        add("sentiment_drift", F::Sentiment, T::Raw);
        for (int i = 0; i <= 4; ++i)
            add("sentiment_hist_" + std::to_string(i), F::Sentiment, T::Frequency, 3);
        add("positive_sentence_ratio", F::Sentiment, T::Frequency);
        add("negative_sentence_ratio", F::Sentiment, T::Frequency);
    }

    std::vector<FeatureDescriptor> descriptors_;
};

struct StyleVector {
    std::string doc_id;
    std::string label;
    std::vector<double> values;  // aligned to FeatureSchema order
};

}  // namespace styloguard
