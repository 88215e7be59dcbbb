#pragma once

#include <array>
#include <stdexcept>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace styloguard {

enum class TokenKind : uint8_t { Word, Number, Punctuation, Emoticon, Url, Symbol };

// Reduced Penn-style tagset. PUNCT/OTHER cover non-lexical tokens so every
// token carries exactly one tag.
enum class PosTag : uint8_t {
    NN, NNP, VB, VBD, PRP, DT, IN, JJ, RB, CD, MD, TO, CC, PUNCT, OTHER
};

inline constexpr size_t kTagCount = 15;

inline std::string_view tag_name(PosTag t) {
    static constexpr std::array<std::string_view, kTagCount> names = {
        "NN", "NNP", "VB", "VBD", "PRP", "DT", "IN", "JJ",
        "RB", "CD",  "MD", "TO",  "CC",  "PUNCT", "OTHER"};
    return names[static_cast<size_t>(t)];
}

inline PosTag tag_from_name(std::string_view name) {
    for (size_t i = 0; i < kTagCount; ++i)
        if (tag_name(static_cast<PosTag>(i)) == name) return static_cast<PosTag>(i);
    throw std::invalid_argument("unknown POS tag: " + std::string(name));
}

struct Token {
    std::string surface;
    uint32_t begin = 0;  // byte offsets into the source text
    uint32_t end = 0;
    TokenKind kind = TokenKind::Word;
    std::string lemma;   // word tokens only
    PosTag pos = PosTag::OTHER;
    bool is_uppercase_word = false;  // all letters uppercase, length >= 2
};

struct Sentence {
    uint32_t first_token = 0;  // [first_token, end_token)
    uint32_t end_token = 0;
    int sentiment = 2;         // 0..4
};

struct AnnotatedDocument {
    std::string doc_id;
    std::vector<Token> tokens;
    std::vector<Sentence> sentences;
    uint64_t letter_count = 0;
    uint64_t uppercase_letter_count = 0;
};

}  // namespace styloguard
