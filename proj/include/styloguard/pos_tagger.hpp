#pragma once

#include <string>
#include <vector>

#include "styloguard/lexicon.hpp"
#include "styloguard/text.hpp"
#include "styloguard/token.hpp"

namespace styloguard {

namespace detail {

inline bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline bool undoubled_in(const Lexicons& lex, const std::string& stem) {
    if (stem.size() < 3) return false;
    const char a = stem[stem.size() - 1], b = stem[stem.size() - 2];
    if (a != b || a == 'l' || a == 's' || a == 'z') return false;
    return lex.is_verb_stem(stem.substr(0, stem.size() - 1));
}

// known stem, stem+e, or undoubled stem
inline bool verbish_stem(const Lexicons& lex, const std::string& stem) {
    return lex.is_verb_stem(stem) || lex.is_verb_stem(stem + "e") || undoubled_in(lex, stem);
}

}  // namespace detail

// Deterministic three-stage tagger: closed-class lexicon (plus the verb-stem
// list for bare base forms), then suffix heuristics in a fixed order, then
// NN. Sentence position matters only for the proper-noun rule.
inline PosTag tag_word(const std::string& surface, bool sentence_initial, const Lexicons& lex) {
    using detail::ends_with;
    const std::string lw = lower_ascii(surface);

    if (const PosTag* t = lex.closed_class_tag(lw)) return *t;
    if (lex.is_verb_stem(lw)) return PosTag::VB;

    const size_t n = lw.size();
    if (ends_with(lw, "ed") && n >= 4 && lw[n - 3] != 'e') return PosTag::VBD;
    if (ends_with(lw, "ing") && n >= 5 && detail::verbish_stem(lex, lw.substr(0, n - 3)))
        return PosTag::VB;
    if (ends_with(lw, "s") && !ends_with(lw, "ss") && n >= 3 &&
        detail::verbish_stem(lex, lw.substr(0, n - 1)))
        return PosTag::VB;
    if (ends_with(lw, "ly") && n >= 4) return PosTag::RB;
    if (ends_with(lw, "tion") || ends_with(lw, "ment") || ends_with(lw, "ness")) return PosTag::NN;
    if (!sentence_initial && surface[0] >= 'A' && surface[0] <= 'Z') return PosTag::NNP;
    return PosTag::NN;
}

// Tags every token in [first,end): numbers CD, punctuation PUNCT, the rest of
// the non-word kinds OTHER.
inline void pos_tag_sentence(std::vector<Token>& tokens, uint32_t first, uint32_t end,
                             const Lexicons& lex) {
    bool seen_word = false;
    for (uint32_t i = first; i < end; ++i) {
        Token& t = tokens[i];
        switch (t.kind) {
            case TokenKind::Number: t.pos = PosTag::CD; break;
            case TokenKind::Punctuation: t.pos = PosTag::PUNCT; break;
            case TokenKind::Word:
                t.pos = tag_word(t.surface, !seen_word, lex);
                seen_word = true;
                break;
            default: t.pos = PosTag::OTHER; break;
        }
    }
}

}  // namespace styloguard
