#pragma once

#include <vector>

#include "styloguard/lexicon.hpp"
#include "styloguard/token.hpp"

namespace styloguard {

// Lexicon polarity sum over a sentence's word lemmata; a pending negator
// ("not", "never", "n't") flips the next polar token. The sum maps onto the
// 0..4 scale with 2 as the neutral midpoint.
inline int sentence_sentiment(const std::vector<Token>& tokens, uint32_t first, uint32_t end,
                              const Lexicons& lex) {
    int score = 0;
    bool negate = false;
    for (uint32_t i = first; i < end; ++i) {
        const Token& t = tokens[i];
        if (t.kind != TokenKind::Word) continue;
        if (t.lemma == "not" || t.lemma == "never" || t.surface == "n't") {
            negate = true;
            continue;
        }
        int polarity = 0;
        if (lex.is_positive(t.lemma)) polarity = 1;
        else if (lex.is_negative(t.lemma)) polarity = -1;
        if (polarity != 0) {
            if (negate) { polarity = -polarity; negate = false; }
            score += polarity;
        }
    }
    if (score <= -2) return 0;
    if (score == -1) return 1;
    if (score == 0) return 2;
    if (score == 1) return 3;
    return 4;
}

}  // namespace styloguard
