#pragma once

#include <string>
#include <vector>

#include "styloguard/lexicon.hpp"
#include "styloguard/text.hpp"
#include "styloguard/token.hpp"

namespace styloguard {

// Sentence ranges tile the token list: every token, punctuation included,
// belongs to exactly one sentence. A boundary falls after a . ! ? token
// unless a lone period follows an abbreviation. A trailing fragment without
// a terminator becomes the last sentence.
inline std::vector<Sentence> segment_sentences(const std::vector<Token>& tokens,
                                               const Lexicons& lex) {
    std::vector<Sentence> out;
    uint32_t start = 0;
    for (uint32_t i = 0; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        if (t.kind != TokenKind::Punctuation) continue;
        bool terminator = !t.surface.empty();
        for (char c : t.surface)
            if (c != '.' && c != '!' && c != '?') { terminator = false; break; }
        if (!terminator) continue;
        if (t.surface == "." && i > 0) {
            const Token& prev = tokens[i - 1];
            if (prev.kind == TokenKind::Word && lex.is_abbreviation(lower_ascii(prev.surface)))
                continue;
        }
        out.push_back({start, i + 1, 2});
        start = i + 1;
    }
    if (start < tokens.size()) out.push_back({start, static_cast<uint32_t>(tokens.size()), 2});
    return out;
}

}  // namespace styloguard
