#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "styloguard/text.hpp"

namespace styloguard {

// American Soundex digit class for a letter: 1..6, 0 for vowels/y, -1 for
// the transparent letters h and w.
inline int soundex_class(char c) {
    switch (to_lower_ascii(c)) {
        case 'b': case 'f': case 'p': case 'v': return 1;
        case 'c': case 'g': case 'j': case 'k': case 'q': case 's': case 'x': case 'z': return 2;
        case 'd': case 't': return 3;
        case 'l': return 4;
        case 'm': case 'n': return 5;
        case 'r': return 6;
        case 'h': case 'w': return -1;
        default: return 0;
    }
}

// Standard American Soundex: first letter kept, consonant classes 1-6,
// vowels separate equal codes, h/w do not. Non-letters are ignored; a word
// with no ASCII letters is not encodable.
inline std::optional<std::string> soundex(std::string_view word) {
    std::string letters;
    letters.reserve(word.size());
    for (char c : word)
        if (is_ascii_alpha(c)) letters.push_back(c);
    if (letters.empty()) return std::nullopt;

    std::string code(1, static_cast<char>(to_lower_ascii(letters[0]) - 'a' + 'A'));
    int prev = soundex_class(letters[0]);
    if (prev == -1) prev = 0;
    for (size_t i = 1; i < letters.size() && code.size() < 4; ++i) {
        const int cls = soundex_class(letters[i]);
        if (cls == -1) continue;               // h/w: transparent
        if (cls == 0) { prev = 0; continue; }  // vowel: separator
        if (cls != prev) code.push_back(static_cast<char>('0' + cls));
        prev = cls;
    }
    while (code.size() < 4) code.push_back('0');
    return code;
}

}  // namespace styloguard
