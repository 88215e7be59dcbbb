#pragma once

#include <string>

#include "styloguard/lexicon.hpp"
#include "styloguard/pos_tagger.hpp"
#include "styloguard/text.hpp"
#include "styloguard/token.hpp"

namespace styloguard {

namespace detail {

inline bool is_vowel(char c) { return c=='a'||c=='e'||c=='i'||c=='o'||c=='u'; }

// After stripping -ed/-ing: prefer a stem the verb list knows, restoring a
// final e or undoubling a final consonant when that recovers a known stem.
inline std::string fix_verb_stem(const Lexicons& lex, const std::string& stem) {
    if (lex.is_verb_stem(stem)) return stem;
    if (lex.is_verb_stem(stem + "e")) return stem + "e";
    if (stem.size() >= 3) {
        const char a = stem[stem.size() - 1], b = stem[stem.size() - 2];
        if (a == b && !is_vowel(a) && a != 'l' && a != 's' && a != 'z') {
            std::string un = stem.substr(0, stem.size() - 1);
            if (lex.is_verb_stem(un)) return un;
        }
    }
    if (!stem.empty() && stem.back() == 'i') return stem.substr(0, stem.size() - 1) + "y";
    return stem;
}

inline std::string strip_plural(const std::string& w) {
    using detail::ends_with;
    const size_t n = w.size();
    if (ends_with(w, "ies") && n > 4) return w.substr(0, n - 3) + "y";
    if (ends_with(w, "sses")) return w.substr(0, n - 2);
    if ((ends_with(w, "xes") || ends_with(w, "zes") || ends_with(w, "ches") ||
         ends_with(w, "shes") || ends_with(w, "oes")) && n > 4)
        return w.substr(0, n - 2);
    if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is") &&
        n > 3)
        return w.substr(0, n - 1);
    return w;
}

}  // namespace detail

// Lowercase; irregular table first; then precision-biased suffix stripping.
// Derivational suffixes (-tion, -ment, -ness) are left alone. Idempotent.
inline std::string lemmatize(const std::string& surface, PosTag pos, const Lexicons& lex) {
    using detail::ends_with;
    std::string w = lower_ascii(surface);
    if (const std::string* irr = lex.irregular_lemma(w)) return *irr;

    const size_t n = w.size();
    if (pos == PosTag::VB || pos == PosTag::VBD) {
        if (ends_with(w, "ied") && n > 4) return w.substr(0, n - 3) + "y";
        if (ends_with(w, "ed") && n >= 4 && w[n - 3] != 'e')
            return detail::fix_verb_stem(lex, w.substr(0, n - 2));
        if (ends_with(w, "ing") && n >= 5)
            return detail::fix_verb_stem(lex, w.substr(0, n - 3));
        return detail::strip_plural(w);
    }
    if (pos == PosTag::NN || pos == PosTag::NNP) return detail::strip_plural(w);
    return w;
}

}  // namespace styloguard
