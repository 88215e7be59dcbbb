#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "styloguard/lexicon.hpp"
#include "styloguard/text.hpp"
#include "styloguard/token.hpp"

namespace styloguard {

namespace detail {

inline bool is_number_start(std::string_view s, size_t i) { return is_ascii_digit(s[i]); }

// scheme:// or www. makes a URL token; it runs to whitespace, then trailing
// sentence punctuation is given back ("visit www.example.com." keeps the dot
// out of the URL).
inline size_t match_url(std::string_view s, size_t i) {
    static constexpr std::string_view prefixes[] = {"http://", "https://", "ftp://", "hxxp://",
                                                    "hxxps://", "www."};
    size_t match = 0;
    bool bare_www = false;
    for (auto p : prefixes) {
        if (s.size() - i >= p.size()) {
            bool ok = true;
            for (size_t k = 0; k < p.size(); ++k)
                if (to_lower_ascii(s[i + k]) != p[k]) { ok = false; break; }
            if (ok) { match = p.size(); bare_www = (p == "www."); break; }
        }
    }
    if (match == 0) return 0;
    // "www." must be followed by a host character to count
    size_t e = i + match;
    if (bare_www && (e >= s.size() || is_ascii_space(s[e]))) return 0;
    while (e < s.size() && !is_ascii_space(s[e])) ++e;
    static constexpr std::string_view trailing = ".,;:!?)\"']>";
    while (e > i + match && trailing.find(s[e - 1]) != std::string_view::npos) --e;
    return e - i;
}

inline size_t match_emoticon(std::string_view s, size_t i, const Lexicons& lex) {
    size_t best = 0;
    for (const auto& emo : lex.emoticons()) {
        if (emo.size() <= best || s.size() - i < emo.size()) continue;
        if (s.substr(i, emo.size()) != emo) continue;
        const size_t e = i + emo.size();
        const bool right_ok = e >= s.size() || is_ascii_space(s[e]) ||
                              (!is_word_byte(s[e]) && !is_ascii_digit(s[e]));
        // letter-initial emoticons (e.g. XD) additionally need a left boundary
        const bool left_ok = !is_ascii_alpha(emo[0]) || i == 0 || is_ascii_space(s[i - 1]);
        if (right_ok && left_ok) best = emo.size();
    }
    return best;
}

// digits with internal , or . separators kept whole: "1,000", "3.14"
inline size_t match_number(std::string_view s, size_t i) {
    size_t e = i;
    while (e < s.size() && is_ascii_digit(s[e])) ++e;
    while (e + 1 < s.size() && (s[e] == ',' || s[e] == '.') && is_ascii_digit(s[e + 1])) {
        ++e;
        while (e < s.size() && is_ascii_digit(s[e])) ++e;
    }
    return e - i;
}

// letters with internal hyphens/apostrophes; "e.g"-style dotted single
// letters stay one token. A digit suffix ("24x7"-ish forms) keeps the token
// a word rather than a number.
inline size_t match_word(std::string_view s, size_t i) {
    size_t e = i;
    bool dotted_single_letters = true;  // pattern so far is letter(.letter)*
    size_t run_len = 0;                 // letters since last dot
    while (e < s.size()) {
        const char c = s[e];
        if (is_word_byte(c) || is_ascii_digit(c)) {
            ++run_len;
            if (run_len > 1) dotted_single_letters = false;
            ++e;
        } else if ((c == '-' || c == '\'') && e + 1 < s.size() && is_word_byte(s[e + 1])) {
            dotted_single_letters = false;
            run_len = 0;
            ++e;
        } else if (c == '.' && dotted_single_letters && run_len == 1 && e + 1 < s.size() &&
                   is_ascii_alpha(s[e + 1])) {
            run_len = 0;
            ++e;
        } else {
            break;
        }
    }
    return e - i;
}

inline bool all_letters_upper(std::string_view w) {
    size_t letters = 0;
    for (char c : w) {
        if (is_ascii_alpha(c)) {
            ++letters;
            if (c >= 'a' && c <= 'z') return false;
        }
    }
    return letters >= 2;
}

}  // namespace detail

// Rule tokenizer: one left-to-right pass, spans index the source bytes so
// that source.substr(begin, end-begin) == surface for every token.
inline std::vector<Token> tokenize(std::string_view text, const Lexicons& lex) {
    std::vector<Token> out;
    size_t i = 0;
    const size_t n = text.size();

    auto push = [&](size_t b, size_t e, TokenKind kind) {
        Token t;
        t.surface.assign(text.substr(b, e - b));
        t.begin = static_cast<uint32_t>(b);
        t.end = static_cast<uint32_t>(e);
        t.kind = kind;
        if (kind == TokenKind::Word) t.is_uppercase_word = detail::all_letters_upper(t.surface);
        out.push_back(std::move(t));
    };

    // split one word span on its apostrophe contraction, n't first
    auto push_word = [&](size_t b, size_t e) {
        std::string_view w = text.substr(b, e - b);
        const size_t apos = w.rfind('\'');
        if (apos != std::string_view::npos && apos > 0 && apos + 1 < w.size()) {
            std::string tail = lower_ascii(w.substr(apos + 1));
            if (tail == "t" && apos >= 2 && to_lower_ascii(w[apos - 1]) == 'n') {
                push(b, b + apos - 1, TokenKind::Word);       // do
                push(b + apos - 1, e, TokenKind::Word);       // n't
                return;
            }
            static const char* suffixes[] = {"s", "re", "ll", "ve", "d", "m", "em"};
            for (const char* suf : suffixes) {
                if (tail == suf) {
                    push(b, b + apos, TokenKind::Word);       // you
                    push(b + apos, e, TokenKind::Word);       // 're
                    return;
                }
            }
        }
        push(b, e, TokenKind::Word);
    };

    while (i < n) {
        const char c = text[i];
        if (is_ascii_space(c)) { ++i; continue; }

        if (size_t len = detail::match_emoticon(text, i, lex); len > 0) {
            push(i, i + len, TokenKind::Emoticon);
            i += len;
            continue;
        }
        if (size_t len = detail::match_url(text, i); len > 0) {
            push(i, i + len, TokenKind::Url);
            i += len;
            continue;
        }
        if (detail::is_number_start(text, i)) {
            size_t len = detail::match_number(text, i);
            size_t e = i + len;
            if (e < n && is_word_byte(text[e])) {
                // digit-led alphanumerics ("89HjeFd", "48hrs") are words
                while (e < n && (is_word_byte(text[e]) || is_ascii_digit(text[e]))) ++e;
                push_word(i, e);
            } else {
                push(i, e, TokenKind::Number);
            }
            i = e;
            continue;
        }
        if (is_word_byte(c)) {
            const size_t len = detail::match_word(text, i);
            push_word(i, i + len);
            i += len;
            continue;
        }
        // punctuation and symbols; identical .!? repeat as one token ("...")
        if (c == '.' || c == '!' || c == '?') {
            size_t e = i + 1;
            while (e < n && text[e] == c) ++e;
            push(i, e, TokenKind::Punctuation);
            i = e;
            continue;
        }
        static constexpr std::string_view punct = ",;:\"'()[]{}<>-_/\\";
        if (punct.find(c) != std::string_view::npos) {
            push(i, i + 1, TokenKind::Punctuation);
            ++i;
            continue;
        }
        push(i, i + 1, TokenKind::Symbol);
        ++i;
    }
    return out;
}

}  // namespace styloguard
