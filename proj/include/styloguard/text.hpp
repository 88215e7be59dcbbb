#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

namespace styloguard {

inline bool is_ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
// Multi-byte UTF-8 is carried through tokenization as word material.
inline bool is_word_byte(char c) {
    return is_ascii_alpha(c) || static_cast<unsigned char>(c) >= 0x80;
}

inline char to_lower_ascii(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string lower_ascii(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = to_lower_ascii(c);
    return out;
}

inline std::string_view trim_view(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && is_ascii_space(s[b])) ++b;
    while (e > b && is_ascii_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

struct DecodedText {
    std::string text;          // valid UTF-8; bad sequences replaced with U+FFFD
    uint64_t char_count = 0;   // code points, not bytes
    uint64_t replacements = 0;
};

// Lossy UTF-8 decode: validates byte sequences, substituting U+FFFD for
// malformed ones, and counts code points in the same pass.
inline DecodedText sanitize_utf8(std::string_view bytes) {
    DecodedText out;
    out.text.reserve(bytes.size());
    size_t i = 0;
    const size_t n = bytes.size();
    auto bad = [&out]() {
        out.text += "\xEF\xBF\xBD";
        ++out.replacements;
        ++out.char_count;
    };
    while (i < n) {
        const unsigned char b0 = static_cast<unsigned char>(bytes[i]);
        if (b0 < 0x80) {
            out.text += static_cast<char>(b0);
            ++out.char_count;
            ++i;
            continue;
        }
        int len = 0;
        uint32_t min_cp = 0;
        if ((b0 & 0xE0) == 0xC0) { len = 2; min_cp = 0x80; }
        else if ((b0 & 0xF0) == 0xE0) { len = 3; min_cp = 0x800; }
        else if ((b0 & 0xF8) == 0xF0) { len = 4; min_cp = 0x10000; }
        else { bad(); ++i; continue; }
        if (i + len > n) { bad(); ++i; continue; }
        uint32_t cp = b0 & (0xFF >> (len + 1));
        bool ok = true;
        for (int k = 1; k < len; ++k) {
            const unsigned char bk = static_cast<unsigned char>(bytes[i + k]);
            if ((bk & 0xC0) != 0x80) { ok = false; break; }
            cp = (cp << 6) | (bk & 0x3F);
        }
        if (!ok || cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            bad();
            ++i;
            continue;
        }
        out.text.append(bytes.substr(i, len));
        ++out.char_count;
        i += len;
    }
    return out;
}

// Code points in a string already known to be valid UTF-8.
inline uint64_t utf8_length(std::string_view s) {
    uint64_t n = 0;
    for (char c : s)
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
    return n;
}

}  // namespace styloguard
