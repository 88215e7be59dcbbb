#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace styloguard {

// FNV-1a, used to fingerprint lexicon files, manifests and vocabularies in
// reports. Not cryptographic; reproducibility bookkeeping only.
inline uint64_t fnv1a64(std::string_view bytes, uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

}  // namespace styloguard
