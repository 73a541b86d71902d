#pragma once

#include <cstdint>
#include <string_view>

#include "ctxctr/errors.hpp"

namespace ctxctr {

// FNV-1a 64-bit. Bit-exact and trivially portable; used for all feature
// string hashing so indices are reproducible across languages.
inline constexpr std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// index = FNV1a64(field_name . 0x1F . value) mod 2^hash_bits. The 0x1F unit
// separator keeps ("ab","c") and ("a","bc") from aliasing.
inline std::uint32_t hash_feature(std::string_view field_name, std::string_view value,
                                  std::uint32_t hash_bits) {
    if (hash_bits < 8 || hash_bits > 30) throw ConfigError("hash_bits must be in [8, 30]");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto absorb = [&h](std::string_view s) {
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
    };
    absorb(field_name);
    h ^= 0x1FULL;
    h *= 0x100000001b3ULL;
    absorb(value);
    return static_cast<std::uint32_t>(h & ((1ULL << hash_bits) - 1));
}

} // namespace ctxctr
