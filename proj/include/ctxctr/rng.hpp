#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

// Counter-based deterministic randomness. Every draw is a pure function of a
// key (a chain of 64-bit parts), so values do not depend on evaluation order
// and are reproducible across runs and platforms.

namespace ctxctr::rng {

inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t key(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    for (std::uint64_t p : parts) h = mix64(h ^ p);
    return h;
}

// [0, 1)
inline constexpr double unit(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// (0, 1]
inline constexpr double unit_pos(std::uint64_t h) {
    return static_cast<double>((h >> 11) + 1) * 0x1.0p-53;
}

inline double uniform(std::initializer_list<std::uint64_t> parts) {
    return unit(key(parts));
}

inline std::uint64_t uniform_index(std::initializer_list<std::uint64_t> parts, std::uint64_t n) {
    return key(parts) % n;
}

// Standard normal via Box-Muller; consumes two sub-draws of the key.
inline double normal(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = key(parts);
    double u1 = unit_pos(mix64(h ^ 0x9e3779b97f4a7c15ULL));
    double u2 = unit(mix64(h ^ 0xc2b2ae3d27d4eb4fULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

} // namespace ctxctr::rng
