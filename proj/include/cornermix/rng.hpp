#pragma once

#include <cstdint>
#include <random>

namespace cornermix {

// Seedable, splittable stream family: replicate i uses mt19937_64 seeded by
// splitmix64(seed ^ golden*i), so Monte Carlo results are reproducible and
// order-independent under any parallel schedule.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 derive_rng(uint64_t seed, uint64_t stream) {
    return std::mt19937_64(splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))));
}

inline const char* rng_name() { return "mt19937_64/splitmix64-derive"; }

}  // namespace cornermix
