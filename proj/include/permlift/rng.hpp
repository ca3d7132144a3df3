#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace permlift {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Independent stream for (seed, tags...). Instance i of an experiment always
/// draws from stream(seed, i), so chunked and serial runs see the same numbers.
inline Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags = {})
{
    std::uint64_t h = splitmix64(seed);
    for (auto t : tags)
        h = splitmix64(h ^ splitmix64(t + 0x632be59bd9b4e019ull));
    return Rng(h);
}

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound)
{
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}
