#pragma once

#include <cstdint>
#include <random>

namespace hhnet {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream seed for (seed, index); used for replicate splitting.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// Uniform on the open interval (0, 1) from the top 53 bits.
inline double uniform01(Rng &rng)
{
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform on (0, 1) as a pure function of (key, a, b). Lets two runs with
// different rates share the same underlying uniforms for every contact.
constexpr double hashed_uniform(std::uint64_t key, std::uint64_t a, std::uint64_t b)
{
    const std::uint64_t h = splitmix64(splitmix64(key ^ splitmix64(a)) + b);
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace hhnet
