#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace cbandit {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Mixes an index and any number of string tags into a stream seed. Depends
/// only on the arguments, so parallel workers derive identical streams.
template <typename... Tags>
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, Tags... tags) {
    std::uint64_t h = splitmix64(index ^ 0x5851f42d4c957f2dULL);
    ((h = splitmix64(h ^ hash_tag(std::string_view(tags)))), ...);
    return base ^ h;
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline std::uint64_t uniform_index(Rng& rng, std::uint64_t size) {
    return std::uniform_int_distribution<std::uint64_t>(0, size - 1)(rng);
}

/// Index drawn from a probability vector (entries sum to 1).
inline int sample_categorical(Rng& rng, std::span<const double> probs) {
    const double u = uniform01(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return static_cast<int>(i);
    }
    // u landed in the rounding slack above the last cumulative sum
    for (std::size_t i = probs.size(); i-- > 0;) {
        if (probs[i] > 0.0) return static_cast<int>(i);
    }
    return 0;
}

inline std::vector<double> sample_dirichlet_flat(Rng& rng, int dim) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    std::gamma_distribution<double> gamma(1.0, 1.0);
    double total = 0.0;
    for (auto& x : v) {
        x = gamma(rng);
        total += x;
    }
    for (auto& x : v) x /= total;
    return v;
}

/// `count` distinct values from [0, population), ascending (Floyd's algorithm).
inline std::vector<std::uint64_t> sample_without_replacement(Rng& rng, std::uint64_t population,
                                                             std::uint64_t count) {
    if (count > population) throw std::invalid_argument("sample_without_replacement: count > population");
    std::set<std::uint64_t> chosen;
    for (std::uint64_t j = population - count; j < population; ++j) {
        const std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    return {chosen.begin(), chosen.end()};
}

}  // namespace cbandit
