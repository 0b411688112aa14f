#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbandit/action.hpp"

namespace cbandit {

// Exact binomials and lexicographic ranking of subsets and actions.
//
// Subsets are sorted 0-based index lists ordered lexicographically. Actions of
// size m over n nodes with l values are ranked as
//   rank = subset_rank * l^m + value_code,
// where value_code reads (values - 1) as base-l digits, most significant first.

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error("cbandit: 64-bit overflow in " + std::to_string(a) + " * " +
                                  std::to_string(b));
    }
    return out;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) out = checked_mul(out, base);
    return out;
}

/// C(n, k); 0 when k > n. Throws std::overflow_error if the result does not fit.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    // result_i = C(n - k + i, i) stays integral at every step; the gcd split
    // keeps intermediates from overflowing when the final value fits.
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        std::uint64_t num = n - k + i;
        std::uint64_t den = i;
        std::uint64_t g = std::gcd(result, den);
        std::uint64_t r = result / g;
        den /= g;
        num /= den;  // den now divides num, since result * num is divisible by i
        result = checked_mul(r, num);
    }
    return result;
}

/// |A_m| = C(n, m) * l^m.
inline std::uint64_t action_space_size(int n, int m, int l) {
    return checked_mul(binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m)),
                       checked_pow(static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(m)));
}

inline std::vector<NodeIndex> unrank_subset(std::uint64_t rank, int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::invalid_argument("unrank_subset: need 0 <= k <= n");
    const std::uint64_t total = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    if (rank >= total) {
        throw std::out_of_range("unrank_subset: rank " + std::to_string(rank) + " >= C(" +
                                std::to_string(n) + "," + std::to_string(k) + ")");
    }
    std::vector<NodeIndex> out;
    out.reserve(static_cast<std::size_t>(k));
    int next = 0;
    for (int slot = 0; slot < k; ++slot) {
        // Skip over blocks of subsets whose current element is smaller.
        for (;; ++next) {
            const std::uint64_t block = binomial(static_cast<std::uint64_t>(n - next - 1),
                                                 static_cast<std::uint64_t>(k - slot - 1));
            if (rank < block) break;
            rank -= block;
        }
        out.push_back(next++);
    }
    return out;
}

inline std::uint64_t rank_subset(const std::vector<NodeIndex>& subset, int n) {
    const int k = static_cast<int>(subset.size());
    std::uint64_t rank = 0;
    int next = 0;
    for (int slot = 0; slot < k; ++slot) {
        const int elem = subset[static_cast<std::size_t>(slot)];
        if (elem < next || elem >= n) throw std::invalid_argument("rank_subset: not a sorted subset of [n]");
        for (; next < elem; ++next) {
            rank += binomial(static_cast<std::uint64_t>(n - next - 1), static_cast<std::uint64_t>(k - slot - 1));
        }
        ++next;
    }
    return rank;
}

inline Action unrank_action(std::uint64_t rank, int n, int m, int l) {
    if (l < 1) throw std::invalid_argument("unrank_action: l must be >= 1");
    const std::uint64_t total = action_space_size(n, m, l);
    if (rank >= total) {
        throw std::out_of_range("unrank_action: rank " + std::to_string(rank) + " >= |A_m| = " +
                                std::to_string(total));
    }
    const std::uint64_t codes = checked_pow(static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(m));
    Action a;
    a.nodes = unrank_subset(rank / codes, n, m);
    a.values.assign(static_cast<std::size_t>(m), 1);
    std::uint64_t code = rank % codes;
    for (int i = m - 1; i >= 0; --i) {
        a.values[static_cast<std::size_t>(i)] = static_cast<Value>(code % static_cast<std::uint64_t>(l)) + 1;
        code /= static_cast<std::uint64_t>(l);
    }
    return a;
}

inline std::uint64_t rank_action(const Action& a, int n, int l) {
    if (a.nodes.size() != a.values.size()) throw std::invalid_argument("rank_action: size mismatch");
    std::uint64_t code = 0;
    for (Value v : a.values) {
        if (v < 1 || v > l) throw std::invalid_argument("rank_action: value outside [1, l]");
        code = code * static_cast<std::uint64_t>(l) + static_cast<std::uint64_t>(v - 1);
    }
    const std::uint64_t codes = checked_pow(static_cast<std::uint64_t>(l), a.values.size());
    return checked_mul(rank_subset(a.nodes, n), codes) + code;
}

}  // namespace cbandit
