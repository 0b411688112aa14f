#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cbandit/combinatorics.hpp"

namespace cbandit::bounds {

// Rate-only evaluators: constants and logarithmic factors are dropped.

inline constexpr const char* kRateCaveat = "rate only: constants and log factors omitted";

namespace detail {
inline double C(int n, int k) {
    return static_cast<double>(binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)));
}
inline double pw(double b, double e) { return std::pow(b, e); }

inline void check(int n, int l, int k, int m, std::uint64_t T) {
    if (l < 2) throw std::invalid_argument("bounds: need l >= 2");
    if (k < 0 || k > n) throw std::invalid_argument("bounds: need 0 <= k <= n");
    if (m < 1 || m > n) throw std::invalid_argument("bounds: need 1 <= m <= n");
    if (T < 1) throw std::invalid_argument("bounds: need T >= 1");
}
}  // namespace detail

/// Minimax lower-bound rate with known k (both regimes).
inline double lb_known_k(int n, int l, int k, int m, std::uint64_t T) {
    using namespace detail;
    check(n, l, k, m, T);
    const double t = static_cast<double>(T);
    if (m >= k) return std::sqrt(t * std::max(pw(l - 1, k) * C(n, k) / C(m, k), pw(l, k)));
    return std::sqrt(t * std::max(pw(l - 1, m) * C(n, m), pw(l, m)));
}

inline double ub_alg1(int n, int l, int k, int m, std::uint64_t T) {
    using namespace detail;
    check(n, l, k, m, T);
    const double t = static_cast<double>(T);
    if (m >= k) return std::sqrt(t * pw(l, k) * C(n, k) / C(m, k));
    return std::sqrt(t * pw(l, m) * C(n, m));
}

inline double ub_alg2(int n, int l, int k, int m, std::uint64_t T) {
    using namespace detail;
    check(n, l, k, m, T);
    const double lead = std::sqrt(static_cast<double>(T) * m / n);
    if (m >= k) return lead * pw(l, k - 0.5) * C(n, k) / C(m, k);
    return lead * pw(l, m - 0.5) * C(n, m);
}

/// Lower-bound rate on the product of the worst-case regrets at k1 and k2.
inline double lb_product_unknown(int n, int l, int k1, int k2, int m, std::uint64_t T) {
    using namespace detail;
    if (!(0 <= k1 && k1 < k2 && k2 <= m && m <= n)) throw std::invalid_argument("lb_product_unknown: need k1 < k2 <= m <= n");
    if (l < 2) throw std::invalid_argument("bounds: need l >= 2");
    return static_cast<double>(T) *
           std::max(pw(l - 1, k2) * C(n - k1, k2 - k1) / C(m - k1, k2 - k1), pw(l, k2));
}

struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Fraction of optimal arms in A_m for an instance with k reward parents.
inline Rational alpha_k(int n, int l, int k, int m) {
    if (l < 1 || k < 0 || k > n || m < 1 || m > n) throw std::invalid_argument("alpha_k: bad parameters");
    Rational r;
    if (m >= k) {
        r = {binomial(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k)),
             checked_mul(checked_pow(static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(k)),
                         binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)))};
    } else {
        r = {1, action_space_size(n, m, l)};
    }
    const auto g = std::gcd(r.num, r.den);
    return {r.num / g, r.den / g};
}

/// Number of uniformly drawn arms that contains an optimal one with
/// probability at least 1 - 1/sqrt(T): ln(sqrt(T)) / alpha_k.
inline double n_k(int n, int l, int k, int m, std::uint64_t T) {
    return 0.5 * std::log(static_cast<double>(T)) / alpha_k(n, l, k, m).value();
}

struct BoundReport {
    int n = 0, l = 0, k = 0, m = 0;
    std::uint64_t T = 0;
    double lower = 0.0;      // lb_known_k
    double upper_alg1 = 0.0;
    double upper_alg2 = 0.0;
    double alpha = 0.0;
    double n_k = 0.0;
    std::string regime;  // "m>=k" or "m<k"
    std::string caveat = kRateCaveat;
};

inline BoundReport make_report(int n, int l, int k, int m, std::uint64_t T) {
    BoundReport r;
    r.n = n;
    r.l = l;
    r.k = k;
    r.m = m;
    r.T = T;
    r.lower = lb_known_k(n, l, k, m, T);
    r.upper_alg1 = ub_alg1(n, l, k, m, T);
    r.upper_alg2 = ub_alg2(n, l, k, m, T);
    r.alpha = alpha_k(n, l, k, m).value();
    r.n_k = cbandit::bounds::n_k(n, l, k, m, T);
    r.regime = m >= k ? "m>=k" : "m<k";
    return r;
}

}  // namespace cbandit::bounds
