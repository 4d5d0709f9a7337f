#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "binomial.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace bonfbounds {

/// Identity kernels accumulate in 128 bits; at these caps every partial sum fits.
inline constexpr int kIdentityCap = 60;

namespace detail {

inline void require_identity_cap(std::initializer_list<std::int64_t> args, const char* what) {
    for (auto v : args) {
        if (v > kIdentityCap) {
            throw overflow_error(std::string(what) + ": parameter " + std::to_string(v) +
                                 " exceeds identity kernel capacity " +
                                 std::to_string(kIdentityCap));
        }
    }
}

constexpr int sign_of_power(std::int64_t e) noexcept { return (e % 2 == 0) ? 1 : -1; }

}  // namespace detail

/// Evaluates sum_{j=r}^{m} (-1)^{r+j} C(j-1, r-1) C(m, j) term by term.
/// The indicator identity says this is 1 when m >= r and 0 otherwise.
inline wide_int lemma1_sum(std::int64_t m, std::int64_t r) {
    if (m < 0 || r <= 0) throw domain_error("lemma1_sum requires m >= 0 and r > 0");
    detail::require_identity_cap({m, r}, "lemma1_sum");
    wide_int total = 0;
    for (std::int64_t j = r; j <= m; ++j) {
        const wide_int term = static_cast<wide_int>(binom(j - 1, r - 1)) * binom(m, j);
        total = detail::add_checked(total, detail::sign_of_power(r + j) * term, "lemma1_sum");
    }
    return total;
}

struct TailIdentity {
    wide_int lhs;
    wide_int rhs;
};

/// Both sides of the tail identity, evaluated independently:
///   lhs = sum_{j=k+1}^{m} (-1)^j C(j-1, r-1) C(m, j)
///   rhs = (-1)^{k+1} sum_{i=1}^{r} C(k-i, r-i) C(m-i, k-i+1)
inline TailIdentity tail_identity(std::int64_t m, std::int64_t k, std::int64_t r) {
    if (m < 0 || k < 0 || r < 0) throw domain_error("tail_identity requires m, k, r >= 0");
    if (k < r) throw domain_error("tail_identity requires k >= r");
    detail::require_identity_cap({m, k, r}, "tail_identity");
    TailIdentity out{0, 0};
    for (std::int64_t j = k + 1; j <= m; ++j) {
        const wide_int term = static_cast<wide_int>(binom(j - 1, r - 1)) * binom(m, j);
        out.lhs = detail::add_checked(out.lhs, detail::sign_of_power(j) * term, "tail_identity");
    }
    wide_int inner = 0;
    for (std::int64_t i = 1; i <= r; ++i) {
        const wide_int term = static_cast<wide_int>(binom(k - i, r - i)) * binom(m - i, k - i + 1);
        inner = detail::add_checked(inner, term, "tail_identity");
    }
    out.rhs = detail::sign_of_power(k + 1) * inner;
    return out;
}

namespace detail {

inline void require_coefficient_domain(std::int64_t n, std::int64_t k, std::int64_t r,
                                       const char* what) {
    if (!(1 <= r && r <= k && k < n)) {
        throw domain_error(std::string(what) + " requires 1 <= r <= k < n (got n=" +
                           std::to_string(n) + ", k=" + std::to_string(k) +
                           ", r=" + std::to_string(r) + ")");
    }
}

}  // namespace detail

/// alpha = sum_{i=1}^{r} C(k-i, r-i) C(k+1, i) / C(n, i): the largest
/// coefficient c for which partial +/- c * S_{k+1} is valid for every system
/// on n events.
inline Rational alpha_coefficient(std::int64_t n, std::int64_t k, std::int64_t r) {
    detail::require_coefficient_domain(n, k, r, "alpha_coefficient");
    Rational total{0};
    for (std::int64_t i = 1; i <= r; ++i) {
        total += Rational(static_cast<wide_int>(binom(k - i, r - i)) * binom(k + 1, i),
                          static_cast<wide_int>(binom(n, i)));
    }
    return total;
}

/// The Galambos form (sum_{j=0}^{k-r} (-1)^j C(r+j-1, r-1) C(n, r+j) - 1) / C(n, k+1)
/// exactly as usually printed, without sign normalization.
inline Rational galambos_coefficient_unsigned(std::int64_t n, std::int64_t k, std::int64_t r) {
    detail::require_coefficient_domain(n, k, r, "galambos_coefficient");
    wide_int inner = 0;
    for (std::int64_t j = 0; j <= k - r; ++j) {
        const wide_int term = static_cast<wide_int>(binom(r + j - 1, r - 1)) * binom(n, r + j);
        inner = detail::add_checked(inner, detail::sign_of_power(j) * term, "galambos_coefficient");
    }
    return Rational(inner - 1, static_cast<wide_int>(binom(n, k + 1)));
}

/// Galambos coefficient normalized by (-1)^{r+k}; equal to alpha_coefficient.
inline Rational galambos_coefficient(std::int64_t n, std::int64_t k, std::int64_t r) {
    const Rational raw = galambos_coefficient_unsigned(n, k, r);
    return detail::sign_of_power(r + k) == 1 ? raw : -raw;
}

/// Probability that, in a uniformly random order, j_s is the only one of
/// j_1..j_s placed after all of i_1..i_k: k / ((k+s)(k+s-1)).
inline Rational permutation_weight(std::int64_t k, std::int64_t s) {
    if (k < 1 || s < 1) throw domain_error("permutation_weight requires k >= 1 and s >= 1");
    return Rational(static_cast<wide_int>(k), static_cast<wide_int>(k + s) * (k + s - 1));
}

inline constexpr int kLemma4EnumerationCap = 8;

/// Same probability as permutation_weight, by counting all (k+s)! relative
/// orders of the k + s indices involved.
inline Rational lemma4_enumerated(int k, int s, int cap = kLemma4EnumerationCap) {
    if (k < 1 || s < 1) throw domain_error("lemma4_enumerated requires k >= 1 and s >= 1");
    if (k + s > cap) {
        throw domain_error("lemma4_enumerated: k + s = " + std::to_string(k + s) +
                           " exceeds enumeration cap " + std::to_string(cap));
    }
    // Labels 0..k-1 are the i's; k..k+s-1 are j_1..j_s.
    std::vector<int> order(static_cast<std::size_t>(k + s));
    std::iota(order.begin(), order.end(), 0);
    std::int64_t hits = 0;
    std::int64_t total = 0;
    do {
        ++total;
        std::vector<int> position(order.size());
        for (std::size_t p = 0; p < order.size(); ++p) {
            position[static_cast<std::size_t>(order[p])] = static_cast<int>(p);
        }
        const int last_i = *std::max_element(position.begin(), position.begin() + k);
        bool ok = position[static_cast<std::size_t>(k + s - 1)] > last_i;
        for (int j = k; ok && j < k + s - 1; ++j) {
            if (position[static_cast<std::size_t>(j)] > last_i) ok = false;
        }
        if (ok) ++hits;
    } while (std::next_permutation(order.begin(), order.end()));
    return Rational(static_cast<wide_int>(hits), static_cast<wide_int>(total));
}

}  // namespace bonfbounds
