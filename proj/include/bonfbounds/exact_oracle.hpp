#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "binomial.hpp"
#include "errors.hpp"
#include "event_model.hpp"
#include "numeric.hpp"

namespace bonfbounds {

/// Distribution of X, the number of events that occur: p_0..p_n.
struct CountPmf {
    std::vector<double> p;

    [[nodiscard]] int n() const noexcept { return static_cast<int>(p.size()) - 1; }
};

inline CountPmf count_pmf(const JointDistribution& joint) {
    const int n = joint.n();
    std::vector<CompensatedSum> acc(static_cast<std::size_t>(n) + 1);
    const auto mass = joint.mass();
    for (std::size_t b = 0; b < mass.size(); ++b) {
        acc[static_cast<std::size_t>(std::popcount(b))] += mass[b];
    }
    CountPmf out;
    out.p.reserve(acc.size());
    for (const auto& a : acc) out.p.push_back(a.value());
    return out;
}

/// Exact P(X >= r) for 0 <= r <= n + 1.
inline double prob_at_least(const CountPmf& pmf, int r) {
    if (r < 0 || r > pmf.n() + 1) throw domain_error("prob_at_least requires 0 <= r <= n + 1");
    CompensatedSum acc;
    for (int x = pmf.n(); x >= r; --x) acc += pmf.p[static_cast<std::size_t>(x)];
    return acc.value();
}

inline double prob_at_least(const JointDistribution& joint, int r) {
    return prob_at_least(count_pmf(joint), r);
}

/// E[C(X - i, m)] under the extended binomial convention.
inline double expected_binom_shifted(const CountPmf& pmf, int i, int m) {
    if (i < 0 || m < 0) throw domain_error("expected_binom_shifted requires i, m >= 0");
    CompensatedSum acc;
    for (int x = 0; x <= pmf.n(); ++x) {
        const std::int64_t c = binom(x - i, m);
        if (c != 0) acc += static_cast<double>(c) * pmf.p[static_cast<std::size_t>(x)];
    }
    return acc.value();
}

inline double expected_binom_shifted(const JointDistribution& joint, int i, int m) {
    return expected_binom_shifted(count_pmf(joint), i, m);
}

/// Full inclusion-exclusion: sum_{j=r}^{n} (-1)^{r+j} C(j-1, r-1) S_j.
inline double inclusion_exclusion_exact(const SSums& s, int r, int n) {
    if (s.depth() < n) {
        throw domain_error("inclusion_exclusion_exact needs S_1..S_n (depth " +
                           std::to_string(s.depth()) + " < n = " + std::to_string(n) + ")");
    }
    if (r < 1 || r > n) throw domain_error("inclusion_exclusion_exact requires 1 <= r <= n");
    CompensatedSum acc;
    for (int j = r; j <= n; ++j) {
        const double sign = ((r + j) % 2 == 0) ? 1.0 : -1.0;
        acc += sign * static_cast<double>(binom(j - 1, r - 1)) * s.at(j);
    }
    return acc.value();
}

struct Decomposition {
    double partial;        ///< truncated alternating sum through S_k
    double remainder;      ///< sum_{i=1}^{r} C(k-i, r-i) E[C(X-i, k-i+1)], nonnegative
    double reconstructed;  ///< partial + (-1)^{r+k+1} remainder
};

/// Splits P(X >= r) into the order-k truncation plus its signed remainder,
/// all evaluated on the joint distribution. k > n is allowed (S_j = 0 for j > n).
inline Decomposition theorem2_decomposition(const JointDistribution& joint, int r, int k) {
    if (r < 1) throw domain_error("theorem2_decomposition requires r >= 1");
    if (k < r) throw domain_error("theorem2_decomposition requires k >= r");
    const CountPmf pmf = count_pmf(joint);
    CompensatedSum partial;
    for (int j = r; j <= k; ++j) {
        const double sign = ((r + j) % 2 == 0) ? 1.0 : -1.0;
        const double s_j = expected_binom_shifted(pmf, 0, j);
        partial += sign * static_cast<double>(binom(j - 1, r - 1)) * s_j;
    }
    CompensatedSum remainder;
    for (int i = 1; i <= r; ++i) {
        remainder += static_cast<double>(binom(k - i, r - i)) *
                     expected_binom_shifted(pmf, i, k - i + 1);
    }
    const double sign = ((r + k + 1) % 2 == 0) ? 1.0 : -1.0;
    CompensatedSum total;
    total += partial.value();
    total += sign * remainder.value();
    return {partial.value(), remainder.value(), total.value()};
}

}  // namespace bonfbounds
