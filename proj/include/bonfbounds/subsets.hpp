#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <type_traits>
#include <vector>

#include "binomial.hpp"

namespace bonfbounds {

/// Calls f(std::span<const int>) for every strictly increasing k-tuple drawn
/// from {lo, ..., hi}, in lexicographic order. k == 0 yields one empty tuple;
/// k larger than the range yields nothing. Returns false if f asked to stop
/// (f may return void or bool; returning false stops the walk).
template <typename F>
bool for_each_subset_in(int lo, int hi, int k, F&& f) {
    const int size = hi - lo + 1;
    if (k < 0 || k > (size < 0 ? 0 : size)) return true;
    std::vector<int> cur(static_cast<std::size_t>(k));
    std::iota(cur.begin(), cur.end(), lo);
    while (true) {
        if constexpr (std::is_same_v<decltype(f(std::span<const int>(cur))), bool>) {
            if (!f(std::span<const int>(cur))) return false;
        } else {
            f(std::span<const int>(cur));
        }
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == hi - (k - 1 - i)) --i;
        if (i < 0) return true;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

/// Lexicographic walk over the k-subsets of {1, ..., n}.
template <typename F>
bool for_each_subset(int n, int k, F&& f) {
    return for_each_subset_in(1, n, k, std::forward<F>(f));
}

/// Colexicographic rank of a sorted 1-based subset among all subsets of the
/// same size; dense in [0, C(n, k)).
inline std::int64_t colex_rank(std::span<const int> sorted_subset) {
    std::int64_t rank = 0;
    for (std::size_t i = 0; i < sorted_subset.size(); ++i) {
        rank += binom(sorted_subset[i] - 1, static_cast<std::int64_t>(i) + 1);
    }
    return rank;
}

inline std::uint64_t subset_mask(std::span<const int> subset) {
    std::uint64_t mask = 0;
    for (int idx : subset) mask |= std::uint64_t{1} << (idx - 1);
    return mask;
}

}  // namespace bonfbounds
