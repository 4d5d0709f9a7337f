#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace bonfbounds {

/// Pascal triangle of C(t, s) for 0 <= s <= t <= max_t, built by the
/// additive recurrence. Out-of-triangle lookups follow the extended
/// convention: C(t, s) = 0 whenever min(s, t) < 0 or s > t.
class BinomialTable {
public:
    /// Largest t whose whole row fits in int64; C(67, 33) is the first entry above 2^63 - 1.
    static constexpr int kMaxCapacity = 66;

    explicit BinomialTable(int max_t = kMaxCapacity) : max_t_(max_t) {
        if (max_t < 0 || max_t > kMaxCapacity) {
            throw domain_error("BinomialTable capacity must be in [0, " +
                               std::to_string(kMaxCapacity) + "]");
        }
        entries_.reserve(static_cast<std::size_t>((max_t + 1) * (max_t + 2) / 2));
        for (int t = 0; t <= max_t; ++t) {
            for (int s = 0; s <= t; ++s) {
                if (s == 0 || s == t) {
                    entries_.push_back(1);
                } else {
                    entries_.push_back(at(t - 1, s - 1) + at(t - 1, s));
                }
            }
        }
    }

    [[nodiscard]] int max_t() const noexcept { return max_t_; }

    /// C(t, s) under the extended convention; throws when t > max_t and the
    /// value is not trivially zero.
    [[nodiscard]] std::int64_t operator()(int t, int s) const {
        if (s < 0 || t < 0 || s > t) return 0;
        if (t > max_t_) {
            throw overflow_error("C(" + std::to_string(t) + "," + std::to_string(s) +
                                 ") outside table capacity " + std::to_string(max_t_));
        }
        return at(t, s);
    }

private:
    [[nodiscard]] std::int64_t at(int t, int s) const noexcept {
        return entries_[static_cast<std::size_t>(t * (t + 1) / 2 + s)];
    }

    int max_t_;
    std::vector<std::int64_t> entries_;
};

inline const BinomialTable& shared_binomial_table() {
    static const BinomialTable table;
    return table;
}

/// Extended binomial coefficient. Values that do not fit int64 throw
/// overflow_error instead of wrapping.
inline std::int64_t binom(std::int64_t t, std::int64_t s) {
    if (s < 0 || t < 0 || s > t) return 0;
    if (t <= BinomialTable::kMaxCapacity) {
        return shared_binomial_table()(static_cast<int>(t), static_cast<int>(s));
    }
    if (s > t - s) s = t - s;
    wide_int value = 1;
    for (std::int64_t i = 0; i < s; ++i) {
        // value * (t - i) / (i + 1) == C(t, i + 1) exactly.
        value = detail::mul_checked(value, t - i, "binom") / (i + 1);
        if (value > std::numeric_limits<std::int64_t>::max()) {
            throw overflow_error("C(" + std::to_string(t) + "," + std::to_string(s) +
                                 ") exceeds 64-bit range");
        }
    }
    return static_cast<std::int64_t>(value);
}

}  // namespace bonfbounds
