#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "binomial.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "subsets.hpp"

namespace bonfbounds {

/// Event systems address subsets through 64-bit masks and int64 binomials.
inline constexpr int kMaxEvents = 62;
/// Joint distributions enumerate all 2^n atoms.
inline constexpr int kMaxJointEvents = 20;
inline constexpr double kMonotonicityTolerance = 1e-12;

inline std::string format_subset(std::span<const int> subset) {
    std::string out = "{";
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(subset[i]);
    }
    return out + "}";
}

struct Intersection {
    std::vector<int> subset;  // 1-based event indices
    double p = 0.0;
};

/// n events with P(A_{i_1} ... A_{i_j}) known for every subset of size 1..depth.
/// Entries are stored per order in colex rank; a missing entry is NaN and is
/// reported by validate().
class EventSystem {
public:
    EventSystem(int n, int depth) : n_(n), depth_(depth) {
        if (n < 1 || n > kMaxEvents) {
            throw domain_error("event count must be in [1, " + std::to_string(kMaxEvents) + "]");
        }
        if (depth < 1 || depth > n) throw domain_error("depth must satisfy 1 <= depth <= n");
        table_.resize(static_cast<std::size_t>(depth));
        for (int j = 1; j <= depth; ++j) {
            table_[static_cast<std::size_t>(j - 1)].assign(
                static_cast<std::size_t>(binom(n, j)), std::numeric_limits<double>::quiet_NaN());
        }
    }

    /// Builds a table from explicit entries. Subsets are canonicalized by
    /// sorting; malformed or duplicated subsets throw validation_error.
    /// Completeness and value checks are left to validate().
    static EventSystem from_entries(int n, int depth, std::span<const Intersection> entries) {
        EventSystem sys(n, depth);
        for (const auto& e : entries) {
            std::vector<int> subset = e.subset;
            std::sort(subset.begin(), subset.end());
            if (subset.empty() || static_cast<int>(subset.size()) > depth) {
                throw validation_error("subset " + format_subset(subset) +
                                       " has size outside 1..depth");
            }
            if (std::adjacent_find(subset.begin(), subset.end()) != subset.end()) {
                throw validation_error("subset " + format_subset(subset) + " repeats an index");
            }
            if (subset.front() < 1 || subset.back() > n) {
                throw validation_error("subset " + format_subset(subset) +
                                       " has an index outside 1.." + std::to_string(n));
            }
            double& slot = sys.slot(subset);
            if (!std::isnan(slot)) {
                throw validation_error("subset " + format_subset(subset) + " given twice");
            }
            slot = e.p;
        }
        return sys;
    }

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int depth() const noexcept { return depth_; }

    /// Probability of the intersection over a sorted 1-based subset; the
    /// empty intersection is the whole space.
    [[nodiscard]] double prob(std::span<const int> sorted_subset) const {
        if (sorted_subset.empty()) return 1.0;
        const double p = raw(sorted_subset);
        if (std::isnan(p)) {
            throw validation_error("missing intersection probability for " +
                                   format_subset(sorted_subset));
        }
        return p;
    }

    /// Stored value (NaN when missing) without the completeness check.
    [[nodiscard]] double raw(std::span<const int> sorted_subset) const {
        const auto size = static_cast<int>(sorted_subset.size());
        if (size > depth_) {
            throw insufficient_data_error("intersection of order " + std::to_string(size) +
                                          " requested but depth is " + std::to_string(depth_));
        }
        return table_[static_cast<std::size_t>(size - 1)]
                     [static_cast<std::size_t>(colex_rank(sorted_subset))];
    }

    void set(std::span<const int> sorted_subset, double p) { slot(sorted_subset) = p; }

    [[nodiscard]] std::span<const double> order(int j) const {
        return table_.at(static_cast<std::size_t>(j - 1));
    }

    /// f(subset, p) for every stored subset, by order then lexicographically.
    template <typename F>
    void for_each_entry(F&& f) const {
        for (int j = 1; j <= depth_; ++j) {
            for_each_subset(n_, j, [&](std::span<const int> s) { f(s, raw(s)); });
        }
    }

    friend bool operator==(const EventSystem& a, const EventSystem& b) {
        if (a.n_ != b.n_ || a.depth_ != b.depth_) return false;
        for (std::size_t j = 0; j < a.table_.size(); ++j) {
            for (std::size_t i = 0; i < a.table_[j].size(); ++i) {
                const double x = a.table_[j][i];
                const double y = b.table_[j][i];
                if (!(x == y || (std::isnan(x) && std::isnan(y)))) return false;
            }
        }
        return true;
    }

private:
    double& slot(std::span<const int> sorted_subset) {
        const auto size = static_cast<int>(sorted_subset.size());
        if (size < 1 || size > depth_) {
            throw insufficient_data_error("subset order " + std::to_string(size) +
                                          " outside 1..depth");
        }
        return table_[static_cast<std::size_t>(size - 1)]
                     [static_cast<std::size_t>(colex_rank(sorted_subset))];
    }

    int n_;
    int depth_;
    std::vector<std::vector<double>> table_;
};

/// Probability mass over all 2^n outcomes; bit i-1 of an atom index is set
/// iff event i occurs.
class JointDistribution {
public:
    JointDistribution(int n, std::vector<double> mass, double tolerance = 1e-12)
        : n_(n), mass_(std::move(mass)) {
        if (n < 1 || n > kMaxJointEvents) {
            throw domain_error("joint distributions support 1 <= n <= " +
                               std::to_string(kMaxJointEvents));
        }
        if (mass_.size() != (std::size_t{1} << n)) {
            throw validation_error("joint distribution over " + std::to_string(n) +
                                   " events needs " + std::to_string(std::size_t{1} << n) +
                                   " atoms, got " + std::to_string(mass_.size()));
        }
        CompensatedSum total;
        for (std::size_t b = 0; b < mass_.size(); ++b) {
            if (!std::isfinite(mass_[b]) || mass_[b] < 0.0) {
                throw validation_error("atom " + std::to_string(b) + " has invalid mass");
            }
            total += mass_[b];
        }
        if (std::fabs(total.value() - 1.0) > tolerance) {
            throw validation_error("atom masses sum to " + std::to_string(total.value()) +
                                   ", expected 1");
        }
    }

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] std::span<const double> mass() const noexcept { return mass_; }

private:
    int n_;
    std::vector<double> mass_;
};

/// Binomial moments S_1..S_depth.
class SSums {
public:
    explicit SSums(std::vector<double> values) : values_(std::move(values)) {}

    [[nodiscard]] int depth() const noexcept { return static_cast<int>(values_.size()); }
    /// S_j for 1 <= j <= depth.
    [[nodiscard]] double at(int j) const {
        if (j < 1 || j > depth()) {
            throw insufficient_data_error("S_" + std::to_string(j) + " unavailable (depth " +
                                          std::to_string(depth()) + ")");
        }
        return values_[static_cast<std::size_t>(j - 1)];
    }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

private:
    std::vector<double> values_;
};

enum class ViolationKind { completeness, range, monotonicity };
enum class Severity { error, warning };

struct Violation {
    ViolationKind kind;
    Severity severity;
    std::vector<std::vector<int>> subsets;
    std::string message;
};

inline const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::completeness: return "completeness";
        case ViolationKind::range: return "range";
        case ViolationKind::monotonicity: return "monotonicity";
    }
    return "unknown";
}

/// All invariant violations, errors and sub-tolerance warnings alike.
inline std::vector<Violation> check_system(const EventSystem& sys) {
    std::vector<Violation> out;
    sys.for_each_entry([&](std::span<const int> s, double p) {
        std::vector<int> subset(s.begin(), s.end());
        if (std::isnan(p)) {
            out.push_back({ViolationKind::completeness, Severity::error, {subset},
                           "missing intersection " + format_subset(s)});
            return;
        }
        if (!(p >= 0.0 && p <= 1.0)) {
            out.push_back({ViolationKind::range, Severity::error, {subset},
                           "probability of " + format_subset(s) + " outside [0,1]"});
        }
        if (s.size() < 2) return;
        std::vector<int> parent;
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            parent.clear();
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (i != drop) parent.push_back(s[i]);
            }
            const double q = sys.raw(parent);
            if (std::isnan(q) || !(p > q)) continue;
            const Severity sev =
                p - q > kMonotonicityTolerance ? Severity::error : Severity::warning;
            out.push_back({ViolationKind::monotonicity, sev, {subset, parent},
                           "P" + format_subset(s) + " exceeds P" + format_subset(parent)});
        }
    });
    return out;
}

/// Violations that break the EventSystem invariants; empty iff valid.
inline std::vector<Violation> validate(const EventSystem& sys) {
    auto all = check_system(sys);
    std::erase_if(all, [](const Violation& v) { return v.severity != Severity::error; });
    return all;
}

inline std::vector<Violation> validation_warnings(const EventSystem& sys) {
    auto all = check_system(sys);
    std::erase_if(all, [](const Violation& v) { return v.severity != Severity::warning; });
    return all;
}

/// S_j = sum of the stored order-j intersection probabilities.
inline SSums s_sums(const EventSystem& sys) {
    std::vector<double> values;
    for (int j = 1; j <= sys.depth(); ++j) {
        CompensatedSum acc;
        for (double p : sys.order(j)) {
            if (std::isnan(p)) {
                throw validation_error("incomplete table: order-" + std::to_string(j) +
                                       " intersections missing");
            }
            acc += p;
        }
        values.push_back(acc.value());
    }
    return SSums(std::move(values));
}

namespace detail {

inline void require_alphas(std::span<const double> alphas) {
    if (alphas.empty()) throw domain_error("at least one event probability is required");
    for (double a : alphas) {
        if (!(a >= 0.0 && a <= 1.0)) throw domain_error("event probability outside [0,1]");
    }
}

}  // namespace detail

/// Product-form system: P(A_{i_1} ... A_{i_j}) = alpha_{i_1} ... alpha_{i_j}.
inline EventSystem from_independent(std::span<const double> alphas, int depth) {
    detail::require_alphas(alphas);
    const int n = static_cast<int>(alphas.size());
    if (depth < 1 || depth > n) throw domain_error("depth must satisfy 1 <= depth <= n");
    EventSystem sys(n, depth);
    for (int j = 1; j <= depth; ++j) {
        for_each_subset(n, j, [&](std::span<const int> s) {
            double p = 1.0;
            for (int idx : s) p *= alphas[static_cast<std::size_t>(idx - 1)];
            sys.set(s, p);
        });
    }
    return sys;
}

/// Product measure with the given marginals.
inline JointDistribution independent_joint(std::span<const double> alphas) {
    detail::require_alphas(alphas);
    const int n = static_cast<int>(alphas.size());
    if (n > kMaxJointEvents) {
        throw domain_error("joint distributions support n <= " + std::to_string(kMaxJointEvents));
    }
    std::vector<double> mass(std::size_t{1} << n);
    for (std::size_t b = 0; b < mass.size(); ++b) {
        double m = 1.0;
        for (int i = 0; i < n; ++i) {
            const double a = alphas[static_cast<std::size_t>(i)];
            m *= ((b >> i) & 1U) ? a : 1.0 - a;
        }
        mass[b] = m;
    }
    return {n, std::move(mass)};
}

/// Intersection table of a joint distribution up to the given depth.
inline EventSystem from_joint(const JointDistribution& joint, int depth) {
    const int n = joint.n();
    if (depth < 1 || depth > n) throw domain_error("depth must satisfy 1 <= depth <= n");
    // Superset sums: upper[mask] = total mass of atoms containing mask.
    std::vector<double> upper(joint.mass().begin(), joint.mass().end());
    for (int bit = 0; bit < n; ++bit) {
        const std::size_t b = std::size_t{1} << bit;
        for (std::size_t mask = 0; mask < upper.size(); ++mask) {
            if (!(mask & b)) upper[mask] += upper[mask | b];
        }
    }
    EventSystem sys(n, depth);
    for (int j = 1; j <= depth; ++j) {
        for_each_subset(n, j, [&](std::span<const int> s) {
            sys.set(s, std::min(1.0, upper[subset_mask(s)]));
        });
    }
    return sys;
}

/// 2^n i.i.d. positive draws normalized to sum 1; deterministic in (n, seed).
inline JointDistribution random_joint(int n, std::uint64_t seed) {
    if (n < 1 || n > kMaxJointEvents) {
        throw domain_error("random_joint supports 1 <= n <= " + std::to_string(kMaxJointEvents));
    }
    SeededRng rng(derive_seed(seed, static_cast<std::uint64_t>(n)));
    std::vector<double> mass(std::size_t{1} << n);
    CompensatedSum total;
    for (double& m : mass) {
        m = rng.uniform_open0();
        total += m;
    }
    const double norm = total.value();
    for (double& m : mass) m /= norm;
    return {n, std::move(mass)};
}

namespace detail {

inline void require_permutation(std::span<const int> perm, int n) {
    if (static_cast<int>(perm.size()) != n) {
        throw domain_error("labeling must have exactly n = " + std::to_string(n) + " entries");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int v : perm) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
            throw domain_error("labeling is not a bijection on 1.." + std::to_string(n));
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

}  // namespace detail

/// Read-only view of a system under a renumbering: event i of the view is
/// event perm[i-1] of the underlying system.
class RelabeledView {
public:
    RelabeledView(const EventSystem& sys, std::span<const int> perm) : sys_(&sys), perm_(perm) {
        detail::require_permutation(perm, sys.n());
    }

    [[nodiscard]] int n() const noexcept { return sys_->n(); }
    [[nodiscard]] int depth() const noexcept { return sys_->depth(); }

    [[nodiscard]] double prob(std::span<const int> sorted_subset) const {
        scratch_.clear();
        for (int i : sorted_subset) scratch_.push_back(perm_[static_cast<std::size_t>(i - 1)]);
        std::sort(scratch_.begin(), scratch_.end());
        return sys_->prob(scratch_);
    }

private:
    const EventSystem* sys_;
    std::span<const int> perm_;
    mutable std::vector<int> scratch_;
};

/// Entry for S in the result equals the entry for {perm(i) : i in S}.
inline EventSystem relabel(const EventSystem& sys, std::span<const int> perm) {
    detail::require_permutation(perm, sys.n());
    EventSystem out(sys.n(), sys.depth());
    std::vector<int> mapped;
    for (int j = 1; j <= sys.depth(); ++j) {
        for_each_subset(sys.n(), j, [&](std::span<const int> s) {
            mapped.clear();
            for (int i : s) mapped.push_back(perm[static_cast<std::size_t>(i - 1)]);
            std::sort(mapped.begin(), mapped.end());
            out.set(s, sys.raw(mapped));
        });
    }
    return out;
}

}  // namespace bonfbounds
