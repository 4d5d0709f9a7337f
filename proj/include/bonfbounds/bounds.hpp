#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "binomial.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "event_model.hpp"
#include "exact_oracle.hpp"
#include "numeric.hpp"
#include "subsets.hpp"

namespace bonfbounds {

enum class Method { classical, theorem3, theorem4, theorem5 };
enum class Direction { lower, upper };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::classical: return "classical";
        case Method::theorem3: return "theorem3";
        case Method::theorem4: return "theorem4";
        case Method::theorem5: return "theorem5";
    }
    return "unknown";
}

inline const char* to_string(Direction d) { return d == Direction::lower ? "lower" : "upper"; }

/// Truncating after an even number of alternating terms (r + k odd) bounds from below.
constexpr Direction direction_for(int r, int k) noexcept {
    return ((r + k) % 2 != 0) ? Direction::lower : Direction::upper;
}

struct BoundResult {
    Method method = Method::classical;
    int r = 1;
    int k = 1;
    Direction direction = Direction::lower;
    double partial = 0.0;
    double correction = 0.0;
    double value = 0.0;
    double clamped = 0.0;
    std::string labeling_note;
};

inline BoundResult make_bound(Method method, int r, int k, double partial, double correction,
                              std::string note = {}) {
    BoundResult b;
    b.method = method;
    b.r = r;
    b.k = k;
    b.direction = direction_for(r, k);
    b.partial = partial;
    b.correction = correction;
    b.value = b.direction == Direction::lower ? partial + correction : partial - correction;
    b.clamped = std::clamp(b.value, 0.0, 1.0);
    b.labeling_note = std::move(note);
    return b;
}

namespace detail {

inline void require_r_le_k(int r, int k) {
    if (r < 1) throw domain_error("r must be at least 1");
    if (k < r) {
        throw domain_error("requires k ≥ r (got r=" + std::to_string(r) +
                           ", k=" + std::to_string(k) + ")");
    }
}

inline void require_depth(int needed, int depth) {
    if (needed > depth) {
        throw insufficient_data_error("needs intersections of order " + std::to_string(needed) +
                                      " but depth is " + std::to_string(depth));
    }
}

}  // namespace detail

/// sum_{j=r}^{k} (-1)^{r+j} C(j-1, r-1) S_j
inline double partial_sum(const SSums& s, int r, int k) {
    detail::require_r_le_k(r, k);
    detail::require_depth(k, s.depth());
    CompensatedSum acc;
    for (int j = r; j <= k; ++j) {
        const double sign = ((r + j) % 2 == 0) ? 1.0 : -1.0;
        acc += sign * static_cast<double>(binom(j - 1, r - 1)) * s.at(j);
    }
    return acc.value();
}

inline BoundResult classical_bound(const SSums& s, int r, int k) {
    return make_bound(Method::classical, r, k, partial_sum(s, r, k), 0.0);
}

/// Lower bound C(k+1, i) / C(n, i) * S_{k+1} on E[C(X-i, k+1-i)].
inline double lemma3_rhs(double s_kplus1, int n, int k, int i) {
    if (!(1 <= i && i <= k + 1 && k + 1 <= n)) {
        throw domain_error("lemma3_rhs requires 1 <= i <= k+1 <= n");
    }
    return Rational(static_cast<wide_int>(binom(k + 1, i)), static_cast<wide_int>(binom(n, i)))
               .to_double() *
           s_kplus1;
}

inline BoundResult theorem3_bound(const SSums& s, int n, int r, int k) {
    detail::require_r_le_k(r, k);
    detail::require_depth(k + 1, s.depth());
    if (k >= n) throw domain_error("theorem3 requires k < n");
    const double correction = alpha_coefficient(n, k, r).to_double() * s.at(k + 1);
    return make_bound(Method::theorem3, r, k, partial_sum(s, r, k), correction);
}

/// Tail reducer used by the Theorem 4 correction; max over an empty tail set is 0.
struct MaxTail {
    double operator()(std::span<const double> candidates) const noexcept {
        double best = 0.0;
        for (double p : candidates) best = std::max(best, p);
        return best;
    }
};

/// sum_{i=1}^{r} C(k-i, r-i) sum_{R : |R| = k+1-i} select({P(R u T) : T in T(R)}),
/// where T(R) holds the i-tuples of indices above max(R). `lookup` is anything
/// with n(), depth() and prob(sorted subset): an EventSystem or a RelabeledView.
template <typename Lookup, typename Select = MaxTail>
double theorem4_correction(const Lookup& lookup, int r, int k, Select select = {}) {
    detail::require_r_le_k(r, k);
    detail::require_depth(k + 1, lookup.depth());
    const int n = lookup.n();
    CompensatedSum total;
    std::vector<int> joined;
    std::vector<double> candidates;
    for (int i = 1; i <= r; ++i) {
        const auto coef = static_cast<double>(binom(k - i, r - i));
        CompensatedSum inner;
        for_each_subset(n, k + 1 - i, [&](std::span<const int> head) {
            candidates.clear();
            for_each_subset_in(head.back() + 1, n, i, [&](std::span<const int> tail) {
                joined.assign(head.begin(), head.end());
                joined.insert(joined.end(), tail.begin(), tail.end());
                candidates.push_back(lookup.prob(joined));
            });
            inner += select(std::span<const double>(candidates));
        });
        total += coef * inner.value();
    }
    return total.value();
}

/// Theorem 4 bound under the system's current numbering.
inline BoundResult theorem4_bound(const EventSystem& sys, int r, int k,
                                  std::string note = "natural order") {
    detail::require_r_le_k(r, k);
    detail::require_depth(k + 1, sys.depth());
    const SSums s = s_sums(sys);
    return make_bound(Method::theorem4, r, k, partial_sum(s, r, k),
                      theorem4_correction(sys, r, k), std::move(note));
}

/// The n-k one-event extensions of a k-subset, sorted descending; ties keep
/// ascending extension index.
struct WValues {
    std::vector<int> subset;
    std::vector<int> extensions;
    std::vector<double> values;
};

template <typename Lookup>
WValues w_values(const Lookup& lookup, std::span<const int> subset) {
    const int n = lookup.n();
    const int k = static_cast<int>(subset.size());
    if (k < 1 || k >= n) throw domain_error("w_values requires a subset of size 1..n-1");
    detail::require_depth(k + 1, lookup.depth());
    std::vector<int> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 1 ||
        sorted.back() > n) {
        throw domain_error("w_values: invalid subset " + format_subset(sorted));
    }
    struct Entry {
        int index;
        double p;
    };
    std::vector<Entry> entries;
    std::vector<int> ext;
    for (int j = 1; j <= n; ++j) {
        if (std::binary_search(sorted.begin(), sorted.end(), j)) continue;
        ext = sorted;
        ext.insert(std::upper_bound(ext.begin(), ext.end(), j), j);
        entries.push_back({j, lookup.prob(ext)});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.p > b.p; });
    WValues out;
    out.subset = std::move(sorted);
    for (const auto& e : entries) {
        out.extensions.push_back(e.index);
        out.values.push_back(e.p);
    }
    return out;
}

/// Expected Theorem 4 (r = 1) correction under a uniformly random numbering:
/// sum over k-subsets of sum_s W_s * k / ((k+s)(k+s-1)).
template <typename Lookup>
double theorem5_correction(const Lookup& lookup, int k) {
    const int n = lookup.n();
    if (k < 1 || k >= n) throw domain_error("theorem5 requires 1 <= k < n");
    detail::require_depth(k + 1, lookup.depth());
    std::vector<double> weights;
    for (int s = 1; s <= n - k; ++s) weights.push_back(permutation_weight(k, s).to_double());
    CompensatedSum total;
    for_each_subset(n, k, [&](std::span<const int> subset) {
        const WValues w = w_values(lookup, subset);
        CompensatedSum inner;
        for (std::size_t s = 0; s < w.values.size(); ++s) inner += w.values[s] * weights[s];
        total += inner.value();
    });
    return total.value();
}

inline BoundResult theorem5_bound(const EventSystem& sys, int k) {
    if (k < 1 || k >= sys.n()) throw domain_error("theorem5 requires 1 <= k < n");
    detail::require_depth(k + 1, sys.depth());
    const SSums s = s_sums(sys);
    return make_bound(Method::theorem5, 1, k, partial_sum(s, 1, k), theorem5_correction(sys, k),
                      "average over all numberings");
}

/// Uniform random numbering (1-based) drawn from a per-trial stream.
inline std::vector<int> random_labeling(int n, std::uint64_t seed, std::uint64_t stream) {
    SeededRng rng(derive_seed(seed, stream));
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    return perm;
}

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    int trials = 0;
};

/// Monte Carlo estimate of the Theorem 5 correction: average of the r = 1
/// Theorem 4 correction over seeded uniform renumberings.
inline McEstimate mc_permutation_estimate(const EventSystem& sys, int k, int trials,
                                          std::uint64_t seed) {
    if (trials < 2) throw domain_error("mc_permutation_estimate requires trials >= 2");
    if (k < 1 || k >= sys.n()) throw domain_error("mc_permutation_estimate requires 1 <= k < n");
    detail::require_depth(k + 1, sys.depth());
    double mean = 0.0;
    double m2 = 0.0;
    for (int t = 0; t < trials; ++t) {
        const std::vector<int> perm = random_labeling(sys.n(), seed, static_cast<std::uint64_t>(t));
        const double x = theorem4_correction(RelabeledView(sys, perm), 1, k);
        const double delta = x - mean;
        mean += delta / (t + 1);
        m2 += delta * (x - mean);
    }
    const double variance = m2 / (trials - 1);
    return {mean, std::sqrt(std::max(0.0, variance) / trials), trials};
}

enum class SearchMode { exhaustive, sampled };

inline constexpr int kExhaustiveSearchMaxN = 8;

struct NumberingResult {
    std::vector<int> labeling;  ///< event i of the winning numbering is input event labeling[i-1]
    BoundResult result;
    std::int64_t examined = 0;
};

inline std::string format_labeling(std::span<const int> perm) {
    std::string out = "(";
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(perm[i]);
    }
    return out + ")";
}

/// Numbering with the largest Theorem 4 correction among those examined.
/// Ties keep the first labeling found.
inline NumberingResult best_numbering_search(const EventSystem& sys, int r, int k,
                                             SearchMode mode, int budget, std::uint64_t seed) {
    detail::require_r_le_k(r, k);
    detail::require_depth(k + 1, sys.depth());
    const int n = sys.n();
    std::vector<int> best;
    double best_corr = -1.0;
    std::int64_t examined = 0;
    auto consider = [&](const std::vector<int>& perm) {
        ++examined;
        const double c = theorem4_correction(RelabeledView(sys, perm), r, k);
        if (c > best_corr) {
            best_corr = c;
            best = perm;
        }
    };
    if (mode == SearchMode::exhaustive) {
        if (n > kExhaustiveSearchMaxN) {
            throw domain_error("exhaustive numbering search is limited to n <= " +
                               std::to_string(kExhaustiveSearchMaxN) +
                               "; use --mode sampled with a --budget instead");
        }
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 1);
        do {
            consider(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        if (budget <= 0) throw domain_error("budget must be positive");
        for (int t = 0; t < budget; ++t) {
            consider(random_labeling(n, seed, static_cast<std::uint64_t>(t)));
        }
    }
    const std::string note = std::string(mode == SearchMode::exhaustive ? "exhaustive" : "sampled") +
                             " search best of " + std::to_string(examined) + ": " +
                             format_labeling(best);
    return {best, theorem4_bound(relabel(sys, best), r, k, note), examined};
}

inline constexpr double kSandwichTolerance = 1e-9;

/// True when the raw value lies on the correct side of the exact probability.
inline bool sandwich_holds(const BoundResult& b, double exact, double tol = kSandwichTolerance) {
    return b.direction == Direction::lower ? b.value <= exact + tol : b.value >= exact - tol;
}

struct ReportRow {
    Method method;
    std::optional<BoundResult> bound;
    std::string error;
    std::optional<bool> sandwich_ok;
};

struct BoundsReport {
    int n = 0;
    int depth = 0;
    int r = 1;
    int k = 1;
    std::vector<double> s;
    std::vector<ReportRow> rows;
    /// Opposite-direction classical bound at order k+1, when the depth allows.
    std::optional<BoundResult> companion;
    std::optional<double> exact;
    std::vector<std::string> notes;

    [[nodiscard]] bool any_bound() const {
        return std::any_of(rows.begin(), rows.end(), [](const ReportRow& row) { return row.bound; });
    }
};

inline const std::vector<Method>& all_methods() {
    static const std::vector<Method> methods{Method::classical, Method::theorem3, Method::theorem4,
                                             Method::theorem5};
    return methods;
}

/// One row per applicable method (theorem5 only for r = 1). Per-method
/// failures are recorded on the row and do not stop the others.
inline BoundsReport bounds_report(const EventSystem& sys, int r, int k,
                                  const JointDistribution* joint = nullptr,
                                  std::span<const Method> methods = all_methods()) {
    BoundsReport rep;
    rep.n = sys.n();
    rep.depth = sys.depth();
    rep.r = r;
    rep.k = k;
    const SSums s = s_sums(sys);
    rep.s.assign(s.values().begin(), s.values().end());
    if (joint) {
        if (joint->n() != sys.n()) {
            throw validation_error("joint distribution has " + std::to_string(joint->n()) +
                                   " events, system has " + std::to_string(sys.n()));
        }
        if (r >= 0 && r <= sys.n() + 1) rep.exact = prob_at_least(*joint, r);
    }
    for (Method m : methods) {
        if (m == Method::theorem5 && r != 1) continue;
        ReportRow row{m, std::nullopt, {}, std::nullopt};
        try {
            switch (m) {
                case Method::classical:
                    if (k > sys.depth() && sys.depth() >= r) {
                        row.bound = classical_bound(s, r, sys.depth());
                        row.bound->labeling_note =
                            "truncated at k=" + std::to_string(sys.depth()) + " (depth)";
                    } else {
                        row.bound = classical_bound(s, r, k);
                    }
                    break;
                case Method::theorem3: row.bound = theorem3_bound(s, sys.n(), r, k); break;
                case Method::theorem4: row.bound = theorem4_bound(sys, r, k); break;
                case Method::theorem5: row.bound = theorem5_bound(sys, k); break;
            }
        } catch (const domain_error& e) {
            row.error = e.what();
        } catch (const insufficient_data_error& e) {
            row.error = e.what();
        }
        if (row.bound && rep.exact) row.sandwich_ok = sandwich_holds(*row.bound, *rep.exact);
        rep.rows.push_back(std::move(row));
    }
    if (r >= 1 && k >= r && k + 1 <= sys.depth()) rep.companion = classical_bound(s, r, k + 1);
    return rep;
}

}  // namespace bonfbounds
