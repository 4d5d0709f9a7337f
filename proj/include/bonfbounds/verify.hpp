#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "binomial.hpp"
#include "bounds.hpp"
#include "combinatorics.hpp"
#include "event_model.hpp"
#include "exact_oracle.hpp"

namespace bonfbounds {

struct VerifyOptions {
    int max_n = 8;
    int trials = 500;
    std::uint64_t seed = 42;
    int relabelings = 5;
    bool flip_parity = false;  ///< fault injection: checks every bound in the wrong direction
};

struct SuiteResult {
    explicit SuiteResult(std::string suite_name) : name(std::move(suite_name)) {}

    std::string name;
    std::int64_t cases = 0;
    std::int64_t failures = 0;
    std::vector<std::string> samples;  ///< first few failing cases, for reproduction

    void check(bool ok, const std::function<std::string()>& describe) {
        ++cases;
        if (ok) return;
        ++failures;
        if (samples.size() < 10) samples.push_back(describe());
    }
};

struct VerifySummary {
    std::vector<SuiteResult> suites;

    [[nodiscard]] bool ok() const {
        for (const auto& s : suites) {
            if (s.failures) return false;
        }
        return true;
    }
};

inline constexpr int kVerifyMaxN = 10;

namespace detail {

inline std::string wide_str(wide_int x) { return to_string(x); }

inline SuiteResult identity_suites_lemma1() {
    SuiteResult s{"lemma1 indicator identity"};
    for (int m = 0; m <= 20; ++m) {
        for (int r = 1; r <= 20; ++r) {
            const wide_int got = lemma1_sum(m, r);
            s.check(got == (m >= r ? 1 : 0),
                    [&] { return fmt::format("m={} r={} sum={}", m, r, wide_str(got)); });
        }
    }
    return s;
}

inline SuiteResult identity_suites_lemma2() {
    SuiteResult s{"lemma2 tail identity"};
    for (int m = 0; m <= 20; ++m) {
        for (int k = 0; k <= 20; ++k) {
            for (int r = 0; r <= k; ++r) {
                const auto t = tail_identity(m, k, r);
                s.check(t.lhs == t.rhs, [&] {
                    return fmt::format("m={} k={} r={} lhs={} rhs={}", m, k, r, wide_str(t.lhs),
                                       wide_str(t.rhs));
                });
            }
        }
    }
    return s;
}

inline SuiteResult identity_suites_lemma4() {
    SuiteResult s{"lemma4 enumeration vs formula"};
    for (int k = 1; k < kLemma4EnumerationCap; ++k) {
        for (int j = 1; k + j <= kLemma4EnumerationCap; ++j) {
            const Rational counted = lemma4_enumerated(k, j);
            const Rational formula = permutation_weight(k, j);
            s.check(counted == formula, [&] {
                return fmt::format("k={} s={} enumerated={} formula={}", k, j, counted.str(),
                                   formula.str());
            });
        }
    }
    return s;
}

inline SuiteResult identity_suites_telescoping() {
    SuiteResult s{"permutation weight telescoping"};
    for (int n = 2; n <= 12; ++n) {
        for (int k = 1; k < n; ++k) {
            Rational total{0};
            for (int j = 1; j <= n - k; ++j) total += permutation_weight(k, j);
            const Rational expected = Rational(1) - Rational(k, n);
            s.check(total == expected, [&] {
                return fmt::format("n={} k={} sum={} expected={}", n, k, total.str(), expected.str());
            });
        }
    }
    return s;
}

inline SuiteResult identity_suites_coefficients() {
    SuiteResult s{"alpha vs Galambos coefficient"};
    for (int n = 2; n <= 15; ++n) {
        for (int k = 1; k < n; ++k) {
            for (int r = 1; r <= k; ++r) {
                const Rational a = alpha_coefficient(n, k, r);
                const Rational g = galambos_coefficient(n, k, r);
                s.check(a == g, [&] {
                    return fmt::format("n={} k={} r={} alpha={} galambos={}", n, k, r, a.str(),
                                       g.str());
                });
            }
        }
    }
    return s;
}

inline SuiteResult pascal_suite() {
    SuiteResult s{"binomial table Pascal recurrence"};
    const BinomialTable& t = shared_binomial_table();
    for (int n = 0; n <= t.max_t(); ++n) {
        s.check(t(n, 0) == 1 && t(n, n) == 1, [&] { return fmt::format("edge row {}", n); });
        for (int k = 1; k < n; ++k) {
            s.check(t(n, k) == t(n - 1, k - 1) + t(n - 1, k),
                    [&] { return fmt::format("C({},{})", n, k); });
        }
    }
    return s;
}

inline int joint_size_for(int trial, int max_n) { return 2 + trial % (max_n - 1); }

inline BoundResult faulted(const BoundResult& b) {
    BoundResult f = b;
    f.direction = b.direction == Direction::lower ? Direction::upper : Direction::lower;
    f.value = f.direction == Direction::lower ? b.partial + b.correction : b.partial - b.correction;
    return f;
}

}  // namespace detail

/// Runs the identity, oracle and sandwich suites. Deterministic in options.
inline VerifySummary run_verification(const VerifyOptions& opt) {
    if (opt.max_n < 2 || opt.max_n > kVerifyMaxN) {
        throw domain_error(fmt::format("max-n must be in [2, {}]", kVerifyMaxN));
    }
    if (opt.trials < 1) throw domain_error("trials must be positive");

    VerifySummary out;
    out.suites.push_back(detail::identity_suites_lemma1());
    out.suites.push_back(detail::identity_suites_lemma2());
    out.suites.push_back(detail::identity_suites_lemma4());
    out.suites.push_back(detail::identity_suites_telescoping());
    out.suites.push_back(detail::identity_suites_coefficients());
    out.suites.push_back(detail::pascal_suite());

    SuiteResult ie{"inclusion-exclusion vs oracle"};
    SuiteResult decomposition{"remainder decomposition"};
    SuiteResult lemma3{"remainder lower bound"};
    SuiteResult sandwich{"sandwich validity"};
    SuiteResult invariance{"theorem5 labeling invariance"};

    for (int t = 0; t < opt.trials; ++t) {
        const int n = detail::joint_size_for(t, opt.max_n);
        const auto trial_seed = derive_seed(opt.seed, static_cast<std::uint64_t>(t));
        const JointDistribution joint = random_joint(n, trial_seed);
        const CountPmf pmf = count_pmf(joint);
        const EventSystem sys = from_joint(joint, n);
        const SSums s = s_sums(sys);
        auto where = [&](int r, int k) {
            return fmt::format("seed={} trial={} n={} r={} k={}", opt.seed, t, n, r, k);
        };

        for (int r = 1; r <= n; ++r) {
            const double exact = prob_at_least(pmf, r);
            const double ie_value = inclusion_exclusion_exact(s, r, n);
            ie.check(std::fabs(ie_value - exact) <= 1e-9, [&] {
                return fmt::format("{} ie={:.17g} exact={:.17g}", where(r, n), ie_value, exact);
            });
            for (int k = r; k <= n; ++k) {
                const Decomposition d = theorem2_decomposition(joint, r, k);
                decomposition.check(
                    std::fabs(d.reconstructed - exact) <= 1e-9 && d.remainder >= -1e-12, [&] {
                        return fmt::format("{} reconstructed={:.17g} exact={:.17g} remainder={:.17g}",
                                           where(r, k), d.reconstructed, exact, d.remainder);
                    });
            }
        }

        for (int k = 0; k + 1 <= n; ++k) {
            for (int i = 1; i <= k + 1; ++i) {
                const double lhs = expected_binom_shifted(pmf, i, k + 1 - i);
                const double rhs = lemma3_rhs(s.at(k + 1), n, k, i);
                lemma3.check(lhs >= rhs - 1e-9, [&] {
                    return fmt::format("{} i={} expectation={:.17g} bound={:.17g}", where(0, k), i,
                                       lhs, rhs);
                });
            }
        }

        for (int k = 1; k <= n - 1; ++k) {
            for (int r = 1; r <= k; ++r) {
                const double exact = prob_at_least(pmf, r);
                std::vector<BoundResult> bounds{classical_bound(s, r, k), theorem3_bound(s, n, r, k),
                                                theorem4_bound(sys, r, k)};
                if (r == 1) bounds.push_back(theorem5_bound(sys, k));
                for (int p = 0; p < opt.relabelings; ++p) {
                    const auto perm = random_labeling(
                        n, trial_seed, static_cast<std::uint64_t>(1000 * k + 100 * r + p));
                    bounds.push_back(theorem4_bound(relabel(sys, perm), r, k,
                                                    "relabeled " + format_labeling(perm)));
                }
                for (const auto& b0 : bounds) {
                    const BoundResult b = opt.flip_parity ? detail::faulted(b0) : b0;
                    sandwich.check(sandwich_holds(b, exact) && b.correction >= 0.0, [&] {
                        return fmt::format("{} method={} {} value={:.17g} exact={:.17g} {}",
                                           where(r, k), to_string(b.method),
                                           to_string(b.direction), b.value, exact, b.labeling_note);
                    });
                }
            }
            if (k <= 3) {
                const double base = theorem5_correction(sys, k);
                const auto perm = random_labeling(n, trial_seed, 7919U + static_cast<unsigned>(k));
                const double moved = theorem5_correction(relabel(sys, perm), k);
                invariance.check(std::fabs(base - moved) <= 1e-12, [&] {
                    return fmt::format("{} base={:.17g} relabeled={:.17g}", where(1, k), base, moved);
                });
            }
        }
    }
    out.suites.push_back(std::move(ie));
    out.suites.push_back(std::move(decomposition));
    out.suites.push_back(std::move(lemma3));
    out.suites.push_back(std::move(sandwich));
    out.suites.push_back(std::move(invariance));
    return out;
}

inline std::string render_summary(const VerifySummary& summary) {
    std::string out;
    for (const auto& s : summary.suites) {
        out += fmt::format("{:<36} {:>9} cases  {:>6} failures  {}\n", s.name, s.cases, s.failures,
                           s.failures ? "FAIL" : "ok");
        for (const auto& sample : s.samples) out += "    failing case: " + sample + "\n";
    }
    out += summary.ok() ? "verification passed\n" : "verification FAILED\n";
    return out;
}

}  // namespace bonfbounds
