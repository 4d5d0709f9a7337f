// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bonfbounds/bounds.hpp"
#include "bonfbounds/cli.hpp"
#include "bonfbounds/combinatorics.hpp"
#include "bonfbounds/event_model.hpp"
#include "bonfbounds/exact_oracle.hpp"
#include "bonfbounds/paper_example.hpp"
#include "oracles.hpp"

using namespace bonfbounds;

namespace {

struct Criterion {
    std::string name;
    double time_limit_s;
    std::function<bool(std::string&)> body;
};

bool near(double got, double want, double tol, const char* what, std::string& why) {
    if (std::fabs(got - want) <= tol) return true;
    std::ostringstream os;
    os.precision(10);
    os << what << ": got " << got << ", want " << want << " +/- " << tol << "; ";
    why += os.str();
    return false;
}

bool expect(bool ok, const std::string& what, std::string& why) {
    if (!ok) why += what + "; ";
    return ok;
}

bool table_reproduction(std::string& why) {
    constexpr double tol = 5e-5;
    const EventSystem sys = example_system();
    const SSums s = s_sums(sys);
    bool ok = true;
    ok &= near(s.at(1), 1.290, tol, "S_1", why);
    ok &= near(s.at(2), 0.6925, tol, "S_2", why);
    ok &= near(s.at(3), 0.1980, tol, "S_3", why);

    const BoundResult classical_lo = classical_bound(s, 1, 2);
    const BoundResult classical_hi = classical_bound(s, 1, 3);
    ok &= expect(classical_lo.direction == Direction::lower, "classical k=2 must be lower", why);
    ok &= expect(classical_hi.direction == Direction::upper, "classical k=3 must be upper", why);
    ok &= near(classical_lo.value, 0.5975, tol, "classical lower", why);
    ok &= near(classical_hi.value, 0.7955, tol, "classical upper", why);

    const BoundResult t3 = theorem3_bound(s, 6, 1, 2);
    ok &= near(t3.correction, 0.0990, tol, "theorem3 correction", why);
    ok &= near(t3.value, 0.6965, tol, "theorem3 lower", why);

    const BoundResult t4 = theorem4_bound(sys, 1, 2);
    ok &= near(t4.correction, 0.1057, tol, "theorem4 correction", why);
    ok &= near(t4.value, 0.7032, tol, "theorem4 lower", why);
    ok &= expect(t3.direction == Direction::lower && t4.direction == Direction::lower,
                 "theorem3/4 must be lower bounds at r+k odd", why);
    return ok;
}

bool theorem5_erratum(std::string& why) {
    const EventSystem sys = example_system();
    const JointDistribution joint = example_joint();
    const BoundResult t5 = theorem5_bound(sys, 2);
    const McEstimate mc = mc_permutation_estimate(sys, 2, 10000, 42);
    // Ceilings by direct atom enumeration.
    const double ceiling_e = oracle::expect_count(
        joint, [](int x) { return static_cast<double>(oracle::choose(x - 1, 2)); });
    const double ceiling_p = oracle::expect_count(joint, [](int x) { return x >= 1 ? 1.0 : 0.0; });
    bool ok = true;
    ok &= near(ceiling_e, 0.168831, 1e-6, "E[C(X-1,2)] ceiling", why);
    ok &= near(ceiling_p, 0.766331, 1e-6, "P(X>=1) ceiling", why);
    ok &= expect(std::fabs(mc.mean - t5.correction) <= 3 * mc.std_error,
                 "MC mean " + std::to_string(mc.mean) + " not within 3 stderr (" +
                     std::to_string(mc.std_error) + ") of direct " + std::to_string(t5.correction),
                 why);
    ok &= expect(t5.direction == Direction::lower, "theorem5 at k=2 must be a lower bound", why);
    ok &= expect(t5.correction <= ceiling_e, "theorem5 correction exceeds E ceiling", why);
    ok &= expect(t5.value <= ceiling_p, "theorem5 bound exceeds P ceiling", why);

    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"paper-example"}, out, err);
    ok &= expect(code == 0, "paper-example exit code", why);
    ok &= expect(out.str().find("erratum") != std::string::npos, "erratum annotation missing", why);
    std::printf("    theorem5 direct=%.6f mc=%.6f+/-%.6f ceilings E=%.6f P=%.6f bound=%.6f\n",
                t5.correction, mc.mean, mc.std_error, ceiling_e, ceiling_p, t5.value);
    return ok;
}

bool identity_suites(std::string& why) {
    bool ok = true;
    for (int m = 0; m <= 20; ++m) {
        for (int r = 1; r <= 20; ++r) {
            if (lemma1_sum(m, r) != (m >= r ? 1 : 0)) {
                ok = expect(false, "lemma1 m=" + std::to_string(m) + " r=" + std::to_string(r), why);
            }
        }
        for (int k = 0; k <= 20; ++k) {
            for (int r = 0; r <= k; ++r) {
                const auto t = tail_identity(m, k, r);
                if (t.lhs != t.rhs) {
                    ok = expect(false, "lemma2 m=" + std::to_string(m) + " k=" + std::to_string(k) +
                                           " r=" + std::to_string(r), why);
                }
            }
        }
    }
    for (int k = 1; k < 8; ++k) {
        for (int s = 1; k + s <= 8; ++s) {
            if (lemma4_enumerated(k, s) != permutation_weight(k, s)) {
                ok = expect(false, "lemma4 k=" + std::to_string(k) + " s=" + std::to_string(s), why);
            }
        }
    }
    for (int n = 2; n <= 12; ++n) {
        for (int k = 1; k < n; ++k) {
            Rational sum{0};
            for (int s = 1; s <= n - k; ++s) sum += permutation_weight(k, s);
            if (sum != Rational(1) - Rational(wide_int{k}, wide_int{n})) {
                ok = expect(false, "telescoping n=" + std::to_string(n) + " k=" + std::to_string(k), why);
            }
        }
    }
    for (int n = 2; n <= 15; ++n) {
        for (int k = 1; k < n; ++k) {
            for (int r = 1; r <= k; ++r) {
                if (alpha_coefficient(n, k, r) != galambos_coefficient(n, k, r)) {
                    ok = expect(false, "alpha/galambos n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                           " r=" + std::to_string(r), why);
                }
            }
        }
    }
    return ok;
}

bool oracle_equivalence(std::string& why) {
    bool ok = true;
    double worst_ie = 0.0;
    double worst_rec = 0.0;
    double min_remainder = 0.0;
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + t % 10;
        const JointDistribution joint = random_joint(n, 1000 + static_cast<std::uint64_t>(t));
        const SSums s = s_sums(from_joint(joint, n));
        for (int r = 1; r <= n; ++r) {
            const double exact = prob_at_least(joint, r);
            worst_ie = std::max(worst_ie, std::fabs(inclusion_exclusion_exact(s, r, n) - exact));
            for (int k = r; k <= n; ++k) {
                const Decomposition d = theorem2_decomposition(joint, r, k);
                worst_rec = std::max(worst_rec, std::fabs(d.reconstructed - exact));
                min_remainder = std::min(min_remainder, d.remainder);
            }
        }
    }
    ok &= expect(worst_ie <= 1e-9, "inclusion-exclusion error " + std::to_string(worst_ie), why);
    ok &= expect(worst_rec <= 1e-9, "reconstruction error " + std::to_string(worst_rec), why);
    ok &= expect(min_remainder >= -1e-12, "negative remainder " + std::to_string(min_remainder), why);
    std::printf("    max |IE - exact| = %.3g, max reconstruction error = %.3g, min remainder = %.3g\n",
                worst_ie, worst_rec, min_remainder);
    return ok;
}

bool sandwich_validity(std::string& why) {
    constexpr double tol = 1e-9;
    std::int64_t checked = 0;
    std::int64_t failures = 0;
    std::int64_t lemma3_checked = 0;
    for (int t = 0; t < 500; ++t) {
        const int n = 2 + t % 7;
        const auto seed = 5000 + static_cast<std::uint64_t>(t);
        const JointDistribution joint = random_joint(n, seed);
        const CountPmf pmf = count_pmf(joint);
        for (int k = 1; k <= n - 1; ++k) {
            const EventSystem sys = from_joint(joint, k + 1);
            const SSums s = s_sums(sys);
            for (int i = 1; i <= k + 1; ++i) {
                ++lemma3_checked;
                if (expected_binom_shifted(pmf, i, k + 1 - i) < lemma3_rhs(s.at(k + 1), n, k, i) - tol) {
                    ++failures;
                    if (failures < 5) why += "lemma3 t=" + std::to_string(t) + "; ";
                }
            }
            for (int r = 1; r <= k; ++r) {
                const double exact = prob_at_least(pmf, r);
                std::vector<BoundResult> bounds{classical_bound(s, r, k), theorem3_bound(s, n, r, k),
                                                theorem4_bound(sys, r, k)};
                if (r == 1) bounds.push_back(theorem5_bound(sys, k));
                for (int p = 0; p < 5; ++p) {
                    const auto perm = random_labeling(n, seed, static_cast<std::uint64_t>(100 * k + 10 * r + p));
                    bounds.push_back(theorem4_bound(relabel(sys, perm), r, k));
                }
                for (const auto& b : bounds) {
                    ++checked;
                    if (!sandwich_holds(b, exact, tol)) {
                        ++failures;
                        if (failures < 5) {
                            why += std::string(to_string(b.method)) + " t=" + std::to_string(t) +
                                   " r=" + std::to_string(r) + " k=" + std::to_string(k) + "; ";
                        }
                    }
                }
            }
        }
    }
    std::printf("    %lld bound checks, %lld lemma3 checks, %lld failures\n",
                static_cast<long long>(checked), static_cast<long long>(lemma3_checked),
                static_cast<long long>(failures));
    return failures == 0;
}

bool determinism(std::string& why) {
    bool ok = true;
    std::ostringstream a, b, e;
    cli::run({"paper-example"}, a, e);
    cli::run({"paper-example"}, b, e);
    ok &= expect(!a.str().empty() && a.str() == b.str(), "paper-example output differs between runs", why);

    const EventSystem sys = example_system();
    const McEstimate m1 = mc_permutation_estimate(sys, 2, 2000, 99);
    const McEstimate m2 = mc_permutation_estimate(sys, 2, 2000, 99);
    ok &= expect(m1.mean == m2.mean && m1.std_error == m2.std_error, "MC estimate not reproducible", why);

    const JointDistribution j1 = random_joint(8, 2024);
    const JointDistribution j2 = random_joint(8, 2024);
    ok &= expect(std::equal(j1.mass().begin(), j1.mass().end(), j2.mass().begin()),
                 "random_joint not reproducible", why);
    return ok;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"1 table reproduction (n=6 example, r=1, k=2, tol 5e-5)", 1.0, table_reproduction},
        {"2 theorem5: direct vs MC within 3 stderr, oracle ceilings, erratum note", 5.0, theorem5_erratum},
        {"3 identity suites (lemmas 1, 2, 4; telescoping; alpha = Galambos), exact", 5.0, identity_suites},
        {"4 oracle equivalence (200 joints, n <= 10, tol 1e-9)", 60.0, oracle_equivalence},
        {"5 sandwich validity (500 joints, n <= 8, 5 relabelings, tol 1e-9)", 300.0, sandwich_validity},
        {"6 determinism (paper-example bytes, MC and random_joint seeds)", 60.0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        std::string why;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.body(why);
        } catch (const std::exception& e) {
            why += std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > c.time_limit_s) {
            ok = false;
            why += "runtime " + std::to_string(elapsed) + " s exceeds " + std::to_string(c.time_limit_s) + " s";
        }
        std::printf("%s  criterion %s  (%.3f s)\n", ok ? "PASS" : "FAIL", c.name.c_str(), elapsed);
        if (!ok) {
            std::printf("    %s\n", why.c_str());
            ++failed;
        }
    }
    std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
