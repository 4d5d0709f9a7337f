#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process;
// tools/bonfbounds.cpp is a thin main().

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "bounds.hpp"
#include "paper_example.hpp"
#include "report_io.hpp"
#include "verify.hpp"

namespace bonfbounds::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInputError = 2, kDomainError = 3 };

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::vector<Method> methods_for(const std::string& filter) {
    if (filter == "all") return all_methods();
    if (filter == "classical") return {Method::classical};
    if (filter == "t3") return {Method::theorem3};
    if (filter == "t4") return {Method::theorem4};
    return {Method::theorem5};
}

inline void apply_clamp(BoundsReport& rep) {
    for (auto& row : rep.rows) {
        if (row.bound) row.bound->value = row.bound->clamped;
    }
    if (rep.companion) rep.companion->value = rep.companion->clamped;
}

inline std::string render(const BoundsReport& rep, const ReportMeta& meta, const std::string& fmt_name,
                          const json& extra = json::object()) {
    if (fmt_name == "csv") return render_csv(rep);
    if (fmt_name == "json") {
        json doc = report_to_json(rep, meta);
        doc.update(extra);
        return doc.dump(2) + "\n";
    }
    return render_text(rep, meta);
}

struct Options {
    std::string input;
    std::string joint;
    int r = 1;
    int k = 1;
    std::string method = "all";
    std::string format = "text";
    bool clamp = false;
    std::string mode = "exhaustive";
    int budget = 1000;
    int trials = 500;
    std::uint64_t seed = 42;
    int max_n = 8;
    std::string fault;
};

inline int cmd_bounds(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.k < o.r) {
        err << "error: requires k ≥ r (got r=" << o.r << ", k=" << o.k << ")\n";
        return kDomainError;
    }
    const std::string text = read_file(o.input);
    InputDocument doc = parse_input(text);
    std::optional<JointDistribution> joint;
    if (!o.joint.empty()) {
        joint = parse_joint(read_file(o.joint));
    } else if (doc.joint) {
        joint = std::move(doc.joint);
    }
    const auto methods = methods_for(o.method);
    BoundsReport rep = bounds_report(*doc.system, o.r, o.k, joint ? &*joint : nullptr, methods);
    if (!rep.any_bound()) {
        err << "error: no requested method is applicable\n";
        for (const auto& row : rep.rows) err << "  " << to_string(row.method) << ": " << row.error << "\n";
        if (rep.rows.empty()) err << "  theorem5 applies only to r = 1\n";
        return kDomainError;
    }
    if (o.clamp) apply_clamp(rep);
    out << render(rep, {doc.digest}, o.format);
    return kOk;
}

inline int cmd_paper_example(const Options& o, std::ostream& out) {
    ExampleReport ex = build_example_report();
    out << render(ex.report, ex.meta, o.format,
                  {{"monte_carlo", {{"mean", ex.mc.mean}, {"stderr", ex.mc.std_error},
                                    {"trials", ex.mc.trials}, {"seed", kExampleMcSeed}}},
                   {"exact_expectation_ceiling", ex.ceiling_expectation}});
    return kOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
    VerifyOptions vo;
    vo.max_n = o.max_n;
    vo.trials = o.trials;
    vo.seed = o.seed;
    vo.flip_parity = o.fault == "parity";
    const VerifySummary summary = run_verification(vo);
    out << render_summary(summary);
    return summary.ok() ? kOk : kVerifyFailed;
}

inline int cmd_search_numbering(const Options& o, std::ostream& out) {
    const std::string text = read_file(o.input);
    InputDocument doc = parse_input(text);
    const SearchMode mode = o.mode == "sampled" ? SearchMode::sampled : SearchMode::exhaustive;
    const NumberingResult found = best_numbering_search(*doc.system, o.r, o.k, mode, o.budget, o.seed);
    BoundsReport rep;
    rep.n = doc.system->n();
    rep.depth = doc.system->depth();
    rep.r = o.r;
    rep.k = o.k;
    const SSums s = s_sums(*doc.system);
    rep.s.assign(s.values().begin(), s.values().end());
    rep.rows.push_back({Method::theorem4, found.result, {}, std::nullopt});
    rep.notes.push_back(fmt::format("best labeling {} after examining {} numbering(s)",
                                    format_labeling(found.labeling), found.examined));
    if (o.clamp) apply_clamp(rep);
    out << render(rep, {doc.digest}, o.format,
                  {{"labeling", found.labeling}, {"examined", found.examined}});
    return kOk;
}

}  // namespace detail

/// Runs one command line; returns the process exit code (0, 1, 2 or 3).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounds on the probability that at least r of n events occur"};
    app.require_subcommand(1);
    detail::Options o;
    const std::vector<std::string> formats{"text", "csv", "json"};

    auto* bounds = app.add_subcommand("bounds", "Compute every bound family for an input system");
    bounds->add_option("--input", o.input, "Input JSON document")->required();
    bounds->add_option("--joint", o.joint, "Joint distribution JSON for the exact column");
    bounds->add_option("--r", o.r, "Count threshold r")->required();
    bounds->add_option("--k", o.k, "Truncation order k")->required();
    bounds->add_option("--method", o.method)->check(CLI::IsMember({"all", "classical", "t3", "t4", "t5"}));
    bounds->add_option("--format", o.format)->check(CLI::IsMember(formats));
    bounds->add_flag("--clamp", o.clamp, "Report values clipped to [0,1]");

    auto* example = app.add_subcommand("paper-example", "Reproduce the six-event worked example");
    example->add_option("--format", o.format)->check(CLI::IsMember(formats));

    auto* verify = app.add_subcommand("verify", "Run identity, oracle and sandwich suites");
    verify->add_option("--max-n", o.max_n, "Largest random joint size (<= 10)");
    verify->add_option("--trials", o.trials, "Number of random joints");
    verify->add_option("--seed", o.seed);
    verify->add_option("--inject-fault", o.fault)->check(CLI::IsMember({"parity"}))->group("");

    auto* search = app.add_subcommand("search-numbering", "Search numberings for the best theorem4 bound");
    search->add_option("--input", o.input)->required();
    search->add_option("--r", o.r)->required();
    search->add_option("--k", o.k)->required();
    search->add_option("--mode", o.mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
    search->add_option("--budget", o.budget);
    search->add_option("--seed", o.seed);
    search->add_option("--format", o.format)->check(CLI::IsMember(formats));
    search->add_flag("--clamp", o.clamp);

    std::vector<const char*> argv{"bonfbounds"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (bounds->parsed()) return detail::cmd_bounds(o, out, err);
        if (example->parsed()) return detail::cmd_paper_example(o, out);
        if (verify->parsed()) return detail::cmd_verify(o, out);
        return detail::cmd_search_numbering(o, out);
    } catch (const input_error& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const validation_error& e) {
        err << "validation error: " << e.what() << "\n";
        return kInputError;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    } catch (const insufficient_data_error& e) {
        err << "insufficient data: " << e.what() << "\n";
        return kDomainError;
    } catch (const overflow_error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
}

}  // namespace bonfbounds::cli
