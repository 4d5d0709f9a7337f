#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "bounds.hpp"
#include "errors.hpp"
#include "event_model.hpp"

namespace bonfbounds {

using json = nlohmann::json;

/// Malformed or schema-invalid input; line/column are 1-based, 0 when unknown.
class input_error : public validation_error {
public:
    input_error(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
        : validation_error(line ? fmt::format("line {}, column {}: {}", line, column, msg) : msg),
          line_(line),
          column_(column) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

inline std::string fnv1a_digest(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return fmt::format("fnv1a:{:016x}", h);
}

struct InputDocument {
    std::optional<EventSystem> system;
    std::optional<JointDistribution> joint;
    std::string digest;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline std::string describe(const std::vector<Violation>& violations) {
    std::string out = fmt::format("{} violation(s):", violations.size());
    for (const auto& v : violations) out += fmt::format("\n  [{}] {}", to_string(v.kind), v.message);
    return out;
}

inline JointDistribution joint_from_json(const json& j) {
    const auto atoms = j.at("atoms").get<std::vector<double>>();
    int n = 0;
    while ((std::size_t{1} << n) < atoms.size()) ++n;
    if (atoms.size() < 2 || (std::size_t{1} << n) != atoms.size()) {
        throw input_error("joint.atoms must list 2^n masses for some n >= 1");
    }
    return {n, atoms, 1e-9};
}

}  // namespace detail

/// Parses an input document with exactly one of the keys "system",
/// "generator" or "joint".
inline InputDocument parse_input(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = detail::line_column(text, e.byte);
        throw input_error(std::string("malformed JSON: ") + e.what(), line, col);
    }
    if (!doc.is_object() || doc.size() != 1) {
        throw input_error("input must be an object with exactly one of: system, generator, joint");
    }
    InputDocument out;
    out.digest = fnv1a_digest(text);
    try {
        if (doc.contains("system")) {
            const json& s = doc.at("system");
            std::vector<Intersection> entries;
            for (const auto& e : s.at("intersections")) {
                entries.push_back({e.at("subset").get<std::vector<int>>(), e.at("p").get<double>()});
            }
            EventSystem sys =
                EventSystem::from_entries(s.at("n").get<int>(), s.at("depth").get<int>(), entries);
            if (auto v = validate(sys); !v.empty()) throw validation_error(detail::describe(v));
            out.system = std::move(sys);
        } else if (doc.contains("generator")) {
            const json& g = doc.at("generator").at("independent");
            const auto alphas = g.at("alphas").get<std::vector<double>>();
            out.system = from_independent(alphas, g.at("depth").get<int>());
        } else if (doc.contains("joint")) {
            const json& j = doc.at("joint");
            JointDistribution joint = detail::joint_from_json(j);
            const int depth = j.contains("depth") ? j.at("depth").get<int>() : joint.n();
            out.system = from_joint(joint, depth);
            out.joint = std::move(joint);
        } else {
            throw input_error("unknown top-level key; expected system, generator or joint");
        }
    } catch (const json::exception& e) {
        throw input_error(std::string("schema error: ") + e.what());
    } catch (const domain_error& e) {
        throw input_error(e.what());
    } catch (const insufficient_data_error& e) {
        throw input_error(e.what());
    }
    return out;
}

/// Parses a document that must carry a "joint" block.
inline JointDistribution parse_joint(std::string_view text) {
    InputDocument doc = parse_input(text);
    if (!doc.joint) throw input_error("expected a document with a top-level \"joint\" key");
    return std::move(*doc.joint);
}

inline std::string to_text(const EventSystem& sys) {
    json entries = json::array();
    sys.for_each_entry([&](std::span<const int> s, double p) {
        entries.push_back({{"subset", std::vector<int>(s.begin(), s.end())}, {"p", p}});
    });
    json doc = {{"system", {{"n", sys.n()}, {"depth", sys.depth()}, {"intersections", entries}}}};
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Report rendering

struct ReportMeta {
    std::string input_digest;
};

inline json bound_to_json(const BoundResult& b) {
    return {{"method", to_string(b.method)},
            {"direction", to_string(b.direction)},
            {"r", b.r},
            {"k", b.k},
            {"partial", b.partial},
            {"correction", b.correction},
            {"value", b.value},
            {"clamped", b.clamped},
            {"labeling_note", b.labeling_note}};
}

inline Method method_from_string(std::string_view s) {
    for (Method m : all_methods()) {
        if (s == to_string(m)) return m;
    }
    throw input_error(fmt::format("unknown method '{}'", s));
}

inline BoundResult bound_from_json(const json& j) {
    BoundResult b;
    b.method = method_from_string(j.at("method").get<std::string>());
    b.direction = j.at("direction").get<std::string>() == "lower" ? Direction::lower : Direction::upper;
    b.r = j.at("r").get<int>();
    b.k = j.at("k").get<int>();
    b.partial = j.at("partial").get<double>();
    b.correction = j.at("correction").get<double>();
    b.value = j.at("value").get<double>();
    b.clamped = j.at("clamped").get<double>();
    b.labeling_note = j.at("labeling_note").get<std::string>();
    return b;
}

inline json report_to_json(const BoundsReport& rep, const ReportMeta& meta) {
    json rows = json::array();
    for (const auto& row : rep.rows) {
        if (row.bound) {
            rows.push_back(bound_to_json(*row.bound));
        } else {
            rows.push_back({{"method", to_string(row.method)}, {"error", row.error}});
        }
    }
    json doc = {{"metadata",
                 {{"r", rep.r},
                  {"k", rep.k},
                  {"n", rep.n},
                  {"depth", rep.depth},
                  {"input_digest", meta.input_digest}}},
                {"s_sums", rep.s},
                {"rows", rows},
                {"notes", rep.notes}};
    if (rep.companion) doc["companion"] = bound_to_json(*rep.companion);
    if (rep.exact) {
        json verdicts = json::array();
        for (const auto& row : rep.rows) {
            if (row.sandwich_ok) {
                verdicts.push_back({{"method", to_string(row.method)},
                                    {"sandwich", *row.sandwich_ok ? "pass" : "fail"}});
            }
        }
        doc["exact"] = {{"value", *rep.exact}, {"verdicts", verdicts}};
    }
    return doc;
}

inline BoundsReport report_from_json(const json& doc) {
    BoundsReport rep;
    const json& md = doc.at("metadata");
    rep.r = md.at("r").get<int>();
    rep.k = md.at("k").get<int>();
    rep.n = md.at("n").get<int>();
    rep.depth = md.at("depth").get<int>();
    rep.s = doc.at("s_sums").get<std::vector<double>>();
    rep.notes = doc.at("notes").get<std::vector<std::string>>();
    for (const auto& row : doc.at("rows")) {
        ReportRow r{method_from_string(row.at("method").get<std::string>()), std::nullopt, {},
                    std::nullopt};
        if (row.contains("error")) {
            r.error = row.at("error").get<std::string>();
        } else {
            r.bound = bound_from_json(row);
        }
        rep.rows.push_back(std::move(r));
    }
    if (doc.contains("companion")) rep.companion = bound_from_json(doc.at("companion"));
    if (doc.contains("exact")) {
        rep.exact = doc.at("exact").at("value").get<double>();
        for (const auto& v : doc.at("exact").at("verdicts")) {
            const Method m = method_from_string(v.at("method").get<std::string>());
            for (auto& row : rep.rows) {
                if (row.method == m) row.sandwich_ok = v.at("sandwich").get<std::string>() == "pass";
            }
        }
    }
    return rep;
}

inline std::string render_json(const BoundsReport& rep, const ReportMeta& meta) {
    return report_to_json(rep, meta).dump(2) + "\n";
}

inline std::string render_csv(const BoundsReport& rep) {
    std::string out = "method,direction,partial,correction,value,clamped\n";
    for (const auto& row : rep.rows) {
        if (!row.bound) continue;
        const BoundResult& b = *row.bound;
        out += fmt::format("{},{},{},{},{},{}\n", to_string(b.method), to_string(b.direction),
                           b.partial, b.correction, b.value, b.clamped);
    }
    return out;
}

inline std::string render_text(const BoundsReport& rep, const ReportMeta& meta) {
    std::string out;
    out += fmt::format("n={} depth={} r={} k={} input={}\n", rep.n, rep.depth, rep.r, rep.k,
                       meta.input_digest);
    for (std::size_t j = 0; j < rep.s.size(); ++j) {
        out += fmt::format("{}S_{}={:.6f}", j ? "  " : "", j + 1, rep.s[j]);
    }
    out += "\n\n";
    const bool verdicts = rep.exact.has_value();
    out += fmt::format("{:<10} {:<9} {:>10} {:>10} {:>10} {:>10}", "method", "direction",
                       "partial", "correction", "value", "clamped");
    out += verdicts ? fmt::format(" {:<8}", "sandwich") : std::string{};
    out += "  note\n";
    for (const auto& row : rep.rows) {
        if (!row.bound) {
            out += fmt::format("{:<10} error: {}\n", to_string(row.method), row.error);
            continue;
        }
        const BoundResult& b = *row.bound;
        out += fmt::format("{:<10} {:<9} {:>10.6f} {:>10.6f} {:>10.6f} {:>10.6f}",
                           to_string(b.method), to_string(b.direction), b.partial, b.correction,
                           b.value, b.clamped);
        if (verdicts) {
            out += fmt::format(" {:<8}",
                               row.sandwich_ok ? (*row.sandwich_ok ? "pass" : "FAIL") : "-");
        }
        out += "  " + b.labeling_note + "\n";
    }
    if (rep.companion) {
        out += fmt::format("\nopposite classical bound (k={}): {} {:.6f}\n", rep.companion->k,
                           to_string(rep.companion->direction), rep.companion->value);
    }
    if (rep.exact) out += fmt::format("exact P(X >= {}) = {:.6f}\n", rep.r, *rep.exact);
    for (const auto& note : rep.notes) out += "note: " + note + "\n";
    return out;
}

}  // namespace bonfbounds
