#pragma once

// Command-line front end: argv -> Request -> JSON report. Kept header-only so
// the tests can drive it without spawning processes.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pdim/brauer.hpp"
#include "pdim/milnor.hpp"
#include "pdim/selftest.hpp"

namespace pdim::cli {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

class UsageError : public Error {
public:
    using Error::Error;
};

struct Request {
    std::string command;
    std::int64_t p = 2;
    std::vector<std::string> vars;
    std::optional<std::int64_t> precision;
    std::uint64_t seed = 1;
    bool text = false;
    std::string input;
    std::vector<std::string> lambdas;  // omega-cert only
};

struct Report {
    json body;
    int exit_code = 0;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> all{"k2-vanish", "omega-cert", "normal-form", "split-field",
                                              "index-bounds", "brdim", "selftest"};
    return all;
}

inline bool is_cdvf_command(const std::string& c) {
    return c == "normal-form" || c == "split-field" || c == "index-bounds" || c == "brdim";
}

inline FieldDescriptor field_of(const Request& r) { return FieldDescriptor(r.p, r.vars); }
inline CdvfModel model_of(const Request& r) { return CdvfModel(field_of(r), r.precision); }

inline std::string usage() {
    return "usage: pdim <command> [options] [input]\n"
           "commands: k2-vanish, omega-cert, normal-form, split-field, index-bounds, brdim, selftest\n"
           "options: --p <2|3|5> --vars t1,t2,... --precision <L> --seed <n> --lambdas l1,l2,... --json | --text\n";
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
    if (s.back() == ',') out.emplace_back();
    return out;
}

/// argv without the program name. Expression inputs are parsed here so that
/// syntax errors surface with their position before anything runs.
inline Request parse_request(const std::vector<std::string>& args) {
    Request r;
    CLI::App app("pdim");
    app.set_help_flag();
    app.add_option("command", r.command)->required();
    app.add_option("input", r.input);
    app.add_option("--p", r.p);
    std::string vars, lambdas;
    app.add_option("--vars", vars);
    app.add_option("--precision", r.precision);
    app.add_option("--seed", r.seed);
    app.add_option("--lambdas", lambdas);
    auto* json_flag = app.add_flag("--json");
    auto* text_flag = app.add_flag("--text", r.text);
    json_flag->excludes(text_flag);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    r.vars = split_list(vars);
    r.lambdas = split_list(lambdas);

    if (std::find(commands().begin(), commands().end(), r.command) == commands().end())
        throw UsageError("unknown command '" + r.command + "'");
    const FieldDescriptor field = field_of(r);
    if (is_cdvf_command(r.command) && r.p != 2)
        throw UnsupportedPrime(r.command + " works over the p = 2 model only, got p = " + std::to_string(r.p));
    if (r.precision && !is_cdvf_command(r.command)) throw UsageError("--precision applies to CDVF commands only");
    if (!r.lambdas.empty() && r.command != "omega-cert") throw UsageError("--lambdas applies to omega-cert only");

    const bool needs_input = r.command == "k2-vanish" || r.command == "omega-cert" || r.command == "normal-form" ||
                             r.command == "index-bounds";
    const bool takes_input = needs_input || r.command == "split-field";
    if (needs_input && r.input.empty()) throw UsageError(r.command + " needs an input expression");
    if (!takes_input && !r.input.empty()) throw UsageError(r.command + " takes no input expression");

    if (r.command == "k2-vanish" || r.command == "omega-cert") {
        parse_symbol_sum(r.input, field);
        for (const auto& l : r.lambdas) parse_ratfunc(l, field);
    } else if (takes_input && !r.input.empty()) {
        parse_brauer_class(r.input, model_of(r));
    } else if (is_cdvf_command(r.command)) {
        model_of(r);
    }
    return r;
}

namespace detail {

inline std::string power_text(std::int64_t p, std::int64_t e) {
    return e == 0 ? "1" : e == 1 ? std::to_string(p) : std::to_string(p) + "^" + std::to_string(e);
}

inline json k2_vanish(const Request& r, json& out) {
    const FieldDescriptor f = field_of(r);
    const SymbolSum s = parse_symbol_sum(r.input, f);
    const Omega2Form w = h2p(s);
    out["verdict"] = w.is_zero() ? "zero" : "nonzero";
    return {{"symbols", to_string(s, f.var_names)}, {"h2p", to_string(w, f.var_names)}};
}

inline json omega_cert(const Request& r, json& out) {
    const FieldDescriptor f = field_of(r);
    const SymbolSum s = parse_symbol_sum(r.input, f);
    std::vector<RatFunc> gens, lambdas;
    for (const auto& [a, b] : s.entries) {
        gens.push_back(a);
        gens.push_back(b);
    }
    for (const auto& l : r.lambdas) lambdas.push_back(parse_ratfunc(l, f));
    if (lambdas.empty()) lambdas.assign(s.entries.size(), RatFunc::one(f));
    const Omega2Form form = paired_form(lambdas, gens, f.p, f.num_vars());
    const PairedFormCertificate cert = paired_form_certify(lambdas, gens, f.p, f.num_vars());
    out["verdict"] = "nonzero over every extension of degree < " + power_text(f.p, static_cast<std::int64_t>(cert.m));
    json lam = json::array();
    for (const auto& l : lambdas) lam.push_back(to_string(l, f.var_names));
    return {{"form", to_string(form, f.var_names)},
            {"lambdas", lam},
            {"m", cert.m},
            {"pivot_columns", cert.pivot_columns}};
}

inline json normal_form_cmd(const Request& r, json& out) {
    const CdvfModel m = model_of(r);
    const auto& names = m.residue().var_names;
    const BrauerClass c = parse_brauer_class(r.input, m);
    const NormalForm nf = normal_form(c);
    const BrauerClass nc = nf.to_class(m);
    const auto diff = filtration_level(c - nc);
    std::size_t agree = 0, disagree = 0, undefined = 0;
    for (const auto& pt : odd_points(m.nvars(), 20)) {
        try {
            (hilbert_specialize(c, pt) == hilbert_specialize(nc, pt) ? agree : disagree)++;
        } catch (const BadSpecialization&) {
            ++undefined;
        }
    }
    json lambdas = json::array();
    for (const auto& l : nf.lambdas) lambdas.push_back(to_string(l, names));
    const bool certified = !diff && disagree == 0;
    out["verdict"] = certified ? "certified" : "uncertified";
    return {{"class", to_string(c)},
            {"normal_form", to_string(nc)},
            {"lambdas", lambdas},
            {"pi_coeff", to_string(nf.pi_coeff, names)},
            {"sweeps", nf.sweeps},
            {"difference_level", diff ? json(*diff) : json("inf")},
            {"specializations", {{"agree", agree}, {"disagree", disagree}, {"undefined", undefined}}}};
}

inline json split_field(const Request& r, json& out) {
    const CdvfModel m = model_of(r);
    const SplittingField s = r.input.empty() ? splitting_field(m) : splitting_field(parse_brauer_class(r.input, m));
    json gens = json::array();
    for (const auto& g : s.generators) gens.push_back(to_string(g));
    out["verdict"] = "degree " + std::to_string(s.degree);
    return {{"generators", gens}, {"degree", s.degree}};
}

inline json index_bounds_cmd(const Request& r, json& out) {
    const CdvfModel m = model_of(r);
    const IndexBounds b = index_bounds(parse_brauer_class(r.input, m));
    out["verdict"] = b.lower_exp == b.upper_exp
                         ? "index = " + power_text(2, b.lower_exp)
                         : "index in [" + power_text(2, b.lower_exp) + ", " + power_text(2, b.upper_exp) + "]";
    return {{"lower_exp", b.lower_exp},
            {"upper_exp", b.upper_exp},
            {"lower_certificate", b.lower_certificate},
            {"upper_certificate", b.upper_certificate}};
}

inline json brdim(const Request& r, json& out) {
    const BrdimReport b = brdim_report(model_of(r));
    out["verdict"] = "[" + std::to_string(b.lower) + ", " + std::to_string(b.upper) + "]";
    return {{"lower", b.lower},
            {"upper", b.upper},
            {"lower_certificate", b.lower_certificate},
            {"upper_certificate", b.upper_certificate}};
}

inline json selftest(const Request& r, json& out, int& exit_code) {
    json suites = json::array();
    std::size_t passed = 0, total = 0;
    for (const auto& s : run_selftest(r.seed)) {
        suites.push_back({{"name", s.name}, {"passed", s.passed}, {"total", s.total}});
        passed += s.passed;
        total += s.total;
    }
    out["verdict"] = std::to_string(passed) + "/" + std::to_string(total) + " passed";
    if (passed != total) exit_code = 2;
    return {{"suites", suites}, {"passed", passed}, {"total", total}};
}

inline json request_echo(const Request& r) {
    json j{{"p", r.p}, {"vars", r.vars}, {"seed", r.seed}, {"input", r.input}};
    if (r.precision) j["precision"] = *r.precision;
    if (!r.lambdas.empty()) j["lambdas"] = r.lambdas;
    return j;
}

inline json error_json(const std::exception& e) {
    json j{{"message", e.what()}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
        j["type"] = "ParseError";
        j["line"] = pe->line();
        j["column"] = pe->column();
    } else if (dynamic_cast<const UsageError*>(&e)) {
        j["type"] = "UsageError";
    } else if (dynamic_cast<const UnsupportedPrime*>(&e)) {
        j["type"] = "UnsupportedPrime";
    } else if (dynamic_cast<const NotInBr1*>(&e)) {
        j["type"] = "NotInBr1";
    } else if (dynamic_cast<const HypothesisFailed*>(&e)) {
        j["type"] = "HypothesisFailed";
    } else if (dynamic_cast<const ZeroEntry*>(&e)) {
        j["type"] = "ZeroEntry";
    } else if (dynamic_cast<const UnresolvedRelation*>(&e)) {
        j["type"] = "UnresolvedRelation";
    } else {
        j["type"] = "Error";
    }
    return j;
}

/// Errors that reject the mathematical input rather than the invocation.
inline bool is_rejection(const std::exception& e) {
    return dynamic_cast<const NotInBr1*>(&e) || dynamic_cast<const HypothesisFailed*>(&e) ||
           dynamic_cast<const ZeroEntry*>(&e) || dynamic_cast<const DependentGenerators*>(&e) ||
           dynamic_cast<const UnresolvedRelation*>(&e) || dynamic_cast<const DivisionByZero*>(&e);
}

}  // namespace detail

inline Report execute(const Request& r) {
    Report rep;
    json& out = rep.body;
    out["schema_version"] = kSchemaVersion;
    out["command"] = r.command;
    out["request"] = detail::request_echo(r);
    const auto start = std::chrono::steady_clock::now();
    try {
        json result;
        if (r.command == "k2-vanish") result = detail::k2_vanish(r, out);
        else if (r.command == "omega-cert") result = detail::omega_cert(r, out);
        else if (r.command == "normal-form") result = detail::normal_form_cmd(r, out);
        else if (r.command == "split-field") result = detail::split_field(r, out);
        else if (r.command == "index-bounds") result = detail::index_bounds_cmd(r, out);
        else if (r.command == "brdim") result = detail::brdim(r, out);
        else if (r.command == "selftest") result = detail::selftest(r, out, rep.exit_code);
        else throw UsageError("unknown command '" + r.command + "'");
        out["status"] = rep.exit_code == 0 ? "ok" : "failed";
        out["result"] = std::move(result);
    } catch (const Error& e) {
        rep.exit_code = detail::is_rejection(e) ? 2 : 1;
        out["status"] = rep.exit_code == 2 ? "rejected" : "error";
        out["error"] = detail::error_json(e);
    }
    out["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

namespace detail {

inline void render_text(const json& j, const std::string& prefix, std::ostream& os) {
    for (const auto& [k, v] : j.items()) {
        const std::string key = prefix.empty() ? k : prefix + "." + k;
        if (v.is_object()) {
            render_text(v, key, os);
        } else if (v.is_string()) {
            os << key << ": " << v.get<std::string>() << "\n";
        } else {
            os << key << ": " << v.dump() << "\n";
        }
    }
}

}  // namespace detail

inline void write_report(const Report& rep, bool text, std::ostream& os) {
    if (text) {
        detail::render_text(rep.body, "", os);
    } else {
        os << rep.body.dump(2) << "\n";
    }
}

/// The whole tool: returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
        (args.empty() ? err : out) << usage();
        return args.empty() ? 1 : 0;
    }
    Request r;
    try {
        r = parse_request(args);
    } catch (const Error& e) {
        Report rep;
        rep.exit_code = 1;
        rep.body["schema_version"] = kSchemaVersion;
        rep.body["command"] = args[0];
        rep.body["status"] = "usage_error";
        rep.body["error"] = detail::error_json(e);
        const bool text = std::find(args.begin(), args.end(), "--text") != args.end();
        write_report(rep, text, out);
        err << e.what() << "\n" << usage();
        return 1;
    }
    const Report rep = execute(r);
    write_report(rep, r.text, out);
    return rep.exit_code;
}

}  // namespace pdim::cli
