#ifndef PVSUSY_CLI_HPP
#define PVSUSY_CLI_HPP

// Run configuration and the subcommands behind the pvsusy executable.
// Settings are flat key=value strings: defaults < config file < flags.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvsusy/hierarchies.hpp"
#include "pvsusy/painleve.hpp"
#include "pvsusy/tables.hpp"
#include "pvsusy/verify.hpp"

namespace pvsusy::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kInvalidConfig = 2, kDegenerate = 3 };

using Settings = std::map<std::string, std::string>;

enum class Format { Csv, Json };

struct RunConfig {
    std::string subcommand;
    SeedSpec spec;
    Grid grid;
    std::string out;  // empty: standard output
    Format format = Format::Csv;
    double tol = 1e-8;
    bool allow_degenerate = false;
    std::string which = "params";
    std::vector<std::string> checks;
    bool corrupt = false;
    std::optional<int> only_k;
    std::optional<double> table_l;
    double x_min = 0.05;
    double x_max = 6.0;
    int x_points = 200;
};

inline const std::vector<std::string>& setting_keys() {
    static const std::vector<std::string> keys = {
        "l",     "eps",    "nu",     "lk",       "k",     "order",  "mode", "z-min", "z-max",
        "points", "spacing", "out",   "format",   "tol",   "allow-degenerate", "which", "check",
        "corrupt", "x-min",  "x-max", "x-points"};
    return keys;
}

inline Settings default_settings() {
    return {{"l", ""},          {"eps", "0"},         {"k", ""},           {"order", "1234"},    {"mode", "auto"},
            {"z-min", "0.1"},   {"z-max", "20"},      {"points", "200"},   {"spacing", "geometric"},
            {"format", "csv"},  {"tol", "1e-8"},      {"allow-degenerate", "false"},            {"which", "params"},
            {"check", "all"},   {"corrupt", "false"}, {"x-min", "0.05"},   {"x-max", "6"},      {"x-points", "200"}};
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline void check_key(const std::string& key) {
    for (const auto& k : setting_keys()) {
        if (k == key) return;
    }
    throw Error(ErrorKind::InvalidConfig, "unknown setting '" + key + "'");
}

/// Flat key=value file; '#' starts a comment.
inline Settings parse_config(std::istream& in) {
    Settings s;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::InvalidConfig, "config line " + std::to_string(number) + " is not key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        check_key(key);
        s[key] = trim(line.substr(eq + 1));
    }
    return s;
}

inline Settings read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidConfig, "cannot read config file '" + path + "'");
    return parse_config(in);
}

inline Settings merge(Settings base, const Settings& over) {
    for (const auto& [k, v] : over) base[k] = v;
    return base;
}

inline double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidConfig, key + ": '" + text + "' is not a number");
    }
}

inline int parse_int(const std::string& key, const std::string& text) {
    const double v = parse_double(key, text);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw Error(ErrorKind::InvalidConfig, key + ": '" + text + "' is not an integer");
    return static_cast<int>(v);
}

inline bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw Error(ErrorKind::InvalidConfig, key + ": '" + text + "' is not a boolean");
}

/// "re" or "re,im".
inline Complex parse_complex(const std::string& key, const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return parse_double(key, trim(text));
    return {parse_double(key, trim(text.substr(0, comma))), parse_double(key, trim(text.substr(comma + 1)))};
}

inline SeedSpec make_spec(const Settings& s) {
    SeedSpec spec;
    spec.l = s.at("l").empty() ? 1.0 : parse_double("l", s.at("l"));
    spec.eps1 = parse_complex("eps", s.at("eps"));
    spec.k = s.at("k").empty() ? 1 : parse_int("k", s.at("k"));
    spec.order = normalize_label(s.at("order"));
    if (!(spec.l >= -0.5)) throw Error(ErrorKind::InvalidSpec, "l must satisfy l >= -1/2");

    const auto nu_it = s.find("nu");
    const auto lk_it = s.find("lk");
    const bool has_nu = nu_it != s.end() && !nu_it->second.empty();
    const bool has_lk = lk_it != s.end() && !lk_it->second.empty();
    if (has_nu && has_lk) throw Error(ErrorKind::InvalidConfig, "give either nu or lk, not both");
    if (has_lk) {
        if (lk_it->second == "inf") {
            spec.mixture = {0.0, 1.0};
            spec.nu = Nu::inf();
        } else {
            spec.mixture = {1.0, parse_complex("lk", lk_it->second)};
        }
    } else {
        const std::string nu = has_nu ? nu_it->second : "1";
        if (nu == "inf") {
            spec.nu = Nu::inf();
            spec.mixture = {0.0, 1.0};
        } else {
            const Complex v = parse_complex("nu", nu);
            if (v.imag() == 0.0) {
                spec.nu = Nu{v.real(), false};
                spec.mixture = nu_to_mixture(*spec.nu, spec.l, spec.eps1);
            } else {
                spec.mixture = {1.0, detail::complex_nu_weight(v, spec.l, spec.eps1)};
            }
        }
    }

    const std::string mode = s.at("mode");
    if (mode == "real-physical") {
        spec.mode = Mode::RealPhysical;
    } else if (mode == "complex-over-real") {
        spec.mode = Mode::ComplexOverReal;
    } else if (mode == "fully-complex") {
        spec.mode = Mode::FullyComplex;
    } else if (mode == "auto") {
        const bool complex_mix = spec.mixture.mu1.imag() != 0.0 || spec.mixture.mu2.imag() != 0.0;
        if (spec.eps1.imag() != 0.0) {
            spec.mode = Mode::FullyComplex;
        } else if (complex_mix || !(spec.eps1.real() < ground_energy(spec.l))) {
            spec.mode = Mode::ComplexOverReal;
        } else {
            spec.mode = Mode::RealPhysical;
        }
    } else {
        throw Error(ErrorKind::InvalidConfig, "mode must be auto, real-physical, complex-over-real or fully-complex");
    }
    validate(spec);
    return spec;
}

inline RunConfig make_config(const std::string& subcommand, const Settings& s) {
    RunConfig c;
    c.subcommand = subcommand;
    for (const auto& [k, v] : s) check_key(k);
    c.grid.z_min = parse_double("z-min", s.at("z-min"));
    c.grid.z_max = parse_double("z-max", s.at("z-max"));
    c.grid.points = parse_int("points", s.at("points"));
    const std::string spacing = s.at("spacing");
    if (spacing != "geometric" && spacing != "linear") throw Error(ErrorKind::InvalidConfig, "spacing must be geometric or linear");
    c.grid.geometric = spacing == "geometric";
    if (!(c.grid.z_min > 0.0) || !(c.grid.z_max > c.grid.z_min) || c.grid.points < 2) {
        throw Error(ErrorKind::InvalidConfig, "grid needs 0 < z-min < z-max and points >= 2");
    }
    const std::string format = s.at("format");
    if (format != "csv" && format != "json") throw Error(ErrorKind::InvalidConfig, "format must be csv or json");
    c.format = format == "csv" ? Format::Csv : Format::Json;
    if (s.count("out")) c.out = s.at("out");
    c.tol = parse_double("tol", s.at("tol"));
    if (!(c.tol > 0.0)) throw Error(ErrorKind::InvalidConfig, "tol must be positive");
    c.allow_degenerate = parse_bool("allow-degenerate", s.at("allow-degenerate"));
    c.corrupt = parse_bool("corrupt", s.at("corrupt"));
    c.x_min = parse_double("x-min", s.at("x-min"));
    c.x_max = parse_double("x-max", s.at("x-max"));
    c.x_points = parse_int("x-points", s.at("x-points"));
    if (!(c.x_min > 0.0) || !(c.x_max > c.x_min) || c.x_points < 2) {
        throw Error(ErrorKind::InvalidConfig, "x range needs 0 < x-min < x-max and x-points >= 2");
    }

    if (subcommand == "table") {
        parse_table(s.at("which"));
        c.which = s.at("which");
        if (!s.at("l").empty()) c.table_l = parse_double("l", s.at("l"));
        return c;
    }
    if (subcommand == "verify") {
        if (!s.at("k").empty()) c.only_k = parse_int("k", s.at("k"));
        const std::string check = s.at("check");
        if (check == "all") {
            c.checks = verify_check_names();
        } else {
            std::stringstream ss(check);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                bool known = false;
                for (const auto& n : verify_check_names()) known = known || n == item;
                if (!known) throw Error(ErrorKind::InvalidConfig, "unknown check '" + item + "'");
                c.checks.push_back(item);
            }
        }
        return c;
    }
    c.spec = make_spec(s);
    return c;
}

/// %.17g: round-trip exact for doubles.
inline std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline nlohmann::json jnum(double v) {
    if (!std::isfinite(v)) return num(v);
    return v;
}

inline std::string complex_text(Complex z) { return num(z.real()) + (z.imag() < 0 ? "" : "+") + num(z.imag()) + "i"; }

inline nlohmann::json complex_json(Complex z) { return {{"re", jnum(z.real())}, {"im", jnum(z.imag())}}; }

inline std::string to_string(Mode m) {
    switch (m) {
        case Mode::RealPhysical: return "real-physical";
        case Mode::ComplexOverReal: return "complex-over-real";
        case Mode::FullyComplex: return "fully-complex";
    }
    return "?";
}

inline nlohmann::json spec_json(const SeedSpec& s) {
    nlohmann::json j = {{"l", jnum(s.l)},
                        {"eps1", complex_json(s.eps1)},
                        {"k", s.k},
                        {"order", s.order},
                        {"mode", to_string(s.mode)},
                        {"mixture", {complex_json(s.mixture.mu1), complex_json(s.mixture.mu2)}}};
    if (s.nu) j["nu"] = s.nu->infinite ? nlohmann::json("inf") : jnum(s.nu->value);
    return j;
}

/// Writes text to the configured path, or to the fallback stream when none is set.
inline void emit(const RunConfig& c, const std::string& text, std::ostream& fallback) {
    if (c.out.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidConfig, "cannot write '" + c.out + "'");
    f << text;
}

inline int cmd_solve(const RunConfig& c, std::ostream& out, std::ostream& err) {
    PVSolution sol;
    try {
        sol = solve(c.spec, c.allow_degenerate);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.kind() == ErrorKind::DegenerateOutput ? kDegenerate : kInvalidConfig;
    }
    sol.spec = c.spec;
    sol.corrupt = c.corrupt;
    sol.hierarchy = detect(c.spec).describe();
    const Certificate cert = certify(sol, c.grid);
    std::ostringstream os;
    if (c.format == Format::Csv) {
        os << "# params a=" << complex_text(sol.params.a) << " b=" << complex_text(sol.params.b)
           << " c=" << complex_text(sol.params.c) << " d=" << complex_text(sol.params.d) << "\n";
        os << "# ordering " << sol.label << "\n";
        os << "# hierarchy " << sol.hierarchy << "\n";
        os << "# degeneracy " << to_string(sol.degeneracy) << "\n";
        os << "# max_residual " << num(cert.max_residual) << "\n";
        os << "# masked " << cert.masked << "\n";
        os << "z,w_re,w_im,residual,flag\n";
        for (const auto& s : cert.samples) {
            os << num(s.z) << "," << num(s.w.real()) << "," << num(s.w.imag()) << ","
               << (s.residual ? num(*s.residual) : std::string()) << "," << to_string(s.flag) << "\n";
        }
    } else {
        nlohmann::json j;
        j["meta"] = {{"params", {{"a", complex_json(sol.params.a)}, {"b", complex_json(sol.params.b)},
                                 {"c", complex_json(sol.params.c)}, {"d", complex_json(sol.params.d)}}},
                     {"ordering", sol.label},
                     {"hierarchy", sol.hierarchy},
                     {"degeneracy", to_string(sol.degeneracy)},
                     {"max_residual", jnum(cert.max_residual)},
                     {"masked", cert.masked},
                     {"spec", spec_json(c.spec)}};
        j["samples"] = nlohmann::json::array();
        for (const auto& s : cert.samples) {
            j["samples"].push_back({{"z", jnum(s.z)},
                                    {"w_re", jnum(s.w.real())},
                                    {"w_im", jnum(s.w.imag())},
                                    {"residual", s.residual ? jnum(*s.residual) : nlohmann::json(nullptr)},
                                    {"flag", to_string(s.flag)}});
        }
        os << j.dump(2) << "\n";
    }
    emit(c, os.str(), out);
    if (cert.max_residual > c.tol) {
        err << "max residual " << num(cert.max_residual) << " exceeds tolerance " << num(c.tol) << "\n";
        return kFailure;
    }
    return kOk;
}

inline int cmd_table(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const TableId id = parse_table(c.which);
    const std::vector<double> ls = c.table_l ? std::vector<double>{*c.table_l} : std::vector<double>{1.0, 2.0};
    const TableReport rep = reproduce_table(id, ls);
    std::ostringstream os;
    if (c.format == Format::Csv) {
        os << "# table " << to_string(id) << "\n";
        os << "row,params,w_status,max_error,status,note\n";
        for (const auto& r : rep.rows) {
            os << r.label << "," << (r.params_exact ? "exact" : "mismatch") << "," << r.status << "," << num(r.max_error) << ","
               << (r.pass ? "PASS" : "FAIL") << ",\"" << r.note << "\"\n";
        }
    } else {
        nlohmann::json j;
        j["meta"] = {{"table", to_string(id)}, {"l", ls}, {"pass", rep.pass}};
        j["rows"] = nlohmann::json::array();
        for (const auto& r : rep.rows) {
            j["rows"].push_back({{"row", r.label},
                                 {"params_exact", r.params_exact},
                                 {"w_status", r.status},
                                 {"max_error", jnum(r.max_error)},
                                 {"pass", r.pass},
                                 {"note", r.note}});
        }
        os << j.dump(2) << "\n";
    }
    emit(c, os.str(), out);
    if (!rep.pass) {
        err << "table " << to_string(id) << ": at least one row does not reproduce\n";
        return kFailure;
    }
    return kOk;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::vector<CheckReport> reports;
    for (const auto& name : c.checks) reports.push_back(run_check(name, c.corrupt, c.only_k));
    bool pass = true;
    std::ostringstream os;
    if (c.format == Format::Csv) {
        os << "check,max_error,tolerance,status,detail\n";
        for (const auto& r : reports) {
            os << r.name << "," << num(r.max_error) << "," << num(r.tolerance) << "," << (r.pass ? "PASS" : "FAIL") << ",\""
               << r.detail << "\"\n";
            pass = pass && r.pass;
        }
    } else {
        nlohmann::json j;
        j["checks"] = nlohmann::json::array();
        for (const auto& r : reports) {
            j["checks"].push_back({{"check", r.name},
                                   {"max_error", jnum(r.max_error)},
                                   {"tolerance", jnum(r.tolerance)},
                                   {"pass", r.pass},
                                   {"detail", r.detail}});
            pass = pass && r.pass;
        }
        j["meta"] = {{"pass", pass}, {"corrupt", c.corrupt}};
        os << j.dump(2) << "\n";
    }
    emit(c, os.str(), out);
    if (!pass) err << "verification failed\n";
    return pass ? kOk : kFailure;
}

inline int cmd_hierarchy(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const HierarchyTag tag = detect(c.spec);
    std::ostringstream os;
    if (tag.family == Family::Transcendent) {
        os << (c.format == Format::Csv ? "# hierarchy transcendent\n" : "{\"meta\": {\"hierarchy\": \"transcendent\"}}\n");
        emit(c, os.str(), out);
        return kOk;
    }
    const CrosscheckReport rep = crosscheck(tag, c.spec);
    bool certified = closed_form_count(tag.family) == 0 ? rep.machinery_residual <= kHierarchyResidual : false;
    for (const auto& f : rep.forms) certified = certified || f.match <= kHierarchyMatch || f.residual <= kHierarchyResidual;
    if (c.format == Format::Csv) {
        os << "# hierarchy " << tag.describe() << "\n";
        os << "# summary " << rep.summary << "\n";
        os << "# machinery_residual " << num(rep.machinery_residual) << "\n";
        os << "form,convention,match,match_order,residual,residual_order\n";
        for (const auto& f : rep.forms) {
            os << f.form + 1 << "," << to_string(f.convention) << "," << num(f.match) << "," << f.match_order << ","
               << num(f.residual) << "," << f.residual_order << "\n";
        }
    } else {
        nlohmann::json j;
        j["meta"] = {{"hierarchy", tag.describe()},
                     {"summary", rep.summary},
                     {"machinery_residual", jnum(rep.machinery_residual)},
                     {"degenerate", rep.degenerate},
                     {"spec", spec_json(c.spec)}};
        j["forms"] = nlohmann::json::array();
        for (const auto& f : rep.forms) {
            j["forms"].push_back({{"form", f.form + 1},
                                  {"convention", to_string(f.convention)},
                                  {"match", jnum(f.match)},
                                  {"match_order", f.match_order},
                                  {"residual", jnum(f.residual)},
                                  {"residual_order", f.residual_order}});
        }
        os << j.dump(2) << "\n";
    }
    emit(c, os.str(), out);
    if (!certified) {
        err << "hierarchy " << tag.describe() << ": no printed form is reproduced or residual-certified\n";
        return kFailure;
    }
    return kOk;
}

/// V_0 and V_k on a linear x grid.
inline int cmd_grid_potential(const RunConfig& c, std::ostream& out, std::ostream&) {
    const SusyPartner partner = SusyPartner::from_spec(c.spec);
    std::ostringstream os;
    nlohmann::json samples = nlohmann::json::array();
    if (c.format == Format::Csv) os << "x,v0,vk_re,vk_im,flag\n";
    for (int i = 0; i < c.x_points; ++i) {
        const double x = c.x_min + (c.x_max - c.x_min) * static_cast<double>(i) / static_cast<double>(c.x_points - 1);
        const double v0 = oscillator_potential(c.spec.l, x);
        Complex vk{NAN, NAN};
        std::string flag = "ok";
        try {
            vk = partner.potential(x);
        } catch (const Error&) {
            flag = "pole";
        }
        if (c.format == Format::Csv) {
            os << num(x) << "," << num(v0) << "," << num(vk.real()) << "," << num(vk.imag()) << "," << flag << "\n";
        } else {
            samples.push_back({{"x", jnum(x)}, {"v0", jnum(v0)}, {"vk_re", jnum(vk.real())}, {"vk_im", jnum(vk.imag())}, {"flag", flag}});
        }
    }
    if (c.format == Format::Json) {
        nlohmann::json j;
        j["meta"] = {{"spec", spec_json(c.spec)}};
        j["samples"] = samples;
        os << j.dump(2) << "\n";
    }
    emit(c, os.str(), out);
    return kOk;
}

/// Dispatches a merged configuration; library errors in the setup map to exit 2.
inline int run(const std::string& subcommand, const Settings& settings, std::ostream& out, std::ostream& err) {
    RunConfig c;
    try {
        c = make_config(subcommand, settings);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kInvalidConfig;
    }
    try {
        if (subcommand == "solve") return cmd_solve(c, out, err);
        if (subcommand == "table") return cmd_table(c, out, err);
        if (subcommand == "verify") return cmd_verify(c, out, err);
        if (subcommand == "hierarchy") return cmd_hierarchy(c, out, err);
        if (subcommand == "grid-potential") return cmd_grid_potential(c, out, err);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.kind() == ErrorKind::InvalidConfig ? kInvalidConfig : kFailure;
    }
    err << "unknown subcommand '" << subcommand << "'\n";
    return kInvalidConfig;
}

}  // namespace pvsusy::cli

#endif  // PVSUSY_CLI_HPP
