#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "pvsusy/cli.hpp"

namespace {

struct FlagSet {
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    bool allow_degenerate = false;
    bool corrupt = false;
    CLI::Option* allow_degenerate_opt = nullptr;
    CLI::Option* corrupt_opt = nullptr;
    std::string config;
};

void add_value(CLI::App* app, FlagSet& f, const std::string& key, const std::string& help) {
    f.options[key] = app->add_option("--" + key, f.values[key], help);
}

void add_spec_flags(CLI::App* app, FlagSet& f) {
    add_value(app, f, "l", "angular index l >= -1/2");
    add_value(app, f, "eps", "factorization energy eps1 as re[,im]");
    add_value(app, f, "nu", "seed weight nu (re[,im]) or inf");
    add_value(app, f, "lk", "direct second-branch weight lambda,kappa or inf");
    add_value(app, f, "k", "SUSY order");
    add_value(app, f, "order", "extremal-state ordering label, e.g. 1423");
    add_value(app, f, "mode", "auto, real-physical, complex-over-real or fully-complex");
}

void add_output_flags(CLI::App* app, FlagSet& f) {
    add_value(app, f, "out", "output path (default: stdout)");
    add_value(app, f, "format", "csv or json");
    app->add_option("--config", f.config, "flat key=value config file");
}

void add_grid_flags(CLI::App* app, FlagSet& f) {
    add_value(app, f, "z-min", "smallest z");
    add_value(app, f, "z-max", "largest z");
    add_value(app, f, "points", "number of grid points");
    add_value(app, f, "spacing", "geometric or linear");
    add_value(app, f, "tol", "residual tolerance");
}

pvsusy::cli::Settings given(const FlagSet& f) {
    pvsusy::cli::Settings s;
    for (const auto& [key, opt] : f.options) {
        if (opt->count() > 0) s[key] = f.values.at(key);
    }
    if (f.allow_degenerate_opt && f.allow_degenerate_opt->count() > 0) s["allow-degenerate"] = "true";
    if (f.corrupt_opt && f.corrupt_opt->count() > 0) s["corrupt"] = "true";
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Painleve V solutions from SUSY partners of the radial oscillator"};
    app.require_subcommand(1);

    FlagSet solve, table, verify, hierarchy, potential;

    auto* s = app.add_subcommand("solve", "generate w(z) on a grid and certify it by the PV residual");
    add_spec_flags(s, solve);
    add_grid_flags(s, solve);
    add_output_flags(s, solve);
    solve.allow_degenerate_opt = s->add_flag("--allow-degenerate", solve.allow_degenerate, "write degenerate orderings instead of exiting 3");
    solve.corrupt_opt = s->add_flag("--corrupt", solve.corrupt)->group("");

    auto* t = app.add_subcommand("table", "reproduce a reference table (t0, t1, t2, params)");
    t->add_option("which", table.values["which"], "t0, t1, t2 or params");
    table.options["which"] = t->get_option("which");
    add_value(t, table, "l", "single l for the closed-form comparison (default: 1 and 2)");
    add_output_flags(t, table);

    auto* v = app.add_subcommand("verify", "run the invariant suite");
    add_value(v, verify, "check", "comma-separated checks or all");
    add_value(v, verify, "k", "restrict spec-based checks to this order");
    add_output_flags(v, verify);
    verify.corrupt_opt = v->add_flag("--corrupt", verify.corrupt)->group("");

    auto* h = app.add_subcommand("hierarchy", "detect the special-function hierarchy and cross-check its closed forms");
    add_spec_flags(h, hierarchy);
    add_output_flags(h, hierarchy);

    auto* g = app.add_subcommand("grid-potential", "V_0(x) and V_k(x) on a linear x grid");
    add_spec_flags(g, potential);
    add_value(g, potential, "x-min", "smallest x");
    add_value(g, potential, "x-max", "largest x");
    add_value(g, potential, "x-points", "number of x points");
    add_output_flags(g, potential);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return pvsusy::cli::kInvalidConfig;
    }

    const std::map<CLI::App*, FlagSet*> flags = {{s, &solve}, {t, &table}, {v, &verify}, {h, &hierarchy}, {g, &potential}};
    for (const auto& [cmd, f] : flags) {
        if (!cmd->parsed()) continue;
        pvsusy::cli::Settings settings = pvsusy::cli::default_settings();
        try {
            if (!f->config.empty()) settings = pvsusy::cli::merge(settings, pvsusy::cli::read_config_file(f->config));
        } catch (const pvsusy::Error& e) {
            std::cerr << e.what() << "\n";
            return pvsusy::cli::kInvalidConfig;
        }
        settings = pvsusy::cli::merge(settings, given(*f));
        return pvsusy::cli::run(cmd->get_name(), settings, std::cout, std::cerr);
    }
    return pvsusy::cli::kInvalidConfig;
}
