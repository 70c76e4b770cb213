// One PASS/FAIL line per acceptance criterion; indented lines carry the detail.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/mp_oracles.hpp"
#include "pvsusy/hierarchies.hpp"
#include "pvsusy/tables.hpp"
#include "pvsusy/verify.hpp"

using namespace pvsusy;

namespace {

struct Criterion {
    int id;
    std::string title;
    bool pass = true;
    std::vector<std::string> lines;

    void sub(bool ok, const std::string& text) {
        pass = pass && ok;
        lines.push_back(std::string(ok ? "ok   " : "FAIL ") + text);
    }
    void info(const std::string& text) { lines.push_back("info " + text); }
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

void report(const Criterion& c) {
    for (const auto& l : c.lines) std::cout << "    " << l << "\n";
    std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << "\n" << std::flush;
}

// splitmix64
struct Gen {
    std::uint64_t s;
    double unit() {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return static_cast<double>((z ^ (z >> 31)) >> 11) / 9007199254740992.0;
    }
    double in(double a, double b) { return a + (b - a) * unit(); }
};

Criterion residual_certificate() {
    Criterion c{1, "PV residual certificate over the regression matrix"};
    const auto t0 = std::chrono::steady_clock::now();
    const ResidualMatrixReport r = check_residual_matrix(regression_specs(), {0.1, 20.0, 200, true});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.sub(r.check.pass, "max residual " + sci(r.check.max_error) + " <= 1e-8 (" + r.check.detail + ")");
    c.info(std::to_string(r.masked) + " samples masked at poles");
    c.sub(secs < 30.0, "runtime " + sci(secs) + " s < 30 s");
    return c;
}

Criterion table_reproduction() {
    Criterion c{2, "table reproduction"};
    for (TableId id : {TableId::T0, TableId::T1, TableId::T2, TableId::Params}) {
        const PrintedTable& t = printed_table(id);
        for (const auto& row : t.rows) {
            std::string where;
            const bool ok = params_match_exactly(t, row, &where);
            c.sub(ok, to_string(id) + " " + row.label + " parameters exact" + (ok ? "" : " (" + where + ")"));
        }
    }
    const auto required = [](TableId id, const std::string& label) {
        if (id == TableId::T1) return label == "1423" || label == "2413" || label == "3412";
        if (id == TableId::T2) return label == "1423" || label == "2413";
        return false;
    };
    for (TableId id : {TableId::T0, TableId::T1, TableId::T2}) {
        const TableReport rep = reproduce_table(id, {1.0, 2.0}, 50);
        for (const auto& r : rep.rows) {
            const std::string text = to_string(id) + " " + r.label + " w: " + r.status + " (max error " + sci(r.max_error) + ")" +
                                     (r.note.empty() ? "" : "; " + r.note);
            if (required(id, r.label)) {
                c.sub(r.status == "match" && r.max_error <= 1e-9, text);
            } else if (r.status == "residual-certified") {
                c.sub(r.max_error <= 1e-8, text);
            } else {
                c.info(text);
            }
        }
    }
    return c;
}

Criterion complex_regimes() {
    Criterion c{3, "complex regimes"};
    const auto& ex = complex_examples();
    for (std::size_t i = 0; i < ex.size(); ++i) {
        const ComplexExampleReport r = check_complex_example(ex[i]);
        const bool required = i < 3;
        std::ostringstream os;
        os << r.name << ": residual " << sci(r.max_residual) << "; a=" << r.params.a << " b=" << r.params.b << " c=" << r.params.c;
        const bool res_ok = r.max_residual <= 1e-8;
        if (required) {
            c.sub(res_ok, os.str());
        } else {
            c.info(os.str());
        }
        if (!ex[i].printed_abc) continue;
        const char* names[] = {"a", "b", "c"};
        for (std::size_t j = 0; j < 3; ++j) {
            std::ostringstream p;
            p << r.name << " printed " << names[j] << "=" << (*ex[i].printed_abc)[j] << " equality <= 1e-12";
            if (required) {
                c.sub(r.component_match[j], p.str());
            } else {
                c.info(p.str() + (r.component_match[j] ? ": equal" : ": differs"));
            }
        }
        c.info(r.name + " orderings reproducing all printed values: " + (r.matching_orderings.empty() ? "none" : r.matching_orderings));
    }
    return c;
}

Criterion operator_identities() {
    Criterion c{4, "operator-identity suite"};
    for (const char* name : {"intertwining", "commutators", "factorization", "shift", "number-operator", "new-level"}) {
        const CheckReport r = run_check(name);
        c.sub(r.pass && r.max_error <= 1e-6, std::string(name) + ": max error " + sci(r.max_error) + (r.detail.empty() ? "" : " (" + r.detail + ")"));
    }
    const auto xs = ladder_sample_points(8);
    for (int k : {2, 3}) {
        double worst = 0.0;
        bool ok = true;
        for (const SeedSpec& s : ladder_specs(k)) {
            for (int n = 1; n <= 4; ++n) {
                const auto r = check_number_operator(s, n, xs);
                worst = std::max(worst, r.reduction_error);
                ok = ok && r.check.pass && r.reduction_error <= 1e-6;
            }
        }
        c.sub(ok, "reduction to the quartic, k=" + std::to_string(k) + ", n=1..4: max relative error " + sci(worst));
    }
    return c;
}

Criterion special_function_oracles() {
    Criterion c{5, "special-function oracles"};
    Gen g{101};
    double k_worst = 0.0, i_worst = 0.0;
    for (int i = 0; i < 60; ++i) {
        const Complex a(g.in(-3, 3), i % 2 ? 0.0 : g.in(-2, 2));
        const Complex b(g.in(0.3, 4), i % 3 ? 0.0 : g.in(-1, 1));
        const Complex x = std::polar(g.in(0, 12), g.in(-3.14159, 3.14159));
        const Complex want = oracle::kummer_series(a, b, x);
        k_worst = std::max(k_worst, std::abs(kummer_1f1(a, b, x) - want) / std::max(std::abs(want), 1e-300));
    }
    for (int i = 0; i < 40; ++i) {
        const double mu = g.in(-0.95, 5);
        const Complex x(g.in(0.05, 30), i % 3 ? 0.0 : g.in(-3, 3));
        const Complex want = oracle::bessel_i(mu, x);
        i_worst = std::max(i_worst, std::abs(bessel_i(mu, x) - want) / std::max(std::abs(want), 1e-300));
    }
    c.sub(k_worst <= 1e-11, "1F1 vs 50-digit series, 60 points: max relative error " + sci(k_worst));
    c.sub(i_worst <= 1e-11, "I_mu vs 50-digit series, 40 points: max relative error " + sci(i_worst));
    const CheckReport kt = check_kummer_transformation();
    const CheckReport lg = check_laguerre_identity();
    c.sub(kt.pass, "Kummer transformation: max error " + sci(kt.max_error));
    c.sub(lg.pass, "Laguerre/1F1 identity: max error " + sci(lg.max_error));
    return c;
}

std::string best_line(const CrosscheckReport& r, int form) {
    const FormCheck* b = r.best(form);
    if (!b) return "no check";
    return "form " + std::to_string(form + 1) + " best match " + sci(b->match) + " (" + b->match_order + ", " +
           to_string(b->convention) + ")";
}

Criterion hierarchy_crosschecks() {
    Criterion c{6, "hierarchy cross-checks"};
    {
        const SeedSpec s = hierarchy_spec(2.0, 0.75, false);
        const auto r = crosscheck(detect(s), s);
        c.sub(r.best(0)->match <= kHierarchyMatch, "polynomial l=2: " + best_line(r, 0));
        const SeedSpec s2 = hierarchy_spec(2.0, -1.75, true);
        const auto r2 = crosscheck(detect(s2), s2);
        c.info("polynomial second condition l=2: " + r2.summary);
    }
    {
        const SeedSpec s = hierarchy_spec(0.5, 0.0, true);
        const auto r = crosscheck(detect(s), s);
        const bool any = r.best(0)->match <= kHierarchyMatch || r.best(1)->match <= kHierarchyMatch;
        c.sub(any, "exponential: " + best_line(r, 0) + "; " + best_line(r, 1));
        c.info("exponential: " + r.summary);
    }
    struct Case {
        double l, e;
        bool inf;
    };
    for (const Case& k : {Case{0.0, 0.25, false}, Case{0.0, 1.25, false}, Case{0.0, 0.75, true}, Case{1.0, -0.25, false},
                          Case{1.0, 1.25, true}, Case{1.0, 0.0, false}, Case{1.0, 0.0, true}}) {
        const SeedSpec s = hierarchy_spec(k.l, k.e, k.inf);
        const HierarchyTag tag = detect(s);
        const auto r = crosscheck(tag, s);
        bool loud = true;
        for (int f = 0; f < closed_form_count(tag.family); ++f) {
            const bool matched = r.best(f)->match <= kHierarchyMatch;
            loud = loud && (matched || r.summary.find("form " + std::to_string(f + 1) + ": NO MATCH") != std::string::npos);
        }
        c.sub(loud && r.machinery_residual <= 1e-8, r.summary + "; machinery residual " + sci(r.machinery_residual));
    }
    {
        const SeedSpec s = hierarchy_spec(0.0, 0.6, false);
        const HierarchyTag tag = detect(s);
        const auto r = crosscheck(tag, s);
        c.sub(tag.family == Family::Weber && r.machinery_residual <= 1e-8,
              tag.describe() + ": machinery residual " + sci(r.machinery_residual));
    }
    return c;
}

}  // namespace

int main() {
    bool all = true;
    for (auto run : {residual_certificate, table_reproduction, complex_regimes, operator_identities, special_function_oracles,
                     hierarchy_crosschecks}) {
        const Criterion c = run();
        report(c);
        all = all && c.pass;
    }
    return all ? 0 : 1;
}
