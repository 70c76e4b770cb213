#include <cmath>
#include <complex>
#include <cstdint>

#include <gtest/gtest.h>

#include "pvsusy/painleve.hpp"
#include "pvsusy/tables.hpp"

using namespace pvsusy;

namespace {

SeedSpec real_spec(double l, double eps, double nu, int k, const std::string& order = "1234") {
    SeedSpec s;
    s.l = l;
    s.eps1 = eps;
    s.k = k;
    s.order = order;
    s.nu = Nu{nu, false};
    s.mixture = nu_to_mixture(*s.nu, l, eps);
    validate(s);
    return s;
}

std::array<Rational, 4> rational_params(const std::array<Rational, 4>& e) {
    const auto p = pv_params_from_energies<Rational>(e);
    return {p.a, p.b, p.c, p.d};
}

}  // namespace

TEST(PVParams, DIsAlwaysMinusOneEighth) {
    for (const auto& label : canonical_labels()) {
        const auto p = pv_params_from_energies<Rational>(permute_energies(table_energies(TableId::Params, 3, Rational(1, 3), 2), label));
        EXPECT_EQ(p.d, Rational(-1, 8));
    }
    const PVSolution sol = solve(real_spec(1.0, 0.2, 1.0, 2));
    EXPECT_EQ(sol.params.d, Complex(-0.125));
}

TEST(PVParams, FirstOrderTableRowExact) {
    for (std::int64_t l = 0; l <= 4; ++l) {
        const Rational L(l);
        const auto p = rational_params(table_energies(TableId::T1, L, 0, 1));
        EXPECT_EQ(p[0], (2 * L + 3) * (2 * L + 3) / 8);
        EXPECT_EQ(p[1], Rational(0));
        EXPECT_EQ(p[2], (-2 * L - 1) / 4);
    }
}

TEST(PVParams, SecondOrderTableRowExact) {
    for (std::int64_t l = 0; l <= 4; ++l) {
        const Rational L(l);
        const auto p = rational_params(table_energies(TableId::T2, L, 0, 1));
        EXPECT_EQ(p[0], (2 * L + 5) * (2 * L + 5) / 8);
        EXPECT_EQ(p[1], Rational(0));
        EXPECT_EQ(p[2], (-2 * L + 1) / 4);
    }
}

TEST(PVParams, GeneralOrder3412Exact) {
    for (std::int64_t k = 1; k <= 4; ++k) {
        for (const Rational L : {Rational(0), Rational(3, 2), Rational(5)}) {
            for (const Rational E : {Rational(-7, 4), Rational(1, 3)}) {
                const auto p = rational_params(permute_energies(table_energies(TableId::Params, L, E, k), "3412"));
                const Rational s1 = 2 * L - 4 * E + 4 * k - 1, s2 = 2 * L + 4 * E + 3;
                EXPECT_EQ(p[0], s1 * s1 / 32);
                EXPECT_EQ(p[1], -s2 * s2 / 32);
                EXPECT_EQ(p[2], (2 * L - 2 * k - 1) / 4);
            }
        }
    }
}

TEST(PVParams, ClosedFormAgreesWithEnergyRoute) {
    for (const auto& label : canonical_labels()) {
        for (std::int64_t k = 1; k <= 3; ++k) {
            const Rational L(5, 2), E(-3, 8);
            const auto via_e = pv_params_from_energies<Rational>(permute_energies(table_energies(TableId::Params, L, E, k), label));
            const auto closed = pv_params_closed_form<Rational>(L, E, Rational(k), label);
            EXPECT_EQ(via_e.a, closed.a) << label << " k=" << k;
            EXPECT_EQ(via_e.b, closed.b) << label << " k=" << k;
            EXPECT_EQ(via_e.c, closed.c) << label << " k=" << k;
        }
    }
}

TEST(Labels, ExchangeSymmetry) {
    EXPECT_EQ(normalize_label("2134"), "1234");
    EXPECT_EQ(normalize_label("4231"), "2413");
    const auto e = table_energies(TableId::Params, 2, Rational(1, 5), 3);
    for (const std::string raw : {"1234", "2143", "3421", "4132"}) {
        const auto p = pv_params_from_energies<Rational>(permute_energies(e, raw));
        const auto q = pv_params_from_energies<Rational>(permute_energies(e, normalize_label(raw)));
        EXPECT_EQ(p.a, q.a);
        EXPECT_EQ(p.b, q.b);
        EXPECT_EQ(p.c, q.c);
    }
    const SeedSpec s = real_spec(1.0, 0.2, 1.0, 1, "2134");
    const PVSolution a = solve(s);
    SeedSpec t = s;
    t.order = "1234";
    const PVSolution b = solve(t);
    EXPECT_EQ(a.label, "1234");
    for (double z : {0.4, 2.0, 7.0}) EXPECT_EQ(w_eval(a, z).w, w_eval(b, z).w);
}

TEST(Labels, InvalidLabelThrows) {
    for (const std::string bad : {"1233", "123", "12345", "abcd"}) {
        try {
            normalize_label(bad);
            FAIL() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidLabel);
        }
    }
}

TEST(GFunction, GrowingPairGivesHalf) {
    const double l = 1.5;
    ExtremalQuartet q = radial_oscillator_quartet(l);
    q.states[2] = {as_jet_fn(physical_eigenfunction(4, 0, l)), -ground_energy(l), false, 3};
    q.states[3] = {as_jet_fn(physical_eigenfunction(3, 0, l)), ground_energy(l) - 1.0, false, 4};
    for (double x : {0.5, 1.3, 2.9}) {
        const Jet g = g_from_quartet<double>(q, x);
        EXPECT_LE(std::abs(g[0] + 2.0 * x), 1e-12 * x);
        EXPECT_LE(std::abs(g[1] + 2.0), 1e-11);
        EXPECT_LE(std::abs(g[2]), 1e-10);
        const auto w = w_from_g<double>(g, x);
        EXPECT_LE(std::abs(w[0] - 0.5), 1e-12);
    }
}

TEST(GFunction, DerivativesAgainstFiniteDifferences) {
    const ExtremalQuartet q = extremal_quartet(real_spec(1.0, -0.4, 1.0, 2));
    const double x = 1.4, h = 1e-3;
    const auto g = [&](double t) { return g_from_quartet<double>(q, t)[0]; };
    const Jet j = g_from_quartet<double>(q, x);
    const Complex d1 = (-g(x + 2 * h) + 8.0 * g(x + h) - 8.0 * g(x - h) + g(x - 2 * h)) / (12.0 * h);
    const Complex d2 = (-g(x + 2 * h) + 16.0 * g(x + h) - 30.0 * g(x) + 16.0 * g(x - h) - g(x - 2 * h)) / (12.0 * h * h);
    EXPECT_LE(std::abs(d1 - j[1]) / std::max(1.0, std::abs(j[1])), 1e-8);
    EXPECT_LE(std::abs(d2 - j[2]) / std::max(1.0, std::abs(j[2])), 1e-6);
}

TEST(GFunction, TwoRoutesAgree) {
    for (int k = 1; k <= 3; ++k) {
        const ExtremalQuartet q = extremal_quartet(real_spec(1.0, -0.6, 2.0, k));
        for (const auto& label : canonical_labels()) {
            const ExtremalQuartet p = permute_quartet(q, label);
            if (p.states[2].annihilated || p.states[3].annihilated) continue;
            for (double x : {0.6, 1.5, 2.8}) {
                Jet a, b;
                try {
                    a = g_from_quartet<double>(p, x);
                    b = g_energy_route<double>(p, x);
                } catch (const Error&) {
                    continue;
                }
                for (int i = 0; i < 3; ++i) {
                    EXPECT_LE(std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])), 1e-9) << "k=" << k << " " << label << " x=" << x;
                }
            }
        }
    }
}

TEST(Classify, TableQuartetDegeneracies) {
    const auto q1 = extremal_quartet(table_spec(TableId::T1, 1.0));
    EXPECT_EQ(classify_quartet(permute_quartet(q1, "1234")), Degeneracy::One);
    const auto q2 = extremal_quartet(table_spec(TableId::T2, 1.0));
    EXPECT_EQ(classify_quartet(permute_quartet(q2, "3412")), Degeneracy::Infinite);
    EXPECT_EQ(classify_quartet(permute_quartet(q2, "1423")), Degeneracy::Generic);
}

TEST(Classify, ConstantSamples) {
    EXPECT_EQ(classify_degenerate(std::vector<Complex>(8, 0.5)), Degeneracy::Constant);
    EXPECT_EQ(classify_degenerate(std::vector<Complex>(8, 1.0)), Degeneracy::One);
    std::vector<Complex> w(8, 0.5);
    w[3] += 1e-6;
    EXPECT_EQ(classify_degenerate(w), Degeneracy::Generic);
    EXPECT_THROW(classify_degenerate(std::vector<Complex>(3, 0.5)), Error);
}

TEST(Residual, FabricatedSecondDerivativeIsExact) {
    PVParams p;
    p.a = {0.7, 0.1};
    p.b = -1.3;
    p.c = 0.25;
    p.d = -0.125;
    for (double z : {0.3, 2.0, 9.0}) {
        const Complex w(0.4, 0.2), dw(-0.3, 0.6);
        const Complex d2w = pv_rhs(w, dw, z, p);
        EXPECT_LE(pv_residual(w, dw, d2w, z, p), 1e-15);
        EXPECT_GT(pv_residual(w, dw, d2w + 0.01, z, p), 1e-4);
    }
}

TEST(Residual, SingularLocusAndDomain) {
    PVParams p;
    p.d = -0.125;
    for (Complex w : {Complex(0.0), Complex(1.0), Complex(1.0 + 1e-12)}) {
        try {
            pv_residual(w, 0.1, 0.1, 1.0, p);
            FAIL() << w;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::EquationSingularity);
        }
    }
    EXPECT_THROW(pv_residual(Complex(0.5), 0.1, 0.1, 0.0, p), Error);
}

TEST(PrintedForms, SecondOrderRowSolvesAnotherOrderingsEquation) {
    const auto& t = printed_table(TableId::T2);
    const auto zs = grid_points({0.1, 20.0, 50, true});
    const PrintedRow& r1423 = t.rows[2];
    ASSERT_EQ(r1423.label, "1423");
    for (double l : {1.0, 2.0}) {
        EXPECT_GT(detail::printed_form_residual(t, r1423, l, "1423", zs), 1e-3);
        EXPECT_LE(detail::printed_form_residual(t, r1423, l, "2413", zs), 1e-8);
    }
}

TEST(PrintedForms, OscillatorRowSolvesNoOrdering) {
    const auto& t = printed_table(TableId::T0);
    const auto zs = grid_points({0.1, 20.0, 50, true});
    const PrintedRow& r2413 = t.rows[4];
    ASSERT_EQ(r2413.label, "2413");
    EXPECT_EQ(detail::satisfied_orderings(t, r2413, {1.0, 2.0}, zs), "");
}

TEST(PrintedForms, CorrectedOscillatorFormsSolve) {
    const auto zs = grid_points({0.1, 20.0, 50, true});
    PrintedTable t = printed_table(TableId::T0);
    PrintedRow a = t.rows[2], b = t.rows[4];
    a.closed = [](double l, Complex z) { return (2.0 * l + 1.0 - z) / 2.0; };
    b.closed = [](double l, Complex z) { return -z / (2.0 * l + 3.0); };
    for (double l : {1.0, 2.0}) {
        EXPECT_LE(detail::printed_form_residual(t, a, l, "1423", zs), 1e-8);
        EXPECT_LE(detail::printed_form_residual(t, b, l, "2413", zs), 1e-8);
    }
}

TEST(Poles, CrossingIsFlaggedWithoutNaN) {
    const PVSolution sol = solve(real_spec(0.0, ground_energy(0.0) - 0.8, std::max(nu_lower_bound(0.0, ground_energy(0.0) - 0.8), 0.0) + 1.0, 1, "1423"));
    const auto g = [&](double x) { return g_from_quartet<double>(sol.quartet, x)[0].real(); };
    double lo = 1.0, hi = 1.5;
    ASSERT_LT(g(lo) * g(hi), 0.0);
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(lo) * g(mid) <= 0.0 ? hi : lo) = mid;
    }
    const double x0 = 0.5 * (lo + hi);
    EXPECT_NEAR(x0, 1.22646, 1e-4);
    const GridSample s = w_eval(sol, x0 * x0);
    EXPECT_EQ(s.flag, SampleFlag::Pole);
    EXPECT_FALSE(s.residual.has_value());
    EXPECT_FALSE(std::isnan(s.w.real()) || std::isnan(s.w.imag()));
    const Certificate c = certify(sol, {0.1, 20.0, 200, true});
    for (const auto& smp : c.samples) {
        EXPECT_FALSE(std::isnan(smp.w.real()));
        if (smp.residual) EXPECT_FALSE(std::isnan(*smp.residual));
    }
}

TEST(Solve, RealFirstOrderIsCertified) {
    const PVSolution sol = solve(real_spec(1.0, 1.0, 1.0, 1));
    EXPECT_EQ(sol.degeneracy, Degeneracy::Generic);
    const Certificate c = certify(sol);
    EXPECT_EQ(c.masked, 0);
    EXPECT_LE(c.max_residual, 1e-8);
    for (const auto& s : c.samples) EXPECT_LE(std::abs(s.w.imag()), 1e-12 * std::max(1.0, std::abs(s.w)));
}

TEST(Solve, ComplexSolutionWithRealParameters) {
    using namespace std::complex_literals;
    SeedSpec s;
    s.l = 3.0;
    s.eps1 = 0.0;
    s.mixture = {1.0, 100.0i};
    s.mode = Mode::ComplexOverReal;
    const PVSolution sol = solve(s);
    for (Complex v : {sol.params.a, sol.params.b, sol.params.c}) EXPECT_EQ(v.imag(), 0.0);
    const Certificate c = certify(sol);
    EXPECT_LE(c.max_residual, 1e-8);
    double max_im = 0.0;
    for (const auto& smp : c.samples) max_im = std::max(max_im, std::abs(smp.w.imag()));
    EXPECT_GT(max_im, 1e-3);
}

TEST(Solve, DegenerateOrderingIsRejected) {
    SeedSpec s = table_spec(TableId::T1, 1.0);
    s.order = "1234";
    try {
        solve(s);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateOutput);
    }
    EXPECT_EQ(solve(s, true).degeneracy, Degeneracy::One);
}

TEST(ComplexExample, FrozenParametersAndPrintedComparison) {
    const auto& ex = complex_examples()[2];
    const auto r = check_complex_example(ex);
    // alpha_1 = 13/4 + 11i, alpha_3 = -5/4 + 11i
    EXPECT_LE(std::abs(r.params.a - Complex(-55.21875, 35.75)), 1e-9);
    EXPECT_LE(std::abs(r.params.b - Complex(1911.0 / 32.0, 55.0 / 4.0)), 1e-9);
    EXPECT_LE(r.max_residual, 1e-8);
    EXPECT_FALSE(r.component_match[0]);
    EXPECT_TRUE(r.component_match[1]);
    // the printed a is alpha_1^2/2 with alpha_1 = 13/4 + 33i/4
    const Complex alt(13.0 / 4.0, 33.0 / 4.0);
    EXPECT_LE(std::abs(alt * alt / 2.0 - (*ex.printed_abc)[0]), 1e-12);
}

TEST(Grid, RejectsNonPositiveStart) {
    try {
        grid_points({0.0, 20.0, 10, true});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
    }
    EXPECT_THROW(grid_points({1.0, 0.5, 10, true}), Error);
    const auto z = grid_points({0.1, 20.0, 5, false});
    EXPECT_EQ(z.front(), 0.1);
    EXPECT_EQ(z.back(), 20.0);
}
