#include <cmath>
#include <complex>
#include <string>

#include <gtest/gtest.h>

#include "pvsusy/tables.hpp"

using namespace pvsusy;

namespace {

const RowReport& row(const TableReport& r, const std::string& label) {
    for (const auto& x : r.rows) {
        if (x.label == label) return x;
    }
    throw std::runtime_error("missing row " + label);
}

}  // namespace

TEST(ParseTable, NamesAndErrors) {
    EXPECT_EQ(parse_table("t0"), TableId::T0);
    EXPECT_EQ(parse_table("params"), TableId::Params);
    try {
        parse_table("t3");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
    }
}

TEST(ParamsTable, EveryRowButOneIsExact) {
    const PrintedTable& t = printed_table(TableId::Params);
    for (const auto& r : t.rows) {
        std::string where;
        const bool ok = params_match_exactly(t, r, &where);
        if (r.label == "2314") {
            EXPECT_FALSE(ok);
            EXPECT_FALSE(where.empty());
        } else {
            EXPECT_TRUE(ok) << r.label << " " << where;
        }
    }
}

TEST(ParamsTable, MisprintedRowDiffersOnlyInC) {
    // row 2314 prints 4c = -2l-2k-1; the energies give -2l-2k-3
    for (const Rational L : {Rational(0), Rational(1), Rational(5, 2)}) {
        for (const Rational E : {Rational(-7, 4), Rational(1, 3)}) {
            for (std::int64_t k = 1; k <= 3; ++k) {
                const Rational K(k);
                const auto p = pv_params_from_energies<Rational>(permute_energies(table_energies(TableId::Params, L, E, K), "2314"));
                const PrintedRow& r = printed_table(TableId::Params).rows[3];
                ASSERT_EQ(r.label, "2314");
                EXPECT_EQ(r.a(L, E, K) / 32, p.a);
                EXPECT_EQ(r.b(L, E, K) / 32, p.b);
                EXPECT_NE(r.c(L, E, K) / 4, p.c);
                EXPECT_EQ((-2 * L - 2 * K - 3) / 4, p.c);
            }
        }
    }
}

TEST(ParamsTable, FloatMachineryAgreesWithRationalRows) {
    const PrintedTable& t = printed_table(TableId::Params);
    SeedSpec s;
    s.l = 1.0;
    s.eps1 = -0.5;
    s.k = 2;
    s.nu = Nu{1.0, false};
    s.mixture = nu_to_mixture(*s.nu, s.l, s.eps1);
    const auto q = extremal_quartet(s);
    for (const auto& r : t.rows) {
        if (r.label == "2314") continue;
        const PVParams p = pv_params(permute_quartet(q, r.label));
        EXPECT_LE(params_float_gap(p, t, r, 1.0, -0.5, 2.0), 1e-12) << r.label;
    }
}

TEST(OscillatorTable, Reproduction) {
    const auto r = reproduce_table(TableId::T0);
    EXPECT_FALSE(r.pass);
    for (const auto& x : r.rows) EXPECT_TRUE(x.params_exact) << x.label;
    EXPECT_EQ(row(r, "1234").status, "degenerate-agrees");
    EXPECT_EQ(row(r, "3412").status, "degenerate-agrees");
    EXPECT_EQ(row(r, "1324").status, "residual-certified");
    EXPECT_LE(row(r, "1324").max_error, 1e-8);
    EXPECT_EQ(row(r, "2314").status, "residual-certified");
    EXPECT_EQ(row(r, "1423").status, "mismatch");
    EXPECT_EQ(row(r, "2413").status, "mismatch");
    EXPECT_NE(row(r, "2413").note.find("no ordering's parameters"), std::string::npos);
}

TEST(FirstOrderTable, Reproduction) {
    const auto r = reproduce_table(TableId::T1);
    for (const auto& x : r.rows) EXPECT_TRUE(x.params_exact) << x.label;
    for (const char* l : {"1234", "1324", "2314"}) EXPECT_EQ(row(r, l).status, "degenerate-agrees") << l;
    EXPECT_EQ(row(r, "1423").status, "match");
    EXPECT_LE(row(r, "1423").max_error, 1e-12);
    EXPECT_EQ(row(r, "2413").status, "mismatch");
    EXPECT_EQ(row(r, "3412").status, "mismatch");
}

TEST(SecondOrderTable, Reproduction) {
    const auto r = reproduce_table(TableId::T2);
    for (const auto& x : r.rows) EXPECT_TRUE(x.params_exact) << x.label;
    for (const char* l : {"1234", "1324", "2314"}) {
        EXPECT_EQ(row(r, l).status, "degenerate-disagrees") << l;
        EXPECT_NE(row(r, l).note.find("w = 1"), std::string::npos);
    }
    EXPECT_EQ(row(r, "3412").status, "degenerate-agrees");
    const RowReport& r1423 = row(r, "1423");
    EXPECT_EQ(r1423.status, "mismatch");
    EXPECT_NE(r1423.note.find("equals machinery ordering 2413"), std::string::npos) << r1423.note;
    EXPECT_NE(r1423.note.find("parameters of 2314,2413"), std::string::npos) << r1423.note;
    EXPECT_EQ(row(r, "2413").status, "mismatch");
}

TEST(SecondOrderTable, MachineryOrdering2413IsThePrintedForm) {
    const PrintedRow& p = printed_table(TableId::T2).rows[2];
    for (double l : {1.0, 2.0, 3.0}) {
        const auto q = extremal_quartet(table_spec(TableId::T2, l));
        const PVSolution sol = make_solution(q, "2413", extremal_quartet<Quad>(table_spec(TableId::T2, l)));
        for (double z : {0.3, 2.0, 11.0}) {
            const GridSample s = w_eval(sol, z);
            EXPECT_LE(std::abs(s.w - p.closed(l, z)) / std::max(1.0, std::abs(s.w)), 1e-9) << l << " " << z;
        }
    }
}

TEST(ComplexExamples, RealParameterExamplesCertify) {
    for (std::size_t i : {0u, 1u}) {
        const auto r = check_complex_example(complex_examples()[i]);
        EXPECT_TRUE(r.pass) << r.name;
        EXPECT_EQ(r.params.a.imag(), 0.0);
        EXPECT_EQ(r.params.c.imag(), 0.0);
    }
}

TEST(ComplexExamples, PrintedComplexParameters) {
    const auto r1 = check_complex_example(complex_examples()[2]);
    EXPECT_LE(r1.max_residual, 1e-8);
    EXPECT_EQ(r1.component_match, (std::array<bool, 3>{false, true, false}));
    EXPECT_LE(std::abs(r1.params.c + 1.75), 1e-12);
    const auto r2 = check_complex_example(complex_examples()[3]);
    EXPECT_LE(r2.max_residual, 1e-8);
    EXPECT_EQ(r2.component_match, (std::array<bool, 3>{false, true, true}));
    // the printed a differs from the machinery in the sign of its real part
    const Complex pa = (*complex_examples()[3].printed_abc)[0];
    EXPECT_LE(std::abs(r2.params.a - Complex(-pa.real(), pa.imag())), 1e-12);
    EXPECT_TRUE(r1.matching_orderings.empty());
    EXPECT_TRUE(r2.matching_orderings.empty());
}

TEST(SecondOrderTable, CorrectedDenominatorGivesOrdering1423) {
    // printed row 2413 with 4l(l-2) replaced by 4l(l+2)
    PrintedRow fixed = printed_table(TableId::T2).rows[4];
    fixed.closed = [](double l, Complex z) { return (2 * l + 3 - z) * (2 * l + 1) / (z * z - 2.0 * z * (2 * l + 1) + (4 * l * (l + 2) + 3)); };
    const auto zs = grid_points({0.1, 20.0, 50, true});
    for (double l : {1.0, 2.0}) {
        const auto m = detail::table_machinery(TableId::T2, l);
        EXPECT_LE(detail::closed_form_gap(fixed, 0.0, m.solutions[2], l, zs), 1e-9);
        EXPECT_LE(detail::printed_form_residual(printed_table(TableId::T2), fixed, l, "1423", zs), 1e-8);
        EXPECT_GT(detail::closed_form_gap(printed_table(TableId::T2).rows[4], 0.0, m.solutions[2], l, zs), 1e-3);
    }
}
