#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "pvsusy/hierarchies.hpp"

using namespace pvsusy;

TEST(Detect, HermiteAtZeroAngularIndex) {
    const HierarchyTag t = detect(hierarchy_spec(0.0, 1.25, false));
    EXPECT_EQ(t.family, Family::Hermite);
    EXPECT_EQ(t.condition, 1);
    EXPECT_EQ(t.n, 1);
}

TEST(Detect, ExponentialRegime) {
    const HierarchyTag t = detect(hierarchy_spec(0.5, 0.0, true));
    EXPECT_EQ(t.family, Family::Exponential);
    EXPECT_TRUE(t.nu_infinite);
}

TEST(Detect, GenericSeedIsTranscendent) {
    SeedSpec s;
    s.l = 1.0;
    s.eps1 = 0.37;
    s.nu = Nu{1.0, false};
    s.mixture = nu_to_mixture(*s.nu, s.l, s.eps1);
    EXPECT_EQ(detect(s).family, Family::Transcendent);
    s = hierarchy_spec(1.0, 0.37, false);
    s.k = 2;
    EXPECT_EQ(detect(s).family, Family::Transcendent);
}

TEST(Detect, NuTokenAndMixtureAgree) {
    SeedSpec a = hierarchy_spec(2.0, 0.75, false);
    SeedSpec b = a;
    b.nu.reset();
    b.mixture = {1.0, 0.0};
    EXPECT_EQ(detect(a).family, Family::Polynomial);
    EXPECT_EQ(detect(b).family, Family::Polynomial);
    EXPECT_EQ(detect(a).condition, detect(b).condition);
}

TEST(Detect, OtherFamilies) {
    EXPECT_EQ(detect(hierarchy_spec(2.0, -1.75, true)).condition, 2);
    const HierarchyTag lag = detect(hierarchy_spec(1.0, -0.25, false));
    EXPECT_EQ(lag.family, Family::Laguerre);
    EXPECT_EQ(lag.n, 0);
    const HierarchyTag bes = detect(hierarchy_spec(1.0, 0.0, true));
    EXPECT_EQ(bes.family, Family::Bessel);
    EXPECT_DOUBLE_EQ(bes.mu, 0.75);
    const HierarchyTag web = detect(hierarchy_spec(0.0, 0.6, false));
    EXPECT_EQ(web.family, Family::Weber);
    EXPECT_NEAR(web.mu, 0.7, 1e-15);
}

TEST(ClosedForms, HandValues) {
    for (double l : {0.0, 1.0, 2.5}) {
        HierarchyTag p;
        p.family = Family::Polynomial;
        p.l = l;
        EXPECT_LE(std::abs(closed_form_w(p, 0, 4.0) - (1.0 - 8.0 / (2.0 * l + 1.0))), 1e-14);
    }
    HierarchyTag e;
    e.family = Family::Exponential;
    e.l = 0.5;
    EXPECT_LE(std::abs(closed_form_w(e, 0, 1.0) - std::exp(0.5)), 1e-14);
    HierarchyTag h;
    h.family = Family::Hermite;
    h.n = 0;
    for (double z : {0.3, 1.0, 4.0}) {
        EXPECT_LE(std::abs(closed_form_w(h, 0, z) - (1.0 - std::pow(z, 1.5) / (z * z + 1.0))), 1e-14);
    }
}

TEST(ClosedForms, UnavailableFamiliesThrow) {
    for (Family f : {Family::Weber, Family::Transcendent}) {
        HierarchyTag t;
        t.family = f;
        try {
            closed_form_w(t, 0, 1.0);
            FAIL() << to_string(f);
        } catch (const Error& err) {
            EXPECT_EQ(err.kind(), ErrorKind::NotAvailable);
        }
    }
    HierarchyTag p;
    p.family = Family::Polynomial;
    EXPECT_THROW(closed_form_w(p, 1, 1.0), Error);
}

TEST(ClosedForms, XVariableConventionIdentity) {
    HierarchyTag p;
    p.family = Family::Polynomial;
    p.l = 1.0;
    for (double z : {0.5, 3.0}) {
        const Complex x = std::sqrt(z);
        const Complex want = 1.0 + std::pow(z, 0.25) * (closed_form_w(p, 0, x, x) - 1.0);
        EXPECT_EQ(convention_w(p, 0, Convention::XVariable, z), want);
    }
}

TEST(CauchyDerivatives, Polynomial) {
    const auto f = [](Complex z) { return z * z * z; };
    const auto d = cauchy_derivatives(f, 2.0, 0.2);
    EXPECT_LE(std::abs(d[0] - 8.0), 1e-13);
    EXPECT_LE(std::abs(d[1] - 12.0), 1e-12);
    EXPECT_LE(std::abs(d[2] - 12.0), 1e-11);
    EXPECT_FALSE(form_derivatives([](Complex z) { return 1.0 / (z - 2.0); }, 2.0).has_value());
}

TEST(Crosscheck, PolynomialMatchesUnderXVariable) {
    const SeedSpec s = hierarchy_spec(2.0, 0.75, false);
    const auto r = crosscheck(detect(s), s);
    const FormCheck* b = r.best(0);
    ASSERT_NE(b, nullptr);
    EXPECT_EQ(b->convention, Convention::XVariable);
    EXPECT_LE(b->match, 1e-9);
    EXPECT_EQ(b->match_order, "1234");
    EXPECT_LE(r.machinery_residual, 1e-8);
}

TEST(Crosscheck, ExponentialSecondFormMatches) {
    const SeedSpec s = hierarchy_spec(0.5, 0.0, true);
    const auto r = crosscheck(detect(s), s);
    EXPECT_LE(r.best(1)->match, 1e-9);
    // the first form solves PV without equalling any machinery ordering
    EXPECT_GT(r.best(0)->match, 1.0);
    bool certified = false;
    for (const auto& f : r.forms) certified = certified || (f.form == 0 && f.residual <= kHierarchyResidual);
    EXPECT_TRUE(certified);
}

TEST(Crosscheck, BesselBothConditions) {
    for (bool inf : {false, true}) {
        const SeedSpec s = hierarchy_spec(1.0, 0.0, inf);
        const auto r = crosscheck(detect(s), s);
        EXPECT_LE(r.best(0)->match, 1e-9) << inf;
        EXPECT_LE(r.best(1)->match, 1e-9) << inf;
    }
}

TEST(Crosscheck, HermiteFirstLevelIsReportedAsNoMatch) {
    const SeedSpec s = hierarchy_spec(0.0, 1.25, false);
    const auto r = crosscheck(detect(s), s);
    EXPECT_NE(r.summary.find("form 1: NO MATCH"), std::string::npos) << r.summary;
    EXPECT_NE(r.summary.find("form 2: NO MATCH"), std::string::npos) << r.summary;
    EXPECT_LE(r.machinery_residual, 1e-8);
}

TEST(Crosscheck, WeberHasOnlyTheMachineryResidual) {
    const SeedSpec s = hierarchy_spec(0.0, 0.6, false);
    const auto r = crosscheck(detect(s), s);
    EXPECT_TRUE(r.forms.empty());
    EXPECT_LE(r.machinery_residual, 1e-8);
}
