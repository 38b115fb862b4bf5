#include "kspec/errors.hpp"
#include "kspec/oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace kspec;
using kspec::test::kPi;

namespace {

KoenigsDomain catalog(const CatalogShape& s) { return KoenigsDomain::from_catalog(s); }
KoenigsDomain sector(double a, double b) { return catalog(CatalogShape::sector({0.0, 0.0}, a, b)); }

} // namespace

TEST(Oracle, SymmetricSectorConvergesOnNegativeAxis) {
    OracleResult r = area_integral_classify(sector(-kPi / 4, kPi / 4), {-1.0, 0.0}, WeightSpec::dirichlet(), 2.0);
    EXPECT_EQ(r.verdict, Verdict::Finite);
    EXPECT_EQ(r.method, "polar");
    // Closed form: int r dr int exp(-2 r cos t) dt = int_{-pi/4}^{pi/4} dt / (4 cos^2 t) = 1/2.
    EXPECT_NEAR(r.value, 0.5, 1e-6);
}

TEST(Oracle, StripDivergesOnNegativeAxis) {
    OracleResult r = area_integral_classify(catalog(CatalogShape::strip(0, kPi)), {-1.0, 0.0}, WeightSpec::dirichlet(), 2.0);
    EXPECT_EQ(r.verdict, Verdict::Divergent);
    EXPECT_EQ(r.method, "cartesian");
}

TEST(Oracle, GreenPowerOnQuarterSector) {
    KoenigsDomain d = sector(0, kPi / 2);
    WeightSpec w = WeightSpec::green_power(0.0);
    OracleResult in = area_integral_classify(d, std::polar(1.0, 3 * kPi / 4), w, 2.0);
    EXPECT_EQ(in.verdict, Verdict::Finite);
    EXPECT_TRUE(in.surrogate);
    EXPECT_EQ(area_integral_classify(d, std::polar(1.0, kPi / 4), w, 2.0).verdict, Verdict::Divergent);
}

TEST(Oracle, GreenPowerNeedsASector) {
    EXPECT_THROW(area_integral_classify(catalog(CatalogShape::strip(0, 1)), {-1.0, 0.0}, WeightSpec::green_power(0), 2),
                 Unsupported);
    EXPECT_THROW(area_integral_classify(sector(0, 1), {0.0, 0.0}, WeightSpec::dirichlet(), 2), SpecError);
    EXPECT_THROW(WeightSpec::green_power(-2.0), SpecError);
}

TEST(Oracle, HalfStripClosedForm) {
    // int_0^inf int_0^1 exp(-2x) dy dx = 1/2.
    OracleResult r = area_integral_classify(catalog(CatalogShape::half_strip(0, 0, 1)), {-1.0, 0.0},
                                            WeightSpec::dirichlet(), 2.0);
    EXPECT_EQ(r.verdict, Verdict::Finite);
    EXPECT_NEAR(r.value, 0.5, 1e-6);
}

TEST(Oracle, PartialsAreNondecreasing) {
    for (cplx lambda : {cplx(-1, 0.5), cplx(-0.2, -1.5), cplx(-2, 0)}) {
        OracleResult r = area_integral_classify(sector(0, kPi / 2), lambda, WeightSpec::dirichlet(), 2.0);
        for (std::size_t i = 1; i < r.partials.size(); ++i) EXPECT_GE(r.partials[i], r.partials[i - 1]);
        OracleResult c = area_integral_classify(catalog(CatalogShape::sigma_eps(0.5)), lambda, WeightSpec::dirichlet(), 2);
        for (std::size_t i = 1; i < c.partials.size(); ++i) EXPECT_GE(c.partials[i], c.partials[i - 1]);
    }
}

TEST(Oracle, ScaleInvarianceOnSectors) {
    for (auto [a, b] : {std::pair{0.0, kPi / 2}, {-kPi / 4, kPi / 4}, {-kPi / 3, kPi / 6}}) {
        KoenigsDomain d = sector(a, b);
        for (double arg = kPi / 2 + 0.05; arg < 3 * kPi / 2; arg += 0.2) {
            cplx l = std::polar(0.7, arg);
            Verdict v1 = area_integral_classify(d, l, WeightSpec::dirichlet(), 2.0).verdict;
            Verdict v2 = area_integral_classify(d, 2.0 * l, WeightSpec::dirichlet(), 2.0).verdict;
            EXPECT_EQ(v1, v2) << a << " " << b << " " << arg;
        }
    }
}

TEST(Oracle, DirichletVerdictIgnoresImaginaryShift) {
    KoenigsDomain d = KoenigsDomain::from_defining_function({-1, 1}, parse_expr("log(abs(y))/(2*0.5)"));
    for (double re : {-0.3, -0.8, -1.5}) {
        Verdict base = area_integral_classify(d, {re, 0.0}, WeightSpec::dirichlet(), 2.0).verdict;
        EXPECT_NE(base, Verdict::Inconclusive);
        for (double im : {0.5, -2.0, 7.0})
            EXPECT_EQ(area_integral_classify(d, {re, im}, WeightSpec::dirichlet(), 2.0).verdict, base) << re << " " << im;
    }
}

TEST(OracleVsTheorem, QuarterSectorAndHalfStripAgree) {
    for (const KoenigsDomain& d : {sector(0, kPi / 2), catalog(CatalogShape::half_strip(0, 0, 1))}) {
        SpectrumBracket b = compute_spectrum(d, SpaceSpec::dirichlet());
        AgreementReport r = oracle_vs_theorem(d, SpaceSpec::dirichlet(), b, {-2, 0, -2, 2}, 11, 11);
        EXPECT_EQ(r.unexcused, 0);
        EXPECT_EQ(static_cast<int>(r.entries.size()), 121);
    }
}

TEST(OracleVsTheorem, StripAgrees) {
    KoenigsDomain d = catalog(CatalogShape::strip(0, kPi));
    AgreementReport r =
        oracle_vs_theorem(d, SpaceSpec::dirichlet(), compute_spectrum(d, SpaceSpec::dirichlet()), {-2, 0, -2, 2}, 5, 5);
    EXPECT_EQ(r.unexcused, 0);
}

TEST(OracleVsTheorem, MisrotatedRegionIsReported) {
    KoenigsDomain d = sector(0, kPi / 2);
    SpectrumBracket wrong = compute_spectrum(sector(-kPi / 2, 0), SpaceSpec::dirichlet());
    AgreementReport r = oracle_vs_theorem(d, SpaceSpec::dirichlet(), wrong, {-2, 0, -2, 2}, 11, 11);
    EXPECT_GT(r.unexcused, 0);
}

TEST(OracleVsTheorem, BergmanSurrogateOnSymmetricSector) {
    KoenigsDomain d = sector(-kPi / 4, kPi / 4);
    SpaceSpec s = SpaceSpec::bergman(2, 0);
    AgreementReport r = oracle_vs_theorem(d, s, compute_spectrum(d, s), {-2, 0, -2, 2}, 11, 11);
    EXPECT_EQ(r.unexcused, 0);
}

TEST(Oracle, RealLambdaUsesClosedLengthPastDoubleRange) {
    KoenigsDomain d = catalog(CatalogShape::exp_symmetric());
    EXPECT_EQ(area_integral_classify(d, {-0.51, 0.0}, WeightSpec::dirichlet(), 2.0).verdict, Verdict::Finite);
    EXPECT_EQ(area_integral_classify(d, {-0.49, 0.0}, WeightSpec::dirichlet(), 2.0).verdict, Verdict::Divergent);
}
