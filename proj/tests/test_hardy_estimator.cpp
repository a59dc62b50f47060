#include <gtest/gtest.h>

#include "hardylab/hardy_estimator.hpp"
#include "hardylab/json_io.hpp"

using namespace hardylab;

namespace {

MeasureEstimate point(double R, double value, double se, std::uint64_t success = 1000) {
    MeasureEstimate m;
    m.R = R;
    m.value = value;
    m.raw = value;
    m.std_error = se;
    m.n_success = success;
    m.n_total = 100000;
    return m;
}

std::vector<MeasureEstimate> power_law(double C, double h, double rel_se, int count = 8) {
    std::vector<MeasureEstimate> pts;
    for (int j = 0; j < count; ++j) {
        const double R = 4.0 * std::pow(2.0, j);
        const double v = C * std::pow(R, -h);
        pts.push_back(point(R, v, rel_se * v));
    }
    return pts;
}

}  // namespace

TEST(Fit, RecoversExactPowerLaw) {
    const auto pts = power_law(0.8, 1.7, 0.01);
    const HardyEstimate e = fit_hardy_exponent(pts);
    EXPECT_NEAR(e.h_hat, 1.7, 1e-12);
    EXPECT_NEAR(e.tail_slope, 1.7, 1e-12);
    EXPECT_NEAR(std::exp(e.intercept), 0.8, 1e-12);
    EXPECT_FALSE(e.divergent_slope);
    EXPECT_EQ(e.n_fit, 8u);
    EXPECT_LT(e.ci_lo, 1.7);
    EXPECT_GT(e.ci_hi, 1.7);
}

TEST(Fit, MatchesNormalEquations) {
    // Weighted regression of noisy data against a direct 2x2 solve.
    auto pts = power_law(1.0, 1.0, 0.05);
    const double noise[] = {1.02, 0.97, 1.05, 0.99, 0.94, 1.08, 1.01, 0.9};
    double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        pts[i].value *= noise[i];
        pts[i].std_error = 0.05 * pts[i].value * (1.0 + 0.1 * static_cast<double>(i));
        const double x = std::log(pts[i].R), y = std::log(pts[i].value);
        const double w = 1.0 / std::pow(pts[i].std_error / pts[i].value, 2);
        s0 += w; s1 += w * x; s2 += w * x * x; t0 += w * y; t1 += w * x * y;
    }
    const double slope = (s0 * t1 - s1 * t0) / (s0 * s2 - s1 * s1);
    const HardyEstimate e = fit_hardy_exponent(pts);
    EXPECT_NEAR(e.slope, slope, 1e-12);
    EXPECT_NEAR(e.h_hat, -slope, 1e-12);
    EXPECT_NEAR(e.slope_stderr, std::sqrt(s0 / (s0 * s2 - s1 * s1)), 1e-12);
}

TEST(Fit, TruncatesAfterFirstEmptyRadius) {
    auto pts = power_law(0.5, 2.0, 0.01);
    for (std::size_t i = 5; i < pts.size(); ++i) {
        pts[i] = MeasureEstimate::from_counts(pts[i].R, {0, 1}, 0, 100000, 0, 1e-3, 42);
    }
    const HardyEstimate e = fit_hardy_exponent(pts);
    EXPECT_EQ(e.n_fit, 6u);
    EXPECT_EQ(e.points.size(), 8u);
}

TEST(Fit, Errors) {
    EXPECT_THROW(fit_hardy_exponent(power_law(1.0, 1.0, 0.01, 2)), NumericalError);
    std::vector<MeasureEstimate> zeros;
    for (double R : {4.0, 8.0, 16.0}) zeros.push_back(MeasureEstimate::from_counts(R, {0, 1}, 0, 1000, 0, 1e-3, 1));
    EXPECT_THROW(fit_hardy_exponent(zeros), NumericalError);
    std::vector<MeasureEstimate> early;
    early.push_back(MeasureEstimate::from_counts(4.0, {0, 1}, 10, 1000, 0, 1e-3, 1));
    early.push_back(MeasureEstimate::from_counts(8.0, {0, 1}, 0, 1000, 0, 1e-3, 1));
    early.push_back(MeasureEstimate::from_counts(16.0, {0, 1}, 0, 1000, 0, 1e-3, 1));
    EXPECT_THROW(fit_hardy_exponent(early), NumericalError);
}

TEST(Fit, StripLikeCollapseIsDivergent) {
    std::vector<MeasureEstimate> pts;
    const std::uint64_t succ[] = {4600, 85, 0, 0, 0, 0, 0, 0};
    for (int j = 0; j < 8; ++j) {
        pts.push_back(MeasureEstimate::from_counts(4.0 * std::pow(2.0, j), {0, 1}, succ[j], 100000, 0, 1e-3, 42));
    }
    const HardyEstimate e = fit_hardy_exponent(pts);
    EXPECT_TRUE(e.divergent_slope);
    EXPECT_GT(e.tail_slope, 3.0);
    EXPECT_EQ(e.ci_hi, kInf);
    EXPECT_EQ(e.h_hat, e.tail_slope);
}

TEST(Fit, SteepButResolvedIsNotDivergent) {
    const HardyEstimate e = fit_hardy_exponent(power_law(0.5, 1.2, 0.02));
    EXPECT_FALSE(e.divergent_slope);
    EXPECT_NEAR(e.resolvable_h, std::log(100000.0 * 0.5 * std::pow(4.0, -1.2)) / std::log(128.0), 1e-12);
}

TEST(ClosedForm, KnownDomains) {
    EXPECT_DOUBLE_EQ(*closed_form_h(DomainSpec::sector(0.5)), 2.0);
    EXPECT_DOUBLE_EQ(*closed_form_h(DomainSpec::sector(2.0)), 0.5);
    EXPECT_NEAR(*closed_form_h(DomainSpec::spiral(kPi / 4.0, 1.0)), 2.0, 1e-12);
    EXPECT_DOUBLE_EQ(*closed_form_h(DomainSpec::half_plane()), 1.0);
    EXPECT_DOUBLE_EQ(*closed_form_h(DomainSpec::disk_complement(1.0)), 0.0);
    EXPECT_EQ(*closed_form_h(DomainSpec::strip(kPi)), kInf);
    EXPECT_EQ(*closed_form_h(DomainSpec::disk(1.0)), kInf);
    EXPECT_NEAR(*closed_form_h(DomainSpec::radial_profile({1.0, 2.0}, {kPi / 2.0, kPi / 2.0})), 1.0, 1e-15);
    EXPECT_NEAR(*closed_form_h(DomainSpec::rotated(0.3, DomainSpec::sector(0.25))), 4.0, 1e-15);
    EXPECT_FALSE(closed_form_h(DomainSpec::radial_profile({1.0, 2.0}, {0.5, 1.0})).has_value());
    EXPECT_DOUBLE_EQ(*closed_form_h(DomainSpec::union_of({})), 0.0);
}

TEST(ClosedForm, FoldImages) {
    const double k = dilatation_bound(2.0);
    EXPECT_NEAR(*closed_form_h(fold_image_domain(FoldMapSpec(Complex{k, 0}))), 0.75, 1e-12);
    EXPECT_NEAR(*closed_form_h(fold_image_domain(FoldMapSpec(Complex{-k, 0}))), 1.5, 1e-12);
    // Spiral image of the half-plane under z^{1+kappa}: h = 1 / Re(1 + kappa).
    const Complex kc{0.2, 0.4};
    EXPECT_NEAR(*closed_form_h(fold_image_domain(FoldMapSpec(kc))), 1.0 / 1.2, 1e-12);
}

TEST(Hansen, SectorIsExact) {
    for (double alpha : {0.25, 0.5, 1.0, 1.5}) {
        const HansenResult h = hansen_starlike(DomainSpec::sector(alpha), std::vector<double>{1, 2, 4, 8});
        EXPECT_NEAR(h.h_at_tmax, 1.0 / alpha, 1e-9);
        EXPECT_NEAR(h.h_extrapolated, 1.0 / alpha, 1e-9);
        EXPECT_FALSE(h.divergent);
    }
}

TEST(Hansen, GeometricApproachExtrapolates) {
    // H(t_k) chosen so that pi / (2 H) = 2 - 2^{-k}: Aitken recovers 2.
    std::vector<double> r, hw;
    for (int k = 0; k < 6; ++k) {
        r.push_back(std::pow(2.0, k));
        hw.push_back(kPi / 2.0 / (2.0 - std::pow(2.0, -k)));
    }
    const HansenResult h = hansen_starlike(DomainSpec::radial_profile(r, hw), r);
    EXPECT_NEAR(h.h_extrapolated, 2.0, 1e-9);
    EXPECT_LT(h.h_at_tmax, 2.0);
    EXPECT_FALSE(h.divergent);
}

TEST(Hansen, ShrinkingSlicesDiverge) {
    std::vector<double> r, hw;
    for (int k = 0; k < 6; ++k) {
        r.push_back(std::pow(2.0, k));
        hw.push_back(1.0 / std::pow(2.0, k));
    }
    EXPECT_TRUE(hansen_starlike(DomainSpec::radial_profile(r, hw), r).divergent);
}

TEST(Hansen, RejectsNonStarlike) {
    const DomainSpec grow = DomainSpec::radial_profile({1.0, 10.0}, {0.3, 1.0});
    EXPECT_THROW(hansen_starlike(grow, std::vector<double>{1, 2, 4, 8}), NumericalError);
    EXPECT_THROW(hansen_starlike(DomainSpec::sector(0.5), std::vector<double>{1, 2}), DomainError);
}

TEST(Bounds, Rules) {
    DomainMetadata m;
    m.simply_connected = true;
    BoundInterval b = analytic_bounds(m);
    EXPECT_EQ(b.lo, 0.5);
    EXPECT_EQ(b.hi, kInf);
    m.convex = true;
    b = analytic_bounds(m);
    EXPECT_EQ(b.lo, 1.0);
    EXPECT_EQ(b.provenance.size(), 2u);

    DomainMetadata q;
    q.quasidisk_K = 2.0;
    b = analytic_bounds(q);
    EXPECT_DOUBLE_EQ(b.lo, 0.75);
    EXPECT_DOUBLE_EQ(b.hi, 1.5);

    DomainMetadata c;
    c.complement_bounded = true;
    b = analytic_bounds(c);
    EXPECT_EQ(b.lo, 0.0);
    EXPECT_EQ(b.hi, 0.0);

    DomainMetadata bd;
    bd.bounded = true;
    EXPECT_EQ(analytic_bounds(bd).lo, kInf);

    DomainMetadata inc;
    inc.superset_h = 1.0;
    inc.subset_h = 2.0;
    b = analytic_bounds(inc);
    EXPECT_EQ(b.lo, 1.0);
    EXPECT_EQ(b.hi, 2.0);
}

TEST(Bounds, Inconsistent) {
    DomainMetadata m;
    m.superset_h = 2.0;
    m.subset_h = 0.5;
    EXPECT_THROW(analytic_bounds(m), ConfigError);
    DomainMetadata both;
    both.bounded = true;
    both.complement_bounded = true;
    EXPECT_THROW(analytic_bounds(both), ConfigError);
    DomainMetadata convex_ext;
    convex_ext.convex = true;
    convex_ext.complement_bounded = true;
    EXPECT_THROW(analytic_bounds(convex_ext), ConfigError);
}

TEST(Bounds, ComparisonAndQuasiconformal) {
    const BoundInterval g = comparison_bound(1.0, 2.0, ComparisonDirection::Growth);
    EXPECT_EQ(g.lo, 0.0);
    EXPECT_EQ(g.hi, 2.0);
    const BoundInterval l = comparison_bound(1.5, 0.5, ComparisonDirection::Lower);
    EXPECT_EQ(l.lo, 0.75);
    EXPECT_EQ(l.hi, kInf);
    EXPECT_THROW(comparison_bound(1.0, 0.0, ComparisonDirection::Growth), DomainError);
    const BoundInterval qb = quasiconformal_band(1.0, 2.0);
    EXPECT_EQ(qb.lo, 0.5);
    EXPECT_EQ(qb.hi, 2.0);
}

TEST(EstimateHardy, SmallRunOnSector) {
    WalkConfig cfg;
    cfg.n_walkers = 20000;
    const HardyEstimate e = estimate_hardy(DomainSpec::sector(0.5), RadiusLadder{}, cfg);
    EXPECT_NEAR(e.h_hat, 2.0, 0.25);
    EXPECT_EQ(e.points.size(), 8u);
    for (std::size_t j = 0; j < e.points.size(); ++j) EXPECT_EQ(e.points[j].seed, 42u ^ j);
}

TEST(EstimateHardy, Preconditions) {
    WalkConfig cfg;
    cfg.n_walkers = 100;
    EXPECT_THROW(estimate_hardy(DomainSpec::half_plane(), Complex{0, -1}, RadiusLadder{}, cfg), DomainError);
    EXPECT_THROW(estimate_hardy(DomainSpec::half_plane(), Complex{0, 10}, RadiusLadder{}, cfg), DomainError);
    EXPECT_THROW(estimate_hardy(DomainSpec::half_plane(), Complex{0, 1}, RadiusLadder{4.0, 1.0, 8}, cfg), DomainError);
}

TEST(Hansen, ConstantProfileAndShrinkingProfile) {
    const std::vector<double> t{1, 2, 4, 8, 16, 32};
    EXPECT_NEAR(hansen_starlike(DomainSpec::radial_profile({1.0, 32.0}, {kPi / 4.0, kPi / 4.0}), t).h_extrapolated, 2.0,
                1e-9);
    std::vector<double> hw;
    for (double r : t) hw.push_back(kPi / (2.0 * (1.0 + std::log(r))));
    const HansenResult h = hansen_starlike(DomainSpec::radial_profile(t, hw), t);
    EXPECT_TRUE(h.divergent);
    EXPECT_EQ(h.h_extrapolated, kInf);
}

TEST(ClosedForm, QuasidiskEndpointsAreAttained) {
    for (double K : {1.5, 2.0, 3.0, 5.0}) {
        const double k = dilatation_bound(K);
        DomainMetadata m;
        m.quasidisk_K = K;
        const BoundInterval band = analytic_bounds(m);
        EXPECT_NEAR(*closed_form_h(fold_image_domain(FoldMapSpec(Complex{k, 0}))), band.lo, 1e-12) << K;
        EXPECT_NEAR(*closed_form_h(fold_image_domain(FoldMapSpec(Complex{-k, 0}))), band.hi, 1e-12) << K;
    }
}

TEST(ClosedForm, SectorMapStaysInDistortionBand) {
    for (double K : {1.5, 2.0, 4.0}) {
        for (double alpha : {0.1, 0.5, 0.9}) {
            const SectorQcMapSpec s(K, alpha);
            const double h = *closed_form_h(DomainSpec::sector(alpha));
            const double h_image = *closed_form_h(DomainSpec::sector(s.beta()));
            EXPECT_NEAR(h_image, s.L() * h, 1e-12);
            const BoundInterval band = quasiconformal_band(h, K);
            EXPECT_TRUE(band.contains(h_image)) << K << " " << alpha;
        }
        EXPECT_NEAR(SectorQcMapSpec(K, 1e-9).L(), K, 1e-8);
    }
}

TEST(Bounds, ConvexAndAffineExamples) {
    DomainMetadata convex;
    convex.convex = true;
    EXPECT_EQ(analytic_bounds(convex).lo, 1.0);
    EXPECT_EQ(analytic_bounds(convex).hi, kInf);
    const BoundInterval affine_g = comparison_bound(1.3, 1.0, ComparisonDirection::Growth);
    const BoundInterval affine_l = comparison_bound(1.3, 1.0, ComparisonDirection::Lower);
    EXPECT_EQ(affine_g.hi, 1.3);
    EXPECT_EQ(affine_l.lo, 1.3);
}

TEST(EstimateHardy, OracleAgreementOnClosedForms) {
    const std::vector<std::pair<DomainSpec, Complex>> cases{
        {DomainSpec::sector(0.5), default_base_point(DomainSpec::sector(0.5))},
        {DomainSpec::sector(2.0), default_base_point(DomainSpec::sector(2.0))},
        {DomainSpec::half_plane(), Complex{0, 1}},
        {DomainSpec::spiral(kPi / 4.0, 1.0), default_base_point(DomainSpec::spiral(kPi / 4.0, 1.0))},
        {DomainSpec::radial_profile({1.0, 2.0}, {kPi / 3.0, kPi / 3.0}), Complex{1.0, 0.0}},
        {DomainSpec::disk_complement(1.0), Complex{2.0, 0.0}}};
    for (const auto& [d, z0] : cases) {
        const double truth = *closed_form_h(d);
        const HardyEstimate e = estimate_hardy(d, z0, RadiusLadder{}, WalkConfig{});
        EXPECT_LE(std::abs(e.h_hat - truth), std::max(0.1 * truth, 2.0 * e.slope_stderr))
            << domain_to_json(d).dump() << " h_hat=" << e.h_hat << " closed form=" << truth;
    }
}

TEST(EstimateHardy, InclusionMonotonicity) {
    const HardyEstimate small = estimate_hardy(DomainSpec::sector(0.5), Complex{1.0, 1.0}, RadiusLadder{}, WalkConfig{});
    const HardyEstimate large = estimate_hardy(DomainSpec::sector(1.0), Complex{1.0, 1.0}, RadiusLadder{}, WalkConfig{});
    EXPECT_GE(small.h_hat, large.h_hat - 2.0 * std::hypot(small.slope_stderr, large.slope_stderr));
}

TEST(EstimateHardy, TranslationInvariance) {
    const Complex shift{1.0, 1.0};
    const DomainSpec base = DomainSpec::sector(0.5);
    const Complex z0 = default_base_point(base);
    const HardyEstimate a = estimate_hardy(base, z0, RadiusLadder{}, WalkConfig{});
    const HardyEstimate b =
        estimate_hardy(DomainSpec::translated(shift, base), z0 + shift, RadiusLadder{}, WalkConfig{});
    EXPECT_LE(std::abs(a.h_hat - b.h_hat), 2.0 * std::hypot(a.slope_stderr, b.slope_stderr));
}

TEST(EstimateHardy, HansenAgreesOnStarlikeProfiles) {
    const std::vector<double> t{1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
    for (double H : {kPi / 4.0, kPi / 3.0}) {
        const DomainSpec d = DomainSpec::radial_profile({1.0, 2.0}, {H, H});
        const HansenResult h = hansen_starlike(d, t);
        const HardyEstimate e = estimate_hardy(d, Complex{1.0 / std::sin(H), 0.0}, RadiusLadder{}, WalkConfig{});
        EXPECT_LE(std::abs(e.h_hat - h.h_extrapolated), 2.0 * e.slope_stderr) << H << " h_hat=" << e.h_hat;
    }
}
