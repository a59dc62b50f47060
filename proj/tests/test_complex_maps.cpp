#include <gtest/gtest.h>

#include <functional>

#include "hardylab/complex_maps.hpp"
#include "hardylab/domain.hpp"

using namespace hardylab;

namespace {

// Wirtinger derivatives by central differences.
struct Wirtinger {
    Complex dz;
    Complex dzbar;
};

Wirtinger wirtinger(const std::function<Complex(Complex)>& g, Complex z, double h = 1e-6) {
    const Complex gx = (g(z + h) - g(z - h)) / (2.0 * h);
    const Complex gy = (g(z + Complex{0, h}) - g(z - Complex{0, h})) / (2.0 * h);
    const Complex I{0, 1};
    return {(gx - I * gy) / 2.0, (gx + I * gy) / 2.0};
}

Complex numeric_beltrami(const std::function<Complex(Complex)>& g, Complex z) {
    const Wirtinger w = wirtinger(g, z);
    return w.dzbar / w.dz;
}

}  // namespace

TEST(PowerMap, ExponentValidation) {
    EXPECT_THROW(PowerMapSpec(Complex{0, 0}), DomainError);
    EXPECT_THROW(PowerMapSpec(Complex{2.5, 0}), DomainError);
    EXPECT_NO_THROW(PowerMapSpec(Complex{2, 0}));
    EXPECT_NO_THROW(PowerMapSpec(Complex{1, 0.5}));
}

TEST(PowerMap, ImageParameters) {
    const PowerMapSpec p(Complex{1.0, 0.5});
    EXPECT_NEAR(p.image_beta(), std::atan(0.5), 1e-15);
    EXPECT_NEAR(p.image_alpha(), 1.25, 1e-15);
    EXPECT_NEAR(PowerMapSpec(Complex{2, 0}).image_alpha(), 2.0, 1e-15);
}

TEST(PowerMap, RejectsLowerHalfPlaneAndOrigin) {
    const PowerMapSpec p(Complex{1.5, 0});
    EXPECT_THROW(eval_power_map(p, {1.0, -0.5}), DomainError);
    EXPECT_THROW(eval_power_map(p, {0.0, 0.0}), DomainError);
    EXPECT_THROW(eval_power_map(p, {1.0, 0.0}), DomainError);
}

TEST(PowerMap, ImageLiesInSpiral) {
    for (Complex lambda : {Complex{1.5, 0}, Complex{1, 0.5}, Complex{0.6, -0.4}, Complex{2, 0}}) {
        const PowerMapSpec p(lambda);
        const DomainSpec image = power_map_image(lambda);
        for (double r : {0.01, 0.3, 1.0, 7.0, 400.0}) {
            for (double t : {0.05, 0.7, 1.6, 2.9, 3.1}) {
                const Complex w = eval_power_map(p, std::polar(r, t));
                EXPECT_TRUE(contains(image, w)) << lambda << " r=" << r << " t=" << t;
            }
        }
    }
}

TEST(FoldMap, ValuesMatchDefinition) {
    const FoldMapSpec g(Complex{1.0 / 3.0, 0.0});
    EXPECT_EQ(eval_fold_map(g, {0.0, 0.0}), Complex(0.0, 0.0));
    // z = i: i^{4/3} = e^{i 2 pi / 3}.
    const Complex up = eval_fold_map(g, {0.0, 1.0});
    EXPECT_NEAR(std::abs(up - std::polar(1.0, 2.0 * kPi / 3.0)), 0.0, 1e-14);
    // z = -i: -i * (i)^{1/3} = -i e^{i pi / 6}.
    const Complex dn = eval_fold_map(g, {0.0, -1.0});
    EXPECT_NEAR(std::abs(dn - Complex{0, -1} * std::polar(1.0, kPi / 6.0)), 0.0, 1e-14);
}

TEST(FoldMap, ContinuousAcrossRealAxis) {
    const FoldMapSpec g(Complex{0.4, -0.3});
    for (double x : {-3.0, -1.0, -0.2, 0.5, 2.0}) {
        const Complex above = eval_fold_map(g, {x, 1e-12});
        const Complex below = eval_fold_map(g, {x, -1e-12});
        const Complex on = eval_fold_map(g, {x, 0.0});
        EXPECT_NEAR(std::abs(above - below), 0.0, 1e-9 * std::abs(on)) << x;
        EXPECT_NEAR(std::abs(above - on), 0.0, 1e-9 * std::abs(on)) << x;
    }
    // -0.0 imaginary part sits on the upper branch.
    EXPECT_NEAR(std::abs(eval_fold_map(g, {-2.0, -0.0}) - eval_fold_map(g, {-2.0, 0.0})), 0.0, 1e-15);
}

TEST(FoldMap, BeltramiMatchesFiniteDifferences) {
    const FoldMapSpec g(Complex{0.3, 0.2});
    auto f = [&g](Complex z) { return eval_fold_map(g, z); };
    for (Complex z : {Complex{0.5, -1.0}, Complex{-2.0, -0.3}, Complex{1.0, -4.0}}) {
        EXPECT_NEAR(std::abs(numeric_beltrami(f, z) - beltrami_fold(g, z)), 0.0, 1e-6) << z;
    }
    for (Complex z : {Complex{0.5, 1.0}, Complex{-2.0, 0.3}}) {
        EXPECT_NEAR(std::abs(numeric_beltrami(f, z)), 0.0, 1e-6) << z;
        EXPECT_EQ(beltrami_fold(g, z), Complex(0.0, 0.0));
    }
    EXPECT_THROW(beltrami_fold(g, {1.0, 0.0}), DomainError);
}

TEST(FoldMap, ParameterValidation) {
    EXPECT_THROW(FoldMapSpec(Complex{1.0, 0.0}), DomainError);
    EXPECT_THROW(FoldMapSpec(Complex{0.8, 0.7}), DomainError);
}

TEST(Dilatation, MaximalDilatation) {
    EXPECT_DOUBLE_EQ(maximal_dilatation(Complex{0, 0}), 1.0);
    EXPECT_NEAR(maximal_dilatation(Complex{1.0 / 3.0, 0}), 2.0, 1e-15);
    EXPECT_NEAR(maximal_dilatation(Complex{0, -0.5}), 3.0, 1e-15);
    EXPECT_THROW(maximal_dilatation(Complex{1, 0}), DomainError);
    for (double K : {1.0, 1.7, 2.0, 9.0}) EXPECT_NEAR(maximal_dilatation(dilatation_bound(K)), K, 1e-12);
}

TEST(Dilatation, ComposedMatchesChainRule) {
    // |mu| of g_{k'} o g_k^{-1} at w = g_k(z) from the real Jacobians:
    // D(h) = D(g_{k'}) D(g_k)^{-1}.
    const Complex k{0.3, 0.1}, kp{-0.2, 0.4};
    const FoldMapSpec g(k), gp(kp);
    for (Complex z : {Complex{0.5, -1.0}, Complex{-1.5, -0.2}}) {
        const Wirtinger w1 = wirtinger([&](Complex u) { return eval_fold_map(g, u); }, z);
        const Wirtinger w2 = wirtinger([&](Complex u) { return eval_fold_map(gp, u); }, z);
        // Compose R-linear maps: h = L2 o L1^{-1}; for L(v) = a v + b conj(v),
        // L^{-1}(w) = (conj(a) w - b conj(w)) / (|a|^2 - |b|^2).
        const Complex a1 = w1.dz, b1 = w1.dzbar, a2 = w2.dz, b2 = w2.dzbar;
        const double det = std::norm(a1) - std::norm(b1);
        const Complex ia = std::conj(a1) / det, ib = -b1 / det;
        const Complex ha = a2 * ia + b2 * std::conj(ib);
        const Complex hb = a2 * ib + b2 * std::conj(ia);
        EXPECT_NEAR(std::abs(hb / ha), composed_dilatation_magnitude(k, kp), 1e-6) << z;
    }
    EXPECT_DOUBLE_EQ(composed_dilatation_magnitude(k, k), 0.0);
}

TEST(SectorMap, ParametersAndArgument) {
    const SectorQcMapSpec s(2.0, 0.5);
    EXPECT_NEAR(s.L(), 0.75 * 2.0 + 0.25, 1e-15);
    EXPECT_NEAR(s.beta(), 0.5 / 1.75, 1e-15);
    EXPECT_THROW(SectorQcMapSpec(0.5, 0.5), DomainError);
    EXPECT_THROW(SectorQcMapSpec(2.0, 1.0), DomainError);
    EXPECT_NEAR(sector_map_arg(0.5, std::polar(1.0, 1.0)), 1.0, 1e-15);
    EXPECT_NEAR(sector_map_arg(0.5, std::polar(1.0, 2.0)), 2.0 - kTwoPi, 1e-15);
}

TEST(SectorMap, MapsSectorToSector) {
    const SectorQcMapSpec s(3.0, 0.4);
    for (double r : {0.1, 1.0, 10.0}) {
        // Boundary rays go to boundary rays, interior to interior.
        EXPECT_NEAR(std::arg(eval_sector_qc_map(s, std::polar(r, kPi * 0.4))), kPi * s.beta(), 1e-12);
        EXPECT_NEAR(std::arg(eval_sector_qc_map(s, std::polar(r, 1e-300))), 0.0, 1e-12);
        const Complex w = eval_sector_qc_map(s, std::polar(r, kPi * 0.2));
        EXPECT_GT(std::arg(w), 0.0);
        EXPECT_LT(std::arg(w), kPi * s.beta());
        EXPECT_NEAR(std::abs(w), std::pow(r, s.beta() / s.alpha()), 1e-12 * std::abs(w));
    }
}

TEST(SectorMap, DilatationMatchesFiniteDifferences) {
    const SectorQcMapSpec s(2.5, 0.6);
    auto f = [&s](Complex z) { return eval_sector_qc_map(s, z); };
    double worst = 0.0;
    for (double t : {-2.0, -1.0, -0.3}) {
        for (double r : {0.5, 2.0}) worst = std::max(worst, std::abs(numeric_beltrami(f, std::polar(r, t))));
    }
    EXPECT_NEAR(worst, sector_qc_dilatation(s), 1e-6);
    // Both pieces are conformal up to the stated dilatation, which meets K.
    EXPECT_LE(sector_qc_dilatation(s), dilatation_bound(2.5) + 1e-12);
}

TEST(Cayley, MapsDiskToUpperHalfPlane) {
    EXPECT_NEAR(std::abs(cayley({0, 0}) - Complex{0, 1}), 0.0, 1e-15);
    for (double r : {0.1, 0.5, 0.99}) {
        for (double t : {0.0, 1.0, 3.0, 5.0}) EXPECT_GT(cayley(std::polar(r, t)).imag(), 0.0);
    }
    EXPECT_THROW(cayley({1.0, 0.0}), DomainError);
}
