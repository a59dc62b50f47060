#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "hardylab/json_io.hpp"
#include "hardylab/modulus_bounds.hpp"

using namespace hardylab;

namespace {

// Fold field: D_+- are constant on each half of the annulus, so the integrals
// reduce to arithmetic. Above the axis D = 1.
struct FoldClosedForm {
    double I;
    double J;
};

FoldClosedForm fold_closed_form(Complex kappa, double r, double R) {
    const double L = std::log(R / r);
    const double k2 = std::norm(kappa);
    // Below the axis mu conj(z) / z = kappa.
    const double dp = std::norm(1.0 + kappa) / (1.0 - k2);
    const double dm = std::norm(1.0 - kappa) / (1.0 - k2);
    const double I = kTwoPi * L / (kPi * (1.0 + dm));
    const double J = kTwoPi / (kPi / L + kPi / (L * dp));
    return {I, J};
}

}  // namespace

TEST(Distortion, Examples) {
    const DistortionPair z = distortion_fields(ZeroField{}, {0.3, 0.4});
    EXPECT_EQ(z.d_plus, 1.0);
    EXPECT_EQ(z.d_minus, 1.0);
    const DistortionPair f = distortion_fields(FoldField{{1.0 / 3.0, 0.0}}, {0.0, -1.0});
    EXPECT_NEAR(f.d_plus, 2.0, 1e-14);
    EXPECT_NEAR(f.d_minus, 0.5, 1e-14);
    EXPECT_THROW(distortion_at({0.5, 0.0}, {0.0, 0.0}), DomainError);
    EXPECT_THROW(distortion_at({1.0, 0.0}, {1.0, 0.0}), DomainError);
}

TEST(Distortion, BoundedByDilatation) {
    const GridField g = random_grid_field(64, 32, 0.1, 1.0, 0.9, 5);
    PhiloxStream rng(17, 0);
    for (int n = 0; n < 2000; ++n) {
        const Complex z = std::polar(0.1 + 0.9 * rng.uniform(), kTwoPi * rng.uniform());
        const Complex mu = g(z);
        const double K = maximal_dilatation(mu);
        const DistortionPair d = distortion_at(mu, z);
        EXPECT_LE(d.d_plus, K * (1.0 + 1e-12));
        EXPECT_GE(d.d_plus, 1.0 / K * (1.0 - 1e-12));
        EXPECT_LE(d.d_minus, K * (1.0 + 1e-12));
        // D_+ D_- = |1 - nu^2|^2 / (1 - |mu|^2)^2 <= K^2.
        EXPECT_LE(d.d_plus * d.d_minus, K * K * (1.0 + 1e-12));
    }
}

TEST(ModulusIJ, ConformalAnnulus) {
    const ModulusBounds b = modulus_bounds_IJ(ZeroField{}, 0.1, 1.0, 512, 256);
    EXPECT_NEAR(b.I, std::log(10.0), 1e-12);
    EXPECT_NEAR(b.J, std::log(10.0), 1e-12);
}

TEST(ModulusIJ, FoldClosedForms) {
    for (Complex kappa : {Complex{1.0 / 3.0, 0.0}, Complex{-1.0 / 3.0, 0.0}, Complex{0.2, 0.5}, Complex{0.0, -0.6}}) {
        const ModulusBounds b = modulus_bounds_IJ(FoldField{kappa}, 0.1, 1.0, 512, 256);
        const FoldClosedForm c = fold_closed_form(kappa, 0.1, 1.0);
        EXPECT_NEAR(b.I, c.I, 1e-4) << kappa;
        EXPECT_NEAR(b.J, c.J, 1e-4) << kappa;
        EXPECT_TRUE(b.ordered()) << kappa;
    }
    const ModulusBounds third = modulus_bounds_IJ(FoldField{{1.0 / 3.0, 0.0}}, 0.1, 1.0, 512, 256);
    EXPECT_NEAR(third.I, 4.0 / 3.0 * std::log(10.0), 1e-4);
    EXPECT_NEAR(third.J, 4.0 / 3.0 * std::log(10.0), 1e-4);
}

TEST(ModulusIJ, FoldInsideConformalBand) {
    for (double k : {0.2, 0.5, 0.8}) {
        for (double sign : {1.0, -1.0}) {
            const ModulusBounds b = modulus_bounds_IJ(FoldField{{sign * k, 0.0}}, 0.1, 1.0, 512, 256);
            const BoundInterval band = conformal_halfplane_band(maximal_dilatation(k), 0.1, 1.0);
            const double slack = 1e-9 * band.hi;
            EXPECT_GE(b.I, band.lo - slack) << sign * k;
            EXPECT_LE(b.J, band.hi + slack) << sign * k;
        }
    }
}

TEST(Band, Examples) {
    BoundInterval b = conformal_halfplane_band(1.0, 1.0, std::exp(1.0));
    EXPECT_NEAR(b.lo, 1.0, 1e-15);
    EXPECT_NEAR(b.hi, 1.0, 1e-15);
    b = conformal_halfplane_band(2.0, 1.0, std::exp(1.0));
    EXPECT_NEAR(b.lo, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(b.hi, 4.0 / 3.0, 1e-15);
    b = conformal_halfplane_band(3.0, 1.0, std::exp(2.0));
    EXPECT_NEAR(b.lo, 1.0, 1e-15);
    EXPECT_NEAR(b.hi, 3.0, 1e-15);
    EXPECT_THROW(conformal_halfplane_band(0.5, 0.1, 1.0), DomainError);
}

TEST(ModulusIJ, OrderedOnRandomGrids) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const GridField g = random_grid_field(32, 16, 0.1, 1.0, 0.9, seed);
        const ModulusBounds b = modulus_bounds_IJ(g, 0.1, 1.0, 512, 256);
        EXPECT_TRUE(b.ordered()) << seed << " I=" << b.I << " J=" << b.J;
        EXPECT_GT(b.I, 0.0);
    }
}

TEST(ModulusIJ, SuperadditiveAcrossRings) {
    // Splitting the annulus at a cell edge: I adds exactly, J is superadditive.
    const GridField g = random_grid_field(16, 16, 0.01, 1.0, 0.8, 3);
    const ModulusBounds whole = modulus_bounds_IJ(g, 0.01, 1.0, 512, 512);
    const ModulusBounds inner = modulus_bounds_IJ(g, 0.01, 0.1, 512, 256);
    const ModulusBounds outer = modulus_bounds_IJ(g, 0.1, 1.0, 512, 256);
    EXPECT_NEAR(whole.I, inner.I + outer.I, 1e-10 * whole.I);
    EXPECT_GE(whole.J, (inner.J + outer.J) * (1.0 - 1e-12));
}

namespace {

// Integral of D_-(theta) = |1 - m e^{-2 i theta}|^2 / (1 - |m|^2) over [a, b].
double d_minus_cell_integral(Complex m, double a, double b) {
    const Complex e = (std::polar(1.0, -2.0 * b) - std::polar(1.0, -2.0 * a)) / Complex{0.0, -2.0};
    return ((1.0 + std::norm(m)) * (b - a) - 2.0 * (m * e).real()) / (1.0 - std::norm(m));
}

}  // namespace

TEST(ModulusIJ, PiecewiseConstantFieldOracle) {
    const std::size_t nth = 4, nt = 2;
    const double r = 0.1, R = 1.0;
    const GridField g = random_grid_field(nth, nt, r, R, 0.7, 9);
    const double du = std::log(R / r) / nt, dth = kTwoPi / nth;

    // I: the theta integral is exact per cell and D_- is constant in u.
    double I = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
        double ring = 0.0;
        for (std::size_t i = 0; i < nth; ++i) ring += d_minus_cell_integral(g.at(i, j), dth * i, dth * (i + 1));
        I += du / ring;
    }
    I *= kTwoPi;

    // J: ray integral exact in u, outer theta integral by fine Simpson.
    auto inv_ray = [&](double th) {
        const std::size_t i = std::min(static_cast<std::size_t>(th / dth), nth - 1);
        double ray = 0.0;
        for (std::size_t j = 0; j < nt; ++j) ray += du * distortion_at(g.at(i, j), std::polar(1.0, th)).d_plus;
        return 1.0 / ray;
    };
    double outer = 0.0;
    const int panels = 4096;  // per cell
    for (std::size_t i = 0; i < nth; ++i) {
        const double a = dth * i, h = dth / panels;
        double s = inv_ray(a + 1e-15) + inv_ray(a + dth - 1e-15);
        for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * inv_ray(a + h * k);
        outer += s * h / 3.0;
    }
    const double J = kTwoPi / outer;

    const ModulusBounds coarse = modulus_bounds_IJ(g, r, R, 512, 256);
    const ModulusBounds fine = modulus_bounds_IJ(g, r, R, 2048, 256);
    EXPECT_NEAR(coarse.I, I, 1e-4 * I);
    EXPECT_NEAR(coarse.J, J, 1e-4 * J);
    // Midpoint error shrinks under refinement.
    EXPECT_LE(std::abs(fine.I - I), std::abs(coarse.I - I) + 1e-13);
    EXPECT_LE(std::abs(fine.J - J), std::abs(coarse.J - J) + 1e-13);
}

TEST(ModulusIJ, Preconditions) {
    EXPECT_THROW(modulus_bounds_IJ(ZeroField{}, 0.5, 0.5, 512, 256), DomainError);
    EXPECT_THROW(modulus_bounds_IJ(ZeroField{}, 0.1, 2.0, 512, 256), DomainError);
    EXPECT_THROW(modulus_bounds_IJ(ZeroField{}, 0.1, 1.0, 500, 256), DomainError);
    EXPECT_THROW(modulus_bounds_IJ(ZeroField{}, 0.1, 1.0, 512, 128), DomainError);
    EXPECT_THROW(GridField(2, 2, 0.1, 1.0, std::vector<Complex>(4, Complex{0.995, 0.0})), DomainError);
    EXPECT_THROW(GridField(2, 2, 0.1, 1.0, std::vector<Complex>(3)), DomainError);
}

TEST(GridFile, RoundTrip) {
    const GridField g = random_grid_field(8, 4, 0.2, 0.9, 0.5, 77);
    const auto path = std::filesystem::temp_directory_path() / "hardylab_grid_roundtrip.txt";
    write_grid_field(g, path.string());
    const GridField back = read_grid_field(path.string());
    std::filesystem::remove(path);
    EXPECT_EQ(back.n_theta(), 8u);
    EXPECT_EQ(back.n_t(), 4u);
    EXPECT_EQ(back.r(), 0.2);
    EXPECT_EQ(back.R(), 0.9);
    ASSERT_EQ(back.values().size(), g.values().size());
    for (std::size_t k = 0; k < g.values().size(); ++k) EXPECT_EQ(back.values()[k], g.values()[k]) << k;
}
