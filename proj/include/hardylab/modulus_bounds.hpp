#pragma once

// Reich-Walczak bounds I(r,R) <= mod g(A) <= J(r,R) for the image of the ring
// A = {r < |z| < R} under a quasiconformal g with Beltrami coefficient mu.

#include <string>
#include <variant>
#include <vector>

#include "hardylab/common.hpp"
#include "hardylab/complex_maps.hpp"
#include "hardylab/hardy_estimator.hpp"
#include "hardylab/rng.hpp"
#include "hardylab/stats.hpp"

namespace hardylab {

struct ZeroField {};

/// 0 on the upper half-plane, kappa z / conj(z) below (the fold map g_kappa).
struct FoldField {
    Complex kappa;
};

inline constexpr double kGridFieldMaxAbs = 0.99;

/// Piecewise-constant mu on the annulus r <= |z| < R: cell (i, j) covers
/// theta in [2 pi i / n_theta, 2 pi (i+1) / n_theta) and log t in
/// [log r + j du, log r + (j+1) du). Values are stored row-major in theta then
/// t. Zero outside the annulus.
class GridField {
public:
    GridField(std::size_t n_theta, std::size_t n_t, double r, double R, std::vector<Complex> values)
        : n_theta_(n_theta), n_t_(n_t), r_(r), R_(R), values_(std::move(values)) {
        require(n_theta > 0 && n_t > 0, "grid field needs positive dimensions");
        require(r > 0.0 && r < R && std::isfinite(R), "grid field needs 0 < r < R");
        require(values_.size() == n_theta * n_t, "grid field value count must equal n_theta * n_t");
        for (const Complex& v : values_) {
            require(is_finite(v) && std::abs(v) <= kGridFieldMaxAbs, "grid field values must satisfy |mu| <= 0.99");
        }
    }

    std::size_t n_theta() const { return n_theta_; }
    std::size_t n_t() const { return n_t_; }
    double r() const { return r_; }
    double R() const { return R_; }
    const std::vector<Complex>& values() const { return values_; }
    Complex at(std::size_t i, std::size_t j) const { return values_[i * n_t_ + j]; }

    Complex operator()(Complex z) const {
        const double t = std::abs(z);
        if (t < r_ || t >= R_) return {0.0, 0.0};
        const double theta = wrap_two_pi(std::arg(z));
        auto i = static_cast<std::size_t>(theta / kTwoPi * static_cast<double>(n_theta_));
        auto j = static_cast<std::size_t>((std::log(t) - std::log(r_)) / std::log(R_ / r_) * static_cast<double>(n_t_));
        return at(std::min(i, n_theta_ - 1), std::min(j, n_t_ - 1));
    }

private:
    std::size_t n_theta_;
    std::size_t n_t_;
    double r_;
    double R_;
    std::vector<Complex> values_;
};

using BeltramiField = std::variant<ZeroField, FoldField, GridField>;

inline Complex eval_field(const BeltramiField& mu, Complex z) {
    return std::visit(
        [z](const auto& f) -> Complex {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ZeroField>) {
                return {0.0, 0.0};
            } else if constexpr (std::is_same_v<T, FoldField>) {
                return beltrami_fold(FoldMapSpec(f.kappa), z);
            } else {
                return f(z);
            }
        },
        mu);
}

/// Essential sup of |mu| (exact for the closed-form fields, the largest cell
/// value for grids).
inline double field_sup(const BeltramiField& mu) {
    if (const auto* f = std::get_if<FoldField>(&mu)) return std::abs(f->kappa);
    if (const auto* g = std::get_if<GridField>(&mu)) {
        double m = 0.0;
        for (const Complex& v : g->values()) m = std::max(m, std::abs(v));
        return m;
    }
    return 0.0;
}

struct DistortionPair {
    double d_plus;
    double d_minus;
};

/// D_+-(z) = |1 +- mu(z) conj(z)/z|^2 / (1 - |mu(z)|^2) for a given mu(z).
inline DistortionPair distortion_at(Complex mu, Complex z) {
    require(z != Complex{0.0, 0.0}, "distortion is undefined at 0");
    const double k2 = std::norm(mu);
    require(k2 < 1.0, "distortion requires |mu| < 1");
    const Complex nu = mu * std::conj(z) / z;
    const double den = 1.0 - k2;
    return {std::norm(1.0 + nu) / den, std::norm(1.0 - nu) / den};
}

inline DistortionPair distortion_fields(const BeltramiField& mu, Complex z) {
    return distortion_at(eval_field(mu, z), z);
}

struct ModulusBounds {
    double I;
    double J;

    /// I <= J up to rounding (the two are equal for radially constant D_+-).
    bool ordered() const { return I <= J * (1.0 + 1e-12); }
};

/// I = 2 pi int_r^R dt / (t int D_- dtheta),
/// J = 2 pi (int dtheta / int_r^R D_+ dt/t)^{-1},
/// by the composite midpoint rule in theta and u = log t.
inline ModulusBounds modulus_bounds_IJ(const BeltramiField& mu, double r, double R, std::size_t n_theta,
                                       std::size_t n_t) {
    require(r > 0.0 && r < R && R <= 1.0, "modulus bounds need 0 < r < R <= 1");
    auto pow2 = [](std::size_t n) { return n > 0 && (n & (n - 1)) == 0; };
    require(pow2(n_theta) && n_theta >= 512, "n_theta must be a power of two >= 512");
    require(pow2(n_t) && n_t >= 256, "n_t must be a power of two >= 256");

    const double dth = kTwoPi / static_cast<double>(n_theta);
    const double u0 = std::log(r);
    const double du = std::log(R / r) / static_cast<double>(n_t);

    std::vector<double> dplus(n_theta * n_t), dminus(n_theta * n_t);
    for (std::size_t i = 0; i < n_theta; ++i) {
        const double th = (static_cast<double>(i) + 0.5) * dth;
        for (std::size_t j = 0; j < n_t; ++j) {
            const double u = u0 + (static_cast<double>(j) + 0.5) * du;
            const DistortionPair d = distortion_fields(mu, std::polar(std::exp(u), th));
            dplus[i * n_t + j] = d.d_plus;
            dminus[j * n_theta + i] = d.d_minus;
        }
    }

    std::vector<double> terms(n_t);
    for (std::size_t j = 0; j < n_t; ++j) {
        const double ring = pairwise_sum(std::span(dminus).subspan(j * n_theta, n_theta)) * dth;
        terms[j] = du / ring;
    }
    const double I = kTwoPi * pairwise_sum(terms);

    terms.resize(n_theta);
    for (std::size_t i = 0; i < n_theta; ++i) {
        const double ray = pairwise_sum(std::span(dplus).subspan(i * n_t, n_t)) * du;
        terms[i] = dth / ray;
    }
    const double J = kTwoPi / pairwise_sum(terms);
    return {I, J};
}

/// [(2/(K+1)) log(R/r), (2K/(K+1)) log(R/r)]: the range of mod g(A) when g is
/// conformal on the upper half-plane and K-qc below.
inline BoundInterval conformal_halfplane_band(double K, double r, double R) {
    require(std::isfinite(K) && K >= 1.0, "band needs K >= 1");
    require(r > 0.0 && r < R, "band needs 0 < r < R");
    const double L = std::log(R / r);
    return {2.0 / (K + 1.0) * L, 2.0 * K / (K + 1.0) * L, {"conformal_halfplane"}};
}

/// Grid field with independent cells, |mu| uniform in [0, k_max) and uniform
/// argument, drawn from the Philox stream (seed, 0).
inline GridField random_grid_field(std::size_t n_theta, std::size_t n_t, double r, double R, double k_max,
                                   std::uint64_t seed) {
    require(k_max >= 0.0 && k_max <= kGridFieldMaxAbs, "random grid field needs 0 <= k_max <= 0.99");
    PhiloxStream rng(seed, 0);
    std::vector<Complex> v(n_theta * n_t);
    for (Complex& c : v) {
        const double k = k_max * rng.uniform();
        c = std::polar(k, kTwoPi * rng.uniform());
    }
    return GridField(n_theta, n_t, r, R, std::move(v));
}

}  // namespace hardylab
