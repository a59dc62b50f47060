#pragma once

// Explicit maps: power maps on the upper half-plane, the fold maps g_kappa
// (quasiconformal extensions of z^{1+kappa}), the piecewise sector map and the
// Cayley transform, together with their dilatation arithmetic.

#include "hardylab/common.hpp"

namespace hardylab {

/// Exponent of the power map z -> z^lambda on the upper half-plane.
/// Requires lambda != 0 and |lambda - 1| <= 1, which forces Re lambda > 0.
class PowerMapSpec {
public:
    explicit PowerMapSpec(Complex lambda) : lambda_(lambda) {
        require(is_finite(lambda), "power map exponent must be finite");
        require(lambda != Complex{0.0, 0.0}, "power map exponent must be nonzero");
        require(std::abs(lambda - 1.0) <= 1.0 + 1e-12,
                "power map exponent must satisfy |lambda - 1| <= 1");
    }

    Complex lambda() const { return lambda_; }

    /// Spiral pitch arg(lambda) of the image domain.
    double image_beta() const { return std::arg(lambda_); }
    /// Spiral width |lambda|^2 / Re lambda of the image domain, in (0, 2].
    double image_alpha() const { return std::norm(lambda_) / lambda_.real(); }

private:
    Complex lambda_;
};

/// Fold map parameter kappa with |kappa| < 1.
class FoldMapSpec {
public:
    explicit FoldMapSpec(Complex kappa) : kappa_(kappa) {
        require(is_finite(kappa) && std::abs(kappa) < 1.0, "fold map requires |kappa| < 1");
    }

    Complex kappa() const { return kappa_; }
    PowerMapSpec upper_power() const { return PowerMapSpec(1.0 + kappa_); }

private:
    Complex kappa_;
};

/// Piecewise sector map built from K >= 1 and alpha in (0,1):
/// L = (1 - alpha/2) K + alpha/2 and beta = alpha / L.
class SectorQcMapSpec {
public:
    SectorQcMapSpec(double K, double alpha) : K_(K), alpha_(alpha) {
        require(std::isfinite(K) && K >= 1.0, "sector map requires K >= 1");
        require(alpha > 0.0 && alpha < 1.0, "sector map requires alpha in (0,1)");
        L_ = (1.0 - alpha / 2.0) * K + alpha / 2.0;
        beta_ = alpha / L_;
    }

    double K() const { return K_; }
    double alpha() const { return alpha_; }
    double L() const { return L_; }
    double beta() const { return beta_; }

private:
    double K_;
    double alpha_;
    double L_;
    double beta_;
};

/// z^lambda on the upper half-plane with the branch 0 < Im log z < pi.
inline Complex eval_power_map(const PowerMapSpec& spec, Complex z) {
    require(z != Complex{0.0, 0.0}, "power map is not defined at 0");
    require(z.imag() > 0.0, "power map requires Im z > 0");
    return std::exp(spec.lambda() * std::log(z));
}

/// g_kappa(z) = z^{1+kappa} for Im z >= 0 and z * conj(z)^kappa for Im z < 0;
/// g(0) = 0.
inline Complex eval_fold_map(const FoldMapSpec& spec, Complex z) {
    if (z == Complex{0.0, 0.0}) return {0.0, 0.0};
    const Complex kappa = spec.kappa();
    if (z.imag() >= 0.0) {
        // std::log gives arg in (-pi, pi]; on the closed upper half-plane that
        // is the [0, pi] branch (negative reals land on +pi).
        Complex lz = std::log(z);
        if (lz.imag() < 0.0) lz.imag(-lz.imag());  // -0.0 imaginary part
        return std::exp((1.0 + kappa) * lz);
    }
    return z * std::exp(kappa * std::log(std::conj(z)));
}

/// Complex dilatation of g_kappa: 0 on the upper half-plane, kappa z / conj(z)
/// below. Undefined on the real axis.
inline Complex beltrami_fold(const FoldMapSpec& spec, Complex z) {
    require(z.imag() != 0.0, "fold dilatation is undefined on the real axis");
    if (z.imag() > 0.0) return {0.0, 0.0};
    return spec.kappa() * z / std::conj(z);
}

/// K(kappa) = (1 + |kappa|) / (1 - |kappa|).
inline double maximal_dilatation(Complex kappa) {
    const double k = std::abs(kappa);
    require(k < 1.0, "maximal dilatation requires |kappa| < 1");
    return (1.0 + k) / (1.0 - k);
}

/// k = (K - 1) / (K + 1), inverse of maximal_dilatation on [0, 1).
inline double dilatation_bound(double K) {
    require(K >= 1.0, "K must be >= 1");
    return (K - 1.0) / (K + 1.0);
}

/// |mu| of g_{kappa'} o g_kappa^{-1} on the image of the lower half-plane.
inline double composed_dilatation_magnitude(Complex kappa, Complex kappa_prime) {
    require(std::abs(kappa) < 1.0 && std::abs(kappa_prime) < 1.0,
            "composed dilatation requires |kappa|, |kappa'| < 1");
    return std::abs((kappa_prime - kappa) / (1.0 - std::conj(kappa) * kappa_prime));
}

/// Argument of z taken in (-pi(2 - alpha), pi alpha].
inline double sector_map_arg(double alpha, Complex z) {
    double a = principal_arg(z);
    if (a > kPi * alpha) a -= kTwoPi;
    return a;
}

/// The K-quasiconformal extension of z^{beta/alpha} from S_alpha to the plane.
inline Complex eval_sector_qc_map(const SectorQcMapSpec& spec, Complex z) {
    if (z == Complex{0.0, 0.0}) return {0.0, 0.0};
    const double alpha = spec.alpha();
    const double beta = spec.beta();
    const double theta = sector_map_arg(alpha, z);
    const double modulus = std::pow(std::abs(z), beta / alpha);
    const double angle = theta >= 0.0 ? theta * beta / alpha
                                      : theta * (2.0 - beta) / (2.0 - alpha);
    return std::polar(modulus, angle);
}

/// ||mu_g|| of the sector map, (alpha - beta) / (1 - (alpha - 1)(beta - 1)).
inline double sector_qc_dilatation(const SectorQcMapSpec& spec) {
    const double a = spec.alpha();
    const double b = spec.beta();
    return (a - b) / (1.0 - (a - 1.0) * (b - 1.0));
}

/// phi(z) = i (1 + z) / (1 - z), the unit disk onto the upper half-plane.
inline Complex cayley(Complex z) {
    require(std::abs(z) < 1.0, "cayley transform requires |z| < 1");
    return Complex{0.0, 1.0} * (1.0 + z) / (1.0 - z);
}

}  // namespace hardylab
