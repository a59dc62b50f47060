#pragma once

// Hardy number h(f) = sup{p : f in H^p} of explicit analytic maps on the unit
// disk, from the growth of the integral means M_p(r, f) as r -> 1.

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hardylab/common.hpp"
#include "hardylab/complex_maps.hpp"
#include "hardylab/domain.hpp"
#include "hardylab/stats.hpp"

namespace hardylab {

struct CayleyMap {};

/// phi_lambda o Cayley, onto Sp(arg lambda, |lambda|^2 / Re lambda).
struct PowerOfCayley {
    Complex lambda;
};

struct Monomial {
    int n;
};

struct ConstantMap {
    Complex c;
};

/// 1 / (1 - z), onto {Re w > 1/2}.
struct ReciprocalOneMinusZ {};

using AnalyticMapSpec = std::variant<CayleyMap, PowerOfCayley, Monomial, ConstantMap, ReciprocalOneMinusZ>;

inline void validate_map(const AnalyticMapSpec& f) {
    if (const auto* pc = std::get_if<PowerOfCayley>(&f)) {
        PowerMapSpec check(pc->lambda);
        (void)check;
    } else if (const auto* m = std::get_if<Monomial>(&f)) {
        require(m->n >= 0, "monomial degree must be non-negative");
    } else if (const auto* c = std::get_if<ConstantMap>(&f)) {
        require(is_finite(c->c), "constant map value must be finite");
    }
}

inline std::string map_name(const AnalyticMapSpec& f) {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, CayleyMap>) return "cayley";
            else if constexpr (std::is_same_v<T, PowerOfCayley>) return "power_of_cayley";
            else if constexpr (std::is_same_v<T, Monomial>) return "monomial";
            else if constexpr (std::is_same_v<T, ConstantMap>) return "constant";
            else return "reciprocal_one_minus_z";
        },
        f);
}

inline Complex eval_map(const AnalyticMapSpec& f, Complex z) {
    return std::visit(
        [z](const auto& m) -> Complex {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, CayleyMap>) {
                return cayley(z);
            } else if constexpr (std::is_same_v<T, PowerOfCayley>) {
                // Cayley lands in the upper half-plane, where the principal
                // log has argument in (0, pi).
                return std::exp(m.lambda * std::log(cayley(z)));
            } else if constexpr (std::is_same_v<T, Monomial>) {
                return std::pow(z, m.n);
            } else if constexpr (std::is_same_v<T, ConstantMap>) {
                return m.c;
            } else {
                require(std::abs(z) < 1.0, "1/(1-z) is evaluated on |z| < 1");
                return 1.0 / (1.0 - z);
            }
        },
        f);
}

/// |f(z)|^p, through logs for the maps that blow up at the boundary.
inline double abs_pow(const AnalyticMapSpec& f, Complex z, double p) {
    if (const auto* pc = std::get_if<PowerOfCayley>(&f)) {
        const Complex lw = pc->lambda * std::log(cayley(z));
        return std::exp(p * lw.real());
    }
    const double a = std::abs(eval_map(f, z));
    return a == 0.0 ? 0.0 : std::pow(a, p);
}

/// Image domain for the conformal variants (Monomial{1} onto the unit disk).
inline std::optional<DomainSpec> image_domain(const AnalyticMapSpec& f) {
    if (std::holds_alternative<CayleyMap>(f)) return DomainSpec::half_plane();
    if (const auto* pc = std::get_if<PowerOfCayley>(&f)) return power_map_image(pc->lambda);
    if (std::holds_alternative<ReciprocalOneMinusZ>(f)) {
        return DomainSpec::translated({0.5, 0.0}, DomainSpec::rotated(-kPi / 2.0, DomainSpec::half_plane()));
    }
    if (const auto* m = std::get_if<Monomial>(&f); m && m->n == 1) return DomainSpec::disk(1.0);
    return std::nullopt;
}

/// Exact h(f): 1 for Cayley and 1/(1-z), 1/Re lambda for phi_lambda o Cayley,
/// +inf for bounded maps.
inline double closed_form_hf(const AnalyticMapSpec& f) {
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, CayleyMap> || std::is_same_v<T, ReciprocalOneMinusZ>) return 1.0;
            else if constexpr (std::is_same_v<T, PowerOfCayley>) return 1.0 / m.lambda.real();
            else return kInf;
        },
        f);
}

/// M_p(r, f) by the n_quad-point periodic trapezoid rule.
inline double integral_mean(const AnalyticMapSpec& f, double p, double r, std::size_t n_quad) {
    validate_map(f);
    require(p > 0.0, "integral mean needs p > 0");
    require(r > 0.0 && r < 1.0, "integral mean needs 0 < r < 1");
    require(n_quad >= 256 && (n_quad & (n_quad - 1)) == 0, "n_quad must be a power of two >= 256");
    std::vector<double> v(n_quad);
    const double h = kTwoPi / static_cast<double>(n_quad);
    for (std::size_t k = 0; k < n_quad; ++k) v[k] = abs_pow(f, std::polar(r, h * static_cast<double>(k)), p);
    return std::pow(pairwise_sum(v) / static_cast<double>(n_quad), 1.0 / p);
}

struct MeanResult {
    double value = 0.0;
    std::size_t n_quad = 0;
    bool converged = false;
};

inline constexpr std::size_t kQuadStart = 256;
inline constexpr std::size_t kQuadCap = std::size_t{1} << 20;
inline constexpr double kQuadRelTol = 1e-9;

/// Trapezoid rule doubled (reusing nodes) until successive means agree to
/// 1e-9 relative, capped at 2^20 nodes.
inline MeanResult integral_mean_adaptive(const AnalyticMapSpec& f, double p, double r) {
    validate_map(f);
    require(p > 0.0, "integral mean needs p > 0");
    require(r > 0.0 && r < 1.0, "integral mean needs 0 < r < 1");
    std::vector<double> buf(kQuadStart);
    std::size_t n = kQuadStart;
    double h = kTwoPi / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) buf[k] = abs_pow(f, std::polar(r, h * static_cast<double>(k)), p);
    double sum = pairwise_sum(buf);
    MeanResult res{std::pow(sum / static_cast<double>(n), 1.0 / p), n, false};
    while (n < kQuadCap) {
        buf.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            buf[k] = abs_pow(f, std::polar(r, h * (static_cast<double>(k) + 0.5)), p);
        }
        sum += pairwise_sum(buf);
        n *= 2;
        h /= 2.0;
        const double next = std::pow(sum / static_cast<double>(n), 1.0 / p);
        const double change = std::abs(next - res.value);
        res = {next, n, change <= kQuadRelTol * std::abs(next)};
        if (res.converged) break;
    }
    return res;
}

/// r_i = 1 - 2^{-i}, i = 3..12.
inline std::vector<double> default_growth_grid() {
    std::vector<double> g;
    for (int i = 3; i <= 12; ++i) g.push_back(1.0 - std::ldexp(1.0, -i));
    return g;
}

struct GrowthFit {
    double p = 0.0;
    double slope = 0.0;       // regression of p log M_p on log(1/(1-r)) over the whole grid
    double tail_slope = 0.0;  // same over the last three radii
    std::vector<double> r_grid;
    std::vector<double> means;
    std::vector<std::size_t> n_quad;

    bool means_monotone() const {
        for (std::size_t i = 1; i < means.size(); ++i) {
            if (means[i] < means[i - 1] * (1.0 - 1e-9)) return false;
        }
        return true;
    }
};

inline GrowthFit growth_exponent(const AnalyticMapSpec& f, double p, std::span<const double> r_grid) {
    require(r_grid.size() >= 3, "growth fit needs at least 3 radii");
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        require(r_grid[i] > 0.0 && r_grid[i] < 1.0, "growth radii must lie in (0, 1)");
        if (i > 0) require(r_grid[i] > r_grid[i - 1], "growth radii must be increasing");
    }
    GrowthFit fit;
    fit.p = p;
    fit.r_grid.assign(r_grid.begin(), r_grid.end());
    std::vector<double> x, y;
    for (double r : r_grid) {
        const MeanResult m = integral_mean_adaptive(f, p, r);
        fit.means.push_back(m.value);
        fit.n_quad.push_back(m.n_quad);
        x.push_back(-std::log1p(-r));
        y.push_back(m.value > 0.0 ? p * std::log(m.value) : 0.0);
    }
    const std::vector<double> w(x.size(), 1.0);
    fit.slope = weighted_line_fit(x, y, w).slope;
    const std::size_t t0 = x.size() - 3;
    fit.tail_slope = weighted_line_fit(std::span(x).subspan(t0), std::span(y).subspan(t0),
                                       std::span(w).subspan(t0))
                         .slope;
    return fit;
}

inline GrowthFit growth_exponent(const AnalyticMapSpec& f, double p) {
    const auto g = default_growth_grid();
    return growth_exponent(f, p, g);
}

/// Growth threshold for a grid reaching r_max: the local slope of
/// log log(1/(1-r)) at the deepest radius. Means growing like log(1/(1-r)),
/// the borderline case p = h(f), sit at this slope; bounded means sit at 0.
inline double growth_threshold(double r_max) { return 1.0 / -std::log1p(-r_max); }

struct HfEstimate {
    double h_f = 0.0;
    bool infinite = false;
    double p_lo = 0.0;
    double p_hi = 0.0;
    double tol = 0.0;
    double threshold = 0.0;
    std::vector<GrowthFit> evaluations;  // in evaluation order
};

/// Bisection on p for the sign of tail_slope - threshold.
inline HfEstimate estimate_hf(const AnalyticMapSpec& f, double p_lo, double p_hi, double tol,
                              std::span<const double> r_grid) {
    validate_map(f);
    require(p_lo > 0.0 && p_lo < p_hi && std::isfinite(p_hi), "h(f) bracket needs 0 < p_lo < p_hi");
    require(tol >= 1e-2, "h(f) tolerance must be >= 1e-2");
    HfEstimate est;
    est.p_lo = p_lo;
    est.p_hi = p_hi;
    est.tol = tol;
    est.threshold = growth_threshold(r_grid.back());
    auto eval = [&](double p) -> double {
        est.evaluations.push_back(growth_exponent(f, p, r_grid));
        return est.evaluations.back().tail_slope;
    };

    double s_hi = eval(p_hi);
    if (s_hi < est.threshold) {
        est.h_f = p_hi;
        est.infinite = true;
        return est;
    }
    double s_lo = eval(p_lo);
    if (s_lo >= est.threshold) {
        est.h_f = p_lo;
        return est;
    }
    double lo = p_lo, hi = p_hi;
    constexpr double slack = 1e-6;
    while (hi - lo >= tol) {
        const double mid = 0.5 * (lo + hi);
        const double s = eval(mid);
        if (s < s_lo - slack || s > s_hi + slack) {
            throw NumericalError("h(f): growth slope not monotone in p near p = " + std::to_string(mid));
        }
        if (s < est.threshold) {
            lo = mid;
            s_lo = s;
        } else {
            hi = mid;
            s_hi = s;
        }
    }
    est.h_f = 0.5 * (lo + hi);
    return est;
}

inline HfEstimate estimate_hf(const AnalyticMapSpec& f, double p_lo, double p_hi, double tol) {
    const auto g = default_growth_grid();
    return estimate_hf(f, p_lo, p_hi, tol, g);
}

}  // namespace hardylab
