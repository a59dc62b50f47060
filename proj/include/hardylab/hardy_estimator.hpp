#pragma once

// Hardy-number estimation from harmonic-measure ladders, using
// h(Omega) = -limsup log omega_R / log R, plus every closed-form value and
// analytic bound available for cross-validation.

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hardylab/common.hpp"
#include "hardylab/complex_maps.hpp"
#include "hardylab/domain.hpp"
#include "hardylab/harmonic_measure.hpp"
#include "hardylab/stats.hpp"

namespace hardylab {

struct RadiusLadder {
    double R0 = 4.0;
    double ratio = 2.0;
    int count = 8;

    void validate() const {
        require(std::isfinite(R0) && R0 > 0.0, "ladder R0 must be positive");
        require(std::isfinite(ratio) && ratio > 1.0, "ladder ratio must exceed 1");
        require(count >= 3, "ladder needs at least 3 radii");
    }

    double radius(int j) const { return R0 * std::pow(ratio, j); }

    std::vector<double> radii() const {
        std::vector<double> out(static_cast<std::size_t>(count));
        for (int j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = radius(j);
        return out;
    }
};

/// Closed interval [lo, hi] for h with the rules that produced it.
struct BoundInterval {
    double lo = 0.0;
    double hi = kInf;
    std::vector<std::string> provenance;

    bool contains(double h) const { return h >= lo && h <= hi; }
    bool intersects(double a, double b) const { return a <= hi && b >= lo; }
};

struct HardyEstimate {
    double h_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;   // +inf when divergent_slope
    double slope = 0.0;      // fitted line log omega = intercept + slope log R
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double tail_slope = 0.0;  // decay exponent over the last three fitted radii
    double tail_stderr = 0.0;
    double resolvable_h = 0.0;  // largest exponent the ladder resolves at this walker count
    bool divergent_slope = false;
    std::size_t n_fit = 0;  // leading points used by the fit
    RadiusLadder ladder;
    std::vector<MeasureEstimate> points;
    std::optional<BoundInterval> band;

    /// [ci_lo, ci_hi] meets the analytic band (true when no band is attached).
    bool band_pass() const { return !band || band->intersects(ci_lo, ci_hi); }
};

/// Exact h for the variants that have one: sectors 1/alpha, spirals
/// 1/(alpha cos^2 beta), half-plane 1, complement of a disk 0, the plane 0,
/// bounded domains and strips +inf, constant radial profiles pi/(2 H).
inline std::optional<double> closed_form_h(const DomainSpec& domain) {
    if (is_bounded(domain)) return kInf;
    return std::visit(
        [](const auto& d) -> std::optional<double> {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Sector>) {
                return 1.0 / d.alpha;
            } else if constexpr (std::is_same_v<T, Spiral>) {
                const double c = std::cos(d.beta);
                return 1.0 / (d.alpha * c * c);
            } else if constexpr (std::is_same_v<T, HalfPlane>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, Strip>) {
                return kInf;
            } else if constexpr (std::is_same_v<T, DiskComplement>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, RadialProfile>) {
                const auto& hw = d.half_widths();
                const double h0 = hw.front();
                if (h0 == kInf) return std::nullopt;
                for (double v : hw) {
                    if (v != h0) return std::nullopt;
                }
                return kPi / (2.0 * h0);
            } else if constexpr (std::is_same_v<T, Rotated> || std::is_same_v<T, Translated>) {
                return closed_form_h(*d.inner);
            } else if constexpr (std::is_same_v<T, Union>) {
                if (d.parts.empty()) return 0.0;
                return std::nullopt;
            } else {
                return std::nullopt;
            }
        },
        domain.variant());
}

/// Fit log omega against log R. Radii past the first one with zero successes
/// carry no information beyond that radius (omega_R is non-increasing in R),
/// so the fit runs over the leading points up to and including it.
///
/// divergent_slope is set when the tail exponent exceeds, by more than 50%
/// plus two tail standard errors, either the global exponent or the largest
/// exponent the ladder can resolve, log(n omega(R0)) / log(R_max / R0).
inline HardyEstimate fit_hardy_exponent(std::span<const MeasureEstimate> points,
                                        std::optional<RadiusLadder> ladder = std::nullopt) {
    if (points.size() < 3) throw NumericalError("exponent fit needs at least 3 ladder points");
    const bool any_success = std::any_of(points.begin(), points.end(),
                                         [](const MeasureEstimate& m) { return m.n_success > 0; });
    if (!any_success) throw NumericalError("exponent fit: zero successes at every radius");

    std::size_t n_fit = points.size();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].n_success == 0 && points[i].n_total > 0) {
            n_fit = i + 1;
            break;
        }
    }
    if (n_fit < 3) {
        throw NumericalError("exponent fit: fewer than 3 usable points (omega fell below the Monte Carlo floor at R = " +
                             std::to_string(points[n_fit - 1].R) + ")");
    }

    std::vector<double> x, y, w;
    for (std::size_t i = 0; i < n_fit; ++i) {
        const MeasureEstimate& m = points[i];
        if (!(m.value > 0.0) || !std::isfinite(m.value)) throw NumericalError("exponent fit: non-positive omega");
        x.push_back(std::log(m.R));
        y.push_back(std::log(m.value));
        const double se = std::max(m.std_error, 1e-15 * m.value);
        w.push_back((m.value * m.value) / (se * se));
    }

    HardyEstimate est;
    est.points.assign(points.begin(), points.end());
    est.n_fit = n_fit;
    if (ladder) {
        est.ladder = *ladder;
    } else {
        est.ladder = {points.front().R, points.size() > 1 ? points[1].R / points[0].R : 2.0,
                      static_cast<int>(points.size())};
    }

    const LineFit global = weighted_line_fit(x, y, w);
    const std::size_t t0 = n_fit - 3;
    const LineFit tail = weighted_line_fit(std::span(x).subspan(t0), std::span(y).subspan(t0),
                                           std::span(w).subspan(t0));
    est.slope = global.slope;
    est.h_hat = -global.slope;
    est.slope_stderr = global.slope_stderr;
    est.intercept = global.intercept;
    est.tail_slope = -tail.slope;
    est.tail_stderr = tail.slope_stderr;

    const MeasureEstimate& first = points.front();
    const double span = std::log(points.back().R / first.R);
    est.resolvable_h = span > 0.0 ? std::log(static_cast<double>(first.n_total) * first.value) / span : kInf;

    const double margin = 2.0 * est.tail_stderr;
    const bool beyond_global = est.h_hat > 0.0 && est.tail_slope > 1.5 * est.h_hat + margin;
    const bool beyond_resolution = est.tail_slope > 1.5 * est.resolvable_h + margin;
    est.divergent_slope = beyond_global || beyond_resolution;

    if (est.divergent_slope) {
        est.h_hat = est.tail_slope;
        est.ci_lo = est.tail_slope - 2.0 * est.tail_stderr;
        est.ci_hi = kInf;
    } else {
        est.ci_lo = est.h_hat - 2.0 * est.slope_stderr;
        est.ci_hi = est.h_hat + 2.0 * est.slope_stderr;
    }
    return est;
}

/// Runs estimate_omega on every ladder radius (seed xor j for radius j) and
/// fits the decay exponent.
inline HardyEstimate estimate_hardy(const DomainSpec& domain, Complex z0, const RadiusLadder& ladder,
                                    const WalkConfig& cfg, std::optional<BoundInterval> band = std::nullopt,
                                    unsigned threads = worker_count()) {
    ladder.validate();
    cfg.validate();
    require(contains(domain, z0), "base point must lie in the domain");
    require(std::abs(z0) < ladder.R0 * (1.0 - cfg.eps_rel), "base point must lie inside the smallest ladder radius");
    std::vector<MeasureEstimate> pts;
    pts.reserve(static_cast<std::size_t>(ladder.count));
    for (int j = 0; j < ladder.count; ++j) {
        WalkConfig c = cfg;
        c.seed = cfg.seed ^ static_cast<std::uint64_t>(j);
        pts.push_back(estimate_omega(domain, ladder.radius(j), z0, c, threads));
    }
    HardyEstimate est = fit_hardy_exponent(pts, ladder);
    est.band = std::move(band);
    return est;
}

inline HardyEstimate estimate_hardy(const DomainSpec& domain, const RadiusLadder& ladder, const WalkConfig& cfg,
                                    std::optional<BoundInterval> band = std::nullopt) {
    return estimate_hardy(domain, default_base_point(domain), ladder, cfg, std::move(band));
}

// ---------------------------------------------------------------------------
// Hansen's formula for starlike domains

struct HansenResult {
    double h_at_tmax = 0.0;     // pi / alpha(t_max)
    double h_extrapolated = 0.0;  // Aitken extrapolation over the last three grid points
    bool divergent = false;       // alpha(t) -> 0 trend: h = +inf
    std::vector<double> max_arcs;  // alpha(t) on the grid
};

/// h = lim pi / alpha(t) for domains starlike about 0, with alpha(t) the
/// longest arc of the slice at radius t. Throws if alpha(t) increases along
/// the grid beyond the angular-scan tolerance.
inline HansenResult hansen_starlike(const DomainSpec& domain, std::span<const double> t_grid) {
    require(t_grid.size() >= 3, "hansen estimate needs at least 3 radii");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        require(t_grid[i] > 0.0, "hansen radii must be positive");
        if (i > 0) require(t_grid[i] > t_grid[i - 1], "hansen radii must be increasing");
    }
    HansenResult res;
    for (double t : t_grid) res.max_arcs.push_back(angular_stats(domain, t).max_arc);
    for (std::size_t i = 1; i < res.max_arcs.size(); ++i) {
        if (res.max_arcs[i] > res.max_arcs[i - 1] + 4.0 * kAngularScanTol) {
            throw NumericalError("hansen: alpha(t) increases at t = " + std::to_string(t_grid[i]) +
                                 "; domain is not starlike about 0");
        }
    }
    auto value = [&](std::size_t i) {
        const double a = res.max_arcs[i];
        return a > 0.0 ? kPi / a : kInf;
    };
    const std::size_t n = res.max_arcs.size();
    res.h_at_tmax = value(n - 1);
    if (!std::isfinite(res.h_at_tmax)) {
        res.divergent = true;
        res.h_extrapolated = kInf;
        return res;
    }
    const double v1 = value(n - 3), v2 = value(n - 2), v3 = value(n - 1);
    const double d1 = v2 - v1, d2 = v3 - v2;
    const double tol = 1e-9 * std::max(1.0, std::abs(v3));
    if (std::abs(d2) <= tol) {
        res.h_extrapolated = v3;
    } else if (d1 <= 0.0 || d2 >= d1 * (1.0 - 1e-9)) {
        res.divergent = true;
        res.h_extrapolated = kInf;
    } else {
        const double q = d2 / d1;
        res.h_extrapolated = v3 + d2 * q / (1.0 - q);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Analytic bounds

struct DomainMetadata {
    bool bounded = false;
    bool complement_bounded = false;
    bool simply_connected = false;
    bool convex = false;
    std::optional<double> quasidisk_K;  // image of the half-plane under a K-qc map conformal there
    std::optional<double> superset_h;   // h of a domain containing this one
    std::optional<double> subset_h;     // h of a domain contained in this one
};

/// Intersection of every applicable rule. Throws on an empty intersection.
inline BoundInterval analytic_bounds(const DomainMetadata& meta) {
    if (meta.bounded && meta.complement_bounded) {
        throw ConfigError("inconsistent metadata: bounded and complement_bounded");
    }
    BoundInterval b{0.0, kInf, {}};
    auto apply = [&b](double lo, double hi, const std::string& rule) {
        b.lo = std::max(b.lo, lo);
        b.hi = std::min(b.hi, hi);
        b.provenance.push_back(rule);
    };
    if (meta.bounded) apply(kInf, kInf, "bounded");
    if (meta.complement_bounded) apply(0.0, 0.0, "complement_bounded");
    if (meta.simply_connected) apply(0.5, kInf, "simply_connected");
    if (meta.convex) apply(1.0, kInf, "convex");
    if (meta.quasidisk_K) {
        const double K = *meta.quasidisk_K;
        require(K >= 1.0, "quasidisk K must be >= 1");
        apply((K + 1.0) / (2.0 * K), (K + 1.0) / 2.0, "quasidisk_halfplane");
    }
    if (meta.superset_h) apply(*meta.superset_h, kInf, "inclusion_superset");
    if (meta.subset_h) apply(0.0, *meta.subset_h, "inclusion_subset");
    if (b.lo > b.hi) throw ConfigError("inconsistent metadata: empty bound intersection");
    return b;
}

enum class ComparisonDirection { Growth, Lower };

/// Bound from a conformal comparison map with known target h: growth
/// |phi(z)| <= C(1 + |z|^a) gives h <= a h_known; c|z|^b <= |phi(z)| + 1 gives
/// h >= b h_known.
inline BoundInterval comparison_bound(double h_known, double exponent, ComparisonDirection dir) {
    require(exponent > 0.0, "comparison exponent must be positive");
    require(h_known >= 0.0, "known Hardy number must be non-negative");
    if (dir == ComparisonDirection::Growth) return {0.0, exponent * h_known, {"comparison_growth"}};
    return {exponent * h_known, kInf, {"comparison_lower"}};
}

/// Band for the image of a domain with Hardy number h under
/// a conformal map with a K-qc extension: [h/K, K h].
inline BoundInterval quasiconformal_band(double h, double K) {
    require(K >= 1.0, "K must be >= 1");
    return {h / K, K * h, {"qc_distortion"}};
}

/// g_kappa(upper half-plane) = Sp(arg(1 + kappa), |1 + kappa|^2 / Re(1 + kappa)).
inline DomainSpec fold_image_domain(const FoldMapSpec& spec) {
    return power_map_image(1.0 + spec.kappa());
}

}  // namespace hardylab
