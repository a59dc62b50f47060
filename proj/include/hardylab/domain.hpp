#pragma once

// Unbounded plane domains: membership, certified boundary-distance lower
// bounds (the contract walk-on-spheres needs), angular statistics on circles
// and circular symmetrization.
//
// Spiral and radial-profile domains are handled in log-polar coordinates
// w = log z, where their boundaries become straight lines or polylines. If the
// w-disk of radius d about w avoids the preimage of the boundary, then the
// z-disk of radius |z| (1 - e^{-d}) about z avoids the boundary, because
// |log(1 + x)| <= -log(1 - |x|) for |x| < 1.

#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "hardylab/common.hpp"

namespace hardylab {

class DomainSpec;
using DomainPtr = std::shared_ptr<const DomainSpec>;

/// {0 < arg z < pi alpha}, alpha in (0, 2].
struct Sector {
    double alpha;
};

/// Sp(beta, alpha): points whose offset arg z - tan(beta) log|z| lies in
/// (0, pi alpha) mod 2pi. beta in (-pi/2, pi/2), alpha in (0, 2].
struct Spiral {
    double beta;
    double alpha;
};

/// {Im z > 0}.
struct HalfPlane {};

/// {0 < Im z < width}.
struct Strip {
    double width;
};

/// {|z| > radius}.
struct DiskComplement {
    double radius;
};

/// {|z| < radius}. Bounded; used for degenerate checks and h = +inf.
struct Disk {
    double radius;
};

/// Symmetric domain {r e^{i theta}: |theta| < H(r)} with H interpolated
/// linearly in log r between grid nodes and extended by its end values.
/// A half-width of +inf marks a radius whose whole circle lies in the domain;
/// on a grid cell touching such a node the whole circle is inside.
class RadialProfile {
public:
    RadialProfile(std::vector<double> r, std::vector<double> half_width)
        : r_(std::move(r)), hw_(std::move(half_width)) {
        require(!r_.empty() && r_.size() == hw_.size(),
                "radial profile needs matching non-empty r and half_width arrays");
        for (std::size_t i = 0; i < r_.size(); ++i) {
            require(std::isfinite(r_[i]) && r_[i] > 0.0, "radial profile radii must be positive");
            if (i > 0) require(r_[i] > r_[i - 1], "radial profile radii must be strictly increasing");
            require(hw_[i] == kInf || (hw_[i] > 0.0 && hw_[i] <= kPi),
                    "radial profile half_width must lie in (0, pi] or be +inf");
        }
        u_.resize(r_.size());
        std::transform(r_.begin(), r_.end(), u_.begin(), [](double v) { return std::log(v); });
        build_pieces();
    }

    const std::vector<double>& radii() const { return r_; }
    const std::vector<double>& half_widths() const { return hw_; }

    /// H at log-radius u (may be +inf).
    double half_width_at_log(double u) const {
        const std::size_t n = u_.size();
        if (u <= u_.front()) return hw_.front();
        if (u >= u_.back()) return hw_.back();
        const auto it = std::upper_bound(u_.begin(), u_.end(), u);
        const std::size_t i = static_cast<std::size_t>(it - u_.begin()) - 1;
        if (u == u_[i]) return hw_[i];
        if (i + 1 >= n) return hw_.back();
        if (hw_[i] == kInf || hw_[i + 1] == kInf) return kInf;
        const double t = (u - u_[i]) / (u_[i + 1] - u_[i]);
        return hw_[i] + t * (hw_[i + 1] - hw_[i]);
    }

    double half_width_at(double r) const { return half_width_at_log(std::log(r)); }

    bool contains(Complex z) const {
        const double rad = std::abs(z);
        if (rad == 0.0) return hw_.front() == kInf;
        const double h = half_width_at_log(std::log(rad));
        if (h == kInf) return true;
        return std::abs(principal_arg(z)) < h;
    }

    /// Lower bound on the distance to the boundary, 0 if z is outside.
    double clearance(Complex z) const {
        if (!contains(z)) return 0.0;
        if (pieces_.empty()) return kInf;
        const double rad = std::abs(z);
        const double u = std::log(rad);
        const double th = principal_arg(z);
        const double a = std::abs(th);
        double d = dist_upper(u, a);
        d = std::min(d, dist_upper(u, -a));
        d = std::min(d, dist_upper(u, kTwoPi - a));
        return rad * -std::expm1(-d);
    }

private:
    // One boundary piece of the upper graph {theta = H(u)} in the (u, theta)
    // plane. Vertical pieces sit at a node whose neighbouring cell is a full
    // circle. u0/u1 may be infinite for the end rays.
    struct Piece {
        double u0, t0, u1, t1;
        bool vertical;
    };

    void add_segment(double u0, double t0, double u1, double t1) {
        if (!pieces_.empty()) {
            Piece& last = pieces_.back();
            if (!last.vertical && last.u1 == u0 && last.t1 == t0) {
                const double s_last = std::isfinite(last.u0) ? (last.t1 - last.t0) / (last.u1 - last.u0) : 0.0;
                const double s_new = std::isfinite(u1) ? (t1 - t0) / (u1 - u0) : 0.0;
                if (std::abs(s_last - s_new) <= 1e-13 * (1.0 + std::abs(s_last))) {
                    last.u1 = u1;
                    last.t1 = std::isfinite(u1) ? t1 : last.t1;
                    return;
                }
            }
        }
        pieces_.push_back({u0, t0, u1, t1, false});
    }

    void build_pieces() {
        const std::size_t n = u_.size();
        if (hw_.front() != kInf) add_segment(-kInf, hw_.front(), u_.front(), hw_.front());
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const bool fin_l = hw_[i] != kInf;
            const bool fin_r = hw_[i + 1] != kInf;
            if (fin_l && fin_r) {
                add_segment(u_[i], hw_[i], u_[i + 1], hw_[i + 1]);
            } else {
                if (fin_l) pieces_.push_back({u_[i], hw_[i], u_[i], kPi, true});
                if (fin_r) pieces_.push_back({u_[i + 1], hw_[i + 1], u_[i + 1], kPi, true});
            }
        }
        if (hw_.back() != kInf) add_segment(u_.back(), hw_.back(), kInf, hw_.back());
        for (const Piece& p : pieces_) {
            lo_.push_back(p.u0);
            hi_.push_back(p.u1);
        }
    }

    static double seg_dist(double u, double t, const Piece& p) {
        if (p.vertical) {
            const double tc = std::clamp(t, p.t0, p.t1);
            return std::hypot(u - p.u0, t - tc);
        }
        if (!std::isfinite(p.u0) || !std::isfinite(p.u1)) {
            // Horizontal ray.
            const double uc = std::clamp(u, p.u0, p.u1);
            return std::hypot(u - uc, t - p.t0);
        }
        const double du = p.u1 - p.u0;
        const double dt = p.t1 - p.t0;
        double s = ((u - p.u0) * du + (t - p.t0) * dt) / (du * du + dt * dt);
        s = std::clamp(s, 0.0, 1.0);
        return std::hypot(u - (p.u0 + s * du), t - (p.t0 + s * dt));
    }

    // Distance from (u, t) to the upper graph, scanning outward from the piece
    // nearest in u until the horizontal gap alone exceeds the best distance.
    double dist_upper(double u, double t) const {
        const std::size_t n = pieces_.size();
        auto it = std::upper_bound(lo_.begin(), lo_.end(), u);
        std::size_t start = it == lo_.begin() ? 0 : static_cast<std::size_t>(it - lo_.begin()) - 1;
        double best = kInf;
        for (std::size_t i = start; i < n; ++i) {
            if (lo_[i] - u > best) break;
            best = std::min(best, seg_dist(u, t, pieces_[i]));
        }
        for (std::size_t i = start; i-- > 0;) {
            if (u - hi_[i] > best) break;
            best = std::min(best, seg_dist(u, t, pieces_[i]));
        }
        return best;
    }

    std::vector<double> r_;
    std::vector<double> hw_;
    std::vector<double> u_;
    std::vector<Piece> pieces_;
    std::vector<double> lo_;
    std::vector<double> hi_;
};

/// e^{i theta} * inner.
struct Rotated {
    double theta;
    DomainPtr inner;
};

/// offset + inner.
struct Translated {
    Complex offset;
    DomainPtr inner;
};

/// Union of parts. The empty union is taken to be the whole plane. The
/// distance bound is the largest bound among parts containing the point, which
/// is exact for pairwise disjoint parts and conservative where parts overlap.
struct Union {
    std::vector<DomainSpec> parts;
};

class DomainSpec {
public:
    using Variant = std::variant<Sector, Spiral, HalfPlane, Strip, DiskComplement, Disk,
                                 RadialProfile, Rotated, Translated, Union>;

    DomainSpec(Variant v) : v_(std::move(v)) { validate(); }  // NOLINT(google-explicit-constructor)

    static DomainSpec sector(double alpha) { return DomainSpec(Sector{alpha}); }
    static DomainSpec spiral(double beta, double alpha) { return DomainSpec(Spiral{beta, alpha}); }
    static DomainSpec half_plane() { return DomainSpec(HalfPlane{}); }
    static DomainSpec strip(double width) { return DomainSpec(Strip{width}); }
    static DomainSpec disk_complement(double radius) { return DomainSpec(DiskComplement{radius}); }
    static DomainSpec disk(double radius) { return DomainSpec(Disk{radius}); }
    static DomainSpec radial_profile(std::vector<double> r, std::vector<double> hw) {
        return DomainSpec(RadialProfile(std::move(r), std::move(hw)));
    }
    static DomainSpec rotated(double theta, DomainSpec inner) {
        return DomainSpec(Rotated{theta, std::make_shared<const DomainSpec>(std::move(inner))});
    }
    static DomainSpec translated(Complex offset, DomainSpec inner) {
        return DomainSpec(Translated{offset, std::make_shared<const DomainSpec>(std::move(inner))});
    }
    static DomainSpec union_of(std::vector<DomainSpec> parts) { return DomainSpec(Union{std::move(parts)}); }

    const Variant& variant() const { return v_; }

    template <class T>
    const T* get_if() const {
        return std::get_if<T>(&v_);
    }

private:
    void validate() const {
        std::visit(
            [](const auto& d) {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, Sector>) {
                    require(d.alpha > 0.0 && d.alpha <= 2.0, "sector alpha must lie in (0, 2]");
                } else if constexpr (std::is_same_v<T, Spiral>) {
                    require(std::abs(d.beta) < kPi / 2.0, "spiral beta must lie in (-pi/2, pi/2)");
                    require(d.alpha > 0.0 && d.alpha <= 2.0, "spiral alpha must lie in (0, 2]");
                } else if constexpr (std::is_same_v<T, Strip>) {
                    require(std::isfinite(d.width) && d.width > 0.0, "strip width must be positive");
                } else if constexpr (std::is_same_v<T, DiskComplement> || std::is_same_v<T, Disk>) {
                    require(std::isfinite(d.radius) && d.radius > 0.0, "disk radius must be positive");
                } else if constexpr (std::is_same_v<T, Rotated>) {
                    require(std::isfinite(d.theta) && d.inner != nullptr, "rotated domain needs finite theta and inner");
                } else if constexpr (std::is_same_v<T, Translated>) {
                    require(is_finite(d.offset) && d.inner != nullptr, "translated domain needs finite offset and inner");
                }
            },
            v_);
    }

    Variant v_;
};

namespace detail {

inline double sector_clearance(double alpha, Complex z) {
    const double rad = std::abs(z);
    if (rad == 0.0) return 0.0;
    const double th = wrap_two_pi(std::arg(z));
    const double open = kPi * alpha;
    if (!(th > 0.0 && th < open)) return 0.0;
    auto ray = [rad](double delta) { return delta >= kPi / 2.0 ? rad : rad * std::sin(delta); };
    return std::min(ray(th), ray(open - th));
}

/// Offset of z in spiral coordinates, in [0, 2pi).
inline double spiral_offset(const Spiral& s, Complex z) {
    return wrap_two_pi(std::arg(z) - std::tan(s.beta) * std::log(std::abs(z)));
}

inline double spiral_clearance(const Spiral& s, Complex z) {
    const double rad = std::abs(z);
    if (rad == 0.0 || !std::isfinite(rad)) return 0.0;
    const double off = spiral_offset(s, z);
    const double open = kPi * s.alpha;
    if (!(off > 0.0 && off < open)) return 0.0;
    const double dw = std::cos(s.beta) * std::min(off, open - off);
    return rad * -std::expm1(-dw);
}

}  // namespace detail

/// Lower bound on dist(z, boundary) for z inside; 0 for z outside.
inline double clearance(const DomainSpec& domain, Complex z) {
    return std::visit(
        [z](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Sector>) {
                return detail::sector_clearance(d.alpha, z);
            } else if constexpr (std::is_same_v<T, Spiral>) {
                return detail::spiral_clearance(d, z);
            } else if constexpr (std::is_same_v<T, HalfPlane>) {
                return z.imag() > 0.0 ? z.imag() : 0.0;
            } else if constexpr (std::is_same_v<T, Strip>) {
                const double y = z.imag();
                return (y > 0.0 && y < d.width) ? std::min(y, d.width - y) : 0.0;
            } else if constexpr (std::is_same_v<T, DiskComplement>) {
                const double v = std::abs(z) - d.radius;
                return v > 0.0 ? v : 0.0;
            } else if constexpr (std::is_same_v<T, Disk>) {
                const double v = d.radius - std::abs(z);
                return v > 0.0 ? v : 0.0;
            } else if constexpr (std::is_same_v<T, RadialProfile>) {
                return d.clearance(z);
            } else if constexpr (std::is_same_v<T, Rotated>) {
                return clearance(*d.inner, z * std::polar(1.0, -d.theta));
            } else if constexpr (std::is_same_v<T, Translated>) {
                return clearance(*d.inner, z - d.offset);
            } else {
                if (d.parts.empty()) return kInf;
                double best = 0.0;
                for (const auto& p : d.parts) best = std::max(best, clearance(p, z));
                return best;
            }
        },
        domain.variant());
}

/// Exact membership; boundary points are outside.
inline bool contains(const DomainSpec& domain, Complex z) {
    return std::visit(
        [z](const auto& d) -> bool {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Sector>) {
                if (z == Complex{0.0, 0.0}) return false;
                const double th = wrap_two_pi(std::arg(z));
                return th > 0.0 && th < kPi * d.alpha;
            } else if constexpr (std::is_same_v<T, Spiral>) {
                if (z == Complex{0.0, 0.0}) return false;
                const double off = detail::spiral_offset(d, z);
                return off > 0.0 && off < kPi * d.alpha;
            } else if constexpr (std::is_same_v<T, HalfPlane>) {
                return z.imag() > 0.0;
            } else if constexpr (std::is_same_v<T, Strip>) {
                return z.imag() > 0.0 && z.imag() < d.width;
            } else if constexpr (std::is_same_v<T, DiskComplement>) {
                return std::abs(z) > d.radius;
            } else if constexpr (std::is_same_v<T, Disk>) {
                return std::abs(z) < d.radius;
            } else if constexpr (std::is_same_v<T, RadialProfile>) {
                return d.contains(z);
            } else if constexpr (std::is_same_v<T, Rotated>) {
                return contains(*d.inner, z * std::polar(1.0, -d.theta));
            } else if constexpr (std::is_same_v<T, Translated>) {
                return contains(*d.inner, z - d.offset);
            } else {
                if (d.parts.empty()) return true;
                return std::any_of(d.parts.begin(), d.parts.end(),
                                   [z](const DomainSpec& p) { return contains(p, z); });
            }
        },
        domain.variant());
}

/// Certified lower bound 0 < d <= dist(z, boundary). Exact for sectors, half
/// planes, strips and disks. Throws if z is not in the domain.
inline double boundary_distance_lb(const DomainSpec& domain, Complex z) {
    require(contains(domain, z), "boundary distance requested for a point outside the domain");
    return clearance(domain, z);
}

/// Whether the domain is bounded (only disks and translates/rotations/unions
/// of bounded domains are recognised).
inline bool is_bounded(const DomainSpec& domain) {
    return std::visit(
        [](const auto& d) -> bool {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return true;
            } else if constexpr (std::is_same_v<T, Rotated> || std::is_same_v<T, Translated>) {
                return is_bounded(*d.inner);
            } else if constexpr (std::is_same_v<T, Union>) {
                return !d.parts.empty() &&
                       std::all_of(d.parts.begin(), d.parts.end(), [](const DomainSpec& p) { return is_bounded(p); });
            } else {
                return false;
            }
        },
        domain.variant());
}

// ---------------------------------------------------------------------------
// Angular statistics

/// Open arc (start, start + length) of angles, start in [0, 2pi).
struct Arc {
    double start;
    double length;
};

/// Angular slice {theta: r e^{i theta} in domain} on one circle.
/// max_arc is the longest arc (alpha_Omega), total the summed measure (L(r));
/// both are +inf when the whole circle lies in the domain.
struct AngularStats {
    std::vector<Arc> arcs;
    double max_arc = 0.0;
    double total = 0.0;
    bool full_circle = false;

    static AngularStats full() {
        AngularStats s;
        s.full_circle = true;
        s.max_arc = kInf;
        s.total = kInf;
        return s;
    }

    static AngularStats from_arcs(std::vector<Arc> arcs) {
        AngularStats s;
        for (Arc& a : arcs) {
            a.start = wrap_two_pi(a.start);
            s.max_arc = std::max(s.max_arc, a.length);
            s.total += a.length;
        }
        std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) { return x.start < y.start; });
        s.arcs = std::move(arcs);
        return s;
    }
};

inline constexpr std::size_t kAngularScanSamples = 4096;
inline constexpr double kAngularScanTol = 1e-10;

/// Arcs on |z| = r by sampling membership at kAngularScanSamples angles and
/// bisecting each sign change to kAngularScanTol radians. Arcs narrower than
/// the sample spacing can be missed.
inline AngularStats angular_scan(const DomainSpec& domain, double r) {
    const std::size_t n = kAngularScanSamples;
    const double step = kTwoPi / static_cast<double>(n);
    std::vector<char> inside(n);
    for (std::size_t k = 0; k < n; ++k) inside[k] = contains(domain, std::polar(r, step * static_cast<double>(k)));
    const auto n_in = std::count(inside.begin(), inside.end(), 1);
    if (n_in == static_cast<std::ptrdiff_t>(n)) return AngularStats::full();
    if (n_in == 0) return AngularStats{};

    auto refine = [&](double lo, double hi, bool lo_inside) {
        while (hi - lo > kAngularScanTol) {
            const double mid = 0.5 * (lo + hi);
            if (contains(domain, std::polar(r, mid)) == lo_inside) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    // Rotate the sample order so that index 0 is outside; arcs then never wrap.
    std::size_t first_out = 0;
    while (inside[first_out]) ++first_out;
    std::vector<Arc> arcs;
    double enter = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = (first_out + j) % n;
        const std::size_t k1 = (k + 1) % n;
        if (inside[k] == inside[k1]) continue;
        const double lo = step * static_cast<double>(first_out + j);
        const double b = refine(lo, lo + step, inside[k] != 0);
        if (!inside[k]) {
            enter = b;
        } else {
            arcs.push_back({enter, b - enter});
        }
    }
    return AngularStats::from_arcs(std::move(arcs));
}

/// Angular statistics of the circle |z| = r: analytic for the closed-form
/// variants, scanned for unions and translates.
inline AngularStats angular_stats(const DomainSpec& domain, double r) {
    require(r > 0.0 && std::isfinite(r), "angular statistics need r > 0");
    return std::visit(
        [&](const auto& d) -> AngularStats {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Sector>) {
                return AngularStats::from_arcs({{0.0, kPi * d.alpha}});
            } else if constexpr (std::is_same_v<T, Spiral>) {
                return AngularStats::from_arcs({{std::tan(d.beta) * std::log(r), kPi * d.alpha}});
            } else if constexpr (std::is_same_v<T, HalfPlane>) {
                return AngularStats::from_arcs({{0.0, kPi}});
            } else if constexpr (std::is_same_v<T, Strip>) {
                if (r <= d.width) return AngularStats::from_arcs({{0.0, kPi}});
                const double a = std::asin(d.width / r);
                return AngularStats::from_arcs({{0.0, a}, {kPi - a, a}});
            } else if constexpr (std::is_same_v<T, DiskComplement>) {
                return r > d.radius ? AngularStats::full() : AngularStats{};
            } else if constexpr (std::is_same_v<T, Disk>) {
                return r < d.radius ? AngularStats::full() : AngularStats{};
            } else if constexpr (std::is_same_v<T, RadialProfile>) {
                const double h = d.half_width_at(r);
                if (h == kInf) return AngularStats::full();
                return AngularStats::from_arcs({{-h, 2.0 * h}});
            } else if constexpr (std::is_same_v<T, Rotated>) {
                AngularStats s = angular_stats(*d.inner, r);
                if (s.full_circle) return s;
                for (Arc& a : s.arcs) a.start += d.theta;
                return AngularStats::from_arcs(std::move(s.arcs));
            } else {
                return angular_scan(domain, r);
            }
        },
        domain.variant());
}

/// Circular symmetrization about the positive real axis, sampled on r_grid:
/// half_width(r) = L(r)/2 capped at pi (and pi on full circles). When a base
/// point is given the domain is first translated so that it sits at 0.
inline DomainSpec symmetrize(const DomainSpec& domain, std::span<const double> r_grid,
                             std::optional<Complex> base_point = std::nullopt) {
    require(!r_grid.empty(), "symmetrization needs a non-empty radius grid");
    const DomainSpec target = base_point ? DomainSpec::translated(-*base_point, domain) : domain;
    std::vector<double> r(r_grid.begin(), r_grid.end());
    std::vector<double> hw(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const AngularStats s = angular_stats(target, r[i]);
        if (s.full_circle) {
            hw[i] = kPi;
            continue;
        }
        if (!(s.total > 0.0)) {
            throw DomainError("symmetrization: empty angular set at r = " + std::to_string(r[i]));
        }
        hw[i] = std::min(0.5 * s.total, kPi);
    }
    return DomainSpec::radial_profile(std::move(r), std::move(hw));
}

/// A base point at (roughly) unit distance from the boundary, used by the
/// estimators when the caller does not supply one.
inline Complex default_base_point(const DomainSpec& domain) {
    return std::visit(
        [&](const auto& d) -> Complex {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Sector>) {
                const double half = kPi * d.alpha / 2.0;
                const double rad = d.alpha <= 1.0 ? 1.0 / std::sin(half) : 1.0;
                return std::polar(rad, half);
            } else if constexpr (std::is_same_v<T, Spiral>) {
                const double dw = std::cos(d.beta) * kPi * d.alpha / 2.0;
                const double rad = 1.0 / -std::expm1(-dw);
                return std::polar(rad, std::tan(d.beta) * std::log(rad) + kPi * d.alpha / 2.0);
            } else if constexpr (std::is_same_v<T, HalfPlane>) {
                return {0.0, 1.0};
            } else if constexpr (std::is_same_v<T, Strip>) {
                return {0.0, d.width / 2.0};
            } else if constexpr (std::is_same_v<T, DiskComplement>) {
                return {d.radius + 1.0, 0.0};
            } else if constexpr (std::is_same_v<T, Disk>) {
                return {0.0, 0.0};
            } else if constexpr (std::is_same_v<T, RadialProfile>) {
                // Walk outward along the positive axis until clearance reaches 1.
                double best_r = 1.0;
                double best_c = -1.0;
                for (double rad = 1e-3; rad < 1e3; rad *= 1.05) {
                    const double c = d.clearance(Complex{rad, 0.0});
                    if (c > best_c) { best_c = c; best_r = rad; }
                    if (c >= 1.0) return {rad, 0.0};
                }
                return {best_r, 0.0};
            } else if constexpr (std::is_same_v<T, Rotated>) {
                return default_base_point(*d.inner) * std::polar(1.0, d.theta);
            } else if constexpr (std::is_same_v<T, Translated>) {
                return default_base_point(*d.inner) + d.offset;
            } else {
                if (d.parts.empty()) return {0.0, 0.0};
                return default_base_point(d.parts.front());
            }
        },
        domain.variant());
}

/// Image of the upper half-plane under z^lambda: Sp(arg lambda, |lambda|^2 / Re lambda).
inline DomainSpec power_map_image(Complex lambda) {
    require(lambda.real() > 0.0, "power map image needs Re lambda > 0");
    return DomainSpec::spiral(std::arg(lambda), std::norm(lambda) / lambda.real());
}

}  // namespace hardylab
