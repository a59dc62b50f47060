#pragma once

// Walk-on-spheres estimation of omega_R(z0, Omega): the probability that
// Brownian motion from z0 leaves the component of Omega ∩ D_R containing z0
// through the circle |z| = R rather than through the boundary of Omega.

#include <cstdint>

#include "hardylab/common.hpp"
#include "hardylab/domain.hpp"
#include "hardylab/parallel.hpp"
#include "hardylab/rng.hpp"

namespace hardylab {

struct WalkConfig {
    std::uint64_t n_walkers = 100000;
    double eps_rel = 1e-3;
    std::uint64_t max_steps = 10000;
    std::uint64_t seed = 42;

    void validate() const {
        require(n_walkers > 0, "n_walkers must be positive");
        require(eps_rel > 0.0 && eps_rel < 1.0, "eps_rel must lie in (0, 1)");
        require(max_steps > 0, "max_steps must be positive");
    }
};

/// Absorption shells for one run. The outer shell scales with R; the shell
/// around the domain boundary scales with the base point's clearance, so the
/// relative bias it introduces is the same at every radius of a ladder.
struct Shells {
    double outer;
    double boundary;

    static Shells for_run(const DomainSpec& domain, double R, Complex z0, double eps_rel) {
        const double d0 = clearance(domain, z0);
        return {eps_rel * R, eps_rel * std::min(d0, R)};
    }
};

enum class ExitKind { OuterCircle, DomainBoundary, Truncated };

struct MeasureEstimate {
    double R = 0.0;
    Complex z0{};
    double value = 0.0;   // (n_success + 1/2) / (n_total + 1)
    double raw = 0.0;     // n_success / n_total
    double std_error = 0.0;  // binomial standard error at `value`
    std::uint64_t n_success = 0;
    std::uint64_t n_total = 0;
    std::uint64_t n_truncated = 0;
    double eps_rel = 0.0;
    std::uint64_t seed = 0;

    /// At most 0.1% of walks hit max_steps.
    bool valid() const { return n_truncated * 1000 <= n_total; }

    static MeasureEstimate from_counts(double R, Complex z0, std::uint64_t success, std::uint64_t total,
                                       std::uint64_t truncated, double eps_rel, std::uint64_t seed) {
        MeasureEstimate m;
        m.R = R;
        m.z0 = z0;
        m.n_success = success;
        m.n_total = total;
        m.n_truncated = truncated;
        m.eps_rel = eps_rel;
        m.seed = seed;
        const auto n = static_cast<double>(total);
        m.value = (static_cast<double>(success) + 0.5) / (n + 1.0);
        m.raw = total ? static_cast<double>(success) / n : 0.0;
        m.std_error = total ? std::sqrt(m.value * (1.0 - m.value) / n) : 0.0;
        return m;
    }
};

/// One walk from z. Each step jumps to a uniform point on the circle of radius
/// min(clearance, R - |z|) about z. Within the boundary shell counts as
/// DomainBoundary (also when the walker is simultaneously in the outer shell).
inline ExitKind walk_to_exit(const DomainSpec& domain, double R, Complex z, const Shells& shells,
                             std::uint64_t max_steps, PhiloxStream& rng) {
    const double rho_floor = 1e-15 * R;
    double x = z.real();
    double y = z.imag();
    for (std::uint64_t step = 0; step < max_steps; ++step) {
        const double d = clearance(domain, Complex{x, y});
        if (d <= shells.boundary) return ExitKind::DomainBoundary;
        const double outer = R - std::hypot(x, y);
        if (outer <= shells.outer) return ExitKind::OuterCircle;
        const double rho = std::max(std::min(d, outer), rho_floor);
        const double angle = kTwoPi * rng.uniform();
        x += rho * std::cos(angle);
        y += rho * std::sin(angle);
    }
    return ExitKind::Truncated;
}

/// Checked single walk, mainly for tests and diagnostics.
inline ExitKind walk_to_exit(const DomainSpec& domain, double R, Complex z, const WalkConfig& cfg,
                             std::uint64_t walker_index) {
    cfg.validate();
    require(contains(domain, z), "walk start must lie in the domain");
    require(std::abs(z) < R, "walk start must lie inside |z| < R");
    PhiloxStream rng(cfg.seed, walker_index);
    return walk_to_exit(domain, R, z, Shells::for_run(domain, R, z, cfg.eps_rel), cfg.max_steps, rng);
}

namespace detail {
struct WalkCounts {
    std::uint64_t success = 0;
    std::uint64_t truncated = 0;
};
}  // namespace detail

/// Monte Carlo estimate of omega_R(z0, Omega). Deterministic in
/// (domain, R, z0, cfg) for any worker count.
inline MeasureEstimate estimate_omega(const DomainSpec& domain, double R, Complex z0, const WalkConfig& cfg,
                                      unsigned threads = worker_count()) {
    cfg.validate();
    require(std::isfinite(R) && R > 0.0, "R must be positive");
    require(contains(domain, z0), "base point must lie in the domain");
    require(std::abs(z0) < R * (1.0 - cfg.eps_rel), "base point must lie inside |z| < R (1 - eps_rel)");

    const Shells shells = Shells::for_run(domain, R, z0, cfg.eps_rel);
    auto body = [&](std::uint64_t begin, std::uint64_t end, detail::WalkCounts& acc) {
        for (std::uint64_t w = begin; w < end; ++w) {
            PhiloxStream rng(cfg.seed, w);
            switch (walk_to_exit(domain, R, z0, shells, cfg.max_steps, rng)) {
                case ExitKind::OuterCircle: ++acc.success; break;
                case ExitKind::Truncated: ++acc.truncated; break;
                case ExitKind::DomainBoundary: break;
            }
        }
    };
    auto combine = [](detail::WalkCounts a, const detail::WalkCounts& b) {
        a.success += b.success;
        a.truncated += b.truncated;
        return a;
    };
    const auto counts = parallel_chunks<detail::WalkCounts>(cfg.n_walkers, 1024, threads, body, combine);

    if (counts.truncated * 100 > cfg.n_walkers) {
        throw NumericalError("walk truncation budget exceeded at R = " + std::to_string(R) + ": " +
                             std::to_string(counts.truncated) + " of " + std::to_string(cfg.n_walkers) +
                             " walks hit max_steps; increase max_steps");
    }
    return MeasureEstimate::from_counts(R, z0, counts.success, cfg.n_walkers, counts.truncated, cfg.eps_rel,
                                        cfg.seed);
}

/// Harmonic measure of the arc in the half-disk {|z| < R, Im z > 0} seen from
/// z, via w = -(z/R + R/z)/2, which sends the half-disk to the upper
/// half-plane and the arc to [-1, 1].
inline double half_disk_arc_measure(double R, Complex z) {
    const Complex w = -(z / R + R / z) / 2.0;
    return (std::arg(w - 1.0) - std::arg(w + 1.0)) / kPi;
}

}  // namespace hardylab
