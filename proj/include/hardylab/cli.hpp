#pragma once

// Command orchestration behind the hardylab executable. run() maps failures to
// exit codes: 1 usage, 2 config/IO, 3 numerical, 4 verification.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "hardylab/config.hpp"
#include "hardylab/hardy_estimator.hpp"
#include "hardylab/hardy_norm.hpp"
#include "hardylab/modulus_bounds.hpp"
#include "hardylab/report.hpp"

namespace hardylab {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitConfig = 2, kExitNumerical = 3, kExitVerify = 4 };

/// Exclusive lock on an output directory, held for the lifetime of the object.
class OutputLock {
public:
    explicit OutputLock(const fs::path& dir) : path_(dir / ".hardylab.lock") {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw ConfigError("output_dir: cannot create " + dir.string() + ": " + ec.message());
        std::FILE* f = std::fopen(path_.string().c_str(), "wx");
        if (!f) {
            throw ConfigError("output_dir: " + dir.string() + " is locked by another run (remove " + path_.string() +
                              " if stale)");
        }
        std::fclose(f);
    }
    ~OutputLock() {
        std::error_code ec;
        fs::remove(path_, ec);
    }
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

private:
    fs::path path_;
};

/// Human-facing number: 4 significant digits.
inline std::string h4(double v) { return format_double(v, 4); }

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline DomainMetadata quasidisk_metadata(double K) {
    DomainMetadata m;
    m.quasidisk_K = K;
    return m;
}

inline bool want_json(const RunConfig& c) { return c.format != OutputFormat::Csv; }
inline bool want_csv(const RunConfig& c) { return c.format != OutputFormat::Json; }

inline std::optional<BoundInterval> default_band(const DomainSpec& domain, const std::optional<DomainMetadata>& meta) {
    if (meta) return analytic_bounds(*meta);
    if (auto h = closed_form_h(domain)) return BoundInterval{*h, *h, {"closed_form"}};
    return std::nullopt;
}

inline int run_estimate(const RunConfig& c, std::ostream& out) {
    const DomainSpec& d = *c.domain;
    const Complex z0 = c.z0 ? *c.z0 : default_base_point(d);
    const HardyEstimate est = estimate_hardy(d, z0, c.ladder, c.walk, default_band(d, c.bounds));
    const fs::path dir(c.output_dir);
    if (want_json(c)) write_text_file(dir / "report.json", dump_json(estimate_to_json(d, z0, est)));
    if (want_csv(c)) write_text_file(dir / "ladder.csv", ladder_csv(est.points));
    emit_plotdata(est, dir / "plot.tsv");
    out << "estimate-h: h_hat = " << h4(est.h_hat) << ", ci = [" << h4(est.ci_lo) << ", " << h4(est.ci_hi)
        << "], tail_slope = " << h4(est.tail_slope) << ", divergent_slope = " << (est.divergent_slope ? "true" : "false");
    if (est.band) {
        out << ", band = [" << h4(est.band->lo) << ", " << h4(est.band->hi) << "] "
            << (est.band_pass() ? "PASS" : "FAIL");
    }
    out << "\n";
    return kExitOk;
}

inline int run_measure(const RunConfig& c, std::ostream& out) {
    const DomainSpec& d = *c.domain;
    const Complex z0 = c.z0 ? *c.z0 : default_base_point(d);
    const MeasureEstimate m = estimate_omega(d, c.R, z0, c.walk);
    const fs::path dir(c.output_dir);
    if (want_csv(c)) write_text_file(dir / "measure.csv", std::string(kLadderCsvHeader) + "\n" + ladder_csv_row(m) + "\n");
    if (want_json(c)) {
        json j = measure_to_json(m);
        j["domain"] = domain_to_json(d);
        j["z0"] = json_complex(z0);
        write_text_file(dir / "measure.json", dump_json(j));
    }
    out << "measure: omega_hat = " << h4(m.value) << " +- " << h4(m.std_error) << " (" << m.n_success << "/"
        << m.n_total << ", truncated " << m.n_truncated << ")\n";
    return kExitOk;
}

inline int run_hansen(const RunConfig& c, std::ostream& out) {
    const HansenResult h = hansen_starlike(*c.domain, c.t_grid);
    const fs::path dir(c.output_dir);
    if (want_csv(c)) {
        std::string csv = "t,alpha,h\n";
        for (std::size_t i = 0; i < c.t_grid.size(); ++i) {
            const double a = h.max_arcs[i];
            csv += format_double(c.t_grid[i]) + "," + format_double(a) + "," + format_double(a > 0 ? kPi / a : kInf) + "\n";
        }
        write_text_file(dir / "hansen.csv", csv);
    }
    if (want_json(c)) {
        json j{{"domain", domain_to_json(*c.domain)},
               {"t_grid", detail::number_list(c.t_grid)},
               {"alpha", detail::number_list(h.max_arcs)},
               {"h_at_tmax", json_number(h.h_at_tmax)},
               {"h_extrapolated", json_number(h.h_extrapolated)},
               {"divergent", h.divergent}};
        write_text_file(dir / "hansen.json", dump_json(j));
    }
    out << "hansen: h(t_max) = " << h4(h.h_at_tmax) << ", extrapolated = " << h4(h.h_extrapolated)
        << (h.divergent ? " (divergent)" : "") << "\n";
    return kExitOk;
}

inline int run_symmetrize(const RunConfig& c, std::ostream& out) {
    const DomainSpec sym = symmetrize(*c.domain, c.r_grid, c.base_point);
    const auto* prof = sym.get_if<RadialProfile>();
    const fs::path dir(c.output_dir);
    if (want_json(c)) {
        json j{{"domain", domain_to_json(*c.domain)}, {"symmetrized", domain_to_json(sym)}};
        j["base_point"] = c.base_point ? json_complex(*c.base_point) : json(nullptr);
        write_text_file(dir / "symmetrized.json", dump_json(j));
    }
    if (want_csv(c)) {
        std::string csv = "r,half_width\n";
        for (std::size_t i = 0; i < prof->radii().size(); ++i) {
            csv += format_double(prof->radii()[i]) + "," + format_double(prof->half_widths()[i]) + "\n";
        }
        write_text_file(dir / "profile.csv", csv);
    }
    double lo = kInf, hi = 0.0;
    for (double v : prof->half_widths()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    out << "symmetrize: " << prof->radii().size() << " radii, half_width in [" << h4(lo) << ", " << h4(hi) << "]\n";
    return kExitOk;
}

inline int run_hnorm(const RunConfig& c, std::ostream& out) {
    const HfEstimate est = estimate_hf(*c.map, c.p_lo, c.p_hi, c.tol);
    const fs::path dir(c.output_dir);
    if (want_csv(c)) write_text_file(dir / "hnorm.csv", hnorm_csv(est));
    if (want_json(c)) write_text_file(dir / "hnorm.json", dump_json(hnorm_verdict(*c.map, est)));
    out << "hnorm: h_f = " << h4(est.h_f) << (est.infinite ? " (infinite: bounded growth at p_hi)" : "")
        << ", closed form = " << h4(closed_form_hf(*c.map)) << "\n";
    return kExitOk;
}

inline int run_modulus(const RunConfig& c, std::ostream& out) {
    BeltramiField mu = ZeroField{};
    std::string name = "zero";
    if (c.field == FieldKind::Fold) {
        mu = FoldField{c.kappa};
        name = "fold";
    } else if (c.field == FieldKind::Grid) {
        mu = read_grid_field(c.grid_file);
        name = "grid";
    }
    const ModulusBounds ij = modulus_bounds_IJ(mu, c.r, c.R, c.n_theta, c.n_t);
    const double I = ij.I, J = ij.J;
    const double K = maximal_dilatation(field_sup(mu));
    const BoundInterval band = conformal_halfplane_band(K, c.r, c.R);
    const bool ordered = ij.ordered();
    const double slack = 1e-9 * band.hi;
    const bool inside = I >= band.lo - slack && J <= band.hi + slack;
    const bool pass = ordered && inside;
    if (want_json(c)) {
        json j{{"field", name},     {"r", c.r},           {"R", c.R},       {"n_theta", c.n_theta},
               {"n_t", c.n_t},      {"I", json_number(I)}, {"J", json_number(J)}, {"K", json_number(K)},
               {"ordered", ordered}, {"band", band_to_json(band, inside)}, {"pass", pass}};
        if (c.field == FieldKind::Fold) j["kappa"] = json_complex(c.kappa);
        write_text_file(fs::path(c.output_dir) / "modulus.json", dump_json(j));
    }
    out << "modulus: I = " << h4(I) << ", J = " << h4(J) << ", band = [" << h4(band.lo) << ", " << h4(band.hi) << "] "
        << (pass ? "PASS" : "FAIL") << "\n";
    return kExitOk;
}

}  // namespace detail

/// The closed-form and band regression suite. One entry per check.
inline std::vector<VerifyCheck> run_verify_suite(const WalkConfig& walk, std::ostream& out) {
    std::vector<VerifyCheck> checks;
    auto record = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
        VerifyCheck chk{name, false, ""};
        try {
            auto [ok, detail] = body();
            chk.pass = ok;
            chk.detail = detail;
        } catch (const std::exception& e) {
            chk.detail = std::string("error: ") + e.what();
        }
        out << (chk.pass ? "PASS " : "FAIL ") << chk.name << ": " << chk.detail << "\n" << std::flush;
        checks.push_back(chk);
    };
    const RadiusLadder ladder;
    auto in = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
    auto est = [&](const DomainSpec& d) { return estimate_hardy(d, ladder, walk); };

    std::optional<HardyEstimate> sector_half, spiral;
    record("sector_closed_form", [&] {
        sector_half = est(DomainSpec::sector(0.5));
        const HardyEstimate s2 = est(DomainSpec::sector(2.0));
        return std::pair{in(sector_half->h_hat, 1.8, 2.2) && in(s2.h_hat, 0.45, 0.55),
                         "S_1/2 " + h4(sector_half->h_hat) + " in [1.8, 2.2], S_2 " + h4(s2.h_hat) + " in [0.45, 0.55]"};
    });
    record("half_plane_closed_form", [&] {
        const HardyEstimate e = est(DomainSpec::half_plane());
        return std::pair{in(e.h_hat, 0.95, 1.05), h4(e.h_hat) + " in [0.95, 1.05]"};
    });
    record("spiral_closed_form", [&] {
        spiral = est(DomainSpec::spiral(kPi / 4.0, 1.0));
        return std::pair{in(spiral->h_hat, 1.8, 2.2),
                         h4(spiral->h_hat) + " in [1.8, 2.2] (tail " + h4(spiral->tail_slope) + ")"};
    });
    record("disk_complement_zero", [&] {
        // omega_R(2) = log 2 / log R exactly, which tends to 0 slower than any power.
        const DomainSpec d = DomainSpec::disk_complement(1.0);
        bool ok = closed_form_h(d) == 0.0;
        std::string msg;
        for (double R : {4.0, 64.0, 512.0}) {
            const MeasureEstimate m = estimate_omega(d, R, {2.0, 0.0}, walk);
            const double exact = std::log(2.0) / std::log(R);
            ok = ok && std::abs(m.value - exact) <= 3.0 * m.std_error;
            msg += "R=" + h4(R) + ": " + h4(m.value) + " vs " + h4(exact) + "; ";
        }
        return std::pair{ok, msg + "log-law decay, h = 0"};
    });
    record("strip_divergence", [&] {
        const HardyEstimate e = estimate_hardy(DomainSpec::strip(kPi), Complex{0.0, kPi / 2.0}, ladder, walk);
        return std::pair{e.divergent_slope && e.tail_slope > 3.0,
                         "divergent_slope=" + std::string(e.divergent_slope ? "true" : "false") + ", tail " +
                             h4(e.tail_slope) + " > 3"};
    });
    record("symmetrization_inequality", [&] {
        const DomainSpec sp = DomainSpec::spiral(kPi / 4.0, 1.0);
        if (!spiral) spiral = est(sp);
        const HardyEstimate s = est(symmetrize(sp, default_r_grid()));
        const double se = std::hypot(spiral->slope_stderr, s.slope_stderr);
        return std::pair{spiral->h_hat >= s.h_hat - 2.0 * se && in(s.h_hat, 0.9, 1.1),
                         "h(Sp) " + h4(spiral->h_hat) + " >= h(Sp*) " + h4(s.h_hat) + " - 2 se; h(Sp*) in [0.9, 1.1]"};
    });
    record("quasidisk_band", [&] {
        const double K = 2.0;
        const double k = dilatation_bound(K);
        const BoundInterval band = analytic_bounds(detail::quasidisk_metadata(K));
        const HardyEstimate up = est(fold_image_domain(FoldMapSpec(Complex{k, 0.0})));
        const HardyEstimate dn = est(fold_image_domain(FoldMapSpec(Complex{-k, 0.0})));
        const bool ok = in(up.h_hat, 0.675, 0.825) && in(dn.h_hat, 1.35, 1.65) && band.intersects(up.ci_lo, up.ci_hi) &&
                        band.intersects(dn.ci_lo, dn.ci_hi);
        return std::pair{ok, "kappa=+k " + h4(up.h_hat) + ", kappa=-k " + h4(dn.h_hat) + ", band [" + h4(band.lo) +
                                 ", " + h4(band.hi) + "]"};
    });
    record("hansen_vs_walks", [&] {
        const DomainSpec d = DomainSpec::sector(0.5);
        const HansenResult h = hansen_starlike(d, default_t_grid());
        if (!sector_half) sector_half = est(d);
        const bool ok = std::abs(h.h_extrapolated - 2.0) <= 1e-9 &&
                        std::abs(sector_half->h_hat - h.h_extrapolated) <= 2.0 * sector_half->slope_stderr;
        return std::pair{ok, "hansen " + format_double(h.h_extrapolated, 10) + ", walks " + h4(sector_half->h_hat) +
                                 " +- " + h4(sector_half->slope_stderr)};
    });
    record("half_plane_measure_oracle", [&] {
        const MeasureEstimate m = estimate_omega(DomainSpec::half_plane(), 10.0, {0.0, 1.0}, walk);
        const double exact = half_disk_arc_measure(10.0, {0.0, 1.0});
        return std::pair{std::abs(m.value - exact) <= 3.0 * m.std_error,
                         h4(m.value) + " vs " + h4(exact) + " within 3 se (" + h4(m.std_error) + ")"};
    });
    record("modulus_conformal", [&] {
        const auto [I, J] = modulus_bounds_IJ(ZeroField{}, 0.1, 1.0, 512, 256);
        const double L = std::log(10.0);
        return std::pair{std::abs(I - L) <= 1e-6 && std::abs(J - L) <= 1e-6, "I = J = log 10"};
    });
    record("modulus_fold", [&] {
        const double L = std::log(10.0);
        const auto [I, J] = modulus_bounds_IJ(FoldField{{1.0 / 3.0, 0.0}}, 0.1, 1.0, 512, 256);
        bool ok = std::abs(I - 4.0 / 3.0 * L) <= 1e-4 && std::abs(J - 4.0 / 3.0 * L) <= 1e-4;
        for (double k : {0.2, 0.5, 0.8}) {
            const auto [Ik, Jk] = modulus_bounds_IJ(FoldField{{k, 0.0}}, 0.1, 1.0, 512, 256);
            const BoundInterval b = conformal_halfplane_band(maximal_dilatation(k), 0.1, 1.0);
            // kappa = +k sits on the upper edge: I = J = hi up to rounding.
            const double slack = 1e-9 * b.hi;
            ok = ok && Ik >= b.lo - slack && Ik <= b.hi + slack && Jk >= b.lo - slack && Jk <= b.hi + slack;
        }
        return std::pair{ok, "I = J = (4/3) log 10 at kappa=1/3; k in {0.2, 0.5, 0.8} inside band"};
    });
    record("modulus_ordering", [&] {
        bool ok = true;
        for (std::uint64_t s = 0; s < 20; ++s) {
            ok = ok && modulus_bounds_IJ(random_grid_field(64, 32, 0.1, 1.0, 0.9, s), 0.1, 1.0, 512, 256).ordered();
        }
        for (const BeltramiField& mu : {BeltramiField{ZeroField{}}, BeltramiField{FoldField{{0.5, 0.2}}}}) {
            const auto a = modulus_bounds_IJ(mu, 0.1, 1.0, 512, 256);
            const auto b = modulus_bounds_IJ(mu, 0.1, 0.4, 512, 256);
            const auto e = modulus_bounds_IJ(mu, 0.4, 1.0, 512, 256);
            ok = ok && std::abs(a.I - (b.I + e.I)) <= 1e-9 && a.J >= b.J + e.J - 1e-9;
        }
        return std::pair{ok, "I <= J on 20 random grid fields; ring composition on zero/fold"};
    });
    record("distortion_arithmetic", [&] {
        const DistortionPair d = distortion_fields(FoldField{{1.0 / 3.0, 0.0}}, {0.0, -1.0});
        const BoundInterval q = analytic_bounds(detail::quasidisk_metadata(2.0));
        const bool ok = std::abs(d.d_plus - 2.0) <= 1e-12 && std::abs(d.d_minus - 0.5) <= 1e-12 &&
                        std::abs(maximal_dilatation(1.0 / 3.0) - 2.0) <= 1e-12 && std::abs(q.lo - 0.75) <= 1e-12 &&
                        std::abs(q.hi - 1.5) <= 1e-12;
        return std::pair{ok, "D(-i) = (2, 1/2), K(1/3) = 2, quasidisk band [0.75, 1.5]"};
    });
    record("hnorm_cayley", [&] {
        const HfEstimate e = estimate_hf(CayleyMap{}, 0.25, 4.0, 0.05);
        return std::pair{in(e.h_f, 0.95, 1.05) && std::abs(e.h_f - 1.0) <= 0.1, h4(e.h_f) + " in [0.95, 1.05]"};
    });
    record("hnorm_power_of_cayley", [&] {
        const HfEstimate e = estimate_hf(PowerOfCayley{{2.0, 0.0}}, 0.1, 2.0, 0.05);
        const double h = *closed_form_h(power_map_image({2.0, 0.0}));
        return std::pair{in(e.h_f, 0.45, 0.55) && std::abs(e.h_f - h) <= 0.1, h4(e.h_f) + " in [0.45, 0.55]"};
    });
    return checks;
}

namespace detail {

inline int run_verify(const RunConfig& c, std::ostream& out) {
    const auto checks = run_verify_suite(c.walk, out);
    std::size_t passed = 0;
    json arr = json::array();
    for (const auto& chk : checks) {
        passed += chk.pass ? 1 : 0;
        arr.push_back({{"name", chk.name}, {"pass", chk.pass}, {"detail", chk.detail}});
    }
    if (want_json(c)) {
        write_text_file(fs::path(c.output_dir) / "verify.json",
                        dump_json({{"checks", arr}, {"passed", passed}, {"total", checks.size()}}));
    }
    out << "verify: " << passed << "/" << checks.size() << " checks passed\n";
    return passed == checks.size() ? kExitOk : kExitVerify;
}

}  // namespace detail

/// Executes one validated configuration and returns the process exit code.
inline int run(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        OutputLock lock(c.output_dir);
        switch (c.command) {
            case Command::EstimateH: return detail::run_estimate(c, out);
            case Command::Measure: return detail::run_measure(c, out);
            case Command::Hansen: return detail::run_hansen(c, out);
            case Command::Symmetrize: return detail::run_symmetrize(c, out);
            case Command::Hnorm: return detail::run_hnorm(c, out);
            case Command::Modulus: return detail::run_modulus(c, out);
            case Command::Verify: return detail::run_verify(c, out);
        }
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace hardylab
