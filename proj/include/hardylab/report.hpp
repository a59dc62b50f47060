#pragma once

// Machine-readable outputs: ladder CSV, report JSON, plot TSV + sidecar, and the
// h(f) CSV/verdict. Files are written to a temporary name and renamed, so a
// failed write leaves nothing behind.

#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>

#include "hardylab/hardy_estimator.hpp"
#include "hardylab/hardy_norm.hpp"
#include "hardylab/json_io.hpp"

namespace hardylab {

namespace fs = std::filesystem;

inline void write_text_file(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw ConfigError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ConfigError("cannot rename " + tmp.string() + " to " + path.string());
    }
}

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

inline constexpr const char* kLadderCsvHeader = "R,omega_hat,omega_raw,stderr,n_success,n_total,n_truncated,eps_rel,seed";

inline std::string ladder_csv_row(const MeasureEstimate& m) {
    std::ostringstream s;
    s << format_double(m.R) << ',' << format_double(m.value) << ',' << format_double(m.raw) << ','
      << format_double(m.std_error) << ',' << m.n_success << ',' << m.n_total << ',' << m.n_truncated << ','
      << format_double(m.eps_rel) << ',' << m.seed;
    return s.str();
}

inline std::string ladder_csv(std::span<const MeasureEstimate> points) {
    std::string out = std::string(kLadderCsvHeader) + "\n";
    for (const auto& m : points) out += ladder_csv_row(m) + "\n";
    return out;
}

inline json measure_to_json(const MeasureEstimate& m) {
    return {{"R", json_number(m.R)},
            {"omega_hat", json_number(m.value)},
            {"omega_raw", json_number(m.raw)},
            {"stderr", json_number(m.std_error)},
            {"n_success", m.n_success},
            {"n_total", m.n_total},
            {"n_truncated", m.n_truncated},
            {"eps_rel", json_number(m.eps_rel)},
            {"seed", m.seed}};
}

inline json band_to_json(const BoundInterval& b, bool pass) {
    return {{"lo", json_number(b.lo)}, {"hi", json_number(b.hi)}, {"provenance", b.provenance}, {"pass", pass}};
}

inline json estimate_to_json(const DomainSpec& domain, Complex z0, const HardyEstimate& est) {
    json points = json::array();
    for (const auto& m : est.points) points.push_back(measure_to_json(m));
    json j{{"domain", domain_to_json(domain)},
           {"z0", json_complex(z0)},
           {"ladder", {{"R0", est.ladder.R0}, {"ratio", est.ladder.ratio}, {"count", est.ladder.count}}},
           {"points", points},
           {"h_hat", json_number(est.h_hat)},
           {"ci", json::array({json_number(est.ci_lo), json_number(est.ci_hi)})},
           {"tail_slope", json_number(est.tail_slope)},
           {"divergent_slope", est.divergent_slope}};
    j["band"] = est.band ? band_to_json(*est.band, est.band_pass()) : json(nullptr);
    return j;
}

/// Sidecar path for a plot TSV: same stem, .json extension.
inline fs::path plot_sidecar_path(const fs::path& tsv) {
    fs::path p = tsv;
    p.replace_extension(".json");
    return p;
}

/// Two-column TSV (log R, log omega_hat) plus a sidecar JSON with the fitted line.
inline void emit_plotdata(const HardyEstimate& est, const fs::path& path) {
    if (est.points.empty()) throw NumericalError("plot data: estimate has no ladder points");
    std::string tsv = "log_R\tlog_omega_hat\n";
    for (const auto& m : est.points) {
        tsv += format_double(std::log(m.R)) + "\t" + format_double(std::log(m.value)) + "\n";
    }
    const json side{{"slope", json_number(est.slope)},
                    {"intercept", json_number(est.intercept)},
                    {"slope_stderr", json_number(est.slope_stderr)},
                    {"n_fit", est.n_fit},
                    {"tail_slope", json_number(est.tail_slope)},
                    {"divergent_slope", est.divergent_slope}};
    write_text_file(path, tsv);
    write_text_file(plot_sidecar_path(path), dump_json(side));
}

inline std::string hnorm_csv(const HfEstimate& est) {
    std::string out = "p,r,M_p,slope\n";
    for (const auto& fit : est.evaluations) {
        for (std::size_t i = 0; i < fit.r_grid.size(); ++i) {
            out += format_double(fit.p) + "," + format_double(fit.r_grid[i]) + "," + format_double(fit.means[i]) + "," +
                   format_double(fit.tail_slope) + "\n";
        }
    }
    return out;
}

inline json hnorm_verdict(const AnalyticMapSpec& f, const HfEstimate& est) {
    return {{"map", map_to_json(f)},
            {"h_f", json_number(est.h_f)},
            {"bracket", json::array({json_number(est.p_lo), json_number(est.p_hi)})},
            {"tol", json_number(est.tol)},
            {"infinite", est.infinite}};
}

}  // namespace hardylab
