#pragma once

// Green's-function post-processing for externally simulated reservoirs:
// field -> G_yy, G -> (gamma_ij, g_ij), LDOS and Purcell factor, and the
// distance-indexed coupling tables consumed by the dynamics.

#include "enzq/core.hpp"
#include "enzq/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace enzq::reservoir {

namespace si {
inline constexpr double eps0 = 8.8541878128e-12;   // F/m
inline constexpr double hbar = 1.054571817e-34;    // J s
inline constexpr double c = 299792458.0;           // m/s
} // namespace si

/// Physical constants and dipoles needed to turn G into rates. Defaults are SI.
struct PhysicalContext {
    double omega0 = 0.0;
    double eps0 = si::eps0;
    double hbar = si::hbar;
    double c = si::c;
    Eigen::VectorXcd dipole_i = Eigen::Vector3cd(0.0, 1.0, 0.0);
    Eigen::VectorXcd dipole_j = Eigen::Vector3cd(0.0, 1.0, 0.0);
    double eps_r = 1.0;

    void validate() const {
        if (!(omega0 > 0.0) || !(eps0 > 0.0) || !(hbar > 0.0) || !(c > 0.0) || !(eps_r > 0.0))
            throw std::invalid_argument("physical constants and omega0 must be positive");
        if (dipole_i.norm() == 0.0 || dipole_j.norm() == 0.0)
            throw std::invalid_argument("dipole moments must be non-zero");
    }
};

/// Green's tensor between two points at one frequency. Either the full 3x3
/// tensor or the single projected component (1x1, paired with 1-component dipoles).
struct GreensSample {
    Eigen::MatrixXcd tensor;
    double omega = 0.0;

    static GreensSample yy(cplx g_yy, double omega) {
        Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(3, 3);
        t(1, 1) = g_yy;
        return {t, omega};
    }
};

/// G_yy = eps0 eps_r c^2 / (mu omega^2) E_y with mu the source dipole moment.
inline cplx greens_from_field(cplx e_y, const PhysicalContext &ctx, double omega) {
    if (!(omega > 0.0))
        throw std::invalid_argument("frequency must be positive");
    const double mu = ctx.dipole_i.norm();
    if (mu == 0.0)
        throw std::invalid_argument("dipole moment must be non-zero");
    return ctx.eps0 * ctx.eps_r * ctx.c * ctx.c / (mu * omega * omega) * e_y;
}

struct RatePair {
    double gamma_ij; ///< dissipative rate, s^-1
    double g_ij;     ///< coherent shift, rad/s
};

/// gamma_ij = (2 w0^2 / eps0 hbar c^2) Im[mu_i^* . G . mu_j],
/// g_ij     = (  w0^2 / eps0 hbar c^2) Re[mu_i^* . G . mu_j].
inline RatePair coupling_from_greens(const GreensSample &g, const PhysicalContext &ctx) {
    ctx.validate();
    const auto n = g.tensor.rows();
    if (g.tensor.cols() != n || ctx.dipole_i.size() != n || ctx.dipole_j.size() != n)
        throw std::invalid_argument("Green's tensor is " + std::to_string(g.tensor.rows()) + "x" +
                                    std::to_string(g.tensor.cols()) + " but dipoles have " +
                                    std::to_string(ctx.dipole_i.size()) + " and " +
                                    std::to_string(ctx.dipole_j.size()) + " components");
    const cplx proj = ctx.dipole_i.dot(g.tensor * ctx.dipole_j); // dot() conjugates the left side
    const double pref = ctx.omega0 * ctx.omega0 / (ctx.eps0 * ctx.hbar * ctx.c * ctx.c);
    return {2.0 * pref * proj.imag(), pref * proj.real()};
}

/// Im G_yy of the free-space Green's function at coincident points.
inline double vacuum_im_greens(double omega, double c = si::c) {
    return omega / (6.0 * std::numbers::pi * c);
}

/// Projected LDOS, 6 w / (pi c^2) Im G_yy.
inline double ldos(cplx g_yy, double omega, double c = si::c) {
    if (g_yy.imag() < 0.0)
        throw DataError("Im G_yy < 0 at coincident points is unphysical for a passive medium");
    return 6.0 * omega / (std::numbers::pi * c * c) * g_yy.imag();
}

/// Orientation-averaged LDOS, 2 w / (pi c^2) Im Tr G.
inline double ldos_trace(const Eigen::Matrix3cd &g, double omega, double c = si::c) {
    const double im_tr = g.trace().imag();
    if (im_tr < 0.0)
        throw DataError("Im Tr G < 0 at coincident points is unphysical for a passive medium");
    return 2.0 * omega / (std::numbers::pi * c * c) * im_tr;
}

/// Decay-rate enhancement relative to free space.
inline double purcell_factor(double im_g_yy, double omega, double c = si::c) {
    return im_g_yy / vacuum_im_greens(omega, c);
}

// ---------------------------------------------------------------------------
// Coupling tables
// ---------------------------------------------------------------------------

struct CouplingRow {
    double r_over_lambda;
    double gamma12_over_gamma;
    double g12_over_gamma;

    friend bool operator==(const CouplingRow &, const CouplingRow &) = default;
};

struct ClampWarning {
    std::size_t line;     ///< 1-based line in the source file
    double original;      ///< gamma12/gamma before clamping
};

struct CouplingTable {
    std::optional<double> lambda_nm;
    std::optional<double> gamma_seconds; ///< reference decay time behind the normalization
    std::vector<CouplingRow> rows;
    std::vector<ClampWarning> clamped;
    std::string source;

    double r_min() const { return rows.front().r_over_lambda; }
    double r_max() const { return rows.back().r_over_lambda; }
};

inline const char *coupling_csv_header = "r_over_lambda,gamma12_over_gamma,g12_over_gamma";

struct CsvFormat {
    char delimiter = ',';
    bool clamp = true; ///< clamp |gamma12/gamma| > 1 to +-1 instead of rejecting
};

inline CouplingTable parse_coupling_table(const std::string &text, const std::string &source = "<memory>",
                                          const CsvFormat &fmt = {}) {
    CouplingTable table;
    table.source = source;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    auto fail = [&](const std::string &msg) {
        throw DataError(source + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = io::trim(line);
        if (t.empty())
            continue;
        if (t.front() == '#') {
            // metadata: "# key=value"
            const std::string body = io::trim(std::string_view(t).substr(1));
            const auto eq = body.find('=');
            if (eq != std::string::npos) {
                const std::string key = io::trim(std::string_view(body).substr(0, eq));
                const std::string val = io::trim(std::string_view(body).substr(eq + 1));
                if (key == "lambda_nm" || key == "gamma_seconds") {
                    const auto v = io::parse_double(val);
                    if (!v)
                        fail("metadata '" + key + "' is not a number");
                    (key == "lambda_nm" ? table.lambda_nm : table.gamma_seconds) = *v;
                }
            }
            continue;
        }
        const auto cols = io::split(t, fmt.delimiter);
        if (!header_seen) {
            std::string joined;
            for (std::size_t i = 0; i < cols.size(); ++i)
                joined += (i ? "," : "") + io::trim(cols[i]);
            if (joined != coupling_csv_header)
                fail("expected header '" + std::string(coupling_csv_header) + "', got '" + t + "'");
            header_seen = true;
            continue;
        }
        if (cols.size() != 3)
            fail("expected 3 columns, got " + std::to_string(cols.size()));
        static const char *names[] = {"r_over_lambda", "gamma12_over_gamma", "g12_over_gamma"};
        double v[3];
        for (int c = 0; c < 3; ++c) {
            const auto p = io::parse_double(cols[c]);
            if (!p || !std::isfinite(*p))
                fail("column " + std::to_string(c + 1) + " (" + names[c] + ") is not a finite number: '" +
                     io::trim(cols[c]) + "'");
            v[c] = *p;
        }
        if (v[0] < 0.0)
            fail("r_over_lambda must be non-negative");
        if (!table.rows.empty() && !(v[0] > table.rows.back().r_over_lambda))
            fail("r_over_lambda must be strictly increasing (row value " + io::format_double(v[0]) +
                 " after " + io::format_double(table.rows.back().r_over_lambda) + ")");
        if (std::abs(v[1]) > 1.0) {
            if (!fmt.clamp)
                fail("|gamma12_over_gamma| > 1");
            table.clamped.push_back({lineno, v[1]});
            v[1] = v[1] > 0.0 ? 1.0 : -1.0;
        }
        table.rows.push_back({v[0], v[1], v[2]});
    }
    if (!header_seen)
        throw DataError(source + ": missing header '" + std::string(coupling_csv_header) + "'");
    if (table.rows.empty())
        throw DataError(source + ": coupling table has no rows");
    return table;
}

inline CouplingTable load_coupling_table(const std::string &path, const CsvFormat &fmt = {}) {
    return parse_coupling_table(io::read_file(path), path, fmt);
}

inline std::string format_coupling_table(const CouplingTable &t) {
    std::string s;
    if (t.lambda_nm)
        s += "# lambda_nm=" + io::format_double(*t.lambda_nm) + "\n";
    if (t.gamma_seconds)
        s += "# gamma_seconds=" + io::format_double(*t.gamma_seconds) + "\n";
    s += coupling_csv_header;
    s += '\n';
    for (const auto &r : t.rows) {
        s += io::format_double(r.r_over_lambda);
        s += ',';
        s += io::format_double(r.gamma12_over_gamma);
        s += ',';
        s += io::format_double(r.g12_over_gamma);
        s += '\n';
    }
    return s;
}

inline void save_coupling_table(const CouplingTable &t, const std::string &path) {
    io::write_file(path, format_coupling_table(t));
}

/// Piecewise-linear interpolation of the normalized couplings; no extrapolation.
inline CouplingParameters coupling_at(const CouplingTable &t, double r_over_lambda) {
    if (t.rows.empty())
        throw DataError("coupling table is empty");
    if (!(r_over_lambda >= t.r_min() && r_over_lambda <= t.r_max()))
        throw OutOfRange("r/lambda0 = " + io::format_double(r_over_lambda) + " is outside the table range [" +
                             io::format_double(t.r_min()) + ", " + io::format_double(t.r_max()) + "]" +
                             (t.source.empty() ? "" : " of " + t.source),
                         r_over_lambda);
    const auto it = std::lower_bound(t.rows.begin(), t.rows.end(), r_over_lambda,
                                     [](const CouplingRow &row, double r) { return row.r_over_lambda < r; });
    if (it->r_over_lambda == r_over_lambda)
        return CouplingParameters::normalized(it->gamma12_over_gamma, it->g12_over_gamma);
    const CouplingRow &b = *it;
    const CouplingRow &a = *(it - 1);
    const double w = (r_over_lambda - a.r_over_lambda) / (b.r_over_lambda - a.r_over_lambda);
    const double beta = a.gamma12_over_gamma + w * (b.gamma12_over_gamma - a.gamma12_over_gamma);
    const double g = a.g12_over_gamma + w * (b.g12_over_gamma - a.g12_over_gamma);
    return CouplingParameters::normalized(std::clamp(beta, -1.0, 1.0), g);
}

// ---------------------------------------------------------------------------
// Manifest: [{"lambda_nm": 1450, "gamma_seconds": 1e-5, "table": "enz_1450.csv"}, ...]
// ---------------------------------------------------------------------------

struct ManifestEntry {
    double lambda_nm;
    std::optional<double> gamma_seconds;
    std::string table; ///< resolved path
};

inline std::vector<ManifestEntry> load_manifest(const std::string &path) {
    const std::string text = io::read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw DataError(path + ": invalid JSON: " + e.what());
    }
    if (!j.is_array() || j.empty())
        throw DataError(path + ": manifest must be a non-empty JSON array");
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    std::vector<ManifestEntry> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto &e = j[i];
        const std::string where = path + ": entry " + std::to_string(i);
        if (!e.is_object() || !e.contains("lambda_nm") || !e["lambda_nm"].is_number())
            throw DataError(where + ": 'lambda_nm' must be a number");
        if (!e.contains("table") || !e["table"].is_string())
            throw DataError(where + ": 'table' must be a string path");
        ManifestEntry m{e["lambda_nm"].get<double>(), std::nullopt, e["table"].get<std::string>()};
        if (e.contains("gamma_seconds") && !e["gamma_seconds"].is_null()) {
            if (!e["gamma_seconds"].is_number())
                throw DataError(where + ": 'gamma_seconds' must be a number or null");
            m.gamma_seconds = e["gamma_seconds"].get<double>();
        }
        const std::filesystem::path p(m.table);
        m.table = (p.is_absolute() ? p : base / p).string();
        out.push_back(std::move(m));
    }
    return out;
}

/// Loads every table of a manifest; manifest metadata takes precedence over file comments.
inline std::vector<CouplingTable> load_manifest_tables(const std::string &path, const CsvFormat &fmt = {}) {
    std::vector<CouplingTable> tables;
    for (const auto &m : load_manifest(path)) {
        CouplingTable t = load_coupling_table(m.table, fmt);
        t.lambda_nm = m.lambda_nm;
        if (m.gamma_seconds)
            t.gamma_seconds = m.gamma_seconds;
        tables.push_back(std::move(t));
    }
    return tables;
}

} // namespace enzq::reservoir
