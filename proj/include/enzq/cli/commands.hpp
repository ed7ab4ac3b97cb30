#pragma once

// Subcommand implementations behind the `enzq` tool. Each command validates
// its configuration, runs the sweep and returns the CSV text; the front end
// only parses flags and owns the output file.

#include "enzq/core.hpp"
#include "enzq/dynamics.hpp"
#include "enzq/entanglement.hpp"
#include "enzq/io.hpp"
#include "enzq/reservoir.hpp"
#include "enzq/sweep.hpp"
#include "enzq/vacuum.hpp"
#include "enzq/waveguide.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace enzq::cli {

inline constexpr const char *version = "0.3.0";

struct CommonOptions {
    bool deterministic = false; ///< fixed-step RK4 on a single worker
    double tol = 1e-9;          ///< relative tolerance of the adaptive integrator
    double fixed_dt = 1e-3;
    unsigned workers = 0;       ///< 0 = hardware concurrency
};

/// Inclusive range min, min+step, ..., max (max snapped onto the step lattice).
struct Range {
    double min = 0.0;
    double max = 0.0;
    double step = 0.0;
};

namespace detail {

inline void require(bool ok, const std::string &field, const std::string &msg) {
    if (!ok)
        throw ConfigError(field + ": " + msg);
}

inline void require_finite(const std::vector<double> &v, const std::string &field) {
    require(!v.empty(), field, "list must not be empty");
    for (double x : v)
        require(std::isfinite(x), field, "values must be finite");
}

inline std::vector<double> expand(const Range &r, const std::string &field) {
    require(std::isfinite(r.min) && std::isfinite(r.max) && std::isfinite(r.step), field, "range must be finite");
    require(r.step > 0.0, field, "step must be positive");
    require(r.max >= r.min, field, "max must not be below min");
    const auto n = static_cast<std::size_t>(std::llround((r.max - r.min) / r.step));
    std::vector<double> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        out[i] = r.min + static_cast<double>(i) * r.step;
    return out;
}

inline std::vector<double> grid_or_range(const std::vector<double> &explicit_values, const Range &range,
                                         const std::string &field) {
    if (!explicit_values.empty()) {
        require_finite(explicit_values, field);
        return explicit_values;
    }
    return expand(range, field);
}

inline TimeGrid time_grid(double t_max, double t_step) {
    require(std::isfinite(t_max) && t_max >= 0.0, "t-max", "must be finite and non-negative");
    require(std::isfinite(t_step) && t_step > 0.0, "t-step", "must be positive");
    return TimeGrid::uniform(t_max, t_step);
}

inline EvolveOptions evolve_options(const CommonOptions &c) {
    require(c.tol > 0.0 && std::isfinite(c.tol), "tol", "must be positive");
    EvolveOptions o;
    o.rtol = c.tol;
    o.fixed_step = c.deterministic;
    o.fixed_dt = c.fixed_dt;
    return o;
}

inline unsigned workers(const CommonOptions &c) {
    if (c.deterministic)
        return 1;
    return c.workers == 0 ? default_workers() : c.workers;
}

inline std::string num(double v) { return io::format_double(v); }

inline std::string header(const std::string &cmd) {
    return std::string("# enzq ") + version + " " + cmd + "\n";
}

inline std::string join(const std::vector<double> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + num(v[i]);
    return s;
}

} // namespace detail

// ---------------------------------------------------------------------------
// dispersion
// ---------------------------------------------------------------------------

struct DispersionConfig {
    std::vector<double> diameters_nm{600.0, 700.0, 800.0};
    std::vector<double> lambdas_nm; ///< explicit list; overrides the range
    Range lambda_nm{400.0, 2000.0, 10.0};
    double mode_root = waveguide::default_mode_root;
};

inline std::string run_dispersion(const DispersionConfig &cfg) {
    using namespace detail;
    require(!cfg.diameters_nm.empty(), "diameters", "list must not be empty");
    require_finite(cfg.diameters_nm, "diameters");
    for (double d : cfg.diameters_nm)
        require(d > 0.0, "diameters", "values must be positive");
    require(cfg.mode_root > 0.0 && std::isfinite(cfg.mode_root), "mode-root", "must be positive");
    const auto lambdas = grid_or_range(cfg.lambdas_nm, cfg.lambda_nm, "lambdas");
    for (double l : lambdas)
        require(l > 0.0, "lambdas", "values must be positive");

    std::string s = header("dispersion");
    s += "# mode_root=" + num(cfg.mode_root) + "\n";
    for (double d : cfg.diameters_nm)
        s += "# cutoff_nm diameter_nm=" + num(d) + " lambda_c=" +
             num(waveguide::cutoff_wavelength({d, cfg.mode_root})) + "\n";
    s += "diameter_nm,lambda_nm,n_eff_re,n_eff_im\n";
    for (const auto &r : waveguide::dispersion_curve(cfg.diameters_nm, lambdas, cfg.mode_root))
        s += num(r.diameter_nm) + "," + num(r.lambda_nm) + "," + num(r.n_eff.real()) + "," +
             num(r.n_eff.imag()) + "\n";
    return s;
}

// ---------------------------------------------------------------------------
// concurrence sweeps shared by transient / vacuum
// ---------------------------------------------------------------------------

enum class Method { Evolve, ClosedForm };

inline Method parse_method(const std::string &m) {
    if (m == "evolve")
        return Method::Evolve;
    if (m == "closed-form")
        return Method::ClosedForm;
    throw ConfigError("method: expected 'evolve' or 'closed-form', got '" + m + "'");
}

struct ConcurrenceSample {
    double concurrence;
    double rho_plus;
    double rho_minus;
};

/// Unpumped transient from the one-emitter-excited state.
inline std::vector<ConcurrenceSample> transient_curve(const CouplingParameters &c, const TimeGrid &grid,
                                                      Method method, const EvolveOptions &opt) {
    std::vector<ConcurrenceSample> out;
    out.reserve(grid.size());
    if (method == Method::ClosedForm) {
        for (double t : grid.samples()) {
            const DensityMatrix rho = unpumped_dicke_solution(c, t);
            out.push_back({transient_concurrence_closed_form(c, t), rho(basis::plus, basis::plus).real(),
                           rho(basis::minus, basis::minus).real()});
        }
        return out;
    }
    // Time zero is the initial state itself; the grid must start there.
    std::vector<double> ts = grid.samples();
    if (ts.front() > 0.0)
        ts.insert(ts.begin(), 0.0);
    const Trajectory traj = evolve(dicke_initial_state(), LindbladGenerator(c), TimeGrid(ts), opt);
    const std::size_t off = ts.size() - grid.size();
    for (std::size_t k = off; k < traj.states.size(); ++k) {
        const DensityMatrix &rho = traj.states[k];
        out.push_back({wootters_concurrence(rho), rho(basis::plus, basis::plus).real(),
                       rho(basis::minus, basis::minus).real()});
    }
    return out;
}

// ---------------------------------------------------------------------------
// vacuum
// ---------------------------------------------------------------------------

struct VacuumConfig {
    std::vector<double> r_over_lambda;            ///< explicit list; overrides the range
    Range r_range{0.05, 2.0, 0.05};
    double index = 1.0;
    std::vector<double> index_sweep;             ///< n values for the concurrence heatmap
    double sweep_r_over_lambda = 0.5;
    double t_max = 10.0;
    double t_step = 0.1;
    std::string method = "evolve";
    bool channels = false;
};

struct VacuumOutput {
    std::string coupling;
    std::string sweep;    ///< empty unless index_sweep was given
    std::string channels; ///< empty unless channels was requested
};

inline VacuumOutput run_vacuum(const VacuumConfig &cfg, const CommonOptions &common = {}) {
    using namespace detail;
    const auto rs = grid_or_range(cfg.r_over_lambda, cfg.r_range, "r");
    for (double r : rs)
        require(r > 0.0, "r", "r/lambda0 values must be positive");
    require(cfg.index > 0.0 && std::isfinite(cfg.index), "index", "refractive index must be positive");

    VacuumOutput out;
    std::string &s = out.coupling;
    s = header("vacuum");
    s += "# index=" + num(cfg.index) + "\n";
    s += "r_over_lambda,gamma12_over_gamma0,g12_over_gamma0\n";
    const auto rows = vacuum::coupling_curve(rs, cfg.index);
    for (const auto &r : rows)
        s += num(r.r_over_lambda) + "," + num(r.gamma12_over_gamma0) + "," + num(r.g12_over_gamma0) + "\n";

    if (!cfg.index_sweep.empty() || cfg.channels) {
        const TimeGrid grid = time_grid(cfg.t_max, cfg.t_step);
        if (!cfg.index_sweep.empty()) {
            require_finite(cfg.index_sweep, "index-sweep");
            for (double n : cfg.index_sweep)
                require(n > 0.0, "index-sweep", "refractive indices must be positive");
            require(cfg.sweep_r_over_lambda > 0.0, "sweep-r", "must be positive");
            const Method method = parse_method(cfg.method);
            const EvolveOptions opt = evolve_options(common);
            const auto curves = parallel_map(cfg.index_sweep.size(), workers(common), [&](std::size_t i) {
                return transient_curve(vacuum::coupling_parameters(cfg.sweep_r_over_lambda, cfg.index_sweep[i]), grid,
                                       method, opt);
            });
            std::string &w = out.sweep;
            w = header("vacuum index-sweep");
            w += "# r_over_lambda=" + num(cfg.sweep_r_over_lambda) + " method=" + cfg.method + "\n";
            w += "index,t_gamma,concurrence\n";
            for (std::size_t i = 0; i < curves.size(); ++i)
                for (std::size_t k = 0; k < grid.size(); ++k)
                    w += num(cfg.index_sweep[i]) + "," + num(grid[k]) + "," + num(curves[i][k].concurrence) + "\n";
        }
        if (cfg.channels) {
            std::string &c = out.channels;
            c = header("vacuum channels");
            c += "# index=" + num(cfg.index) + "\n";
            c += "r_over_lambda,t_gamma,n_s,n_a\n";
            for (const auto &r : rows)
                for (double t : grid.samples()) {
                    const auto p = vacuum::channel_populations(t, r.gamma12_over_gamma0);
                    c += num(r.r_over_lambda) + "," + num(t) + "," + num(p.symmetric) + "," + num(p.antisymmetric) +
                         "\n";
                }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// coupling sources shared by transient / steady
// ---------------------------------------------------------------------------

struct CouplingSource {
    std::string kind = "vacuum"; ///< vacuum | closed-form | table
    double index = 1.0;          ///< vacuum: refractive index
    double gamma12 = 1.0;        ///< closed-form: gamma12/gamma
    double g12 = 0.0;            ///< closed-form: g12/gamma
    std::string table;           ///< table: coupling CSV
    std::string manifest;        ///< table: JSON manifest bundling several wavelengths
};

/// One resolved coupling dataset (one wavelength for manifests).
struct ResolvedSource {
    std::string label;
    std::optional<double> lambda_nm;
    std::function<CouplingParameters(double)> at;
};

inline std::vector<ResolvedSource> resolve_source(const CouplingSource &src) {
    using namespace detail;
    std::vector<ResolvedSource> out;
    if (src.kind == "vacuum") {
        require(src.index > 0.0 && std::isfinite(src.index), "index", "refractive index must be positive");
        const double n = src.index;
        out.push_back({"vacuum n=" + num(n), std::nullopt, [n](double r) { return vacuum::coupling_parameters(r, n); }});
    } else if (src.kind == "closed-form") {
        try {
            const CouplingParameters c = CouplingParameters::normalized(src.gamma12, src.g12);
            out.push_back({"closed-form gamma12=" + num(src.gamma12) + " g12=" + num(src.g12), std::nullopt,
                           [c](double) { return c; }});
        } catch (const std::invalid_argument &e) {
            throw ConfigError(std::string("gamma12/g12: ") + e.what());
        }
    } else if (src.kind == "table") {
        require(src.table.empty() != src.manifest.empty(), "table", "give exactly one of --table or --manifest");
        std::vector<reservoir::CouplingTable> tables;
        if (!src.table.empty())
            tables.push_back(reservoir::load_coupling_table(src.table));
        else
            tables = reservoir::load_manifest_tables(src.manifest);
        for (auto &t : tables) {
            auto shared = std::make_shared<const reservoir::CouplingTable>(std::move(t));
            out.push_back({shared->source, shared->lambda_nm,
                           [shared](double r) { return reservoir::coupling_at(*shared, r); }});
        }
    } else {
        throw ConfigError("source: expected vacuum, closed-form or table, got '" + src.kind + "'");
    }
    return out;
}

// ---------------------------------------------------------------------------
// transient
// ---------------------------------------------------------------------------

struct TransientConfig {
    CouplingSource source;
    std::vector<double> r_over_lambda;            ///< explicit list; overrides the range
    Range r_range{0.05, 2.0, 0.05};
    double t_max = 10.0;
    double t_step = 0.1;
    std::string method = "evolve"; ///< ignored for the closed-form source
    std::string layout = "auto";   ///< curve | heatmap | auto (curve for one distance and dataset)
};

inline std::string run_transient(const TransientConfig &cfg, const CommonOptions &common = {}) {
    using namespace detail;
    const auto rs = grid_or_range(cfg.r_over_lambda, cfg.r_range, "r");
    for (double r : rs)
        require(r > 0.0 || cfg.source.kind != "vacuum", "r", "r/lambda0 values must be positive");
    const TimeGrid grid = time_grid(cfg.t_max, cfg.t_step);
    const Method method = cfg.source.kind == "closed-form" ? Method::ClosedForm : parse_method(cfg.method);
    const auto sources = resolve_source(cfg.source);
    require(cfg.layout == "auto" || cfg.layout == "curve" || cfg.layout == "heatmap", "layout",
            "expected curve, heatmap or auto");
    const bool curve = cfg.layout == "curve" || (cfg.layout == "auto" && rs.size() == 1 && sources.size() == 1);
    require(!curve || (rs.size() == 1 && sources.size() == 1), "layout",
            "curve layout needs a single distance and a single dataset");
    const EvolveOptions opt = evolve_options(common);

    // Resolve every coupling first so range errors surface before any integration.
    std::vector<std::pair<std::size_t, CouplingParameters>> cells;
    for (std::size_t s = 0; s < sources.size(); ++s)
        for (double r : rs)
            cells.emplace_back(s, sources[s].at(r));

    const auto curves = parallel_map(cells.size(), workers(common), [&](std::size_t i) {
        return transient_curve(cells[i].second, grid, method, opt);
    });

    std::string s = header("transient");
    for (const auto &src : sources)
        s += "# source " + src.label + (src.lambda_nm ? " lambda_nm=" + num(*src.lambda_nm) : "") + "\n";
    s += std::string("# method=") + (method == Method::Evolve ? "evolve" : "closed-form") + "\n";
    if (curve) {
        s += "# r_over_lambda=" + num(rs.front()) + "\n";
        s += "t_gamma,concurrence,rho_plus,rho_minus\n";
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const auto &c = curves[0][k];
            s += num(grid[k]) + "," + num(c.concurrence) + "," + num(c.rho_plus) + "," + num(c.rho_minus) + "\n";
        }
        return s;
    }
    const bool multi = sources.size() > 1;
    s += multi ? "lambda_nm,r_over_lambda,t_gamma,concurrence\n" : "r_over_lambda,t_gamma,concurrence\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto &src = sources[cells[i].first];
        const std::string prefix =
            multi ? (src.lambda_nm ? num(*src.lambda_nm) : std::string("nan")) + "," : std::string();
        const double r = rs[i % rs.size()];
        for (std::size_t k = 0; k < grid.size(); ++k)
            s += prefix + num(r) + "," + num(grid[k]) + "," + num(curves[i][k].concurrence) + "\n";
    }
    return s;
}

// ---------------------------------------------------------------------------
// steady
// ---------------------------------------------------------------------------

struct PumpScheme {
    std::string name;
    PumpDrive drive;
};

inline PumpScheme preset_scheme(const std::string &name) {
    if (name == "asymmetric")
        return {name, PumpDrive::asymmetric(0.4)};
    if (name == "symmetric")
        return {name, PumpDrive::symmetric(0.2)};
    if (name == "antisymmetric")
        return {name, PumpDrive::antisymmetric(0.2)};
    if (name == "none")
        return {name, PumpDrive::none()};
    throw ConfigError("scheme: unknown preset '" + name +
                      "' (expected asymmetric, symmetric, antisymmetric, none or custom)");
}

struct SteadyConfig {
    CouplingSource source;
    std::vector<std::string> schemes{"asymmetric", "symmetric", "antisymmetric"};
    cplx omega1{0.0, 0.0};            ///< custom scheme
    cplx omega2{0.0, 0.0};            ///< custom scheme; also the fixed Omega2 of an omega1 sweep
    std::vector<double> omega1_values; ///< adds one custom scheme per value
    double detuning = 0.0;
    std::vector<double> r_over_lambda{0.5, 1.0, 1.5};
    double t_max = 60.0;
    double t_step = 0.5;
    std::string initial = "dicke"; ///< dicke | ground
};

inline std::string run_steady(const SteadyConfig &cfg, const CommonOptions &common = {}) {
    using namespace detail;
    require_finite(cfg.r_over_lambda, "r");
    require(std::isfinite(cfg.detuning), "detuning", "must be finite");
    require(cfg.initial == "dicke" || cfg.initial == "ground", "initial", "expected dicke or ground");
    const TimeGrid grid = time_grid(cfg.t_max, cfg.t_step);
    require(grid.front() == 0.0, "t-max", "grid must start at 0");

    std::vector<PumpScheme> schemes;
    for (const auto &n : cfg.schemes) {
        if (n == "custom")
            schemes.push_back({"custom", PumpDrive(cfg.omega1, cfg.omega2, cfg.detuning)});
        else {
            PumpScheme p = preset_scheme(n);
            p.drive.detuning = cfg.detuning;
            schemes.push_back(p);
        }
    }
    for (double w : cfg.omega1_values) {
        require(std::isfinite(w), "omega1-values", "values must be finite");
        schemes.push_back({"custom", PumpDrive(w, cfg.omega2, cfg.detuning)});
    }
    require(!schemes.empty(), "scheme", "no pump scheme selected");

    const auto sources = resolve_source(cfg.source);
    const EvolveOptions opt = evolve_options(common);
    const DensityMatrix rho0 =
        cfg.initial == "dicke" ? dicke_initial_state() : DensityMatrix::basis_state(basis::ground, Basis::Dicke);

    struct Cell {
        std::size_t scheme, source;
        double r;
        CouplingParameters coupling;
    };
    std::vector<Cell> cells;
    for (std::size_t p = 0; p < schemes.size(); ++p)
        for (std::size_t s = 0; s < sources.size(); ++s)
            for (double r : cfg.r_over_lambda)
                cells.push_back({p, s, r, sources[s].at(r)});

    struct CellResult {
        std::vector<double> c;
        double c_steady;
    };
    const auto results = parallel_map(cells.size(), workers(common), [&](std::size_t i) {
        const LindbladGenerator gen(cells[i].coupling, schemes[cells[i].scheme].drive);
        const Trajectory traj = evolve(rho0, gen, grid, opt);
        CellResult res;
        res.c.reserve(traj.states.size());
        for (const auto &rho : traj.states)
            res.c.push_back(wootters_concurrence(rho));
        try {
            res.c_steady = wootters_concurrence(steady_state(gen));
        } catch (const DegenerateSteadyState &) {
            res.c_steady = std::numeric_limits<double>::quiet_NaN();
        }
        return res;
    });

    std::string s = header("steady");
    for (const auto &p : schemes)
        s += "# scheme " + p.name + ": omega1=" + num(p.drive.omega1.real()) + "+" + num(p.drive.omega1.imag()) +
             "i omega2=" + num(p.drive.omega2.real()) + "+" + num(p.drive.omega2.imag()) +
             "i detuning=" + num(p.drive.detuning) + "\n";
    for (const auto &src : sources)
        s += "# source " + src.label + (src.lambda_nm ? " lambda_nm=" + num(*src.lambda_nm) : "") + "\n";
    s += "# initial=" + cfg.initial + "\n";
    const bool multi = sources.size() > 1;
    s += multi ? "scheme,omega1_re,omega1_im,omega2_re,omega2_im,lambda_nm,r_over_lambda,t_gamma,concurrence,c_steady\n"
               : "scheme,omega1_re,omega1_im,omega2_re,omega2_im,r_over_lambda,t_gamma,concurrence,c_steady\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto &p = schemes[cells[i].scheme];
        std::string prefix = p.name + "," + num(p.drive.omega1.real()) + "," + num(p.drive.omega1.imag()) + "," +
                             num(p.drive.omega2.real()) + "," + num(p.drive.omega2.imag()) + ",";
        if (multi) {
            const auto &l = sources[cells[i].source].lambda_nm;
            prefix += (l ? num(*l) : std::string("nan")) + ",";
        }
        for (std::size_t k = 0; k < grid.size(); ++k)
            s += prefix + num(cells[i].r) + "," + num(grid[k]) + "," + num(results[i].c[k]) + "," +
                 num(results[i].c_steady) + "\n";
    }
    return s;
}

// ---------------------------------------------------------------------------
// rabi
// ---------------------------------------------------------------------------

struct RabiConfig {
    std::vector<double> alphas{0.1, 0.5, 1.0, 2.0};
    double t_max = 20.0;
    double t_step = 0.1;
    bool cross_check = false;
};

inline std::string run_rabi(const RabiConfig &cfg, const CommonOptions &common = {}) {
    using namespace detail;
    require_finite(cfg.alphas, "alpha");
    for (double a : cfg.alphas)
        require(a >= 0.0, "alpha", "normalized Rabi frequencies must be non-negative");
    const TimeGrid grid = time_grid(cfg.t_max, cfg.t_step);

    std::vector<std::vector<double>> master;
    if (cfg.cross_check) {
        const EvolveOptions opt = evolve_options(common);
        master = parallel_map(cfg.alphas.size(), workers(common), [&](std::size_t i) {
            // qubit 1 driven, qubit 2 idle and uncoupled, both start in the ground state
            const LindbladGenerator gen(CouplingParameters(1.0, 0.0, 0.0), PumpDrive(cfg.alphas[i], 0.0));
            const Trajectory traj = evolve(DensityMatrix::basis_state(basis::ground, Basis::Dicke), gen, grid, opt);
            std::vector<double> pe;
            pe.reserve(traj.states.size());
            for (const auto &rho : traj.states)
                pe.push_back(excited_population(rho, 0));
            return pe;
        });
    }

    std::string s = header("rabi");
    s += cfg.cross_check ? "alpha,t_norm,rho_ee,rho_gg,rho_ee_steady,rho_ee_master\n"
                         : "alpha,t_norm,rho_ee,rho_gg,rho_ee_steady\n";
    for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
        const double a = cfg.alphas[i];
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double pe = single_qubit_rho_ee(a, grid[k]);
            s += num(a) + "," + num(grid[k]) + "," + num(pe) + "," + num(1.0 - pe) + "," +
                 num(single_qubit_rho_ee_steady(a));
            if (cfg.cross_check)
                s += "," + num(master[i][k]);
            s += "\n";
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

inline std::string describe_table(const reservoir::CouplingTable &t) {
    using detail::num;
    double bmin = 1e300, bmax = -1e300, gmin = 1e300, gmax = -1e300;
    for (const auto &r : t.rows) {
        bmin = std::min(bmin, r.gamma12_over_gamma);
        bmax = std::max(bmax, r.gamma12_over_gamma);
        gmin = std::min(gmin, r.g12_over_gamma);
        gmax = std::max(gmax, r.g12_over_gamma);
    }
    std::size_t saturated = 0;
    for (const auto &r : t.rows)
        saturated += std::abs(r.gamma12_over_gamma) == 1.0;
    std::string s;
    s += "table: " + t.source + "\n";
    s += "  lambda_nm: " + (t.lambda_nm ? num(*t.lambda_nm) : std::string("unset")) + "\n";
    s += "  gamma_seconds: " + (t.gamma_seconds ? num(*t.gamma_seconds) : std::string("unset")) + "\n";
    s += "  rows: " + std::to_string(t.rows.size()) + "\n";
    s += "  r_over_lambda: [" + num(t.r_min()) + ", " + num(t.r_max()) + "]\n";
    s += "  gamma12_over_gamma: [" + num(bmin) + ", " + num(bmax) + "]\n";
    s += "  g12_over_gamma: [" + num(gmin) + ", " + num(gmax) + "]\n";
    s += "  rows at |gamma12/gamma| = 1: " + std::to_string(saturated) + "\n";
    s += "  clamp warnings: " + std::to_string(t.clamped.size()) + "\n";
    for (const auto &w : t.clamped)
        s += "    line " + std::to_string(w.line) + ": gamma12_over_gamma " + num(w.original) + " clamped to " +
             (w.original > 0 ? "1" : "-1") + "\n";
    return s;
}

inline std::string run_ingest(const std::string &path) {
    detail::require(!path.empty(), "path", "no input file given");
    std::vector<reservoir::CouplingTable> tables;
    const bool manifest = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
    if (manifest)
        tables = reservoir::load_manifest_tables(path);
    else
        tables.push_back(reservoir::load_coupling_table(path));
    std::string s = "# enzq " + std::string(version) + " ingest\n";
    if (manifest)
        s += "manifest: " + path + " (" + std::to_string(tables.size()) + " tables)\n";
    for (const auto &t : tables)
        s += describe_table(t);
    s += "status: ok\n";
    return s;
}

} // namespace enzq::cli
