// enzq: sweeps and data emission for two qubits coupled through a shared reservoir.

#include "enzq/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace enzq;

struct Outputs {
    std::string out = "-";
    std::string sweep_out;
    std::string channels_out;
};

void emit(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout)
            throw IoError("failed writing to standard output");
        return;
    }
    io::write_file(path, text);
}

void add_range(CLI::App *cmd, const std::string &name, cli::Range &r, const std::string &unit) {
    cmd->add_option("--" + name + "-min", r.min, "lower end of the " + name + " range" + unit)->capture_default_str();
    cmd->add_option("--" + name + "-max", r.max, "upper end of the " + name + " range" + unit)->capture_default_str();
    cmd->add_option("--" + name + "-step", r.step, "step of the " + name + " range" + unit)->capture_default_str();
}

void add_source(CLI::App *cmd, cli::CouplingSource &s) {
    cmd->add_option("--source", s.kind, "coupling source: vacuum, closed-form or table")
        ->check(CLI::IsMember({"vacuum", "closed-form", "table"}))
        ->capture_default_str();
    cmd->add_option("--index", s.index, "refractive index of the vacuum-like medium")->capture_default_str();
    cmd->add_option("--gamma12", s.gamma12, "closed-form source: gamma12/gamma")->capture_default_str();
    cmd->add_option("--g12", s.g12, "closed-form source: g12/gamma")->capture_default_str();
    cmd->add_option("--table", s.table, "coupling table CSV");
    cmd->add_option("--manifest", s.manifest, "JSON manifest of coupling tables");
}

void add_time(CLI::App *cmd, double &t_max, double &t_step) {
    cmd->add_option("--t-max", t_max, "last sample of the time grid, in units of 1/gamma")->capture_default_str();
    cmd->add_option("--t-step", t_step, "time grid spacing")->capture_default_str();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"enzq: entanglement of two qubits in an epsilon-near-zero reservoir"};
    app.set_version_flag("--version", std::string(cli::version));
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML file; section [<subcommand>] sets that subcommand's options");
    app.allow_config_extras(false);

    Outputs out;
    cli::CommonOptions common;
    app.add_option("-o,--out", out.out, "output path ('-' for stdout)")->capture_default_str();
    app.add_flag("--deterministic", common.deterministic, "fixed-step RK4 on one worker; byte-identical output");
    app.add_option("--tol", common.tol, "relative tolerance of the adaptive integrator")->capture_default_str();
    app.add_option("--threads", common.workers, "worker threads for sweep cells (0 = all cores)")
        ->capture_default_str();

    cli::DispersionConfig dispersion;
    auto *c_disp = app.add_subcommand("dispersion", "effective index of a hollow cylindrical guide");
    c_disp->add_option("--diameters", dispersion.diameters_nm, "guide diameters in nm")->delimiter(',');
    c_disp->add_option("--lambdas", dispersion.lambdas_nm, "explicit wavelengths in nm")->delimiter(',');
    add_range(c_disp, "lambda", dispersion.lambda_nm, " (nm)");
    c_disp->add_option("--mode-root", dispersion.mode_root, "Bessel root of the guided mode")->capture_default_str();

    cli::VacuumConfig vacuum;
    auto *c_vac = app.add_subcommand("vacuum", "dipole couplings in a homogeneous medium");
    c_vac->add_option("--r", vacuum.r_over_lambda, "explicit separations r/lambda0")->delimiter(',');
    add_range(c_vac, "r", vacuum.r_range, "");
    c_vac->add_option("--index", vacuum.index, "refractive index")->capture_default_str();
    c_vac->add_option("--index-sweep", vacuum.index_sweep, "indices for the concurrence sweep")->delimiter(',');
    c_vac->add_option("--sweep-r", vacuum.sweep_r_over_lambda, "separation of the index sweep")
        ->capture_default_str();
    c_vac->add_option("--sweep-out", out.sweep_out, "path of the index-sweep CSV");
    c_vac->add_option("--channels-out", out.channels_out, "path of the channel-population CSV");
    c_vac->add_option("--method", vacuum.method, "evolve or closed-form")->capture_default_str();
    add_time(c_vac, vacuum.t_max, vacuum.t_step);

    cli::TransientConfig transient;
    auto *c_tr = app.add_subcommand("transient", "unpumped concurrence from the one-excitation state");
    add_source(c_tr, transient.source);
    c_tr->add_option("--r", transient.r_over_lambda, "explicit separations r/lambda0")->delimiter(',');
    add_range(c_tr, "r", transient.r_range, "");
    add_time(c_tr, transient.t_max, transient.t_step);
    c_tr->add_option("--method", transient.method, "evolve or closed-form")->capture_default_str();
    c_tr->add_option("--layout", transient.layout, "curve, heatmap or auto")->capture_default_str();

    cli::SteadyConfig steady;
    auto *c_st = app.add_subcommand("steady", "pumped concurrence and its steady-state value");
    add_source(c_st, steady.source);
    c_st->add_option("--scheme", steady.schemes, "asymmetric, symmetric, antisymmetric, none, custom")
        ->delimiter(',');
    double w1re = 0, w1im = 0, w2re = 0, w2im = 0;
    c_st->add_option("--omega1-re", w1re, "custom scheme: Re Omega1/gamma");
    c_st->add_option("--omega1-im", w1im, "custom scheme: Im Omega1/gamma");
    c_st->add_option("--omega2-re", w2re, "custom scheme: Re Omega2/gamma");
    c_st->add_option("--omega2-im", w2im, "custom scheme: Im Omega2/gamma");
    c_st->add_option("--omega1-values", steady.omega1_values, "one custom scheme per real Omega1/gamma")
        ->delimiter(',');
    c_st->add_option("--detuning", steady.detuning, "pump detuning Delta/gamma")->capture_default_str();
    c_st->add_option("--r", steady.r_over_lambda, "separations r/lambda0")->delimiter(',');
    c_st->add_option("--initial", steady.initial, "dicke or ground")->capture_default_str();
    add_time(c_st, steady.t_max, steady.t_step);

    cli::RabiConfig rabi;
    auto *c_rb = app.add_subcommand("rabi", "driven single-qubit populations");
    c_rb->add_option("--alpha", rabi.alphas, "normalized Rabi frequencies")->delimiter(',');
    c_rb->add_option("--t-max", rabi.t_max, "last normalized time")->capture_default_str();
    c_rb->add_option("--t-step", rabi.t_step, "normalized time spacing")->capture_default_str();
    c_rb->add_flag("--cross-check", rabi.cross_check, "add a master-equation column");

    std::string ingest_path;
    auto *c_in = app.add_subcommand("ingest", "validate a coupling table or manifest");
    c_in->add_option("path", ingest_path, "coupling CSV or JSON manifest")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        steady.omega1 = {w1re, w1im};
        steady.omega2 = {w2re, w2im};
        if (*c_disp) {
            emit(out.out, cli::run_dispersion(dispersion));
        } else if (*c_vac) {
            vacuum.channels = !out.channels_out.empty();
            if (!vacuum.index_sweep.empty() && out.sweep_out.empty())
                throw ConfigError("sweep-out: --index-sweep needs an output path");
            const auto r = cli::run_vacuum(vacuum, common);
            emit(out.out, r.coupling);
            if (!r.sweep.empty())
                emit(out.sweep_out, r.sweep);
            if (!r.channels.empty())
                emit(out.channels_out, r.channels);
        } else if (*c_tr) {
            emit(out.out, cli::run_transient(transient, common));
        } else if (*c_st) {
            emit(out.out, cli::run_steady(steady, common));
        } else if (*c_rb) {
            emit(out.out, cli::run_rabi(rabi, common));
        } else if (*c_in) {
            emit(out.out, cli::run_ingest(ingest_path));
        }
    } catch (const ConfigError &e) {
        std::cerr << "enzq: config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "enzq: config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError &e) {
        std::cerr << "enzq: I/O error: " << e.what() << "\n";
        return 3;
    } catch (const DataError &e) {
        std::cerr << "enzq: data error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception &e) {
        std::cerr << "enzq: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
