// dicke — CLI front-end for spectra, Otto cycles, correlation reports, and
// parameter sweeps. Exit codes: 0 success, 2 config error, 3 numerical
// failure, 4 I/O error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dicke/dicke.hpp"

namespace {

struct ParamFlags {
    std::optional<double> omega0, delta, lambda, t_hot, t_cold, omega_h, omega_c;
    std::optional<int> n_qubits, n_tr;
    std::string config_path;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--omega0", f.omega0, "mode frequency");
    cmd->add_option("--delta", f.delta, "qubit frequency");
    cmd->add_option("--lambda", f.lambda, "qubit-boson coupling");
    cmd->add_option("--n-qubits", f.n_qubits, "number of qubits N");
    cmd->add_option("--ntr", f.n_tr, "bosonic truncation number");
    cmd->add_option("--omega-h", f.omega_h, "hot-stroke frequency");
    cmd->add_option("--omega-c", f.omega_c, "cold-stroke frequency");
    cmd->add_option("--th", f.t_hot, "hot bath temperature");
    cmd->add_option("--tc", f.t_cold, "cold bath temperature");
}

dicke::CycleProtocol resolve_protocol(const ParamFlags& f) {
    dicke::CycleProtocol proto;
    if (!f.config_path.empty())
        proto = dicke::parse_protocol(dicke::load_config(f.config_path));
    if (f.omega0) proto.base.omega0 = *f.omega0;
    if (f.delta) proto.base.delta = *f.delta;
    if (f.lambda) proto.base.lambda = *f.lambda;
    if (f.n_qubits) proto.base.n_qubits = *f.n_qubits;
    if (f.n_tr) proto.base.n_tr = *f.n_tr;
    if (f.omega_h) proto.omega_h = *f.omega_h;
    if (f.omega_c) proto.omega_c = *f.omega_c;
    if (f.t_hot) proto.t_hot = *f.t_hot;
    if (f.t_cold) proto.t_cold = *f.t_cold;
    return proto;
}

int run_spectrum(const ParamFlags& flags, int levels, const std::string& method,
                 bool auto_converge, const std::string& out_path) {
    dicke::ModelParams p = resolve_protocol(flags).base;
    if (auto_converge) p = dicke::auto_converge_ntr(p);
    dicke::Spectrum spec;
    if (method == "ecs") {
        dicke::EcsOptions opts;
        opts.compute_vectors = false;
        spec = dicke::diagonalize_ecs(p, opts);
    } else if (method == "bare") {
        dicke::DiagOptions opts;
        opts.compute_vectors = false;
        spec = dicke::diagonalize_bare(p, opts);
    } else {
        throw dicke::ConfigError("--method must be 'bare' or 'ecs'");
    }
    const int k = std::min<int>(levels, spec.dimension());
    nlohmann::ordered_json j;
    j["method"] = spec.method;
    j["n_tr"] = p.n_tr;
    std::printf("# %s spectrum, N=%d, lambda=%.17g, N_tr=%d\n", spec.method.c_str(),
                p.n_qubits, p.lambda, p.n_tr);
    nlohmann::ordered_json vals = nlohmann::ordered_json::array();
    for (int i = 0; i < k; ++i) {
        std::printf("%4d  %.12f\n", i, spec.energies(i));
        vals.push_back(spec.energies(i));
    }
    if (!out_path.empty()) {
        j["energies"] = vals;
        dicke::write_file(out_path, j.dump(2) + "\n");
    }
    return 0;
}

int run_cycle_cmd(const ParamFlags& flags, const std::string& out_path) {
    const dicke::CycleProtocol proto = resolve_protocol(flags);
    const dicke::CycleResult r = dicke::run_cycle(proto);
    std::printf("regime  %s\n", dicke::to_string(r.regime).c_str());
    std::printf("W       %.12g\n", r.work);
    std::printf("Q_h     %.12g\n", r.q_hot);
    std::printf("Q_c     %.12g\n", r.q_cold);
    if (r.regime == dicke::Regime::Engine)
        std::printf("eta     %.12g   (Carnot %.12g)\n", r.eta, r.carnot_eta);
    if (r.regime == dicke::Regime::Refrigerator)
        std::printf("cop     %.12g   (Carnot %.12g)\n", r.cop, r.carnot_cop);
    if (!out_path.empty()) {
        nlohmann::ordered_json j;
        j["regime"] = dicke::to_string(r.regime);
        j["work"] = r.work;
        j["q_hot"] = r.q_hot;
        j["q_cold"] = r.q_cold;
        if (r.regime == dicke::Regime::Engine) j["eta"] = r.eta;
        if (r.regime == dicke::Regime::Refrigerator) j["cop"] = r.cop;
        j["carnot_eta"] = r.carnot_eta;
        j["carnot_cop"] = r.carnot_cop;
        dicke::write_file(out_path, j.dump(2) + "\n");
    }
    return 0;
}

int run_correlate(const ParamFlags& flags, std::optional<double> temperature,
                  const std::string& out_path) {
    const dicke::CycleProtocol proto = resolve_protocol(flags);
    const dicke::ModelParams p = dicke::cold_params(proto);
    const double t = temperature ? *temperature : proto.t_cold;
    const dicke::Spectrum spec = dicke::diagonalize_bare(p);
    const dicke::ThermalState state = dicke::gibbs_state(spec, t);
    const dicke::CorrelationReport rep = dicke::correlate(spec, state);
    std::printf("mean_photon     %.12g\n", rep.mean_photon);
    if (rep.g2_conventional)
        std::printf("g2              %.12g\n", *rep.g2_conventional);
    else
        std::printf("g2              undefined (vacuum dominated)\n");
    if (rep.g2_generalized)
        std::printf("G2              %.12g\n", *rep.g2_generalized);
    else
        std::printf("G2              undefined (vacuum dominated)\n");
    std::printf("negativity      %.12g\n", rep.negativity);
    if (!out_path.empty()) {
        nlohmann::ordered_json j;
        j["mean_photon"] = rep.mean_photon;
        if (rep.g2_conventional) j["g2"] = *rep.g2_conventional;
        if (rep.g2_generalized) j["g2_generalized"] = *rep.g2_generalized;
        j["negativity"] = rep.negativity;
        j["vacuum_dominated"] = rep.vacuum_dominated_conventional;
        dicke::write_file(out_path, j.dump(2) + "\n");
    }
    return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_base,
                  std::optional<int> threads, std::optional<int> n_tr,
                  bool auto_converge) {
    dicke::SweepSpec spec = dicke::parse_sweep_spec(dicke::load_config(config_path));
    if (threads) spec.threads = *threads;
    if (n_tr) spec.proto.base.n_tr = *n_tr;
    if (auto_converge) spec.auto_converge = true;
    const dicke::PhaseGrid grid = dicke::run_sweep(spec);
    dicke::emit_csv(grid, out_base + ".csv");
    dicke::emit_json(grid, out_base + ".json");
    int failed = 0;
    for (const auto& c : grid.cells)
        if (c.failed) ++failed;
    std::printf("%d cells -> %s.csv, %s.json", int(grid.cells.size()),
                out_base.c_str(), out_base.c_str());
    if (failed) std::printf("  (%d failed, grid marked incomplete)", failed);
    std::printf("\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Otto machine on the open Dicke model"};
    app.require_subcommand(1);

    ParamFlags flags;
    int levels = 10;
    std::string method = "bare";
    bool auto_converge = false;
    std::string out_path;
    std::optional<int> threads_opt, ntr_opt;
    std::optional<double> temperature;
    std::string sweep_out = "sweep_out";

    auto* spectrum = app.add_subcommand("spectrum", "print lowest eigenvalues");
    add_param_flags(spectrum, flags);
    spectrum->add_option("--levels", levels, "number of levels to print");
    spectrum->add_option("--method", method, "bare | ecs");
    spectrum->add_flag("--auto-converge", auto_converge, "double N_tr until stable");
    spectrum->add_option("--out", out_path, "optional JSON output path");
    spectrum->add_option("--threads", threads_opt, "accepted for interface parity");

    auto* cycle = app.add_subcommand("cycle", "evaluate one Otto cycle");
    add_param_flags(cycle, flags);
    cycle->add_option("--out", out_path, "optional JSON output path");
    cycle->add_flag("--auto-converge", auto_converge);
    cycle->add_option("--threads", threads_opt);

    auto* correlate = app.add_subcommand("correlate", "thermal correlation report");
    add_param_flags(correlate, flags);
    correlate->add_option("--temperature", temperature, "equilibrium temperature");
    correlate->add_option("--out", out_path, "optional JSON output path");
    correlate->add_flag("--auto-converge", auto_converge);
    correlate->add_option("--threads", threads_opt);

    auto* sweep = app.add_subcommand("sweep", "run a SweepSpec config");
    std::string sweep_config;
    sweep->add_option("--config", sweep_config, "sweep config file")->required();
    sweep->add_option("--out", sweep_out, "output base path (.csv/.json appended)");
    sweep->add_option("--threads", threads_opt, "parallelism degree");
    sweep->add_option("--ntr", ntr_opt, "override truncation number");
    sweep->add_flag("--auto-converge", auto_converge);

    auto* phase = app.add_subcommand("phase-diagram", "regime map over a 2-D grid");
    phase->add_option("--config", sweep_config, "sweep config file")->required();
    phase->add_option("--out", sweep_out, "output base path (.csv/.json appended)");
    phase->add_option("--threads", threads_opt, "parallelism degree");
    phase->add_option("--ntr", ntr_opt, "override truncation number");
    phase->add_flag("--auto-converge", auto_converge);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (spectrum->parsed())
            return run_spectrum(flags, levels, method, auto_converge, out_path);
        if (cycle->parsed()) return run_cycle_cmd(flags, out_path);
        if (correlate->parsed()) return run_correlate(flags, temperature, out_path);
        if (sweep->parsed() || phase->parsed())
            return run_sweep_cmd(sweep_config, sweep_out, threads_opt, ntr_opt,
                                 auto_converge);
    } catch (const dicke::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const dicke::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return 4;
    } catch (const dicke::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
