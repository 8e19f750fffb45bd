// acceptance — one self-checking routine per acceptance criterion.
// Usage: acceptance [k]   runs criterion k (1..11), or all when omitted.
// Prints one "[PASS]/[FAIL] C<k>: ..." line per criterion; exit code is the
// number of failures.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dicke/dicke.hpp"

using namespace dicke;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream msg;

    void require(bool cond, const std::string& why) {
        if (!cond) {
            ok = false;
            if (msg.tellp() > 0) msg << "; ";
            msg << why;
        }
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

CycleProtocol protocol(double lambda, int n_qubits, double t_hot, double t_cold,
                       double omega_h = 2.0, double omega_c = 1.0, int n_tr = 50) {
    CycleProtocol proto;
    proto.base = ModelParams{.omega0 = omega_c, .delta = omega_c,
                             .lambda = lambda, .n_qubits = n_qubits, .n_tr = n_tr};
    proto.omega_h = omega_h;
    proto.omega_c = omega_c;
    proto.t_hot = t_hot;
    proto.t_cold = t_cold;
    return proto;
}

SweepSpec fig2a_spec() {
    SweepSpec spec;
    spec.axes = {Axis{.name = "lambda", .min = 0.0, .max = 3.0, .count = 40},
                 Axis{.name = "t_hot", .min = 0.1475, .max = 2.0, .count = 40}};
    spec.proto = protocol(0.0, 8, 0.5, 0.1);
    spec.outputs = {"regime", "work", "q_hot", "q_cold", "eta", "cop"};
    spec.threads = int(std::thread::hardware_concurrency());
    if (spec.threads < 1) spec.threads = 1;
    return spec;
}

// C1: uncoupled Otto analytics — eta = 1 - w_c/w_h, COP = w_c/(w_h - w_c).
Check criterion1() {
    Check c;
    for (int n : {1, 2, 8}) {
        const CycleResult eng = run_cycle(protocol(0.0, n, 0.5, 0.1, 2.0, 1.0, 40));
        c.require(eng.regime == Regime::Engine,
                  "N=" + std::to_string(n) + " T_h>2T_c not an engine");
        c.require(std::abs(eng.eta - 0.5) < 1e-10,
                  "N=" + std::to_string(n) + " eta=" + fmt(eng.eta) + " != 0.5");
        const CycleResult fr = run_cycle(protocol(0.0, n, 0.15, 0.1, 2.0, 1.0, 40));
        c.require(fr.regime == Regime::Refrigerator,
                  "N=" + std::to_string(n) + " T_c<T_h<2T_c not a refrigerator");
        c.require(std::abs(fr.cop - 1.0) < 1e-10,
                  "N=" + std::to_string(n) + " cop=" + fmt(fr.cop) + " != 1");
    }
    return c;
}

// C2: N=1 energies (both solvers) vs an independent Rabi diagonalization.
Check criterion2() {
    Check c;
    const int n_levels = 20;
    for (double lambda : {0.1, 0.5, 1.0, 2.0}) {
        ModelParams p{.omega0 = 1.0, .delta = 1.0, .lambda = lambda,
                      .n_qubits = 1, .n_tr = 120};
        // 2x2 sigma-x/sigma-z Rabi model with a generous independent cutoff
        const int pad = 260;
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * (pad + 1), 2 * (pad + 1));
        for (int n = 0; n <= pad; ++n)
            for (int s = 0; s <= 1; ++s) {
                const int r = n * 2 + s;
                h(r, r) = 1.0 * n + 1.0 * (s - 0.5);
                // lambda (a + a^dag) sigma_x, sigma_x flips s
                const int s2 = 1 - s;
                if (n + 1 <= pad) h(n * 2 + s, (n + 1) * 2 + s2) += lambda * std::sqrt(n + 1.0);
                if (n - 1 >= 0) h(n * 2 + s, (n - 1) * 2 + s2) += lambda * std::sqrt(double(n));
            }
        h = 0.5 * (h + Eigen::MatrixXd(h.transpose()));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);

        DiagOptions opts;
        opts.compute_vectors = false;
        const Eigen::VectorXd bare = diagonalize_bare(p, opts).energies;
        const Eigen::VectorXd ecs = ecs_energies(p);
        for (int k = 0; k < n_levels; ++k) {
            c.require(rel_err(bare(k), es.eigenvalues()(k)) < 1e-10,
                      "bare level " + std::to_string(k) + " at lambda=" + fmt(lambda) +
                          ": " + fmt(bare(k)) + " vs " + fmt(es.eigenvalues()(k)));
            c.require(rel_err(ecs(k), es.eigenvalues()(k)) < 1e-10,
                      "ecs level " + std::to_string(k) + " at lambda=" + fmt(lambda) +
                          ": " + fmt(ecs(k)) + " vs " + fmt(es.eigenvalues()(k)));
        }
    }
    return c;
}

// C3: ECS vs bare route, lowest 30 levels, relative 1e-6.
Check criterion3() {
    Check c;
    for (int n : {2, 4, 8}) {
        for (double lambda : {0.1, 0.5, 1.0, 2.0, 3.0}) {
            ModelParams p{.omega0 = 1.0, .delta = 1.0, .lambda = lambda,
                          .n_qubits = n, .n_tr = 80};
            const Eigen::VectorXd ecs = ecs_energies(p);
            ModelParams pb = p;
            pb.n_tr = converged_bare_cutoff(p, 30);
            DiagOptions opts;
            opts.compute_vectors = false;
            const Eigen::VectorXd bare = diagonalize_bare(pb, opts).energies;
            double worst = 0.0;
            for (int k = 0; k < 30; ++k) worst = std::max(worst, rel_err(ecs(k), bare(k)));
            c.require(worst < 1e-6, "N=" + std::to_string(n) + " lambda=" + fmt(lambda) +
                                        " worst rel err " + fmt(worst));
        }
    }
    return c;
}

// C4: N_tr = 50 -> 60 moves the lowest 30 excited levels by < 1e-5 relative.
Check criterion4() {
    Check c;
    for (double lambda : {0.5, 1.5, 3.0}) {
        ModelParams p50{.omega0 = 1.0, .delta = 1.0, .lambda = lambda,
                        .n_qubits = 8, .n_tr = 50};
        ModelParams p60 = p50;
        p60.n_tr = 60;
        const Eigen::VectorXd e50 = ecs_energies(p50);
        const Eigen::VectorXd e60 = ecs_energies(p60);
        double worst = 0.0;
        for (int k = 1; k <= 30; ++k) worst = std::max(worst, rel_err(e50(k), e60(k)));
        c.require(worst < 1e-5,
                  "lambda=" + fmt(lambda) + " worst rel change " + fmt(worst));
    }
    return c;
}

// C5: first law to 1e-12 and Carnot bounds over the 40x40 phase-map grid.
Check criterion5() {
    Check c;
    const SweepSpec spec = fig2a_spec();
    const PhaseGrid grid = run_sweep(spec);
    c.require(grid.complete, "grid has failed cells");
    int checked = 0;
    for (const auto& cell : grid.cells) {
        if (cell.failed) continue;
        ++checked;
        const double t_hot = cell.axis_values[1], t_cold = spec.proto.t_cold;
        c.require(std::abs(cell.work - (cell.q_hot + cell.q_cold)) < 1e-12,
                  "first-law violation at lambda=" + fmt(cell.axis_values[0]) +
                      " t_hot=" + fmt(t_hot));
        if (cell.eta)
            c.require(*cell.eta <= 1.0 - t_cold / t_hot + 1e-12,
                      "eta above Carnot at lambda=" + fmt(cell.axis_values[0]) +
                          " t_hot=" + fmt(t_hot));
        if (cell.cop)
            c.require(*cell.cop <= t_cold / (t_hot - t_cold) + 1e-12,
                      "cop above Carnot at lambda=" + fmt(cell.axis_values[0]) +
                          " t_hot=" + fmt(t_hot));
    }
    c.require(checked == 1600, "expected 1600 cells, checked " + std::to_string(checked));
    return c;
}

// C6: regime structure of the phase map — all four regimes, exact PWC fill at
// lambda = 0.05, and the non-trivial regimes cluster around lambda_c.
Check criterion6() {
    Check c;
    const SweepSpec spec = fig2a_spec();
    const PhaseGrid grid = run_sweep(spec);
    c.require(grid.complete, "grid has failed cells");
    int n_eng = 0, n_ref = 0, n_heat = 0, n_acc = 0;
    std::vector<double> nontrivial_lambdas;  // heater + accelerator couplings
    for (const auto& cell : grid.cells) {
        if (cell.regime == "engine") ++n_eng;
        else if (cell.regime == "refrigerator") ++n_ref;
        else if (cell.regime == "heater") { ++n_heat; nontrivial_lambdas.push_back(cell.axis_values[0]); }
        else if (cell.regime == "accelerator") { ++n_acc; nontrivial_lambdas.push_back(cell.axis_values[0]); }
    }
    c.require(n_eng > 0 && n_ref > 0 && n_heat > 0 && n_acc > 0,
              "regime census E/R/H/A = " + std::to_string(n_eng) + "/" +
                  std::to_string(n_ref) + "/" + std::to_string(n_heat) + "/" +
                  std::to_string(n_acc));

    // heater/accelerator cells appear only around the critical coupling, never
    // in the weak-coupling column
    for (double l : nontrivial_lambdas)
        c.require(l > 0.2, "heater/accelerator at weak coupling lambda=" + fmt(l));
    bool near_critical = false;
    for (double l : nontrivial_lambdas)
        if (l > 0.4 && l < 1.6) near_critical = true;
    c.require(near_critical, "no heater/accelerator near lambda_c");

    // dedicated lambda = 0.05 column: Engine exactly iff T_h > 0.2
    SweepSpec col = spec;
    col.axes = {Axis{.name = "lambda", .min = 0.05, .max = 0.05, .count = 1},
                Axis{.name = "t_hot", .min = 0.1475, .max = 2.0, .count = 40}};
    const PhaseGrid gcol = run_sweep(col);
    const double pwc = pwc_threshold(2.0, 1.0, 0.1);  // = 0.2
    for (const auto& cell : gcol.cells) {
        const double t_hot = cell.axis_values[1];
        const bool is_engine = cell.regime == "engine";
        c.require(is_engine == (t_hot > pwc),
                  "lambda=0.05 t_hot=" + fmt(t_hot) + " regime=" + cell.regime);
    }
    return c;
}

// C7: deep-strong efficiency plateau at eta = 0.5.
Check criterion7() {
    Check c;
    const CycleResult r = run_cycle(protocol(3.0, 8, 0.5, 0.1, 2.0, 1.0, 60));
    c.require(r.regime == Regime::Engine, "deep-strong cycle is " + to_string(r.regime));
    c.require(std::abs(r.eta - 0.5) < 0.02, "eta(lambda=3) = " + fmt(r.eta));
    return c;
}

// C8: rate-equation null space equals the Gibbs distribution.
Check criterion8() {
    Check c;
    for (int n : {2, 8}) {
        for (double lambda : {0.5, 1.5}) {
            ModelParams p{.omega0 = 1.0, .delta = 1.0, .lambda = lambda,
                          .n_qubits = n, .n_tr = 40};
            const Spectrum s = diagonalize_bare(p);
            for (double t : {0.1, 0.5, 2.0}) {
                BathParams bath{.alpha = 0.01, .omega_co = 10.0, .temperature = t};
                const ThermalState rate_st = steady_state_rate_equation(s, bath);
                const ThermalState gibbs_st = gibbs_state(s, t);
                const double worst =
                    (rate_st.populations - gibbs_st.populations).cwiseAbs().maxCoeff();
                c.require(worst < 1e-8, "N=" + std::to_string(n) + " lambda=" +
                                            fmt(lambda) + " T=" + fmt(t) +
                                            " max dev " + fmt(worst));
            }
        }
    }
    return c;
}

// C9: large-N first excitation gap vs the Holstein-Primakoff polariton branch.
Check criterion9() {
    Check c;
    ModelParams p{.omega0 = 1.0, .delta = 1.0, .lambda = 0.4, .n_qubits = 64, .n_tr = 30};
    const Eigen::VectorXd e = ecs_energies(p);
    const double gap = e(1) - e(0);
    const HpLimitSpectrum hp = hp_normal_spectrum(p);
    c.require(!hp.clamped, "HP branch clamped below lambda_c");
    const double rel = std::abs(gap - hp.eps_minus) / hp.eps_minus;
    c.require(rel < 0.05, "gap " + fmt(gap) + " vs eps_- " + fmt(hp.eps_minus) +
                              " (rel " + fmt(rel) + ")");
    return c;
}

// C10: correlation sanity — thermal g2, G2 -> g2 limit, and dual-route
// negativity at strong coupling.
Check criterion10() {
    Check c;
    {
        ModelParams p{.omega0 = 1.0, .delta = 0.777, .lambda = 0.0,
                      .n_qubits = 2, .n_tr = 60};
        const Spectrum s = diagonalize_bare(p);
        const Eigen::MatrixXd rho = thermal_density_matrix(s, gibbs_state(s, 0.5));
        const auto g2 = g2_conventional(rho, p.n_qubits);
        c.require(g2 && std::abs(*g2 - 2.0) < 1e-6,
                  "thermal g2 = " + (g2 ? fmt(*g2) : std::string("undefined")));
        c.require(negativity(rho, p.n_qubits) < 1e-12,
                  "product-state negativity " + fmt(negativity(rho, p.n_qubits)));
    }
    {
        ModelParams p{.omega0 = 1.0, .delta = 0.777, .lambda = 0.01,
                      .n_qubits = 2, .n_tr = 40};
        const Spectrum s = diagonalize_bare(p);
        const Eigen::MatrixXd rho = thermal_density_matrix(s, gibbs_state(s, 0.5));
        const auto g2 = g2_conventional(rho, p.n_qubits);
        const auto g2g = g2_generalized(s, rho);
        c.require(bool(g2) && bool(g2g), "vacuum-dominated at lambda=0.01");
        if (g2 && g2g)
            c.require(std::abs(*g2g - *g2) / *g2 < 0.01,
                      "G2 " + fmt(*g2g) + " vs g2 " + fmt(*g2));
    }
    {
        ModelParams p{.omega0 = 1.0, .delta = 1.0, .lambda = 1.0, .n_qubits = 2,
                      .n_tr = 24};
        const Spectrum s = diagonalize_bare(p);
        const Eigen::MatrixXd rho = thermal_density_matrix(s, gibbs_state(s, 0.1));
        const double n_eig = negativity(rho, p.n_qubits);
        const double n_svd = negativity_via_svd(rho, p.n_qubits);
        c.require(n_eig > 0.0, "strong-coupling negativity not positive");
        c.require(std::abs(n_eig - n_svd) < 1e-8,
                  "eig " + fmt(n_eig) + " vs svd " + fmt(n_svd));
    }
    return c;
}

// C11: negativity degrades monotonically with temperature.
Check criterion11() {
    Check c;
    ModelParams p{.omega0 = 1.0, .delta = 1.0, .lambda = 1.0, .n_qubits = 8, .n_tr = 45};
    const Spectrum s = diagonalize_bare(p);
    double prev = -1.0;
    bool first = true;
    for (double t : {0.1, 0.4, 2.0, 5.0}) {
        const double neg =
            negativity(thermal_density_matrix(s, gibbs_state(s, t)), p.n_qubits);
        if (!first)
            c.require(neg <= prev + 1e-10,
                      "negativity rose from " + fmt(prev) + " to " + fmt(neg) +
                          " at T=" + fmt(t));
        prev = neg;
        first = false;
    }
    return c;
}

const std::vector<std::pair<std::string, std::function<Check()>>>& criteria() {
    static const std::vector<std::pair<std::string, std::function<Check()>>> all = {
        {"uncoupled Otto analytics (eta=1/2, COP=1)", criterion1},
        {"N=1 reduction vs independent Rabi solve", criterion2},
        {"displaced-basis vs bare-basis energies (30 levels, 1e-6)", criterion3},
        {"truncation stability N_tr 50->60 (1e-5)", criterion4},
        {"first law + Carnot bounds on the 40x40 phase grid", criterion5},
        {"phase-map regime structure and exact PWC boundary", criterion6},
        {"deep-strong efficiency plateau eta(lambda=3) = 0.5 +- 0.02", criterion7},
        {"rate-equation steady state equals Gibbs (1e-8)", criterion8},
        {"large-N excitation gap vs polariton branch (5%)", criterion9},
        {"correlation sanity: g2, G2 limit, dual-route negativity", criterion10},
        {"negativity non-increasing in temperature", criterion11},
    };
    return all;
}

int run_one(int k) {
    const auto& [label, fn] = criteria()[size_t(k - 1)];
    Check c;
    try {
        c = fn();
    } catch (const std::exception& e) {
        c.ok = false;
        c.msg << "exception: " << e.what();
    }
    std::printf("[%s] C%d: %s%s%s\n", c.ok ? "PASS" : "FAIL", k, label.c_str(),
                c.ok ? "" : " -- ", c.ok ? "" : c.msg.str().c_str());
    std::fflush(stdout);
    return c.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) {
        const int k = std::atoi(argv[1]);
        if (k < 1 || k > int(criteria().size())) {
            std::fprintf(stderr, "criterion number must be 1..%d\n",
                         int(criteria().size()));
            return 2;
        }
        return run_one(k);
    }
    int failures = 0;
    for (int k = 1; k <= int(criteria().size()); ++k) failures += run_one(k);
    return failures;
}
