// cycle.hpp — four-stroke quantum Otto cycle on the Dicke working substance.

#pragma once

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "dicke/bath.hpp"
#include "dicke/ecs.hpp"
#include "dicke/errors.hpp"
#include "dicke/model.hpp"

namespace dicke {

enum class Regime { Engine, Refrigerator, Heater, Accelerator, Degenerate };

inline std::string to_string(Regime r) {
    switch (r) {
        case Regime::Engine: return "engine";
        case Regime::Refrigerator: return "refrigerator";
        case Regime::Heater: return "heater";
        case Regime::Accelerator: return "accelerator";
        case Regime::Degenerate: return "degenerate";
    }
    return "unknown";
}

struct CycleResult {
    double q_hot = 0.0;
    double q_cold = 0.0;
    double work = 0.0;  // work = q_hot + q_cold, same summation order (first law)
    Regime regime = Regime::Degenerate;
    double eta = 0.0;        // valid iff regime == Engine
    double cop = 0.0;        // valid iff regime == Refrigerator
    double carnot_eta = 0.0;
    double carnot_cop = 0.0;
};

enum class ProtocolKind { FrequencyScaling, CouplingScaling };

// Frequency-scaling semantics: lambda is held at its absolute value while
// omega0 and delta scale with omega_h/omega_c (the paper's figures keep a
// single lambda label per cycle and show lambda-dependent efficiency, which
// only happens when the dimensionless ratio lambda/omega changes across the
// stroke). FixedRatio instead scales lambda with the frequency, which makes
// the two endpoint spectra exactly proportional.
enum class CouplingMode { AbsoluteLambda, FixedRatio };

struct CycleProtocol {
    ModelParams base;  // cold-endpoint parameters (omega0, delta at omega_c scale)
    ProtocolKind kind = ProtocolKind::FrequencyScaling;
    CouplingMode coupling_mode = CouplingMode::AbsoluteLambda;
    double omega_h = 2.0;
    double omega_c = 1.0;
    double lambda_hot = 0.0;   // CouplingScaling only
    double lambda_cold = 0.0;  // CouplingScaling only
    double t_hot = 0.5;
    double t_cold = 0.1;
};

inline void validate(const CycleProtocol& proto) {
    validate(proto.base);
    // T_h == T_c is admitted and yields the Degenerate regime.
    if (!(proto.t_cold > 0.0) || !(proto.t_hot >= proto.t_cold))
        throw ConfigError("cycle requires T_h >= T_c > 0");
    if (proto.kind == ProtocolKind::FrequencyScaling &&
        (!(proto.omega_h > 0.0) || !(proto.omega_c > 0.0)))
        throw ConfigError("cycle frequencies must be > 0");
}

inline ModelParams cold_params(const CycleProtocol& proto) {
    ModelParams p = proto.base;
    if (proto.kind == ProtocolKind::CouplingScaling) p.lambda = proto.lambda_cold;
    return p;
}

inline ModelParams hot_params(const CycleProtocol& proto) {
    ModelParams p = proto.base;
    if (proto.kind == ProtocolKind::CouplingScaling) {
        p.lambda = proto.lambda_hot;
        return p;
    }
    const double r = proto.omega_h / proto.omega_c;
    p.omega0 *= r;
    p.delta *= r;
    if (proto.coupling_mode == CouplingMode::FixedRatio) p.lambda *= r;
    return p;
}

// Minimum T_h for positive work in the harmonic regime: T_h > (w_h/w_c) T_c.
inline double pwc_threshold(double omega_h, double omega_c, double t_cold) {
    if (!(omega_h >= omega_c) || !(omega_c > 0.0))
        throw ConfigError("pwc_threshold requires omega_h >= omega_c > 0");
    return (omega_h / omega_c) * t_cold;
}

inline Regime classify_regime(double q_hot, double q_cold, double work,
                              double degeneracy_threshold = 1e-12) {
    const double t = degeneracy_threshold;
    if (std::abs(work) < t && std::abs(q_hot) < t && std::abs(q_cold) < t)
        return Regime::Degenerate;
    if (work > 0.0) {
        if (q_cold > t && q_hot < -t)
            throw NumericalError("Clausius-violating sign combination (Q_h<0, Q_c>0, W>0)");
        return Regime::Engine;
    }
    if (q_cold > 0.0) return Regime::Refrigerator;
    return q_hot > 0.0 ? Regime::Accelerator : Regime::Heater;
}

// Core heat/work bookkeeping on paired ascending-index level lists.
// Q_h = sum E^h_n [P_n(T_h) - P_n(T_c)], Q_c = sum E^c_n [P_n(T_c) - P_n(T_h)],
// W = Q_h + Q_c.
inline CycleResult run_cycle_from_energies(const Eigen::VectorXd& e_hot,
                                           const Eigen::VectorXd& e_cold,
                                           double t_hot, double t_cold,
                                           double degeneracy_threshold = 1e-12,
                                           double population_floor = 1e-16) {
    if (e_hot.size() != e_cold.size())
        throw NumericalError("hot/cold Hilbert dimensions differ");
    const int dim = int(e_hot.size());

    // No temperature gradient: the cycle is degenerate by convention, with a
    // zero heat/work ledger.
    if (t_hot == t_cold) {
        CycleResult r;
        r.regime = Regime::Degenerate;
        r.carnot_eta = 0.0;
        r.carnot_cop = std::numeric_limits<double>::infinity();
        return r;
    }

    auto gibbs = [&](const Eigen::VectorXd& e, double t) {
        Eigen::VectorXd p(dim);
        const double e0 = e.minCoeff();
        for (int k = 0; k < dim; ++k) p(k) = std::exp(-(e(k) - e0) / t);
        p /= p.sum();
        return p;
    };
    const Eigen::VectorXd ph = gibbs(e_hot, t_hot);
    const Eigen::VectorXd pc = gibbs(e_cold, t_cold);

    CycleResult r;
    for (int n = 0; n < dim; ++n) {
        if (ph(n) < population_floor && pc(n) < population_floor) continue;
        const double dp = ph(n) - pc(n);
        r.q_hot += e_hot(n) * dp;
        r.q_cold += e_cold(n) * -dp;
    }
    r.work = r.q_hot + r.q_cold;
    r.regime = classify_regime(r.q_hot, r.q_cold, r.work, degeneracy_threshold);
    r.carnot_eta = 1.0 - t_cold / t_hot;
    r.carnot_cop = t_hot > t_cold
                       ? t_cold / (t_hot - t_cold)
                       : std::numeric_limits<double>::infinity();
    if (r.regime == Regime::Engine) r.eta = r.work / r.q_hot;
    if (r.regime == Regime::Refrigerator) r.cop = r.q_cold / std::abs(r.work);
    return r;
}

struct CycleOptions {
    bool use_ecs = true;  // displaced-basis energies converge at any coupling
    int dimension_cap = kDefaultDimensionCap;
    double degeneracy_threshold = 1e-12;
};

inline Eigen::VectorXd cycle_endpoint_energies(const ModelParams& p,
                                               const CycleOptions& opts) {
    if (opts.use_ecs) return ecs_energies(p, opts.dimension_cap);
    DiagOptions d;
    d.compute_vectors = false;
    d.dimension_cap = opts.dimension_cap;
    return diagonalize_bare(p, d).energies;
}

inline CycleResult run_cycle(const CycleProtocol& proto, const CycleOptions& opts = {}) {
    validate(proto);
    const Eigen::VectorXd e_hot = cycle_endpoint_energies(hot_params(proto), opts);
    const Eigen::VectorXd e_cold = cycle_endpoint_energies(cold_params(proto), opts);
    return run_cycle_from_energies(e_hot, e_cold, proto.t_hot, proto.t_cold,
                                   opts.degeneracy_threshold);
}

} // namespace dicke
