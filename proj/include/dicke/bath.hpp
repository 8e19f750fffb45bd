// bath.hpp — dressed-master-equation rates and thermal steady states.

#pragma once

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dicke/errors.hpp"
#include "dicke/model.hpp"
#include "dicke/spectral.hpp"

namespace dicke {

// Ohmic reservoir shared by the qubit and cavity channels:
// gamma_u(D) = pi alpha D exp(-|D|/omega_co).
struct BathParams {
    double alpha = 0.01;
    double omega_co = 10.0;
    double temperature = 1.0;
};

inline void validate(const BathParams& b) {
    if (!(b.alpha > 0.0)) throw ConfigError("bath alpha must be > 0");
    if (!(b.omega_co > 0.0)) throw ConfigError("bath omega_co must be > 0");
    if (b.temperature < 0.0) throw ConfigError("bath temperature must be >= 0");
}

// Steady-state populations over eigenstates at one bath temperature.
struct ThermalState {
    Eigen::VectorXd populations;
    double temperature = 0.0;
    const Spectrum* spectrum = nullptr;  // non-owning
    bool gibbs_fallback = false;         // rate graph was disconnected
    bool degenerate_ground = false;      // T=0 with a degenerate ground manifold
};

inline double bose_occupation(double gap, double temperature) {
    if (temperature <= 0.0) return 0.0;
    return 1.0 / std::expm1(gap / temperature);
}

inline double ohmic_rate(double gap, const BathParams& b) {
    return M_PI * b.alpha * gap * std::exp(-std::abs(gap) / b.omega_co);
}

// rates(j, k) = transition rate k -> j, summed over the qubit and cavity
// channels; zero-gap pairs are skipped (gamma(0) = 0 for Ohmic).
inline Eigen::MatrixXd transition_rates(const Spectrum& spec, const BathParams& bath) {
    validate(bath);
    if (!spec.has_vectors())
        throw NumericalError("transition_rates requires bare-basis eigenvectors");
    const int dim = spec.dimension();
    const Eigen::MatrixXd& v = spec.eigenvectors;

    const Eigen::MatrixXd jpm =
        ops::j_plus(spec.n_qubits) + ops::j_minus(spec.n_qubits);
    const Eigen::MatrixXd a = ops::boson_annihilate(spec.n_tr);
    const Eigen::MatrixXd sq =
        v.transpose() *
        (ops::spin_op(jpm, spec.n_tr) / std::sqrt(double(spec.n_qubits))) * v;
    const Eigen::MatrixXd sc =
        v.transpose() *
        ops::field_op(Eigen::MatrixXd(a + Eigen::MatrixXd(a.transpose())), spec.n_qubits) * v;

    Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(dim, dim);
    for (int j = 1; j < dim; ++j) {
        for (int k = 0; k < j; ++k) {
            const double gap = spec.energies(j) - spec.energies(k);
            if (gap < 1e-12) continue;
            const double gamma =
                ohmic_rate(gap, bath) * (sq(j, k) * sq(j, k) + sc(j, k) * sc(j, k));
            const double n = bose_occupation(gap, bath.temperature);
            rates(k, j) = gamma * (1.0 + n);  // downward j -> k
            rates(j, k) = gamma * n;          // upward   k -> j
        }
    }
    return rates;
}

namespace detail {

inline bool rate_graph_connected(const Eigen::MatrixXd& rates, double tol = 1e-300) {
    const int dim = int(rates.rows());
    std::vector<int> parent(dim);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int j = 0; j < dim; ++j)
        for (int k = 0; k < j; ++k)
            if (rates(k, j) > tol || rates(j, k) > tol) parent[find(j)] = find(k);
    for (int i = 1; i < dim; ++i)
        if (find(i) != find(0)) return false;
    return true;
}

} // namespace detail

// Gibbs distribution over the spectrum; T=0 populates the (possibly
// degenerate) ground manifold uniformly.
inline ThermalState gibbs_state(const Spectrum& spec, double temperature,
                                double degeneracy_tol = 1e-12) {
    if (temperature < 0.0) throw ConfigError("temperature must be >= 0");
    const int dim = spec.dimension();
    ThermalState state;
    state.temperature = temperature;
    state.spectrum = &spec;
    state.populations = Eigen::VectorXd::Zero(dim);
    if (temperature == 0.0) {
        int n_ground = 1;
        while (n_ground < dim &&
               spec.energies(n_ground) - spec.energies(0) < degeneracy_tol)
            ++n_ground;
        for (int k = 0; k < n_ground; ++k) state.populations(k) = 1.0 / n_ground;
        state.degenerate_ground = n_ground > 1;
        return state;
    }
    const double e0 = spec.energies(0);
    for (int k = 0; k < dim; ++k)
        state.populations(k) = std::exp(-(spec.energies(k) - e0) / temperature);
    state.populations /= state.populations.sum();
    return state;
}

// Null-space solve of the Pauli rate equation dP/dt = M P; used to validate
// the Gibbs fast path rather than replace it.
inline ThermalState steady_state_rate_equation(const Spectrum& spec,
                                               const BathParams& bath) {
    const Eigen::MatrixXd rates = transition_rates(spec, bath);
    const int dim = spec.dimension();
    if (bath.temperature == 0.0) return gibbs_state(spec, 0.0);
    if (!detail::rate_graph_connected(rates)) {
        ThermalState state = gibbs_state(spec, bath.temperature);
        state.gibbs_fallback = true;
        return state;
    }
    // Detailed balance (gamma_up / gamma_down = exp(-gap/T) by construction)
    // fixes the stationary ratio p_k / p_j = R(k<-j) / R(j<-k) on every edge,
    // with path-independent products, so the steady state follows from the
    // log-rate ratios along any spanning tree. A dense null-space solve is
    // hopeless here: rates span exp(-gap/T) decades and near-degenerate slow
    // modes (e.g. activation between superradiant parity wells) collapse the
    // numerical null space to two dimensions at low temperature.
    Eigen::VectorXd logp = Eigen::VectorXd::Constant(dim, 0.0);
    std::vector<char> seen(static_cast<std::size_t>(dim), 0);
    std::vector<int> queue;
    queue.reserve(static_cast<std::size_t>(dim));
    queue.push_back(0);
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int j = queue[head];
        for (int k = 0; k < dim; ++k) {
            if (seen[static_cast<std::size_t>(k)]) continue;
            if (rates(k, j) <= 0.0 || rates(j, k) <= 0.0) continue;
            logp(k) = logp(j) + std::log(rates(k, j)) - std::log(rates(j, k));
            seen[static_cast<std::size_t>(k)] = 1;
            queue.push_back(k);
        }
    }
    if (queue.size() != static_cast<std::size_t>(dim)) {
        // Underflowed up-rates can orphan high-lying states even though the
        // unweighted rate graph is connected.
        ThermalState state = gibbs_state(spec, bath.temperature);
        state.gibbs_fallback = true;
        return state;
    }
    const double logmax = logp.maxCoeff();
    Eigen::VectorXd p = (logp.array() - logmax).exp();
    if (!p.allFinite())
        throw NumericalError("rate-equation null-space solve produced non-finite populations");
    p /= p.sum();
    ThermalState state;
    state.populations = p;
    state.temperature = bath.temperature;
    state.spectrum = &spec;
    return state;
}

// Default steady state: the dressed master equation satisfies detailed
// balance, so the unique steady state is the Gibbs distribution.
inline ThermalState steady_state(const Spectrum& spec, const BathParams& bath) {
    validate(bath);
    return gibbs_state(spec, bath.temperature);
}

} // namespace dicke
