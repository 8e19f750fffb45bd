// spectral.hpp — dense diagonalization of the Dicke Hamiltonian (bare route).

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dicke/errors.hpp"
#include "dicke/model.hpp"

namespace dicke {

// Eigenpairs of one Hamiltonian instance in the bare product basis.
struct Spectrum {
    Eigen::VectorXd energies;        // ascending
    Eigen::MatrixXd eigenvectors;    // columns; empty if not requested
    int n_qubits = 0;
    int n_tr = 0;                    // Fock cutoff of the eigenvector basis
    std::string method;              // "bare" | "ecs"
    // Indices k where E_{k+1} - E_k < 1e-8 (level pairing across strokes is
    // by ascending index; near-degeneracies are flagged, not resolved).
    std::vector<int> near_degenerate;

    bool has_vectors() const { return eigenvectors.size() > 0; }
    int dimension() const { return int(energies.size()); }
};

struct DiagOptions {
    bool compute_vectors = true;
    int dimension_cap = kDefaultDimensionCap;
    bool validate = true;  // orthonormality + residual checks
};

namespace detail {

inline void flag_near_degeneracies(Spectrum& s, double gap_tol = 1e-8) {
    s.near_degenerate.clear();
    for (int k = 0; k + 1 < s.energies.size(); ++k)
        if (s.energies(k + 1) - s.energies(k) < gap_tol)
            s.near_degenerate.push_back(k);
}

// Deterministic eigenvector gauge: first entry of magnitude > 1e-12 is made
// positive; exactly degenerate levels are ordered lexicographically.
inline void canonicalize_vectors(Spectrum& s) {
    if (!s.has_vectors()) return;
    for (int k = 0; k < s.eigenvectors.cols(); ++k) {
        for (int i = 0; i < s.eigenvectors.rows(); ++i) {
            const double v = s.eigenvectors(i, k);
            if (std::abs(v) > 1e-12) {
                if (v < 0.0) s.eigenvectors.col(k) *= -1.0;
                break;
            }
        }
    }
    for (int k = 0; k + 1 < s.eigenvectors.cols(); ++k) {
        if (s.energies(k + 1) != s.energies(k)) continue;
        const auto a = s.eigenvectors.col(k);
        const auto b = s.eigenvectors.col(k + 1);
        for (int i = 0; i < a.size(); ++i) {
            if (a(i) == b(i)) continue;
            if (a(i) > b(i)) s.eigenvectors.col(k).swap(s.eigenvectors.col(k + 1));
            break;
        }
    }
}

inline void validate_spectrum(const Spectrum& s, const Eigen::MatrixXd& h) {
    for (int k = 0; k + 1 < s.energies.size(); ++k)
        if (s.energies(k) > s.energies(k + 1))
            throw NumericalError("eigenvalues not sorted ascending");
    if (!s.has_vectors()) return;
    const Eigen::MatrixXd& v = s.eigenvectors;
    const double ortho_err =
        (v.transpose() * v - Eigen::MatrixXd::Identity(v.cols(), v.cols()))
            .cwiseAbs()
            .maxCoeff();
    if (ortho_err > 1e-10)
        throw NumericalError("eigenvector orthonormality loss " +
                             std::to_string(ortho_err));
    const double scale = std::max(s.energies.cwiseAbs().maxCoeff(), 1.0);
    const Eigen::MatrixXd resid = h * v - v * s.energies.asDiagonal();
    double worst = 0.0;
    for (int k = 0; k < v.cols(); ++k)
        worst = std::max(worst, resid.col(k).norm());
    if (worst > 1e-8 * scale)
        throw NumericalError("eigenpair residual " + std::to_string(worst) +
                             " exceeds tolerance at spectral scale " +
                             std::to_string(scale));
}

} // namespace detail

inline Spectrum diagonalize_matrix(const Eigen::MatrixXd& h, const ModelParams& p,
                                   const std::string& method,
                                   const DiagOptions& opts = {}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.compute(h, opts.compute_vectors ? Eigen::ComputeEigenvectors
                                           : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigensolver failed to converge on dimension " +
                             std::to_string(h.rows()) + " (Eigen info " +
                             std::to_string(int(solver.info())) + ")");
    Spectrum s;
    s.energies = solver.eigenvalues();
    if (opts.compute_vectors) s.eigenvectors = solver.eigenvectors();
    s.n_qubits = p.n_qubits;
    s.n_tr = int(h.rows()) / (p.n_qubits + 1) - 1;
    s.method = method;
    detail::canonicalize_vectors(s);
    detail::flag_near_degeneracies(s);
    if (opts.validate) detail::validate_spectrum(s, h);
    return s;
}

inline Spectrum diagonalize_bare(const ModelParams& p, const DiagOptions& opts = {}) {
    return diagonalize_matrix(build_hamiltonian_bare(p, opts.dimension_cap), p,
                              "bare", opts);
}

// Fock cutoff large enough for the bare route to hold the displaced ground
// manifold at coupling p.lambda plus ~n_levels of excitations on top.
inline int converged_bare_cutoff(const ModelParams& p, int n_levels = 30) {
    const double g_max =
        2.0 * p.lambda * p.j() / (p.omega0 * std::sqrt(double(p.n_qubits)));
    const double amp = g_max + std::sqrt(double(n_levels)) + 4.0;
    return std::max(p.n_tr, int(std::ceil(amp * amp)) + 10);
}

// Auto-converge mode: double n_tr until the lowest `n_levels` energies move
// by less than rel_tol relative.
inline ModelParams auto_converge_ntr(const ModelParams& p, int n_levels = 30,
                                     double rel_tol = 1e-5,
                                     int dimension_cap = kDefaultDimensionCap) {
    ModelParams q = p;
    DiagOptions opts;
    opts.compute_vectors = false;
    opts.dimension_cap = dimension_cap;
    Eigen::VectorXd prev = diagonalize_bare(q, opts).energies;
    while (true) {
        ModelParams next = q;
        next.n_tr = 2 * q.n_tr;
        if (next.dimension() > dimension_cap) return q;
        const Eigen::VectorXd cur = diagonalize_bare(next, opts).energies;
        const int m = std::min({n_levels, int(prev.size()), int(cur.size())});
        double worst = 0.0;
        for (int k = 0; k < m; ++k)
            worst = std::max(worst, std::abs(cur(k) - prev(k)) /
                                        std::max({std::abs(cur(k)), std::abs(prev(k)), 1.0}));
        q = next;
        prev = cur;
        if (worst < rel_tol) return q;
    }
}

} // namespace dicke
