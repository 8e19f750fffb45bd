// ecs.hpp — extended-coherent-state diagonalization of the Dicke model.
//
// Works in the pi/2-rotated frame where the coupling is diagonal in J_z; each
// spin projection m carries its own displaced Fock ladder A_m = a + g_m with
// g_m = 2 lambda m / (omega0 sqrt(N)). Truncating at N_tr displaced quanta
// converges far faster in lambda than the bare Fock cutoff.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dicke/errors.hpp"
#include "dicke/model.hpp"
#include "dicke/spectral.hpp"

namespace dicke {

// Overlap table O(l, k) = <l| D(d) |k>, D(d) = exp(d (a^dag - a)), real d.
//
// The generator G = d (a^dag - a) is antisymmetric tridiagonal and unitarily
// equivalent, via U = diag(i^n), to i S with S real symmetric tridiagonal
// (S(n, n+1) = -d sqrt(n+1)): G = U (i S) U^dag. Hence
//   D(d)(l, k) = Re[ i^(l-k) (C + i Z)(l, k) ],  C = V cos(Theta) V^T,
//   Z = V sin(Theta) V^T,  S = V Theta V^T,
// i.e. C, -Z, -C, Z for (l-k) mod 4 = 0, 1, 2, 3. Orthogonal transforms
// only — no cancelling factorial sums and no unstable recurrences. The solve
// is padded so truncating G does not contaminate the requested block.
inline Eigen::MatrixXd displaced_fock_overlap_matrix(int n_rows, int n_cols, double d) {
    Eigen::MatrixXd o(n_rows, n_cols);
    if (d == 0.0) {
        o.setZero();
        for (int i = 0; i < std::min(n_rows, n_cols); ++i) o(i, i) = 1.0;
        return o;
    }
    const int top = std::max(n_rows, n_cols);
    const double amp = std::sqrt(double(top)) + std::abs(d) + 8.0;
    const int pad = std::max(top, int(std::ceil(amp * amp)) + 8);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(pad, pad);
    for (int n = 0; n + 1 < pad; ++n) {
        s(n, n + 1) = -d * std::sqrt(double(n + 1));
        s(n + 1, n) = s(n, n + 1);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    if (es.info() != Eigen::Success)
        throw NumericalError("displacement generator eigensolve failed");
    const Eigen::VectorXd theta = es.eigenvalues();
    const Eigen::MatrixXd vrows = es.eigenvectors().topRows(n_rows);
    const Eigen::MatrixXd c =
        vrows * theta.array().cos().matrix().asDiagonal() *
        es.eigenvectors().topRows(n_cols).transpose();
    const Eigen::MatrixXd z =
        vrows * theta.array().sin().matrix().asDiagonal() *
        es.eigenvectors().topRows(n_cols).transpose();
    for (int l = 0; l < n_rows; ++l)
        for (int k = 0; k < n_cols; ++k) {
            switch (((l - k) % 4 + 4) % 4) {
                case 0: o(l, k) = c(l, k); break;
                case 1: o(l, k) = -z(l, k); break;
                case 2: o(l, k) = -c(l, k); break;
                default: o(l, k) = z(l, k); break;
            }
        }
    return o;
}

// <l| D(d) |k> for real displacement d.
inline double displaced_fock_overlap(int l, int k, double d) {
    if (l < 0 || k < 0) throw std::invalid_argument("negative Fock index");
    return displaced_fock_overlap_matrix(l + 1, k + 1, d)(l, k);
}

struct EcsOptions {
    bool compute_vectors = true;
    // Bare Fock cutoff for the back-transformed eigenvectors; 0 = auto.
    int bare_cutoff = 0;
    int dimension_cap = kDefaultDimensionCap;
    double ortho_tol = 1e-8;
};

namespace detail {

// Rotated-frame ECS Hamiltonian in the basis (spin index s, displaced quanta l),
// row s*(N_tr+1) + l. Real symmetric.
inline Eigen::MatrixXd build_ecs_hamiltonian(const ModelParams& p) {
    const int nb = p.n_tr + 1;
    const int dim = (p.n_qubits + 1) * nb;
    const double j = p.j();
    const double step = 2.0 * p.lambda / (p.omega0 * std::sqrt(double(p.n_qubits)));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    // Adjacent displaced ladders differ by g_{m+1} - g_m = step;
    // <l|_{A_m} |k>_{A_{m+1}} = <l| D(-step) |k>.
    const Eigen::MatrixXd up = displaced_fock_overlap_matrix(nb, nb, -step);
    for (int s = 0; s <= p.n_qubits; ++s) {
        const double m = s - j;
        const double gm = step * m;
        for (int l = 0; l < nb; ++l)
            h(s * nb + l, s * nb + l) = p.omega0 * (l - gm * gm);
        if (s < p.n_qubits) {
            const double jp = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
            for (int l = 0; l < nb; ++l)
                for (int k = 0; k < nb; ++k) {
                    const double v = -0.5 * p.delta * jp * up(l, k);
                    h(s * nb + l, (s + 1) * nb + k) = v;
                    h((s + 1) * nb + k, s * nb + l) = v;
                }
        }
    }
    return h;
}

// exp(-i (pi/2) J_y) on the spin space; the Wigner-d matrix is real.
inline Eigen::MatrixXd spin_rotation_back(int n_qubits) {
    const int d = n_qubits + 1;
    Eigen::MatrixXcd jy = Eigen::MatrixXcd::Zero(d, d);
    const Eigen::MatrixXd jyi = ops::j_y_imag_part(n_qubits);  // J_y = -i * jyi
    jy = std::complex<double>(0.0, -1.0) * jyi;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(jy);
    Eigen::VectorXcd phases(d);
    for (int i = 0; i < d; ++i)
        phases(i) = std::exp(std::complex<double>(0.0, -0.5 * M_PI * es.eigenvalues()(i)));
    const Eigen::MatrixXcd r =
        es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    if (r.imag().cwiseAbs().maxCoeff() > 1e-12)
        throw NumericalError("spin rotation matrix is not real");
    return r.real();
}

} // namespace detail

// Bare Fock cutoff needed to expand displaced ladders up to N_tr quanta at
// the extreme displacement g_max without visible tail loss.
inline int ecs_auto_bare_cutoff(const ModelParams& p) {
    const double g_max =
        2.0 * p.lambda * p.j() / (p.omega0 * std::sqrt(double(p.n_qubits)));
    const double amp = g_max + std::sqrt(double(p.n_tr)) + 5.0;
    return std::max(p.n_tr, int(std::ceil(amp * amp)) + 5);
}

inline Spectrum diagonalize_ecs(const ModelParams& p, const EcsOptions& opts = {}) {
    validate(p);
    if (p.dimension() > opts.dimension_cap)
        throw ConfigError("Hilbert dimension " + std::to_string(p.dimension()) +
                          " exceeds cap " + std::to_string(opts.dimension_cap));
    const int nb = p.n_tr + 1;
    const Eigen::MatrixXd h = detail::build_ecs_hamiltonian(p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.compute(h, opts.compute_vectors ? Eigen::ComputeEigenvectors
                                           : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("ECS eigensolver failed to converge on dimension " +
                             std::to_string(h.rows()));

    Spectrum s;
    s.energies = solver.eigenvalues();
    s.n_qubits = p.n_qubits;
    s.n_tr = p.n_tr;
    s.method = "ecs";
    detail::flag_near_degeneracies(s);
    if (!opts.compute_vectors) return s;

    // Back-transformation to the bare product basis:
    //   1. expand each displaced ladder |k>_{A_m} = D(-g_m)|k> in bare Fock
    //      states (possibly enlarging the Fock cutoff to hold the tails),
    //   2. undo the pi/2 rotation about J_y.
    const int m_out = opts.bare_cutoff > 0 ? opts.bare_cutoff : ecs_auto_bare_cutoff(p);
    const int nf = m_out + 1;
    const double step = 2.0 * p.lambda / (p.omega0 * std::sqrt(double(p.n_qubits)));
    const int dim = (p.n_qubits + 1) * nb;
    // Rotated-frame vectors in the bare Fock basis, layout (n, s) -> n*(N+1)+s.
    Eigen::MatrixXd rotated = Eigen::MatrixXd::Zero(nf * (p.n_qubits + 1), dim);
    for (int s = 0; s <= p.n_qubits; ++s) {
        const double gm = step * (s - p.j());
        const Eigen::MatrixXd expand = displaced_fock_overlap_matrix(nf, nb, -gm);
        // coefficients c_{m,k} live in rows s*nb + k of the ECS eigenvectors
        const Eigen::MatrixXd block =
            expand * solver.eigenvectors().middleRows(s * nb, nb);
        for (int n = 0; n < nf; ++n)
            rotated.row(n * (p.n_qubits + 1) + s) = block.row(n);
    }
    const Eigen::MatrixXd rot = detail::spin_rotation_back(p.n_qubits);
    s.eigenvectors = ops::spin_op(rot, m_out).eval() * rotated;
    s.n_tr = m_out;

    const Eigen::MatrixXd gram = s.eigenvectors.transpose() * s.eigenvectors;
    const double ortho_err =
        (gram - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (ortho_err > opts.ortho_tol)
        throw NumericalError(
            "ECS back-transformation lost orthonormality (max deviation " +
            std::to_string(ortho_err) + "); increase bare_cutoff");
    detail::canonicalize_vectors(s);
    return s;
}

// Energies-only convenience for cycle and sweep evaluations.
inline Eigen::VectorXd ecs_energies(const ModelParams& p,
                                    int dimension_cap = kDefaultDimensionCap) {
    EcsOptions opts;
    opts.compute_vectors = false;
    opts.dimension_cap = dimension_cap;
    return diagonalize_ecs(p, opts).energies;
}

} // namespace dicke
