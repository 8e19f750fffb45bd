// correlations.hpp — quantumness of the thermal working substance: photon
// statistics (conventional and dressed-operator g2) and field-qubit negativity.

#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "dicke/bath.hpp"
#include "dicke/errors.hpp"
#include "dicke/model.hpp"
#include "dicke/spectral.hpp"

namespace dicke {

inline constexpr double kVacuumThreshold = 1e-8;

struct CorrelationReport {
    std::optional<double> g2_conventional;  // absent when VacuumDominated
    std::optional<double> g2_generalized;
    double negativity = 0.0;
    double mean_photon = 0.0;
    bool vacuum_dominated_conventional = false;
    bool vacuum_dominated_generalized = false;
};

// rho_ss(T) = sum_n P_n |phi_n><phi_n| in the bare product basis; states with
// P_n < pop_floor are dropped and the rest renormalized.
inline Eigen::MatrixXd thermal_density_matrix(const Spectrum& spec,
                                              const ThermalState& state,
                                              double pop_floor = 1e-12) {
    if (!spec.has_vectors())
        throw NumericalError("thermal_density_matrix requires bare-basis eigenvectors");
    const int dim = spec.dimension();
    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim, dim);
    double kept = 0.0;
    for (int n = 0; n < dim; ++n) {
        const double p = state.populations(n);
        if (p < pop_floor) continue;
        rho.noalias() += p * spec.eigenvectors.col(n) * spec.eigenvectors.col(n).transpose();
        kept += p;
    }
    if (kept <= 0.0) throw NumericalError("all populations below pop_floor");
    rho /= kept;
    const double tr_err = std::abs(rho.trace() - 1.0);
    const double herm_err = (rho - Eigen::MatrixXd(rho.transpose())).cwiseAbs().maxCoeff();
    if (tr_err > 1e-10 || herm_err > 1e-10)
        throw NumericalError("density matrix trace/Hermiticity violation");
    return rho;
}

inline double expectation(const Eigen::MatrixXd& rho, const Eigen::MatrixXd& op) {
    return (rho * op).trace();
}

// g2(0) = <a^dag a^dag a a> / <a^dag a>^2
inline std::optional<double> g2_conventional(const Eigen::MatrixXd& rho, int n_qubits,
                                             double vacuum_threshold = kVacuumThreshold) {
    const int n_tr = int(rho.rows()) / (n_qubits + 1) - 1;
    const Eigen::MatrixXd a = ops::field_op(ops::boson_annihilate(n_tr), n_qubits);
    const Eigen::MatrixXd ad = a.transpose();
    const double nbar = expectation(rho, ad * a);
    if (nbar < vacuum_threshold) return std::nullopt;
    return expectation(rho, ad * ad * a * a) / (nbar * nbar);
}

// X+ = -i sum_{k>j} Delta_kj X_jk |phi_j><phi_k| in the bare basis, with
// X_jk = <phi_j|(a^dag + a)|phi_k>. Reduces to -i omega a at weak coupling.
inline Eigen::MatrixXcd build_x_plus(const Spectrum& spec) {
    if (!spec.has_vectors())
        throw NumericalError("build_x_plus requires bare-basis eigenvectors");
    const int dim = spec.dimension();
    const Eigen::MatrixXd a = ops::boson_annihilate(spec.n_tr);
    const Eigen::MatrixXd x_bare =
        ops::field_op(Eigen::MatrixXd(a + Eigen::MatrixXd(a.transpose())), spec.n_qubits);
    const Eigen::MatrixXd x_eig =
        spec.eigenvectors.transpose() * x_bare * spec.eigenvectors;
    Eigen::MatrixXd weighted = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 1; k < dim; ++k)
        for (int j = 0; j < k; ++j)
            weighted(j, k) = (spec.energies(k) - spec.energies(j)) * x_eig(j, k);
    const Eigen::MatrixXd bare =
        spec.eigenvectors * weighted * spec.eigenvectors.transpose();
    return std::complex<double>(0.0, -1.0) * bare;
}

// G2(0) = <(X-)^2 (X+)^2> / <X- X+>^2 on the thermal state.
inline std::optional<double> g2_generalized(const Spectrum& spec,
                                            const Eigen::MatrixXd& rho,
                                            double vacuum_threshold = kVacuumThreshold) {
    const Eigen::MatrixXcd xp = build_x_plus(spec);
    const Eigen::MatrixXcd xm = xp.adjoint();
    const Eigen::MatrixXcd rhoc = rho.cast<std::complex<double>>();
    const double denom = (rhoc * (xm * xp)).trace().real();
    if (denom < vacuum_threshold) return std::nullopt;
    const double num = (rhoc * (xm * xm * xp * xp)).trace().real();
    return num / (denom * denom);
}

enum class Partition { Field, Qubits };

// Partial transpose in the bare product basis (row = n*(N+1) + s).
inline Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& rho, int n_qubits,
                                         Partition part) {
    const int ns = n_qubits + 1;
    const int nf = int(rho.rows()) / ns;
    Eigen::MatrixXd pt(rho.rows(), rho.cols());
    for (int n = 0; n < nf; ++n)
        for (int s = 0; s < ns; ++s)
            for (int n2 = 0; n2 < nf; ++n2)
                for (int s2 = 0; s2 < ns; ++s2) {
                    const int r = n * ns + s, c = n2 * ns + s2;
                    const int rt = part == Partition::Field ? n2 * ns + s : n * ns + s2;
                    const int ct = part == Partition::Field ? n * ns + s2 : n2 * ns + s;
                    pt(rt, ct) = rho(r, c);
                }
    return pt;
}

// N(rho) = (||rho^{T_A}||_1 - 1)/2, evaluated as the absolute sum of the
// negative eigenvalues of the Hermitian partial transpose.
inline double negativity(const Eigen::MatrixXd& rho, int n_qubits,
                         Partition part = Partition::Field) {
    const Eigen::MatrixXd pt = partial_transpose(rho, n_qubits, part);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pt, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("partial-transpose eigensolve failed");
    double neg = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) < 0.0) neg -= es.eigenvalues()(i);
    return neg;
}

// Independent trace-norm route (singular values of the partial transpose).
inline double negativity_via_svd(const Eigen::MatrixXd& rho, int n_qubits,
                                 Partition part = Partition::Field) {
    const Eigen::MatrixXd pt = partial_transpose(rho, n_qubits, part);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(pt);
    return 0.5 * (svd.singularValues().sum() - 1.0);
}

struct CorrelateOptions {
    double pop_floor = 1e-12;
    double vacuum_threshold = kVacuumThreshold;
};

inline CorrelationReport correlate(const Spectrum& spec, const ThermalState& state,
                                   const CorrelateOptions& opts = {}) {
    const Eigen::MatrixXd rho = thermal_density_matrix(spec, state, opts.pop_floor);
    CorrelationReport rep;
    const int n_tr = spec.n_tr;
    const Eigen::MatrixXd a = ops::field_op(ops::boson_annihilate(n_tr), spec.n_qubits);
    rep.mean_photon = expectation(rho, Eigen::MatrixXd(a.transpose() * a));
    rep.g2_conventional = g2_conventional(rho, spec.n_qubits, opts.vacuum_threshold);
    rep.vacuum_dominated_conventional = !rep.g2_conventional.has_value();
    rep.g2_generalized = g2_generalized(spec, rho, opts.vacuum_threshold);
    rep.vacuum_dominated_generalized = !rep.g2_generalized.has_value();
    rep.negativity = negativity(rho, spec.n_qubits);
    return rep;
}

// Smallest Fock cutoff (stepping by 10) where the thermal mean photon number
// agrees with the full-cutoff value to abs_tol; dense partial-transpose
// eigensolves dominate correlation cost, so smaller is better.
inline int reduced_fock_cutoff(const ModelParams& p, double temperature,
                               double abs_tol = 1e-6) {
    validate(p);
    DiagOptions opts;
    auto mean_photon_at = [&](int n_tr) {
        ModelParams q = p;
        q.n_tr = n_tr;
        const Spectrum spec = diagonalize_bare(q, opts);
        const ThermalState st = gibbs_state(spec, temperature);
        const Eigen::MatrixXd rho = thermal_density_matrix(spec, st);
        const Eigen::MatrixXd a = ops::field_op(ops::boson_annihilate(n_tr), p.n_qubits);
        return expectation(rho, Eigen::MatrixXd(a.transpose() * a));
    };
    const double reference = mean_photon_at(p.n_tr);
    for (int m = 10; m < p.n_tr; m += 10)
        if (std::abs(mean_photon_at(m) - reference) < abs_tol) return m;
    return p.n_tr;
}

} // namespace dicke
