// model.hpp — Dicke model parameters and bare-basis operator construction.

#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "dicke/errors.hpp"

namespace dicke {

// Physical knobs of one Dicke instance. Frequencies and the coupling are in
// units of the reference mode frequency; k_B = hbar = 1 throughout.
struct ModelParams {
    double omega0 = 1.0;  // bosonic mode frequency
    double delta = 1.0;   // qubit frequency
    double lambda = 0.0;  // qubit-boson coupling strength
    int n_qubits = 1;     // N
    int n_tr = 50;        // bosonic truncation number

    bool resonant() const { return omega0 == delta; }
    double j() const { return 0.5 * n_qubits; }
    // Bare product basis |n>_Fock (x) |j,m>, row index n*(N+1) + (m + N/2).
    int dimension() const { return (n_tr + 1) * (n_qubits + 1); }
};

inline void validate(const ModelParams& p) {
    if (!(p.omega0 > 0.0)) throw ConfigError("omega0 must be > 0");
    if (!(p.delta > 0.0)) throw ConfigError("delta must be > 0");
    if (!(p.lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
    if (p.n_qubits < 1) throw ConfigError("n_qubits must be >= 1");
    if (p.n_tr < 1) throw ConfigError("n_tr must be >= 1");
}

namespace ops {

inline Eigen::MatrixXd boson_annihilate(int n_tr) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_tr + 1, n_tr + 1);
    for (int n = 1; n <= n_tr; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

inline Eigen::MatrixXd boson_number(int n_tr) {
    Eigen::VectorXd d(n_tr + 1);
    for (int n = 0; n <= n_tr; ++n) d(n) = double(n);
    return d.asDiagonal();
}

// Collective spin operators in the maximal sector j = N/2, basis |j,m>
// ordered m = -j..j (column s corresponds to m = s - j).
inline Eigen::MatrixXd j_plus(int n_qubits) {
    const double j = 0.5 * n_qubits;
    Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(n_qubits + 1, n_qubits + 1);
    for (int s = 0; s < n_qubits; ++s) {
        const double m = s - j;
        jp(s + 1, s) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    return jp;
}

inline Eigen::MatrixXd j_minus(int n_qubits) {
    return j_plus(n_qubits).transpose();
}

inline Eigen::MatrixXd j_z(int n_qubits) {
    const double j = 0.5 * n_qubits;
    Eigen::VectorXd d(n_qubits + 1);
    for (int s = 0; s <= n_qubits; ++s) d(s) = s - j;
    return d.asDiagonal();
}

inline Eigen::MatrixXd j_x(int n_qubits) {
    const Eigen::MatrixXd jp = j_plus(n_qubits);
    return 0.5 * (jp + Eigen::MatrixXd(jp.transpose()));
}

inline Eigen::MatrixXd j_y_imag_part(int n_qubits) {
    // J_y = -i/2 (J_+ - J_-); returns the real matrix (J_+ - J_-)/2 so that
    // J_y = -i * result.
    const Eigen::MatrixXd jp = j_plus(n_qubits);
    return 0.5 * (jp - Eigen::MatrixXd(jp.transpose()));
}

// Lift single-subsystem operators to the product basis; row index
// n*(N+1) + s matches kron(field, spin).
inline Eigen::MatrixXd field_op(const Eigen::MatrixXd& op, int n_qubits) {
    return Eigen::kroneckerProduct(
               op, Eigen::MatrixXd::Identity(n_qubits + 1, n_qubits + 1));
}

inline Eigen::MatrixXd spin_op(const Eigen::MatrixXd& op, int n_tr) {
    return Eigen::kroneckerProduct(Eigen::MatrixXd::Identity(n_tr + 1, n_tr + 1),
                                   op);
}

} // namespace ops

inline constexpr int kDefaultDimensionCap = 20000;

// H0 = omega0 a^dag a + delta J_z + (2 lambda / sqrt(N)) (a^dag + a) J_x
inline Eigen::MatrixXd build_hamiltonian_bare(const ModelParams& p,
                                              int dimension_cap = kDefaultDimensionCap) {
    validate(p);
    if (p.dimension() > dimension_cap)
        throw ConfigError("Hilbert dimension " + std::to_string(p.dimension()) +
                          " exceeds cap " + std::to_string(dimension_cap));
    const Eigen::MatrixXd a = ops::boson_annihilate(p.n_tr);
    const Eigen::MatrixXd x = a + Eigen::MatrixXd(a.transpose());
    Eigen::MatrixXd h = p.omega0 * ops::field_op(ops::boson_number(p.n_tr), p.n_qubits);
    h += p.delta * ops::spin_op(ops::j_z(p.n_qubits), p.n_tr);
    const double g = 2.0 * p.lambda / std::sqrt(double(p.n_qubits));
    h += g * Eigen::MatrixXd(Eigen::kroneckerProduct(x, ops::j_x(p.n_qubits)));
    return h;
}

// pi/2 rotation about J_y: H_s = omega0 a^dag a - (delta/2)(J_+ + J_-)
//                                + (2 lambda / sqrt(N)) (a^dag + a) J_z
inline Eigen::MatrixXd build_hamiltonian_rotated(const ModelParams& p,
                                                 int dimension_cap = kDefaultDimensionCap) {
    validate(p);
    if (p.dimension() > dimension_cap)
        throw ConfigError("Hilbert dimension " + std::to_string(p.dimension()) +
                          " exceeds cap " + std::to_string(dimension_cap));
    const Eigen::MatrixXd a = ops::boson_annihilate(p.n_tr);
    const Eigen::MatrixXd x = a + Eigen::MatrixXd(a.transpose());
    const Eigen::MatrixXd jp = ops::j_plus(p.n_qubits);
    Eigen::MatrixXd h = p.omega0 * ops::field_op(ops::boson_number(p.n_tr), p.n_qubits);
    h -= 0.5 * p.delta *
         ops::spin_op(Eigen::MatrixXd(jp + Eigen::MatrixXd(jp.transpose())), p.n_tr);
    const double g = 2.0 * p.lambda / std::sqrt(double(p.n_qubits));
    h += g * Eigen::MatrixXd(Eigen::kroneckerProduct(x, ops::j_z(p.n_qubits)));
    return h;
}

} // namespace dicke
