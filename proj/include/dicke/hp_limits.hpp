// hp_limits.hpp — Holstein-Primakoff analytic limit spectra and the critical
// coupling of the normal/superradiant transition.

#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "dicke/model.hpp"

namespace dicke {

// lambda_c = (1/2) sqrt(omega0 * delta * coth(omega0 / (2 T))); T = 0 uses
// coth -> 1, i.e. lambda_c = sqrt(omega0 delta) / 2.
inline double critical_coupling(double omega0, double delta, double temperature = 0.0) {
    if (!(omega0 > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("critical_coupling: frequencies must be > 0");
    if (temperature < 0.0)
        throw std::invalid_argument("critical_coupling: temperature must be >= 0");
    double coth = 1.0;
    if (temperature > 0.0) coth = 1.0 / std::tanh(0.5 * omega0 / temperature);
    return 0.5 * std::sqrt(omega0 * delta * coth);
}

enum class HpPhase { Normal, Superradiant, DeepStrong };

struct HpLimitSpectrum {
    HpPhase phase = HpPhase::Normal;
    double eps_minus = 0.0;
    double eps_plus = 0.0;
    bool clamped = false;  // negative radicand at lambda ~ lambda_c clamped to 0
    // Deep-strong grid: levels(q, n) = n omega0 - 4 lambda^2 (N/2 - q)^2 / (omega0 N),
    // q = N/2 - |m| counting down from the extremal spin projection.
    Eigen::MatrixXd levels;
    double offset = 0.0;  // ground energy -N lambda^2 / omega0
};

namespace detail {

inline double clamped_sqrt(double x, bool& clamped) {
    if (x < 0.0) {
        clamped = true;
        return 0.0;
    }
    return std::sqrt(x);
}

} // namespace detail

// Normal phase (lambda <= lambda_c at T=0):
// eps_pm^2 = (omega0^2 + delta^2)/2 +- (1/2) sqrt((omega0^2-delta^2)^2 + 16 lambda^2 omega0 delta)
inline HpLimitSpectrum hp_normal_spectrum(const ModelParams& p) {
    const double w2 = p.omega0 * p.omega0, d2 = p.delta * p.delta;
    const double root = 0.5 * std::sqrt((w2 - d2) * (w2 - d2) +
                                        16.0 * p.lambda * p.lambda * p.omega0 * p.delta);
    HpLimitSpectrum s;
    s.phase = HpPhase::Normal;
    s.eps_plus = std::sqrt(0.5 * (w2 + d2) + root);
    s.eps_minus = detail::clamped_sqrt(0.5 * (w2 + d2) - root, s.clamped);
    return s;
}

// Superradiant phase (lambda > lambda_c at T=0):
// eps_pm^2 = (omega0^2 l^4 + delta^2 lc^4)/(2 lc^4)
//            +- (1/(2 lc^4)) sqrt((omega0^2 l^4 - delta^2 lc^4)^2 + 4 omega0^2 delta^2 lc^8)
inline HpLimitSpectrum hp_superradiant_spectrum(const ModelParams& p) {
    const double lc = critical_coupling(p.omega0, p.delta);
    const double lc4 = std::pow(lc, 4.0);
    const double l4 = std::pow(p.lambda, 4.0);
    const double w2 = p.omega0 * p.omega0, d2 = p.delta * p.delta;
    const double a = w2 * l4, b = d2 * lc4;
    const double root = 0.5 / lc4 * std::sqrt((a - b) * (a - b) + 4.0 * w2 * d2 * lc4 * lc4);
    HpLimitSpectrum s;
    s.phase = HpPhase::Superradiant;
    s.eps_plus = std::sqrt((a + b) / (2.0 * lc4) + root);
    s.eps_minus = detail::clamped_sqrt((a + b) / (2.0 * lc4) - root, s.clamped);
    return s;
}

// Deep-strong coupling (lambda >> omega0, Delta negligible): each J_x
// projection m carries a displaced oscillator ladder,
//   E_{m,n} = n omega0 - 4 lambda^2 m^2 / (omega0 N).
// levels(q, n) uses q = N/2 - |m| so q = 0 is the (doubly degenerate) lowest
// pair m = +-N/2.
inline HpLimitSpectrum hp_deep_strong_levels(const ModelParams& p, int m_max, int n_max) {
    if (m_max < 0 || n_max < 0)
        throw std::invalid_argument("hp_deep_strong_levels: negative grid extent");
    HpLimitSpectrum s;
    s.phase = HpPhase::DeepStrong;
    const double scale = 4.0 * p.lambda * p.lambda / (p.omega0 * p.n_qubits);
    s.offset = -scale * p.j() * p.j();  // = -N lambda^2 / omega0
    s.levels.resize(m_max + 1, n_max + 1);
    for (int q = 0; q <= m_max; ++q) {
        const double m = p.j() - q;
        for (int n = 0; n <= n_max; ++n)
            s.levels(q, n) = n * p.omega0 - scale * m * m;
    }
    return s;
}

} // namespace dicke
