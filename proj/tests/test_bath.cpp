#include <catch2/catch_amalgamated.hpp>

#include "dicke/bath.hpp"
#include "dicke/spectral.hpp"

using namespace dicke;

TEST_CASE("lambda=0: cavity channel reproduces damped-oscillator ladder rates") {
    ModelParams p{.omega0 = 1.0, .delta = 2.5, .lambda = 0.0, .n_qubits = 1, .n_tr = 6};
    const Spectrum s = diagonalize_bare(p);
    BathParams bath{.alpha = 0.02, .omega_co = 10.0, .temperature = 0.5};
    const Eigen::MatrixXd rates = transition_rates(s, bath);
    // pick the pure-field transition |n=1,m> -> |n=0,m>: gap omega0, |<0|a|1>|^2 = 1
    const double gamma = ohmic_rate(1.0, bath);
    const double n_bose = bose_occupation(1.0, bath.temperature);
    // locate eigenstates by energy: E = omega0 n + delta m, non-degenerate here
    auto index_of = [&](double e) {
        for (int i = 0; i < s.dimension(); ++i)
            if (std::abs(s.energies(i) - e) < 1e-9) return i;
        FAIL("state not found");
        return -1;
    };
    const int g0 = index_of(-1.25), g1 = index_of(1.0 - 1.25), g2 = index_of(2.0 - 1.25);
    REQUIRE(rates(g0, g1) == Catch::Approx(gamma * (1.0 + n_bose)).epsilon(1e-12));
    REQUIRE(rates(g1, g0) == Catch::Approx(gamma * n_bose).epsilon(1e-12));
    // two-photon jumps are forbidden
    REQUIRE(rates(g0, g2) == Catch::Approx(0.0).margin(1e-20));
    // Fock ladder factor: |<1|a|2>|^2 = 2
    REQUIRE(rates(g1, g2) == Catch::Approx(2.0 * gamma * (1.0 + n_bose)).epsilon(1e-12));
}

TEST_CASE("T=0: all upward rates vanish") {
    ModelParams p{.omega0 = 1.0, .delta = 1.0, .lambda = 0.4, .n_qubits = 2, .n_tr = 8};
    const Spectrum s = diagonalize_bare(p);
    BathParams bath{.alpha = 0.01, .omega_co = 10.0, .temperature = 0.0};
    const Eigen::MatrixXd rates = transition_rates(s, bath);
    for (int j = 0; j < s.dimension(); ++j)
        for (int k = 0; k < j; ++k) REQUIRE(rates(j, k) == 0.0);
}

TEST_CASE("detailed balance: up/down = exp(-gap/T) pairwise") {
    ModelParams p{.omega0 = 1.0, .delta = 1.0, .lambda = 0.5, .n_qubits = 2, .n_tr = 12};
    const Spectrum s = diagonalize_bare(p);
    BathParams bath{.alpha = 0.01, .omega_co = 10.0, .temperature = 0.5};
    const Eigen::MatrixXd rates = transition_rates(s, bath);
    for (int j = 1; j < s.dimension(); ++j)
        for (int k = 0; k < j; ++k) {
            if (rates(k, j) <= 1e-30) continue;
            const double gap = s.energies(j) - s.energies(k);
            REQUIRE(rates(j, k) / rates(k, j) ==
                    Catch::Approx(std::exp(-gap / bath.temperature)).epsilon(1e-12));
        }
}

TEST_CASE("steady state tends to uniform as T -> infinity") {
    ModelParams p{.omega0 = 1.0, .delta = 1.0, .lambda = 0.3, .n_qubits = 1, .n_tr = 4};
    const Spectrum s = diagonalize_bare(p);
    const ThermalState st = gibbs_state(s, 1e9);
    const double uniform = 1.0 / s.dimension();
    for (int i = 0; i < s.dimension(); ++i)
        REQUIRE(st.populations(i) == Catch::Approx(uniform).epsilon(1e-6));
}

TEST_CASE("lambda=0 Gibbs on the known spectrum") {
    ModelParams p{.omega0 = 1.0, .delta = 1.0, .lambda = 0.0, .n_qubits = 1, .n_tr = 30};
    const Spectrum s = diagonalize_bare(p);
    const ThermalState st = gibbs_state(s, 0.5);
    double z = 0.0;
    for (int i = 0; i < s.dimension(); ++i) z += std::exp(-(s.energies(i) - s.energies(0)) / 0.5);
    for (int i = 0; i < s.dimension(); ++i)
        REQUIRE(st.populations(i) ==
                Catch::Approx(std::exp(-(s.energies(i) - s.energies(0)) / 0.5) / z)
                    .margin(1e-14));
    REQUIRE(st.populations.sum() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("null-space steady state equals Gibbs") {
    ModelParams p{.omega0 = 1.0, .delta = 1.0, .lambda = 1.0, .n_qubits = 2, .n_tr = 14};
    const Spectrum s = diagonalize_bare(p);
    BathParams bath{.alpha = 0.01, .omega_co = 10.0, .temperature = 0.5};
    const ThermalState rate_st = steady_state_rate_equation(s, bath);
    const ThermalState gibbs_st = gibbs_state(s, bath.temperature);
    REQUIRE_FALSE(rate_st.gibbs_fallback);
    for (int i = 0; i < s.dimension(); ++i)
        REQUIRE(rate_st.populations(i) ==
                Catch::Approx(gibbs_st.populations(i)).margin(1e-8));
}

TEST_CASE("fully degenerate spectrum disconnects the rate graph -> Gibbs fallback") {
    // synthetic spectrum: identity eigenvectors, all-equal energies
    Spectrum s;
    s.n_qubits = 1;
    s.n_tr = 2;
    s.method = "bare";
    s.energies = Eigen::VectorXd::Zero(6);
    s.eigenvectors = Eigen::MatrixXd::Identity(6, 6);
    BathParams bath{.alpha = 0.01, .omega_co = 10.0, .temperature = 0.7};
    const ThermalState st = steady_state_rate_equation(s, bath);
    REQUIRE(st.gibbs_fallback);
    for (int i = 0; i < 6; ++i)
        REQUIRE(st.populations(i) == Catch::Approx(1.0 / 6.0).margin(1e-12));
}

TEST_CASE("T=0 gives the ground projector; degenerate manifolds flagged") {
    ModelParams p{.omega0 = 1.0, .delta = 1.0, .lambda = 0.2, .n_qubits = 1, .n_tr = 8};
    const Spectrum s = diagonalize_bare(p);
    const ThermalState st = gibbs_state(s, 0.0);
    REQUIRE(st.populations(0) == 1.0);
    REQUIRE(st.populations.tail(s.dimension() - 1).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE_FALSE(st.degenerate_ground);

    ModelParams pd{.omega0 = 1.0, .delta = 1.0, .lambda = 0.0, .n_qubits = 1, .n_tr = 8};
    const Spectrum sd = diagonalize_bare(pd);
    const ThermalState std0 = gibbs_state(sd, 0.0);
    REQUIRE_FALSE(std0.degenerate_ground);  // unique ground state at lambda=0
    REQUIRE(std0.populations(0) == 1.0);
}

TEST_CASE("bath parameter validation") {
    BathParams b{.alpha = 0.0, .omega_co = 10.0, .temperature = 1.0};
    REQUIRE_THROWS_AS(validate(b), ConfigError);
    b = BathParams{.alpha = 0.01, .omega_co = -1.0, .temperature = 1.0};
    REQUIRE_THROWS_AS(validate(b), ConfigError);
    b = BathParams{.alpha = 0.01, .omega_co = 10.0, .temperature = -0.5};
    REQUIRE_THROWS_AS(validate(b), ConfigError);
}
