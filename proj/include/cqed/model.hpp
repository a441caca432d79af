#pragma once

#include <complex>

namespace cqed {

// One multi-atomic node: N identical two-level atoms coupled to the shared
// cavity bus (g_sigma) and, in the three-mode scheme, to its own local
// cavity mode (g_pi). The logical qubit lives in the symmetric Dicke states
// with zero and one excitation.
struct NodeConfig {
    int n_atoms = 1;
    double omega = 0.0;                      // working transition frequency
    std::complex<double> g_sigma{0.0, 0.0};  // coupling to the common mode
    std::complex<double> g_pi{0.0, 0.0};     // coupling to the local mode
};

struct CavityConfig {
    double omega_k0 = 0.0;     // common (sigma) mode frequency
    double omega_local = 0.0;  // local (pi) mode frequency, three-mode scheme
    int photon_number = 0;     // real photons n in the common mode
};

// Second-order exchange and light-shift rates of the dispersive reduction.
// All rates carry their physical sign; omega_s = omega_sigma + omega_pi is
// computed as that exact sum.
struct Couplings {
    double delta = 0.0;         // node detuning from the common mode
    double delta_prime = 0.0;   // node detuning from the local mode
    double omega_sigma = 0.0;   // cross exchange rate |g1||g2|/delta
    double omega_pi = 0.0;      // local-mode rate |g_pi|^2/delta', <= 0 when delta' = -delta
    double omega_s = 0.0;       // omega_sigma + omega_pi
    double omega_1 = 0.0;       // node-1 light-shift rate |g1|^2/delta
    double omega_2 = 0.0;       // node-2 light-shift rate |g2|^2/delta
    double omega_s_cross = 0.0; // |g1||g2|/delta (same as omega_sigma; kept under
                                // the name used by the asymmetric-coupling analysis)
};

// Qubit amplitudes (alpha_m|0> + beta_m|1>) per node; each pair must be
// normalized to 1 within 1e-12 or the constructor throws.
struct QubitAmplitudes {
    std::complex<double> alpha1{1.0, 0.0};
    std::complex<double> beta1{0.0, 0.0};
    std::complex<double> alpha2{1.0, 0.0};
    std::complex<double> beta2{0.0, 0.0};

    QubitAmplitudes() = default;
    QubitAmplitudes(std::complex<double> a1, std::complex<double> b1,
                    std::complex<double> a2, std::complex<double> b2);

    // Rescales each pair to unit norm before validating.
    static QubitAmplitudes normalized(std::complex<double> a1, std::complex<double> b1,
                                      std::complex<double> a2, std::complex<double> b2);
};

// Dispersive reduction of the two-node configuration. Requires equal node
// frequencies and a nonzero detuning; throws std::invalid_argument otherwise.
Couplings derive_couplings(const NodeConfig& node1, const NodeConfig& node2,
                           const CavityConfig& cavity);

// Smallness parameter |g_sigma| sqrt(N) / |delta| of the dispersive regime.
double dispersive_quality(const NodeConfig& node, const CavityConfig& cavity);

}  // namespace cqed
