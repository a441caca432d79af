#include "cqed/model.hpp"

#include <cmath>
#include <stdexcept>

namespace cqed {

namespace {

void check_pair_norm(std::complex<double> a, std::complex<double> b, const char* which) {
    const double n = std::norm(a) + std::norm(b);
    if (std::abs(n - 1.0) > 1e-12) {
        throw std::invalid_argument(std::string("qubit amplitudes for node ") + which +
                                    " are not normalized");
    }
}

}  // namespace

QubitAmplitudes::QubitAmplitudes(std::complex<double> a1, std::complex<double> b1,
                                 std::complex<double> a2, std::complex<double> b2)
    : alpha1(a1), beta1(b1), alpha2(a2), beta2(b2) {
    check_pair_norm(alpha1, beta1, "1");
    check_pair_norm(alpha2, beta2, "2");
}

QubitAmplitudes QubitAmplitudes::normalized(std::complex<double> a1, std::complex<double> b1,
                                            std::complex<double> a2, std::complex<double> b2) {
    const double n1 = std::sqrt(std::norm(a1) + std::norm(b1));
    const double n2 = std::sqrt(std::norm(a2) + std::norm(b2));
    if (n1 == 0.0 || n2 == 0.0) {
        throw std::invalid_argument("cannot normalize zero qubit amplitudes");
    }
    return QubitAmplitudes(a1 / n1, b1 / n1, a2 / n2, b2 / n2);
}

Couplings derive_couplings(const NodeConfig& node1, const NodeConfig& node2,
                           const CavityConfig& cavity) {
    if (node1.n_atoms < 1 || node2.n_atoms < 1) {
        throw std::invalid_argument("each node needs at least one atom");
    }
    if (node1.omega != node2.omega) {
        throw std::invalid_argument(
            "mismatched node frequencies: the common-mode exchange requires equal "
            "working transitions");
    }
    const double delta = node1.omega - cavity.omega_k0;
    if (delta == 0.0) {
        throw std::invalid_argument(
            "resonant configuration (delta = 0): dispersive reduction invalid");
    }

    Couplings c;
    c.delta = delta;
    c.delta_prime = node1.omega - cavity.omega_local;
    c.omega_1 = std::norm(node1.g_sigma) / delta;
    c.omega_2 = std::norm(node2.g_sigma) / delta;
    c.omega_s_cross = std::abs(node1.g_sigma) * std::abs(node2.g_sigma) / delta;
    c.omega_sigma = c.omega_s_cross;

    const double gp1 = std::abs(node1.g_pi);
    const double gp2 = std::abs(node2.g_pi);
    if (gp1 == 0.0 && gp2 == 0.0) {
        c.omega_pi = 0.0;
    } else {
        if (gp1 != gp2) {
            throw std::invalid_argument(
                "mismatched local-mode couplings: the symmetric three-mode scheme "
                "requires equal |g_pi|");
        }
        if (c.delta_prime == 0.0) {
            throw std::invalid_argument(
                "resonant local mode (delta' = 0): dispersive reduction invalid");
        }
        c.omega_pi = gp1 * gp1 / c.delta_prime;
    }
    c.omega_s = c.omega_sigma + c.omega_pi;
    return c;
}

double dispersive_quality(const NodeConfig& node, const CavityConfig& cavity) {
    const double delta = node.omega - cavity.omega_k0;
    if (delta == 0.0) {
        throw std::invalid_argument("dispersive quality undefined at delta = 0");
    }
    return std::abs(node.g_sigma) * std::sqrt(static_cast<double>(node.n_atoms)) /
           std::abs(delta);
}

}  // namespace cqed
