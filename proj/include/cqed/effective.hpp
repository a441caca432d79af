#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cqed/model.hpp"

namespace cqed {

// Collective two-node bases.
//   Five: psi1=|0,0>, psi2=|1,0>, psi3=|0,1>, psi4=|1,1>,
//         psi5=(|2,0>+|0,2>)/sqrt(2)        (single sigma-mode manifold)
//   Six:  psi1..psi4 as above, psi5=|2,0>, psi6=|0,2>   (asymmetric-coupling
//         manifold at fixed real photon number n)
enum class CollectiveBasis { Five, Six };

int dimension(CollectiveBasis basis);
const std::vector<std::string>& basis_labels(CollectiveBasis basis);

struct EffectiveHamiltonian {
    CollectiveBasis basis = CollectiveBasis::Five;
    Eigen::MatrixXcd matrix;
    // Which constant diagonal (free-evolution) offsets were dropped, and the
    // sign convention tying the matrix to the propagator exp(-iHt).
    std::string phase_convention;
};

// Single common-mode exchange Hamiltonian on the Five basis
// (equal couplings, interaction picture; diagonal holds only the
// virtual-photon shifts). Valid for any N >= 1.
EffectiveHamiltonian build_h5_common(int n_atoms, double omega_sigma);

// Three-mode variant: local modes shift the diagonal through
// omega_s = omega_sigma + omega_pi while the off-diagonal exchange keeps
// omega_sigma. omega_sigma == omega_s reduces bit-exactly to build_h5_common.
EffectiveHamiltonian build_h5_cde(int n_atoms, double omega_sigma, double omega_s);

// Asymmetric-coupling generator on the Six basis at fixed photon number n.
// Transcribed term by term from the pair-equation system; the propagation
// convention is dpsi/dt = +iM psi, so the returned H equals -M and
// exp(-iHt) reproduces the closed-form pair amplitudes. Requires N >= 2.
// Rates taken from couplings: omega_1, omega_2, omega_s_cross.
EffectiveHamiltonian build_h6_cswap(int n_atoms, int photon_number,
                                    double omega1, double omega2,
                                    const Couplings& couplings);

// {basis: [...], re: [[...]], im: [[...]], phase_convention: "..."}
nlohmann::json hamiltonian_to_json(const EffectiveHamiltonian& h);

}  // namespace cqed
