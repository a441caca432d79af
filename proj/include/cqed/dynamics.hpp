#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "cqed/effective.hpp"
#include "cqed/model.hpp"

namespace cqed {

struct CollectiveState {
    CollectiveBasis basis = CollectiveBasis::Five;
    Eigen::VectorXcd amplitudes;
};

// Embeds the two-qubit product state into the collective basis:
// (a1a2, b1a2, a1b2, b1b2, 0[, 0]).
CollectiveState product_state(const QubitAmplitudes& q,
                              CollectiveBasis basis = CollectiveBasis::Five);

double state_norm(const CollectiveState& s);

struct Trajectory {
    CollectiveBasis basis = CollectiveBasis::Five;
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states;
};

// Exact propagator exp(-iHt) for a Hermitian matrix, via eigendecomposition.
// Decomposes once; apply() is then cheap per time point. Throws on
// non-Hermitian input (tolerance 1e-12 relative to the largest entry).
class HermitianPropagator {
  public:
    explicit HermitianPropagator(const Eigen::MatrixXcd& h);
    Eigen::VectorXcd apply(const Eigen::VectorXcd& psi0, double t) const;
    const Eigen::VectorXd& eigenvalues() const { return evals_; }

  private:
    Eigen::VectorXd evals_;
    Eigen::MatrixXcd evecs_;
};

CollectiveState propagate_exact(const EffectiveHamiltonian& h,
                                const CollectiveState& psi0, double t);

Trajectory propagate_trajectory(const EffectiveHamiltonian& h,
                                const CollectiveState& psi0,
                                const std::vector<double>& times);

// Closed-form amplitudes of the five-state model for a product start,
// with S = sqrt(4 omega_sigma^2 N(N-1) + omega_s^2):
//   psi1: a1a2
//   psi2: e^{-i omega_s N t} [b1a2 cos(omega_sigma N t) - i a1b2 sin(...)]
//   psi3: e^{-i omega_s N t} [a1b2 cos(omega_sigma N t) - i b1a2 sin(...)]
//   psi4: e^{-i omega_s(2N-1)t} b1b2 [cos(St) - i(omega_s/S) sin(St)]
//   psi5: e^{-i omega_s(2N-1)t} b1b2 [-i (2 omega_sigma sqrt(N(N-1))/S) sin(St)]
CollectiveState analytic_two_node(const QubitAmplitudes& q, int n_atoms,
                                  double omega_sigma, double omega_s, double t);

// Strong local-shift (blockade) limit |omega_s| >> omega_sigma sqrt(N(N-1)):
// psi5 is pinned at zero and psi4 acquires the pure phase e^{-2i omega_s N t}.
CollectiveState analytic_blockade(const QubitAmplitudes& q, int n_atoms,
                                  double omega_sigma, double omega_s, double t);

struct PairAmplitudes {
    std::complex<double> c2{};
    std::complex<double> c3{};
};

// Closed-form (c2, c3) of the asymmetric-coupling pair equations with
// omega_2 = 0, start c2 = 1:
//   c3 = C1 (e^{i r1 t} - e^{i r2 t}),  r_{1,2} = (E2+E3)/2 +- W,
//   W  = sqrt((E2-E3)^2/4 + N^2 omega_s^2),
//   C1 = -N omega_s / (2W)   (so that |c2|^2 + |c3|^2 = 1).
// shift1 is the node-1 light-shift rate; omega_s_cross the exchange rate.
PairAmplitudes analytic_cswap_pair(int n_atoms, int photon_number,
                                   double omega1, double omega2,
                                   double shift1, double omega_s_cross, double t);

// Columns: t, re_c1, im_c1, ..., re_cK, im_cK, pop_1..pop_K.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace cqed
