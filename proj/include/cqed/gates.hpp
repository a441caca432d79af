#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cqed/dynamics.hpp"
#include "cqed/effective.hpp"
#include "cqed/model.hpp"

namespace cqed {

struct GateReport {
    Eigen::Matrix4cd unitary;  // columns: propagated psi1..psi4, rows psi1..psi4
    double gate_time = 0.0;
    double leakage = 0.0;      // max over basis starts of population outside psi1..psi4
    double fidelity = 0.0;     // |tr(target^dag U)| / 4
    double fidelity_phase_insensitive = 0.0;  // mean_i |<target_i|U_i>|
};

double gate_fidelity(const Eigen::Matrix4cd& target, const Eigen::Matrix4cd& u);
double gate_fidelity_phase_insensitive(const Eigen::Matrix4cd& target,
                                       const Eigen::Matrix4cd& u);

// Propagates each of psi1..psi4 under exp(-iHt); fidelity fields are
// evaluated against the given target (identity by default).
GateReport extract_gate(const EffectiveHamiltonian& h, double t);
GateReport extract_gate(const EffectiveHamiltonian& h, double t,
                        const Eigen::Matrix4cd& target);

// t_iSWAP = pi / (2 omega_sigma N); throws if omega_sigma * N == 0.
double iswap_time(int n_atoms, double omega_sigma);

// psi1 -> psi1, psi2 -> -psi3, psi3 -> -psi2, psi4 -> psi4.
Eigen::Matrix4cd target_iswap();

// Entangled-pattern target of the coherence-damping-elimination gate family:
//   psi2 -> (-1)^n/sqrt(2) e^{-i phase2} [(-1)^mu psi2 - i psi3]
//   psi3 -> (-1)^n/sqrt(2) e^{-i phase2} [(-1)^mu psi3 - i psi2]
//   psi4 -> (-1)^k e^{-i phase4} psi4
// phase2/phase4 are omega_s N t and omega_s (2N-1) t of the realized
// configuration; the defaults give the bare pattern.
Eigen::Matrix4cd target_sqrt_iswap(int mu, int n, int k,
                                   double phase2 = 0.0, double phase4 = 0.0);

// Simultaneous-condition solution for the psi5-eliminating gate family:
//   theta = omega_sigma N t = pi(1/4 + mu/2 + n),   S t = pi k,
// solved for |omega_s| t at finite N:
//   (|omega_s| t)^2 = (pi k)^2 - 4 (N-1)/N theta^2.
// feasible=false (not an error) when the right side is negative.
struct CdeSolution {
    int mu = 0;
    int n = 0;
    int k = 1;
    double theta = 0.0;
    double st = 0.0;         // pi k
    double omega_s_t = 0.0;  // |omega_s| t, 0 when infeasible
    double ratio = 0.0;      // |omega_s| / (omega_sigma N), 0 when infeasible
    bool feasible = false;
};

CdeSolution solve_cde(int mu, int n, int k, int n_atoms);

// N -> infinity value sqrt((pi k)^2 - 4 theta^2); reporting column only.
double cde_omega_s_t_limit(int mu, int n, int k);

// |<psi5|Psi(t)>| from exact propagation of the five-state model.
double residual_psi5(int n_atoms, double omega_sigma, double omega_s, double t,
                     const QubitAmplitudes& q);

struct EliminationCheck {
    double residual = 0.0;       // |<psi5|Psi(t)>| at the gate time
    double pattern_error = 0.0;  // max |amplitude - entangled-pattern value| over psi1..psi4
};

// Exact-propagation check of a feasible solution (omega_s < 0, the physical
// sign of the local-shift-dominated regime). Throws on infeasible input.
EliminationCheck verify_elimination(const CdeSolution& sol, int n_atoms,
                                    const QubitAmplitudes& q,
                                    double omega_sigma = 1.0);

struct CswapEntry {
    int photon_number = 0;
    double c1 = 0.0;             // pair amplitude, -1/2 at resonance and n=0
    double c1_normalized = 0.0;  // 2*c1, the normalized pair-amplitude (-1 at n=0)
    double max_swap_probability = 0.0;  // 4 C1^2
    double full_swap_time = 0.0;        // t of the first |c3| maximum
};

struct CswapReport {
    std::vector<CswapEntry> entries;
    // max_swap(n=0) / max_swap(n=1) when both photon numbers were analyzed,
    // NaN otherwise.
    double contrast = 0.0;
};

// Photon-number-controlled swap analysis with the resonance condition
// omega1 - omega2 + N*shift1 = 0 imposed internally (omega1 = 0).
CswapReport cswap_analysis(int n_atoms, double shift1, double omega_s_cross,
                           const std::vector<int>& photon_numbers);

}  // namespace cqed
