#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cqed/dynamics.hpp"
#include "cqed/effective.hpp"
#include "cqed/model.hpp"

namespace cqed {

// Brute-force reference model: symmetric Dicke ladder per node tensor Fock
// space per cavity mode, no dispersive approximation. Collective raising
// element <m+1|S+|m> = sqrt((N-m)(m+1)).
//
// Built in the frame rotating at the node-1 transition frequency (an exact
// transformation, since the total excitation number commutes with H). In
// that frame the stored diagonal reads
//   (omega2-omega1) m2 + sum_k (omega_mode_k - omega1) n_k.
// Total excitation M = m1 + m2 + sum n_k is conserved; the Hamiltonian is
// assembled and eigendecomposed block by block.
struct FullBasisState {
    int m1 = 0;
    int m2 = 0;
    std::array<int, 3> photons{0, 0, 0};  // [common, local1, local2]
    int excitation() const { return m1 + m2 + photons[0] + photons[1] + photons[2]; }
};

struct DimensionCapError : std::runtime_error {
    explicit DimensionCapError(const std::string& what) : std::runtime_error(what) {}
};

struct FullModel {
    NodeConfig node1, node2;
    CavityConfig cavity;
    int cutoff = 3;
    int n_modes = 1;  // 1: common mode only; 3: common + two local modes
    double frame_omega = 0.0;

    std::vector<FullBasisState> basis;            // excitation blocks, ascending
    std::vector<std::pair<int, int>> blocks;      // half-open index ranges per M
    std::vector<Eigen::VectorXd> block_evals;
    std::vector<Eigen::MatrixXcd> block_evecs;

    int dim() const { return static_cast<int>(basis.size()); }
    int index_of(int m1, int m2, const std::array<int, 3>& photons) const;
};

// Throws DimensionCapError when (N1+1)(N2+1)(cutoff+1)^modes exceeds dim_cap.
FullModel build_full(const NodeConfig& node1, const NodeConfig& node2,
                     const CavityConfig& cavity, int cutoff, int n_modes = 1,
                     int dim_cap = 10000);

Eigen::VectorXcd basis_ket(const FullModel& model, int m1, int m2,
                           const std::array<int, 3>& photons = {0, 0, 0});

Eigen::VectorXcd evolve_full(const FullModel& model, const Eigen::VectorXcd& psi0,
                             double t);

// Collective state embedded at the model's common-mode photon sector
// (psi5 of the Five basis maps to (|2,0>+|0,2>)/sqrt(2)).
Eigen::VectorXcd embed_collective(const FullModel& model, const CollectiveState& s);

struct Projection {
    CollectiveState state;
    double leakage_out = 0.0;  // population outside the mapped states
};

Projection project_effective(const FullModel& model, const Eigen::VectorXcd& psi,
                             CollectiveBasis basis);

// Population of components whose photon numbers differ from the reference
// sector (common mode at cavity.photon_number, local modes at vacuum).
double real_photon_population(const FullModel& model, const Eigen::VectorXcd& psi);

struct CompareReport {
    double max_state_error = 0.0;            // phase-aligned 2-norm distance
    double max_real_photon_population = 0.0;
    std::vector<double> times;
    std::vector<double> errors;
    std::vector<double> photon_populations;
};

// Evolves psi0 in both models over t_grid, projects the full trajectory onto
// the effective basis, and removes one global phase per time point before
// taking the 2-norm distance.
CompareReport compare_models(const FullModel& model, const EffectiveHamiltonian& h,
                             const CollectiveState& psi0,
                             const std::vector<double>& t_grid);

}  // namespace cqed
