#include "cqed/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <tuple>

namespace cqed {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// <m+1|S+|m> on the symmetric ladder of N two-level atoms.
double ladder_up(int n_atoms, int m) {
    return std::sqrt(static_cast<double>(n_atoms - m) * static_cast<double>(m + 1));
}

std::array<int, 3> reference_photons(const FullModel& model) {
    return {model.cavity.photon_number, 0, 0};
}

}  // namespace

int FullModel::index_of(int m1, int m2, const std::array<int, 3>& photons) const {
    for (int i = 0; i < dim(); ++i) {
        const FullBasisState& b = basis[i];
        if (b.m1 == m1 && b.m2 == m2 && b.photons == photons) {
            return i;
        }
    }
    return -1;
}

FullModel build_full(const NodeConfig& node1, const NodeConfig& node2,
                     const CavityConfig& cavity, int cutoff, int n_modes,
                     int dim_cap) {
    if (node1.n_atoms < 1 || node2.n_atoms < 1) {
        throw std::invalid_argument("both nodes need at least one atom");
    }
    if (cutoff < 0) {
        throw std::invalid_argument("photon cutoff must be >= 0");
    }
    if (n_modes != 1 && n_modes != 3) {
        throw std::invalid_argument("n_modes must be 1 (common) or 3 (common + two local)");
    }
    long dim = static_cast<long>(node1.n_atoms + 1) * (node2.n_atoms + 1);
    for (int k = 0; k < n_modes; ++k) {
        dim *= cutoff + 1;
    }
    if (dim > dim_cap) {
        throw DimensionCapError("state space dimension " + std::to_string(dim) +
                                " exceeds cap " + std::to_string(dim_cap) +
                                "; reduce the cutoff or the atom numbers");
    }

    FullModel model;
    model.node1 = node1;
    model.node2 = node2;
    model.cavity = cavity;
    model.cutoff = cutoff;
    model.n_modes = n_modes;
    model.frame_omega = node1.omega;

    const int local_max = (n_modes == 3) ? cutoff : 0;
    for (int m1 = 0; m1 <= node1.n_atoms; ++m1) {
        for (int m2 = 0; m2 <= node2.n_atoms; ++m2) {
            for (int n0 = 0; n0 <= cutoff; ++n0) {
                for (int n1 = 0; n1 <= local_max; ++n1) {
                    for (int n2 = 0; n2 <= local_max; ++n2) {
                        model.basis.push_back({m1, m2, {n0, n1, n2}});
                    }
                }
            }
        }
    }
    std::sort(model.basis.begin(), model.basis.end(),
              [](const FullBasisState& a, const FullBasisState& b) {
                  return std::make_tuple(a.excitation(), a.m1, a.m2, a.photons[0],
                                         a.photons[1], a.photons[2]) <
                         std::make_tuple(b.excitation(), b.m1, b.m2, b.photons[0],
                                         b.photons[1], b.photons[2]);
              });

    // Half-open index ranges of the constant-excitation blocks.
    int start = 0;
    for (int i = 1; i <= model.dim(); ++i) {
        if (i == model.dim() ||
            model.basis[i].excitation() != model.basis[start].excitation()) {
            model.blocks.emplace_back(start, i);
            start = i;
        }
    }

    const double d2 = node2.omega - node1.omega;
    const std::array<double, 3> mode_freq{cavity.omega_k0 - node1.omega,
                                          cavity.omega_local - node1.omega,
                                          cavity.omega_local - node1.omega};
    const std::complex<double> zero{0.0, 0.0};
    const std::array<std::complex<double>, 3> g1{node1.g_sigma, node1.g_pi, zero};
    const std::array<std::complex<double>, 3> g2{node2.g_sigma, zero, node2.g_pi};

    for (const auto& [bs, be] : model.blocks) {
        const int n = be - bs;
        Eigen::MatrixXcd hb = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            const FullBasisState& b = model.basis[bs + i];
            double diag = d2 * b.m2;
            for (int k = 0; k < n_modes; ++k) {
                diag += mode_freq[k] * b.photons[k];
            }
            hb(i, i) = diag;
            for (int k = 0; k < n_modes; ++k) {
                if (b.photons[k] == 0) continue;
                const double root_n = std::sqrt(static_cast<double>(b.photons[k]));
                std::array<int, 3> fewer = b.photons;
                fewer[k] -= 1;
                if (g1[k] != zero && b.m1 < node1.n_atoms) {
                    const int j = model.index_of(b.m1 + 1, b.m2, fewer) - bs;
                    const std::complex<double> v =
                        g1[k] * (ladder_up(node1.n_atoms, b.m1) * root_n);
                    hb(j, i) += v;
                    hb(i, j) += std::conj(v);
                }
                if (g2[k] != zero && b.m2 < node2.n_atoms) {
                    const int j = model.index_of(b.m1, b.m2 + 1, fewer) - bs;
                    const std::complex<double> v =
                        g2[k] * (ladder_up(node2.n_atoms, b.m2) * root_n);
                    hb(j, i) += v;
                    hb(i, j) += std::conj(v);
                }
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hb);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("eigendecomposition of an excitation block failed");
        }
        model.block_evals.push_back(solver.eigenvalues());
        model.block_evecs.push_back(solver.eigenvectors());
    }
    return model;
}

Eigen::VectorXcd basis_ket(const FullModel& model, int m1, int m2,
                           const std::array<int, 3>& photons) {
    const int i = model.index_of(m1, m2, photons);
    if (i < 0) {
        throw std::invalid_argument("requested basis state is outside the model");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(model.dim());
    v(i) = 1.0;
    return v;
}

Eigen::VectorXcd evolve_full(const FullModel& model, const Eigen::VectorXcd& psi0,
                             double t) {
    if (psi0.size() != model.dim()) {
        throw std::invalid_argument("state dimension does not match the model");
    }
    Eigen::VectorXcd out(model.dim());
    for (std::size_t bi = 0; bi < model.blocks.size(); ++bi) {
        const auto [bs, be] = model.blocks[bi];
        const int n = be - bs;
        Eigen::VectorXcd coef =
            model.block_evecs[bi].adjoint() * psi0.segment(bs, n);
        for (int j = 0; j < n; ++j) {
            coef(j) *= std::exp(-kI * model.block_evals[bi](j) * t);
        }
        out.segment(bs, n) = model.block_evecs[bi] * coef;
    }
    return out;
}

Eigen::VectorXcd embed_collective(const FullModel& model, const CollectiveState& s) {
    if (s.basis != CollectiveBasis::Five) {
        throw std::invalid_argument("only the five-state collective basis embeds "
                                    "into the two-node ladder model");
    }
    const std::array<int, 3> ref = reference_photons(model);
    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(model.dim());
    const std::array<std::pair<std::pair<int, int>, std::complex<double>>, 6> parts{{
        {{0, 0}, s.amplitudes(0)},
        {{1, 0}, s.amplitudes(1)},
        {{0, 1}, s.amplitudes(2)},
        {{1, 1}, s.amplitudes(3)},
        {{2, 0}, s.amplitudes(4) * inv_rt2},
        {{0, 2}, s.amplitudes(4) * inv_rt2},
    }};
    for (const auto& [occ, amp] : parts) {
        if (amp == std::complex<double>(0.0, 0.0)) continue;
        const int i = model.index_of(occ.first, occ.second, ref);
        if (i < 0) {
            throw std::invalid_argument("collective state does not fit the model "
                                        "(atom number or photon sector too small)");
        }
        out(i) = amp;
    }
    return out;
}

Projection project_effective(const FullModel& model, const Eigen::VectorXcd& psi,
                             CollectiveBasis basis) {
    if (basis != CollectiveBasis::Five) {
        throw std::invalid_argument("only the five-state collective basis projects "
                                    "from the two-node ladder model");
    }
    if (psi.size() != model.dim()) {
        throw std::invalid_argument("state dimension does not match the model");
    }
    const std::array<int, 3> ref = reference_photons(model);
    auto amp_at = [&](int m1, int m2) -> std::complex<double> {
        const int i = model.index_of(m1, m2, ref);
        return i < 0 ? std::complex<double>(0.0, 0.0) : psi(i);
    };
    Projection pr;
    pr.state.basis = CollectiveBasis::Five;
    pr.state.amplitudes.resize(5);
    pr.state.amplitudes(0) = amp_at(0, 0);
    pr.state.amplitudes(1) = amp_at(1, 0);
    pr.state.amplitudes(2) = amp_at(0, 1);
    pr.state.amplitudes(3) = amp_at(1, 1);
    pr.state.amplitudes(4) = (amp_at(2, 0) + amp_at(0, 2)) / std::sqrt(2.0);
    pr.leakage_out =
        std::max(0.0, psi.squaredNorm() - pr.state.amplitudes.squaredNorm());
    return pr;
}

double real_photon_population(const FullModel& model, const Eigen::VectorXcd& psi) {
    if (psi.size() != model.dim()) {
        throw std::invalid_argument("state dimension does not match the model");
    }
    const std::array<int, 3> ref = reference_photons(model);
    double pop = 0.0;
    for (int i = 0; i < model.dim(); ++i) {
        if (model.basis[i].photons != ref) {
            pop += std::norm(psi(i));
        }
    }
    return pop;
}

CompareReport compare_models(const FullModel& model, const EffectiveHamiltonian& h,
                             const CollectiveState& psi0,
                             const std::vector<double>& t_grid) {
    if (psi0.basis != h.basis) {
        throw std::invalid_argument("initial state basis does not match the Hamiltonian");
    }
    const Eigen::VectorXcd full0 = embed_collective(model, psi0);
    HermitianPropagator prop(h.matrix);

    CompareReport report;
    report.times.reserve(t_grid.size());
    report.errors.reserve(t_grid.size());
    report.photon_populations.reserve(t_grid.size());
    for (double t : t_grid) {
        const Eigen::VectorXcd full_t = evolve_full(model, full0, t);
        const Projection pr = project_effective(model, full_t, h.basis);
        const Eigen::VectorXcd eff_t = prop.apply(psi0.amplitudes, t);
        const double na2 = pr.state.amplitudes.squaredNorm();
        const double nb2 = eff_t.squaredNorm();
        const double overlap = std::abs(pr.state.amplitudes.dot(eff_t));
        const double err = std::sqrt(std::max(0.0, na2 + nb2 - 2.0 * overlap));
        const double photons = real_photon_population(model, full_t);
        report.times.push_back(t);
        report.errors.push_back(err);
        report.photon_populations.push_back(photons);
        report.max_state_error = std::max(report.max_state_error, err);
        report.max_real_photon_population =
            std::max(report.max_real_photon_population, photons);
    }
    return report;
}

}  // namespace cqed
