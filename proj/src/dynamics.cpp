#include "cqed/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace cqed {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

CollectiveState product_state(const QubitAmplitudes& q, CollectiveBasis basis) {
    CollectiveState s;
    s.basis = basis;
    s.amplitudes = Eigen::VectorXcd::Zero(dimension(basis));
    s.amplitudes(0) = q.alpha1 * q.alpha2;
    s.amplitudes(1) = q.beta1 * q.alpha2;
    s.amplitudes(2) = q.alpha1 * q.beta2;
    s.amplitudes(3) = q.beta1 * q.beta2;
    return s;
}

double state_norm(const CollectiveState& s) { return s.amplitudes.norm(); }

HermitianPropagator::HermitianPropagator(const Eigen::MatrixXcd& h) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("propagator needs a square matrix");
    }
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("propagator needs a Hermitian matrix");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    evals_ = solver.eigenvalues();
    evecs_ = solver.eigenvectors();
}

Eigen::VectorXcd HermitianPropagator::apply(const Eigen::VectorXcd& psi0, double t) const {
    if (psi0.size() != evals_.size()) {
        throw std::invalid_argument("state dimension does not match the matrix");
    }
    Eigen::VectorXcd modal = evecs_.adjoint() * psi0;
    for (Eigen::Index i = 0; i < modal.size(); ++i) {
        modal(i) *= std::exp(-kI * evals_(i) * t);
    }
    return evecs_ * modal;
}

CollectiveState propagate_exact(const EffectiveHamiltonian& h,
                                const CollectiveState& psi0, double t) {
    if (h.basis != psi0.basis) {
        throw std::invalid_argument("state basis does not match the Hamiltonian basis");
    }
    HermitianPropagator prop(h.matrix);
    return {psi0.basis, prop.apply(psi0.amplitudes, t)};
}

Trajectory propagate_trajectory(const EffectiveHamiltonian& h,
                                const CollectiveState& psi0,
                                const std::vector<double>& times) {
    if (h.basis != psi0.basis) {
        throw std::invalid_argument("state basis does not match the Hamiltonian basis");
    }
    HermitianPropagator prop(h.matrix);
    Trajectory traj;
    traj.basis = psi0.basis;
    traj.times = times;
    traj.states.reserve(times.size());
    for (double t : times) {
        traj.states.push_back(prop.apply(psi0.amplitudes, t));
    }
    return traj;
}

CollectiveState analytic_two_node(const QubitAmplitudes& q, int n_atoms,
                                  double omega_sigma, double omega_s, double t) {
    if (n_atoms < 1) {
        throw std::invalid_argument("analytic_two_node needs n_atoms >= 1");
    }
    const double nd = static_cast<double>(n_atoms);
    const double cross = 2.0 * omega_sigma * std::sqrt(nd * (nd - 1.0));
    const double s = std::sqrt(cross * cross + omega_s * omega_s);
    const double theta = omega_sigma * nd * t;

    CollectiveState out;
    out.basis = CollectiveBasis::Five;
    out.amplitudes = Eigen::VectorXcd::Zero(5);
    out.amplitudes(0) = q.alpha1 * q.alpha2;

    const std::complex<double> e2 = std::exp(-kI * omega_s * nd * t);
    out.amplitudes(1) =
        e2 * (q.beta1 * q.alpha2 * std::cos(theta) - kI * q.alpha1 * q.beta2 * std::sin(theta));
    out.amplitudes(2) =
        e2 * (q.alpha1 * q.beta2 * std::cos(theta) - kI * q.beta1 * q.alpha2 * std::sin(theta));

    const std::complex<double> e4 = std::exp(-kI * omega_s * (2.0 * nd - 1.0) * t);
    const std::complex<double> b12 = q.beta1 * q.beta2;
    if (s == 0.0) {
        // N = 1 with omega_s = 0: the pair block is frozen.
        out.amplitudes(3) = e4 * b12;
    } else {
        out.amplitudes(3) =
            e4 * b12 * (std::cos(s * t) - kI * (omega_s / s) * std::sin(s * t));
        out.amplitudes(4) = e4 * b12 * (-kI * (cross / s) * std::sin(s * t));
    }
    return out;
}

CollectiveState analytic_blockade(const QubitAmplitudes& q, int n_atoms,
                                  double omega_sigma, double omega_s, double t) {
    if (n_atoms < 1) {
        throw std::invalid_argument("analytic_blockade needs n_atoms >= 1");
    }
    const double nd = static_cast<double>(n_atoms);
    const double theta = omega_sigma * nd * t;

    CollectiveState out;
    out.basis = CollectiveBasis::Five;
    out.amplitudes = Eigen::VectorXcd::Zero(5);
    out.amplitudes(0) = q.alpha1 * q.alpha2;
    const std::complex<double> e2 = std::exp(-kI * omega_s * nd * t);
    out.amplitudes(1) =
        e2 * (q.beta1 * q.alpha2 * std::cos(theta) - kI * q.alpha1 * q.beta2 * std::sin(theta));
    out.amplitudes(2) =
        e2 * (q.alpha1 * q.beta2 * std::cos(theta) - kI * q.beta1 * q.alpha2 * std::sin(theta));
    out.amplitudes(3) = std::exp(-2.0 * kI * omega_s * nd * t) * q.beta1 * q.beta2;
    return out;
}

PairAmplitudes analytic_cswap_pair(int n_atoms, int photon_number,
                                   double omega1, double omega2,
                                   double shift1, double omega_s_cross, double t) {
    if (n_atoms < 2) {
        throw std::invalid_argument("analytic_cswap_pair needs n_atoms >= 2");
    }
    const double nd = static_cast<double>(n_atoms);
    const double n = static_cast<double>(photon_number);
    const double e2 = (nd / 2.0 - 1.0) * (omega1 + 2.0 * n * shift1) + (nd / 2.0) * omega2 -
                      nd * shift1;
    const double e3 = (nd / 2.0) * (omega1 + 2.0 * n * shift1) + (nd / 2.0 - 1.0) * omega2;
    const double j = nd * omega_s_cross;
    const double w = std::sqrt(0.25 * (e2 - e3) * (e2 - e3) + j * j);
    if (w == 0.0) {
        // Decoupled and degenerate pair: c2 just accumulates phase.
        return {std::exp(kI * e2 * t), {0.0, 0.0}};
    }
    const double r1 = 0.5 * (e2 + e3) + w;
    const double r2 = 0.5 * (e2 + e3) - w;
    const double c1 = -j / (2.0 * w);

    const std::complex<double> f1 = std::exp(kI * r1 * t);
    const std::complex<double> f2 = std::exp(kI * r2 * t);
    PairAmplitudes out;
    out.c3 = c1 * (f1 - f2);
    out.c2 = (-1.0 / (2.0 * w)) * ((e3 - r1) * f1 - (e3 - r2) * f2);
    return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    const int d = dimension(traj.basis);
    os << "t";
    for (int i = 1; i <= d; ++i) {
        os << ",re_c" << i << ",im_c" << i;
    }
    for (int i = 1; i <= d; ++i) {
        os << ",pop_" << i;
    }
    os << "\n";
    char buf[32];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
    };
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        put(traj.times[k]);
        const Eigen::VectorXcd& c = traj.states[k];
        for (int i = 0; i < d; ++i) {
            os << ",";
            put(c(i).real());
            os << ",";
            put(c(i).imag());
        }
        for (int i = 0; i < d; ++i) {
            os << ",";
            put(std::norm(c(i)));
        }
        os << "\n";
    }
}

}  // namespace cqed
