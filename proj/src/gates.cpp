#include "cqed/gates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cqed {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
const double kPi = std::acos(-1.0);

}  // namespace

double gate_fidelity(const Eigen::Matrix4cd& target, const Eigen::Matrix4cd& u) {
    return std::abs((target.adjoint() * u).trace()) / 4.0;
}

double gate_fidelity_phase_insensitive(const Eigen::Matrix4cd& target,
                                       const Eigen::Matrix4cd& u) {
    const Eigen::Matrix4cd overlap = target.adjoint() * u;
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        acc += std::abs(overlap(i, i));
    }
    return acc / 4.0;
}

GateReport extract_gate(const EffectiveHamiltonian& h, double t) {
    return extract_gate(h, t, Eigen::Matrix4cd::Identity());
}

GateReport extract_gate(const EffectiveHamiltonian& h, double t,
                        const Eigen::Matrix4cd& target) {
    const int d = dimension(h.basis);
    HermitianPropagator prop(h.matrix);

    GateReport report;
    report.gate_time = t;
    report.leakage = 0.0;
    for (int j = 0; j < 4; ++j) {
        Eigen::VectorXcd start = Eigen::VectorXcd::Zero(d);
        start(j) = 1.0;
        const Eigen::VectorXcd out = prop.apply(start, t);
        for (int i = 0; i < 4; ++i) {
            report.unitary(i, j) = out(i);
        }
        double outside = 0.0;
        for (int i = 4; i < d; ++i) {
            outside += std::norm(out(i));
        }
        report.leakage = std::max(report.leakage, outside);
    }
    report.fidelity = gate_fidelity(target, report.unitary);
    report.fidelity_phase_insensitive =
        gate_fidelity_phase_insensitive(target, report.unitary);
    return report;
}

double iswap_time(int n_atoms, double omega_sigma) {
    const double rate = omega_sigma * static_cast<double>(n_atoms);
    if (n_atoms < 1 || rate == 0.0) {
        throw std::invalid_argument("iswap_time needs omega_sigma * n_atoms != 0");
    }
    return kPi / (2.0 * rate);
}

Eigen::Matrix4cd target_iswap() {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 0) = 1.0;
    u(2, 1) = -1.0;
    u(1, 2) = -1.0;
    u(3, 3) = 1.0;
    return u;
}

Eigen::Matrix4cd target_sqrt_iswap(int mu, int n, int k, double phase2, double phase4) {
    if (mu != 0 && mu != 1) {
        throw std::invalid_argument("mu must be 0 or 1");
    }
    if (n < 0 || k < 1) {
        throw std::invalid_argument("need n >= 0 and k >= 1");
    }
    const double sn = (n % 2 == 0) ? 1.0 : -1.0;
    const double sm = (mu % 2 == 0) ? 1.0 : -1.0;
    const double sk = (k % 2 == 0) ? 1.0 : -1.0;
    const std::complex<double> block = sn / std::sqrt(2.0) * std::exp(-kI * phase2);

    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 0) = 1.0;
    u(1, 1) = block * sm;
    u(2, 1) = block * (-kI);
    u(2, 2) = block * sm;
    u(1, 2) = block * (-kI);
    u(3, 3) = sk * std::exp(-kI * phase4);
    return u;
}

CdeSolution solve_cde(int mu, int n, int k, int n_atoms) {
    if (mu != 0 && mu != 1) {
        throw std::invalid_argument("mu must be 0 or 1");
    }
    if (n < 0) {
        throw std::invalid_argument("n must be >= 0");
    }
    if (k < 1) {
        throw std::invalid_argument("k must be >= 1");
    }
    if (n_atoms < 1) {
        throw std::invalid_argument("n_atoms must be >= 1");
    }
    CdeSolution sol;
    sol.mu = mu;
    sol.n = n;
    sol.k = k;
    sol.theta = kPi * (0.25 + 0.5 * mu + static_cast<double>(n));
    sol.st = kPi * static_cast<double>(k);
    const double nd = static_cast<double>(n_atoms);
    const double rhs = sol.st * sol.st - 4.0 * (nd - 1.0) / nd * sol.theta * sol.theta;
    if (rhs >= 0.0) {
        sol.feasible = true;
        sol.omega_s_t = std::sqrt(rhs);
        sol.ratio = sol.omega_s_t / sol.theta;
    }
    return sol;
}

double cde_omega_s_t_limit(int mu, int n, int k) {
    const double theta = kPi * (0.25 + 0.5 * mu + static_cast<double>(n));
    const double st = kPi * static_cast<double>(k);
    const double rhs = st * st - 4.0 * theta * theta;
    return rhs >= 0.0 ? std::sqrt(rhs) : std::numeric_limits<double>::quiet_NaN();
}

double residual_psi5(int n_atoms, double omega_sigma, double omega_s, double t,
                     const QubitAmplitudes& q) {
    const EffectiveHamiltonian h = build_h5_cde(n_atoms, omega_sigma, omega_s);
    const CollectiveState out = propagate_exact(h, product_state(q), t);
    return std::abs(out.amplitudes(4));
}

EliminationCheck verify_elimination(const CdeSolution& sol, int n_atoms,
                                    const QubitAmplitudes& q, double omega_sigma) {
    if (!sol.feasible) {
        throw std::invalid_argument("verify_elimination needs a feasible solution");
    }
    if (omega_sigma <= 0.0) {
        throw std::invalid_argument("verify_elimination needs omega_sigma > 0");
    }
    const double nd = static_cast<double>(n_atoms);
    const double t = sol.theta / (omega_sigma * nd);
    const double omega_s = -sol.omega_s_t / t;  // local-shift-dominated sign

    const EffectiveHamiltonian h = build_h5_cde(n_atoms, omega_sigma, omega_s);
    const CollectiveState out = propagate_exact(h, product_state(q), t);

    EliminationCheck check;
    check.residual = std::abs(out.amplitudes(4));

    const Eigen::Matrix4cd target =
        target_sqrt_iswap(sol.mu, sol.n, sol.k, omega_s * nd * t,
                          omega_s * (2.0 * nd - 1.0) * t);
    const Eigen::Vector4cd in(q.alpha1 * q.alpha2, q.beta1 * q.alpha2,
                              q.alpha1 * q.beta2, q.beta1 * q.beta2);
    const Eigen::Vector4cd expected = target * in;
    for (int i = 0; i < 4; ++i) {
        check.pattern_error =
            std::max(check.pattern_error, std::abs(out.amplitudes(i) - expected(i)));
    }
    return check;
}

CswapReport cswap_analysis(int n_atoms, double shift1, double omega_s_cross,
                           const std::vector<int>& photon_numbers) {
    if (n_atoms < 2) {
        throw std::invalid_argument("cswap_analysis needs n_atoms >= 2");
    }
    if (omega_s_cross == 0.0) {
        throw std::invalid_argument("cswap_analysis needs omega_s_cross != 0");
    }
    const double nd = static_cast<double>(n_atoms);
    const double omega1 = 0.0;
    const double omega2 = nd * shift1;  // resonance omega1 - omega2 + N*shift1 = 0

    CswapReport report;
    report.contrast = std::numeric_limits<double>::quiet_NaN();
    double p0 = std::numeric_limits<double>::quiet_NaN();
    double p1 = std::numeric_limits<double>::quiet_NaN();
    for (int n : photon_numbers) {
        if (n < 0) {
            throw std::invalid_argument("photon numbers must be >= 0");
        }
        const double nph = static_cast<double>(n);
        const double j = nd * omega_s_cross;
        // At resonance the pair gap is E3 - E2 = 2 n shift1.
        const double w = std::sqrt(nph * nph * shift1 * shift1 + j * j);
        CswapEntry entry;
        entry.photon_number = n;
        entry.c1 = -j / (2.0 * w);
        entry.c1_normalized = 2.0 * entry.c1;
        entry.max_swap_probability = 4.0 * entry.c1 * entry.c1;
        entry.full_swap_time = kPi / (2.0 * w);
        report.entries.push_back(entry);
        if (n == 0) p0 = entry.max_swap_probability;
        if (n == 1) p1 = entry.max_swap_probability;
    }
    if (!std::isnan(p0) && !std::isnan(p1) && p1 > 0.0) {
        report.contrast = p0 / p1;
    }
    return report;
}

}  // namespace cqed
