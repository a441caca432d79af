#include "cqed/effective.hpp"

#include <cmath>
#include <stdexcept>

namespace cqed {

int dimension(CollectiveBasis basis) {
    return basis == CollectiveBasis::Five ? 5 : 6;
}

const std::vector<std::string>& basis_labels(CollectiveBasis basis) {
    static const std::vector<std::string> five = {"psi1", "psi2", "psi3", "psi4", "psi5"};
    static const std::vector<std::string> six = {"psi1", "psi2", "psi3",
                                                 "psi4", "psi5", "psi6"};
    return basis == CollectiveBasis::Five ? five : six;
}

EffectiveHamiltonian build_h5_common(int n_atoms, double omega_sigma) {
    return build_h5_cde(n_atoms, omega_sigma, omega_sigma);
}

EffectiveHamiltonian build_h5_cde(int n_atoms, double omega_sigma, double omega_s) {
    if (n_atoms < 1) {
        throw std::invalid_argument("five-state model needs n_atoms >= 1");
    }
    const double nd = static_cast<double>(n_atoms);
    const double cross = 2.0 * omega_sigma * std::sqrt(nd * (nd - 1.0));

    EffectiveHamiltonian h;
    h.basis = CollectiveBasis::Five;
    h.matrix = Eigen::MatrixXcd::Zero(5, 5);
    h.matrix(1, 1) = omega_s * nd;
    h.matrix(2, 2) = omega_s * nd;
    h.matrix(1, 2) = omega_sigma * nd;
    h.matrix(2, 1) = omega_sigma * nd;
    h.matrix(3, 3) = 2.0 * omega_s * nd;
    h.matrix(4, 4) = 2.0 * omega_s * (nd - 1.0);
    h.matrix(3, 4) = cross;
    h.matrix(4, 3) = cross;
    h.phase_convention =
        "interaction picture: bare atomic and photonic diagonals dropped; "
        "diagonal holds only second-order shifts; propagator exp(-iHt)";
    return h;
}

EffectiveHamiltonian build_h6_cswap(int n_atoms, int photon_number,
                                    double omega1, double omega2,
                                    const Couplings& couplings) {
    if (n_atoms < 2) {
        throw std::invalid_argument("six-state model needs n_atoms >= 2");
    }
    if (photon_number < 0) {
        throw std::invalid_argument("photon_number must be >= 0");
    }
    const double nd = static_cast<double>(n_atoms);
    const double n = static_cast<double>(photon_number);
    const double o1 = couplings.omega_1;
    const double o2 = couplings.omega_2;
    const double os = couplings.omega_s_cross;

    const double w1n = omega1 + 2.0 * n * o1;  // node-1 transition with its light shift
    const double w2n = omega2 + 2.0 * n * o2;

    // M is the generator of dpsi/dt = +iM psi, transcribed term by term.
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6, 6);
    m(0, 0) = (nd / 2.0) * (w1n + w2n);
    m(1, 1) = (nd / 2.0 - 1.0) * w1n + (nd / 2.0) * w2n - nd * o1;
    m(2, 2) = (nd / 2.0) * w1n + (nd / 2.0 - 1.0) * w2n - nd * o2;
    m(1, 2) = m(2, 1) = -nd * os;
    m(3, 3) = (nd / 2.0 - 1.0) * (w1n + w2n) - nd * (o1 + o2);
    const double cross = os * std::sqrt(2.0 * nd * (nd - 1.0));
    m(3, 4) = m(4, 3) = -cross;
    m(3, 5) = m(5, 3) = -cross;
    m(4, 4) = (nd / 2.0 - 2.0) * w1n;
    m(5, 5) = (nd / 2.0 - 2.0) * w2n;

    EffectiveHamiltonian h;
    h.basis = CollectiveBasis::Six;
    h.matrix = (-m).cast<std::complex<double>>();
    h.phase_convention =
        "pair-equation convention dpsi/dt = +iM psi; stored H = -M so that "
        "exp(-iHt) reproduces the closed-form pair amplitudes";
    return h;
}

nlohmann::json hamiltonian_to_json(const EffectiveHamiltonian& h) {
    const int d = static_cast<int>(h.matrix.rows());
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int i = 0; i < d; ++i) {
        nlohmann::json row_re = nlohmann::json::array();
        nlohmann::json row_im = nlohmann::json::array();
        for (int j = 0; j < d; ++j) {
            row_re.push_back(h.matrix(i, j).real());
            row_im.push_back(h.matrix(i, j).imag());
        }
        re.push_back(row_re);
        im.push_back(row_im);
    }
    return {{"basis", basis_labels(h.basis)},
            {"re", re},
            {"im", im},
            {"phase_convention", h.phase_convention}};
}

}  // namespace cqed
