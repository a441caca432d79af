#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "cqed/effective.hpp"

using namespace cqed;

namespace {

// Second, independently expanded transcription of the six-state generator
// (every diagonal written as a flat polynomial in the rates rather than in
// terms of the shifted transition frequencies). Used to cross-check
// build_h6_cswap term by term.
Eigen::MatrixXd reference_h6(int n_atoms, int photon, double w1, double w2,
                             double o1, double o2, double os) {
    const double nd = n_atoms;
    const double np = photon;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6, 6);
    m(0, 0) = 0.5 * nd * (w1 + w2) + nd * np * (o1 + o2);
    m(1, 1) = (0.5 * nd - 1.0) * w1 + (nd - 2.0) * np * o1 + 0.5 * nd * w2 +
              nd * np * o2 - nd * o1;
    m(2, 2) = 0.5 * nd * w1 + nd * np * o1 + (0.5 * nd - 1.0) * w2 +
              (nd - 2.0) * np * o2 - nd * o2;
    m(3, 3) = (0.5 * nd - 1.0) * (w1 + w2) + (nd - 2.0) * np * (o1 + o2) -
              nd * (o1 + o2);
    m(4, 4) = (0.5 * nd - 2.0) * w1 + (nd - 4.0) * np * o1;
    m(5, 5) = (0.5 * nd - 2.0) * w2 + (nd - 4.0) * np * o2;
    m(1, 2) = m(2, 1) = -nd * os;
    m(3, 4) = m(4, 3) = -os * std::sqrt(2.0 * nd * (nd - 1.0));
    m(3, 5) = m(5, 3) = m(3, 4);
    return -m;  // stored Hamiltonian is the negated generator
}

}  // namespace

TEST_CASE("basis bookkeeping") {
    CHECK(dimension(CollectiveBasis::Five) == 5);
    CHECK(dimension(CollectiveBasis::Six) == 6);
    CHECK(basis_labels(CollectiveBasis::Five).size() == 5);
    CHECK(basis_labels(CollectiveBasis::Five)[4] == "psi5");
    CHECK(basis_labels(CollectiveBasis::Six)[5] == "psi6");
}

TEST_CASE("common-mode five-state matrix, frozen values") {
    const EffectiveHamiltonian h = build_h5_common(2, 0.7);
    REQUIRE(h.matrix.rows() == 5);
    REQUIRE(h.basis == CollectiveBasis::Five);

    const double h34 = 1.9798989873223331;  // 1.4 * sqrt(2)
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(5, 5);
    want(1, 1) = 1.4;
    want(2, 2) = 1.4;
    want(3, 3) = 2.8;
    want(4, 4) = 1.4;
    want(1, 2) = want(2, 1) = 1.4;
    want(3, 4) = want(4, 3) = h34;
    CHECK((h.matrix - want).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("three-mode five-state matrix, frozen values") {
    const EffectiveHamiltonian h = build_h5_cde(3, 0.5, -0.2);
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(5, 5);
    want(1, 1) = -0.6;
    want(2, 2) = -0.6;
    want(3, 3) = -1.2;
    want(4, 4) = -0.8;
    want(1, 2) = want(2, 1) = 1.5;  // exchange keeps omega_sigma, not omega_s
    want(3, 4) = want(4, 3) = std::sqrt(6.0);
    CHECK((h.matrix - want).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("equal rates reduce the three-mode matrix to the common-mode one") {
    for (int n : {1, 2, 5, 40}) {
        const EffectiveHamiltonian a = build_h5_common(n, 0.31);
        const EffectiveHamiltonian b = build_h5_cde(n, 0.31, 0.31);
        CHECK(a.matrix == b.matrix);  // bit-exact by construction
    }
}

TEST_CASE("five-state matrices are Hermitian (real symmetric)") {
    for (const auto& h : {build_h5_common(7, 0.13), build_h5_cde(9, 0.4, -0.1)}) {
        CHECK((h.matrix - h.matrix.adjoint()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(h.matrix.imag().cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("six-state generator matches an independent transcription") {
    struct Row {
        int n_atoms, photon;
        double w1, w2, o1, o2, os;
    };
    const Row rows[] = {
        {2, 0, 0.3, -0.7, 0.17, 0.05, 0.23},
        {2, 1, 0.3, -0.7, 0.17, 0.05, 0.23},
        {3, 0, 0.0, 0.6, 0.25, 0.0, 0.1},
        {4, 3, -0.2, 0.2, 0.05, 0.005, 0.015},
        {6, 2, 1.1, 0.4, 0.02, 0.007, 0.012},
    };
    for (const Row& r : rows) {
        CAPTURE(r.n_atoms);
        CAPTURE(r.photon);
        Couplings c;
        c.omega_1 = r.o1;
        c.omega_2 = r.o2;
        c.omega_s_cross = r.os;
        const EffectiveHamiltonian h =
            build_h6_cswap(r.n_atoms, r.photon, r.w1, r.w2, c);
        REQUIRE(h.basis == CollectiveBasis::Six);
        const Eigen::MatrixXd want = reference_h6(r.n_atoms, r.photon, r.w1, r.w2,
                                                  r.o1, r.o2, r.os);
        CHECK((h.matrix.real() - want).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK(h.matrix.imag().cwiseAbs().maxCoeff() == 0.0);
        CHECK((h.matrix - h.matrix.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("builder argument validation") {
    Couplings c;
    CHECK_THROWS_AS(build_h5_cde(0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_h6_cswap(1, 0, 0.0, 0.0, c), std::invalid_argument);
    CHECK_THROWS_AS(build_h6_cswap(2, -1, 0.0, 0.0, c), std::invalid_argument);
    CHECK_NOTHROW(build_h5_common(1, 0.5));
    CHECK_NOTHROW(build_h6_cswap(2, 0, 0.0, 0.0, c));
}

TEST_CASE("hamiltonian json layout") {
    const EffectiveHamiltonian h = build_h5_common(2, 0.7);
    const nlohmann::json j = hamiltonian_to_json(h);
    REQUIRE(j.contains("basis"));
    REQUIRE(j.contains("re"));
    REQUIRE(j.contains("im"));
    REQUIRE(j.contains("phase_convention"));
    CHECK(j["basis"].size() == 5);
    CHECK(j["basis"][0] == "psi1");
    REQUIRE(j["re"].size() == 5);
    REQUIRE(j["re"][3].size() == 5);
    CHECK(j["re"][3][4].get<double>() == doctest::Approx(1.9798989873223331).epsilon(1e-15));
    CHECK(j["im"][3][4].get<double>() == 0.0);
    CHECK(j["re"][0][0].get<double>() == 0.0);
}
