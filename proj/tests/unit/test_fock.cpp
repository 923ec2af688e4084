#include "doctest.h"

#include "cvq/distill_swap.hpp"
#include "cvq/entanglement.hpp"
#include "cvq/estimation.hpp"
#include "cvq/fock.hpp"
#include "cvq/illumination.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>

using namespace cvq;
using namespace cvq::fock;

namespace {

/// Largest entry restricted to states with at most `cut` photons per mode.
double max_low_block(const CMat& m, int n_max, int cut) {
    double worst = 0.0;
    for (int i1 = 0; i1 <= cut; ++i1)
        for (int i2 = 0; i2 <= cut; ++i2)
            for (int j1 = 0; j1 <= cut; ++j1)
                for (int j2 = 0; j2 <= cut; ++j2)
                    worst = std::max(worst, std::abs(m(index2(i1, i2, n_max), index2(j1, j2, n_max))));
    return worst;
}

}  // namespace

TEST_CASE("displacement matrix elements") {
    const cplx alpha(0.6, -0.2);
    CHECK(std::abs(displacement_element(0, 0, alpha) - std::exp(-std::norm(alpha) / 2)) < 1e-15);
    CHECK((displacement(20, 0.0) - CMat::Identity(21, 21)).norm() < 1e-15);
    CHECK_THROWS_AS(displacement_element(-1, 0, alpha), invalid_input);
    const FockKet c = coherent_ket(alpha, 30);
    for (int n = 0; n < 8; ++n) CHECK(std::abs(c.amplitudes(n) - displacement_element(n, 0, alpha)) < 1e-14);
}

TEST_CASE("displacement composition law") {
    const int n = 50, cut = 15;
    const cplx a(0.7, 0.3), b(-0.4, 0.9);
    const CMat lhs = displacement(n, a) * displacement(n, b);
    const CMat rhs = std::exp((a * std::conj(b) - std::conj(a) * b) / 2.0) * displacement(n, a + b);
    CHECK((lhs - rhs).topLeftCorner(cut, cut).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("TMSV ket amplitudes and leakage") {
    const double r = 0.7;
    const FockKet k = tmsv_ket(r, 40);
    for (int j = 0; j < 10; ++j) {
        const cplx ratio = k.amplitudes(index2(j + 1, j + 1, 40)) / k.amplitudes(index2(j, j, 40));
        CHECK(std::abs(ratio - std::tanh(r)) < 1e-14);
    }
    CHECK(tmsv_ket(r, 30).leakage > tmsv_ket(r, 40).leakage);
    CHECK(tmsv_ket(r, 60).leakage < 1e-8);
}

TEST_CASE("photon subtraction from vacuum fails") {
    CHECK_THROWS_AS(photon_subtract(tmsv_ket(0, 20), 1, 1), computation_error);
}

TEST_CASE("heuristic subtraction negativity matches the closed form") {
    for (double r : {0.2, 0.5, 0.8})
        for (int k : {1, 2}) {
            const double lambda = std::tanh(r);
            const Subtraction s = photon_subtract(tmsv_ket(r, 60), k, k);
            CHECK(std::abs(negativity_pure(s.ket) - ps_tmsv_negativity(lambda, 1.0, k)) < 1e-6);
        }
}

TEST_CASE("probabilistic subtraction through beam splitters matches ps_tmsv") {
    const double tau = 0.95;
    for (double r : {0.3, 0.8}) {
        const double lambda = std::tanh(r);
        const CMat kraus = subtraction_kraus(60, tau, 1);
        const Subtraction s = apply_local(tmsv_ket(r, 60), kraus, kraus);
        const PsTmsv ref = ps_tmsv(lambda, tau, 1);
        CHECK(std::abs(negativity_pure(s.ket) - ref.negativity) < 1e-6);
        CHECK(std::abs(s.weight - ref.probability) < 1e-10);
    }
}

TEST_CASE("beam splitter unitary reproduces the symplectic action") {
    const int n = 25;
    const double eta = 0.3;
    const CMat u = beam_splitter_unitary(n, eta);
    CHECK((u.adjoint() * u - CMat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() < 1e-12);
    const CMat a = embed(annihilation(n), 0, 2), b = embed(annihilation(n), 1, 2);
    const CMat lhs = u.adjoint() * a * u;
    const CMat rhs = std::sqrt(eta) * a + std::sqrt(1 - eta) * b;
    CHECK(max_low_block(lhs - rhs, n, 10) < 1e-12);
}

TEST_CASE("two-mode squeezer unitary on vacuum is the TMSV ket") {
    const int n = 40;
    CVec vac = CVec::Zero((n + 1) * (n + 1));
    vac(0) = 1.0;
    const CVec out = two_mode_squeezer_unitary(n, 0.6) * vac;
    CHECK(std::abs(std::abs(out.dot(tmsv_ket(0.6, n).amplitudes)) - 1.0) < 1e-10);
}

TEST_CASE("Fock Gaussian density reproduces its covariance") {
    const double a = 2.0, b = 1.6, c = 1.0;
    const int n = 25;
    const FockOperator rho = gaussian_density_standard(a, b, c, n);
    CHECK(rho.leakage < 1e-8);
    const Mat4 sigma = BipartiteCM::standard(a, b, c).full();
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            // Observable {r_i, r_j}; its mean is sigma_ij for null displacement.
            QuadraticObservable o{Mat::Zero(4, 4), Vec::Zero(4), 0.0};
            o.quad(i, j) += 1.0;
            o.quad(j, i) += 1.0;
            const CMat op = observable_operator(o, n);
            const cplx v = rho.matrix.transpose().cwiseProduct(op).sum();
            CHECK(std::abs(v.real() - sigma(i, j)) < 1e-6);
        }
    CHECK((rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("negativity oracle") {
    const int n = 30;
    const CMat prod = kroneckerProduct(thermal_density(0.3, n), thermal_density(1.0, n)).eval();
    CHECK(negativity_fock(prod, n + 1, n + 1) < 1e-12);
    for (double r : {0.3, 0.6, 1.0}) {
        const double lambda = std::tanh(r);
        const FockKet k = tmsv_ket(r, 60);
        CHECK(std::abs(negativity_pure(k) - lambda / (1 - lambda)) < 1e-6);
        CHECK(std::abs(negativity_fock(density(k), 61, 61) - lambda / (1 - lambda)) < 1e-6);
    }
    CHECK_THROWS_AS(negativity_fock(CMat::Random(4, 4), 2, 2), invalid_input);
}

TEST_CASE("partial transpose is an involution and negativity is locally invariant") {
    const int n = 20;
    const CMat rho = density(tmsv_ket(0.5, n));
    CHECK((partial_transpose(partial_transpose(rho, n + 1, n + 1), n + 1, n + 1) - rho).norm() < 1e-15);
    CMat phase = CMat::Zero(n + 1, n + 1);
    for (int k = 0; k <= n; ++k) phase(k, k) = std::polar(1.0, 0.37 * k);
    const CMat u = kroneckerProduct(phase, CMat::Identity(n + 1, n + 1)).eval();
    CHECK(std::abs(negativity_fock(u * rho * u.adjoint(), n + 1, n + 1) - negativity_fock(rho, n + 1, n + 1)) <
          1e-10);
}

TEST_CASE("Gaussian and Fock negativities agree on a TMST grid") {
    for (double r : {0.2, 0.5, 0.8})
        for (double nt : {0.0, 0.02, 0.05}) {
            const BipartiteCM cm = BipartiteCM::from_full(tmst(r, nt).sigma);
            const FockOperator rho = gaussian_density_standard(cm.alpha(), cm.beta(), cm.gamma(), 60);
            CHECK(std::abs(negativity_fock(rho.matrix, 61, 61) - negativity(cm)) < 1e-6);
        }
}

TEST_CASE("spectral QFI") {
    const auto displaced = [](double l) { return density(coherent_ket(l, 40)); };
    CHECK(qfi_spectral(displaced, 0.3, 1e-4) == doctest::Approx(4.0).epsilon(1e-4));
    const auto frozen = [](double) { return thermal_density(0.4, 20); };
    CHECK(std::abs(qfi_spectral(frozen, 0.3, 1e-4)) < 1e-12);
}

TEST_CASE("spectral QFI of the QI received state matches the closed form") {
    for (double ns : {0.1, 0.5})
        for (double nth : {0.1, 0.5}) {
            const QiParams p{ns, nth, 0.0, 0.0};
            const auto family = [&](double eta) {
                const BipartiteCM cm = qi_received({ns, nth, 0.0, eta});
                return gaussian_density_standard(cm.sigma_a(0, 0), cm.sigma_b(0, 0), cm.eps(0, 0), 25).matrix;
            };
            CHECK(qfi_spectral(family, 1e-3, 1e-4) == doctest::Approx(h_q(p)).epsilon(1e-3));
        }
}

TEST_CASE("Gaussian SLD satisfies the anticommutator equation in Fock space") {
    const double ns = 0.3, nth = 0.3, eta0 = 0.3, h = 1e-5;
    const int n = 30;
    const auto std_of = [&](double eta) {
        const BipartiteCM cm = qi_received({ns, nth, 0.0, eta});
        return gaussian_density_standard(cm.sigma_a(0, 0), cm.sigma_b(0, 0), cm.eps(0, 0), n).matrix;
    };
    const GaussianFamily family = [&](double eta) { return qi_received({ns, nth, 0.0, eta}).state(); };
    const CMat rho = std_of(eta0);
    const CMat drho = (std_of(eta0 + h) - std_of(eta0 - h)) / (2 * h);
    const CMat l = observable_operator(gaussian_sld(family, eta0), n);
    const CMat res = l * rho + rho * l - 2.0 * drho;
    CHECK(max_low_block(res, n, 15) < 1e-4);
    // Tr[rho L^2] is the QFI.
    CHECK((rho * l * l).trace().real() == doctest::Approx(gaussian_qfi(family, eta0)).epsilon(1e-4));
}

TEST_CASE("Uhlmann fidelity") {
    const CMat a = thermal_density(0.2, 30), b = thermal_density(0.5, 30);
    CHECK(uhlmann_fidelity(a, a) == doctest::Approx(1.0));
    // Commuting states: (sum sqrt(p q))^2.
    double s = 0.0;
    for (int k = 0; k <= 30; ++k) s += std::sqrt(a(k, k).real() * b(k, k).real());
    CHECK(uhlmann_fidelity(a, b) == doctest::Approx(s * s).epsilon(1e-10));
}

TEST_CASE("number operator observable") {
    const int n = 30;
    const CMat op = observable_operator(number_operator(2, 0), n);
    const CMat ref = embed(annihilation(n).adjoint() * annihilation(n), 0, 2);
    CHECK(max_low_block(op - ref, n, n - 2) < 1e-12);
}
