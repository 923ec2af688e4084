#include "doctest.h"
#include "oracles.hpp"

#include "cvq/fock.hpp"
#include "cvq/gaussian.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <random>

using namespace cvq;

namespace {

Mat random_symplectic(std::mt19937& rng, int n_modes) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Mat s = Mat::Identity(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < 6; ++k) {
        const int i = static_cast<int>(u(rng) * n_modes) % n_modes;
        Mat local = Mat::Identity(2 * n_modes, 2 * n_modes);
        local.block(2 * i, 2 * i, 2, 2) = single_mode_squeezer(u(rng), 6.0 * u(rng)) * phase_rotation(6.0 * u(rng));
        s = local * s;
        if (n_modes > 1) {
            const int j = (i + 1) % n_modes;
            const int a = std::min(i, j), b = std::max(i, j);
            const Mat bs = beam_splitter(u(rng));
            Mat emb = Mat::Identity(2 * n_modes, 2 * n_modes);
            const int idx[2] = {a, b};
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 2; ++q) emb.block(2 * idx[p], 2 * idx[q], 2, 2) = bs.block(2 * p, 2 * q, 2, 2);
            s = emb * s;
        }
    }
    return s;
}

GaussianState random_state(std::mt19937& rng, int n_modes) {
    std::uniform_real_distribution<double> u(0.0, 2.0);
    Mat sigma = Mat::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) sigma.block(2 * k, 2 * k, 2, 2) = (1 + u(rng)) * Mat2::Identity();
    const Mat s = random_symplectic(rng, n_modes);
    Vec d(2 * n_modes);
    for (int k = 0; k < 2 * n_modes; ++k) d(k) = u(rng) - 1.0;
    return make_state(d, s * sigma * s.transpose());
}

}  // namespace

TEST_CASE("omega is the block symplectic form") {
    Mat o1(2, 2);
    o1 << 0, 1, -1, 0;
    CHECK(omega(1).isApprox(o1));
    CHECK(omega(2).isApprox(direct_sum(o1, o1)));
    for (int n = 1; n <= 4; ++n) CHECK((omega(n) * omega(n) + Mat::Identity(2 * n, 2 * n)).norm() < 1e-15);
}

TEST_CASE("canonical constructors") {
    CHECK(vacuum(2).sigma.isApprox(Mat::Identity(4, 4)));
    CHECK(thermal(1, 1250).sigma.isApprox(2501 * Mat::Identity(2, 2)));
    const GaussianState c = coherent(1, 0);
    CHECK(c.d(0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(c.d(1) == 0.0);
    CHECK_THROWS_AS(thermal(1, -0.1), invalid_input);

    const GaussianState sq = squeezed_vacuum(1, 0);
    CHECK(sq.sigma(0, 0) == doctest::Approx(std::exp(-2.0)));
    CHECK(sq.sigma(1, 1) == doctest::Approx(std::exp(2.0)));

    CHECK(tmsv(0).sigma.isApprox(Mat::Identity(4, 4)));
    const GaussianState t = tmst(1, 0.01);
    CHECK(t.sigma(0, 0) == doctest::Approx(1.02 * std::cosh(2.0)));
    CHECK(t.sigma(0, 2) == doctest::Approx(1.02 * std::sinh(2.0)));
    CHECK(t.sigma(1, 3) == doctest::Approx(-1.02 * std::sinh(2.0)));
    const Vec nu = symplectic_eigenvalues(tmsv(0.7).sigma);
    CHECK(nu(0) == doctest::Approx(1.0));
    CHECK(nu(1) == doctest::Approx(1.0));
}

TEST_CASE("make_state rejects asymmetric or unphysical matrices") {
    Mat s = Mat::Identity(2, 2);
    s(0, 1) = 0.1;
    CHECK_THROWS_AS(make_state(Vec::Zero(2), s), invalid_input);
    CHECK_THROWS_AS(make_state(Vec::Zero(2), 0.5 * Mat::Identity(2, 2)), invalid_input);
    CHECK_NOTHROW(make_state(Vec::Zero(2), 0.5 * Mat::Identity(2, 2), true));
    CHECK_THROWS_AS(make_state(Vec::Zero(3), Mat::Identity(2, 2)), invalid_input);
}

TEST_CASE("beam splitter limits and symplecticity") {
    CHECK(beam_splitter(1).isApprox(Mat::Identity(4, 4)));
    const Mat s0 = beam_splitter(0);
    CHECK(is_symplectic(s0));
    CHECK(s0(0, 2) == 1.0);
    CHECK(s0(2, 0) == -1.0);
    for (double eta : {0.1, 0.5, 0.93}) CHECK(is_symplectic(beam_splitter(eta)));
    CHECK_THROWS_AS(beam_splitter(1.2), invalid_input);
    CHECK_THROWS_AS(beam_splitter(-0.1), invalid_input);
}

TEST_CASE("balanced splitter on orthogonal squeezed vacua gives a TMSV") {
    const double r = 0.8;
    GaussianState in;
    in.n_modes = 2;
    in.d = Vec::Zero(4);
    in.sigma = direct_sum(squeezed_vacuum(r, 0).sigma, squeezed_vacuum(r, std::numbers::pi).sigma);
    const GaussianState out = apply(in, beam_splitter(0.5), {0, 1});
    // Same symplectic spectrum and local blocks as tmsv(r); correlations equal up to a local phase.
    const Mat ref = tmsv(r).sigma;
    CHECK(out.sigma.block(0, 0, 2, 2).isApprox(ref.block(0, 0, 2, 2), 1e-12));
    CHECK(out.sigma.block(2, 2, 2, 2).isApprox(ref.block(2, 2, 2, 2), 1e-12));
    CHECK(std::abs(out.sigma.block(0, 2, 2, 2).determinant() - ref.block(0, 2, 2, 2).determinant()) < 1e-10);
}

TEST_CASE("squeezers") {
    CHECK(single_mode_squeezer(0, 0.3).isApprox(Mat::Identity(2, 2)));
    CHECK(two_mode_squeezer(0).isApprox(Mat::Identity(4, 4)));
    CHECK(is_symplectic(single_mode_squeezer(1.1, 0.4)));
    CHECK(is_symplectic(two_mode_squeezer(1.1)));
    const GaussianState s = apply(vacuum(1), single_mode_squeezer(1, 0), {0});
    CHECK(s.sigma(0, 0) == doctest::Approx(std::exp(-2.0)));
    CHECK(s.sigma(1, 1) == doctest::Approx(std::exp(2.0)));
    const GaussianState t = apply(vacuum(2), two_mode_squeezer(0.9), {0, 1});
    CHECK((t.sigma - tmsv(0.9).sigma).norm() < 1e-12);
}

TEST_CASE("squeezed vacuum variance matches the Fock squeezer") {
    // S(r) = exp(r (a^2 - a^dag^2)/2) from a dense exponential of the truncated generator.
    // r = 0.5 keeps the truncated exponential accurate at n_max = 60.
    const int n = 60;
    const fock::CMat a = fock::annihilation(n);
    const fock::CMat gen = 0.5 * (a * a - a.adjoint() * a.adjoint());
    fock::CVec vac = fock::CVec::Zero(n + 1);
    vac(0) = 1.0;
    const fock::CVec psi = (0.5 * gen).exp() * vac;
    const auto q = fock::quadratures(n, 1);
    const double vx = 2.0 * (psi.adjoint() * q[0] * q[0] * psi)(0).real();
    CHECK(vx == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
}

TEST_CASE("apply embeds on the subset and checks dimensions") {
    const GaussianState v = vacuum(3);
    CHECK(apply(v, Mat::Identity(2, 2), {1}).sigma.isApprox(v.sigma));
    CHECK_THROWS_AS(apply(v, beam_splitter(0.3), {0}), invalid_input);
    CHECK_THROWS_AS(apply(v, beam_splitter(0.3), {0, 3}), invalid_input);
    CHECK_THROWS_AS(apply(v, beam_splitter(0.3), {1, 1}), invalid_input);
}

TEST_CASE("apply preserves symplectic spectra of random states") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 3;
        const GaussianState st = random_state(rng, n);
        const Mat s = random_symplectic(rng, n);
        REQUIRE(is_symplectic(s, 1e-9));
        std::vector<int> all;
        for (int k = 0; k < n; ++k) all.push_back(k);
        const GaussianState out = apply(st, s, all);
        CHECK((symplectic_eigenvalues(out.sigma) - symplectic_eigenvalues(st.sigma)).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((out.d - s * st.d).norm() < 1e-12);
    }
}

TEST_CASE("partial trace") {
    const double r = 0.6;
    const GaussianState red = partial_trace(tmsv(r), {1});
    CHECK(red.sigma.isApprox(std::cosh(2 * r) * Mat::Identity(2, 2)));
    const GaussianState t = tmst(0.4, 0.2);
    CHECK(partial_trace(t, {0, 1}).sigma.isApprox(t.sigma));
    CHECK_THROWS_AS(partial_trace(t, {}), invalid_input);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const GaussianState st = random_state(rng, 3);
        CHECK(is_physical(partial_trace(st, {0, 2}).sigma));
        CHECK(is_physical(partial_trace(st, {1}).sigma));
    }
}

TEST_CASE("reduced TMSV mode is the Fock thermal state") {
    const double r = 0.5;
    const int n = 40;
    const fock::CMat rho = fock::density(fock::tmsv_ket(r, n));
    fock::CMat red = fock::CMat::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k <= n; ++k) red(i, j) += rho(fock::index2(i, k, n), fock::index2(j, k, n));
    const double n_th = (std::cosh(2 * r) - 1) / 2;
    CHECK((red - fock::thermal_density(n_th, n)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("cascaded splitters multiply transmissivities") {
    const GaussianState in = make_state(Vec::Zero(4), direct_sum(squeezed_vacuum(0.7, 0).sigma, thermal(1, 3).sigma));
    const double t1 = 0.7, t2 = 0.4;
    GaussianState two = vacuum(3);
    two.sigma = direct_sum(in.sigma, thermal(1, 3).sigma);
    two.d = Vec::Zero(6);
    two = apply(apply(two, beam_splitter(t1), {0, 1}), beam_splitter(t2), {0, 2});
    const GaussianState one = apply(in, beam_splitter(t1 * t2), {0, 1});
    CHECK((partial_trace(two, {0}).sigma - partial_trace(one, {0}).sigma).norm() < 1e-12);
}

TEST_CASE("symplectic eigenvalues") {
    CHECK((symplectic_eigenvalues(Mat::Identity(6, 6)) - Vec::Ones(3)).norm() < 1e-12);
    CHECK(symplectic_eigenvalues(thermal(1, 2.5).sigma)(0) == doctest::Approx(6.0));
    Mat bad = Mat::Identity(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(symplectic_eigenvalues(bad), invalid_input);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto cm = oracle::random_cm(rng);
        const Vec nu = symplectic_eigenvalues(cm.full());
        const auto [lo, hi] = symplectic_eigenvalues_two_mode(cm.full());
        CHECK(std::abs(nu(0) - lo) < 1e-9 * hi);
        CHECK(std::abs(nu(1) - hi) < 1e-9 * hi);
    }
}

TEST_CASE("purity") {
    CHECK(purity(vacuum(2)) == doctest::Approx(1.0));
    CHECK(purity(tmsv(1.3)) == doctest::Approx(1.0));
    const double n = 0.8;
    CHECK(purity(thermal(1, n)) == doctest::Approx(1 / (1 + 2 * n)));
    const fock::CMat rho = fock::thermal_density(n, 80);
    CHECK(purity(thermal(1, n)) == doctest::Approx((rho * rho).trace().real()).epsilon(1e-8));
    GaussianState bad = vacuum(1);
    bad.sigma *= 0.5;
    CHECK_THROWS_AS(purity(bad), invalid_input);
}

TEST_CASE("characteristic function") {
    const GaussianState v = vacuum(1);
    CHECK(std::abs(characteristic_function(v, Vec::Zero(2)) - 1.0) < 1e-15);
    Vec r(2);
    r << 2, 0;
    CHECK(std::abs(characteristic_function(v, r) - std::exp(-1.0)) < 1e-15);
    CHECK(std::abs(std::abs(characteristic_function(coherent(0.3, -1.2), r)) - std::exp(-1.0)) < 1e-14);
    CHECK_THROWS_AS(characteristic_function(v, Vec::Zero(4)), invalid_input);
}

TEST_CASE("characteristic function matches the Fock trace of a displacement") {
    // chi(r) = Tr[rho D(beta)] with beta = (r_x + i r_p)/sqrt 2.
    const int n = 50;
    const cplx alpha(0.4, -0.3);
    const fock::CMat rho_coh = fock::density(fock::coherent_ket(alpha, n));
    const fock::CMat rho_th = fock::thermal_density(0.3, n);
    for (auto [rx, rp] : {std::pair{0.3, 0.0}, {0.5, -0.7}, {-1.1, 0.4}}) {
        Vec r(2);
        r << rx, rp;
        const fock::CMat d = fock::displacement(n, cplx(rx, rp) / std::sqrt(2.0));
        CHECK(std::abs(characteristic_function(coherent(alpha.real(), alpha.imag()), r) - (rho_coh * d).trace()) <
              1e-6);
        CHECK(std::abs(characteristic_function(thermal(1, 0.3), r) - (rho_th * d).trace()) < 1e-6);
    }
}
