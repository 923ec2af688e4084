#include "cvq/teleport.hpp"
#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace cvq;

namespace {

const AirChannel table1{mu_oxygen_5ghz, 0.0, 1250.0, 0.0};

AirChannel at(double length) {
    AirChannel ch = table1;
    ch.length = length;
    return ch;
}

BipartiteCM table1_state(double length, Geometry g) { return lossy_tmst(at(length), 1.0, 0.01, g); }

BipartiteCM swapped_table1(double length) {
    const BipartiteCM cm = table1_state(length / 2, Geometry::asym);
    const SymmetricSwap s = swap_symmetric(cm.beta(), cm.alpha(), cm.gamma());
    return BipartiteCM::standard(s.alpha, s.alpha, s.eps);
}

}  // namespace

TEST_CASE("Gaussian fidelity: standard form, symmetric resources and TMSV") {
    std::mt19937 rng(1);
    for (int i = 0; i < 20; ++i) {
        const BipartiteCM cm = oracle::random_cm(rng);
        const double f = fidelity_gaussian(cm);
        CHECK(f > 0.0);
        CHECK(f <= 1.0);
    }
    for (double a : {1.5, 3.0, 10.0})
        for (double c : {0.3, 0.9}) {
            const double g = c * std::sqrt(a * a - 1);
            const BipartiteCM cm = BipartiteCM::standard(a, a, g);
            const double nu = pts_eigenvalues(cm).first;
            CHECK(fidelity_gaussian(cm) == doctest::Approx(1 / (1 + nu)).epsilon(1e-12));
            CHECK(fidelity_standard(a, a, g) == doctest::Approx(1 / (1 + nu)).epsilon(1e-12));
        }
    for (double r : {0.0, 0.5, 1.5}) {
        const BipartiteCM cm = BipartiteCM::from_full(tmsv(r).sigma);
        CHECK(fidelity_gaussian(cm) == doctest::Approx((1 + std::tanh(r)) / 2).epsilon(1e-12));
    }
    CHECK(fidelity_gaussian(BipartiteCM::from_full(tmsv(12.0).sigma)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fidelity is strictly decreasing in the partially transposed eigenvalue") {
    double prev = 2.0;
    for (double g = 2.2; g > 0.0; g -= 0.1) {
        const BipartiteCM cm = BipartiteCM::standard(2.5, 2.5, g);
        const double f = fidelity_gaussian(cm);
        CHECK(f < prev);
        prev = f;
    }
}

TEST_CASE("concatenated teleportation") {
    const BipartiteCM cm = table1_state(150, Geometry::asym);
    CHECK(fidelity_concatenated(cm, 1) == doctest::Approx(fidelity_gaussian(cm)).epsilon(1e-14));
    for (int k = 2; k < 6; ++k) CHECK(fidelity_concatenated(cm, k) < fidelity_concatenated(cm, k - 1));
    const BipartiteCM s = BipartiteCM::standard(3.0, 3.0, 2.6);
    const double nu = pts_eigenvalues(s).first;
    for (int k : {1, 2, 4}) CHECK(fidelity_concatenated(s, k) == doctest::Approx(1 / (1 + (2 * k - 1) * nu)));
}

TEST_CASE("photon-subtracted TMSV fidelities") {
    for (int k : {1, 2}) {
        CHECK(fidelity_ps_tmsv(0.0, k) == doctest::Approx(0.5));
        CHECK(fidelity_ps_tmsv(1 - 1e-9, k) == doctest::Approx(1.0).epsilon(1e-6));
    }
    const double tau = 0.95;
    bool wins_low = false, loses_high = false;
    int crossings = 0;
    double prev = 0.0;
    for (double r = 0.02; r < 3.0; r += 0.02) {
        const double lam = std::tanh(r);
        const double d = fidelity_ps_tmsv(lam * tau, 1) - (1 + lam) / 2;
        if (r < 0.05) wins_low = d > 0;
        if (r > 0.02 && (d > 0) != (prev > 0)) ++crossings;
        prev = d;
    }
    loses_high = prev < 0;
    CHECK(wins_low);
    CHECK(loses_high);
    CHECK(crossings == 1);
}

TEST_CASE("lossy TMST fidelity: closed forms, short-distance agreement, classical limit") {
    for (double l : {0.0, 100.0, 350.0, 600.0})
        for (auto g : {Geometry::asym, Geometry::sym})
            CHECK(fidelity_tmst_channel(at(l), 1.0, 0.01, g) ==
                  doctest::Approx(fidelity_gaussian(table1_state(l, g))).epsilon(1e-12));
    CHECK(fidelity_tmst_channel(at(0), 15.0, 0.0, Geometry::sym) == doctest::Approx(1.0).epsilon(1e-9));
    // The two geometries differ only at second order in mu L.
    const double d10 = fidelity_tmst_channel(at(10), 1, 0.01, Geometry::asym) -
                       fidelity_tmst_channel(at(10), 1, 0.01, Geometry::sym);
    const double d20 = fidelity_tmst_channel(at(20), 1, 0.01, Geometry::asym) -
                       fidelity_tmst_channel(at(20), 1, 0.01, Geometry::sym);
    CHECK(d20 / d10 == doctest::Approx(4.0).epsilon(0.05));
    for (auto g : {Geometry::asym, Geometry::sym}) {
        const double l = classical_limit_distance(
            [g](double len) { return fidelity_tmst_channel(at(len), 1.0, 0.01, g); }, 0, 2000);
        CHECK(l == doctest::Approx(479).epsilon(1.0 / 479));
    }
}

TEST_CASE("probabilistic two-photon subtraction fidelity") {
    for (double r : {0.2, 0.6, 1.1})
        for (double tau : {0.8, 0.95})
            CHECK(fidelity_2ps_general(BipartiteCM::from_full(tmsv(r).sigma), tau).fbar ==
                  doctest::Approx(fidelity_ps_tmsv(std::tanh(r) * tau, 1)).epsilon(1e-10));
    for (double l : {0.0, 200.0, 450.0})
        for (auto g : {Geometry::asym, Geometry::sym}) {
            const BipartiteCM cm = table1_state(l, g);
            CHECK(std::abs(fidelity_2ps_general(cm, 1 - 1e-9).fbar - fidelity_2ps_heuristic(cm).fbar) < 1e-8);
        }
}

TEST_CASE("two-photon subtraction gain vanishes before the classical limit") {
    for (double tau : {0.9, 0.95}) {
        double vanish = -1.0;
        for (double l = 0.0; l < 600.0; l += 1.0) {
            const BipartiteCM cm = table1_state(l, Geometry::sym);
            if (fidelity_2ps_general(cm, tau).fbar <= fidelity_gaussian(cm)) {
                vanish = l;
                break;
            }
        }
        MESSAGE("gain at tau " << tau << " vanishes at " << vanish << " m");
        CHECK(vanish > 0.0);
        CHECK(vanish < 479.0);
    }
}

TEST_CASE("re-Gaussified resources keep the non-Gaussian fidelity") {
    double worst = 0.0;
    for (double l = 0.0; l <= 600.0; l += 10.0)
        for (auto g : {Geometry::asym, Geometry::sym}) {
            const BipartiteCM cm = table1_state(l, g);
            const PsOutcome po = ps2_gaussian(cm, 0.95);
            const Ps2Fidelity f = fidelity_2ps_general(cm, 0.95);
            const Ps2Fidelity fh = fidelity_2ps_heuristic(cm);
            for (auto mode : {RegaussMode::sym, RegaussMode::asym}) {
                worst = std::max(worst, std::abs(fidelity_gaussian(regaussify(po.cm, f.g, mode).cm) - f.fbar));
                worst = std::max(worst, std::abs(fidelity_gaussian(regaussify(cm, fh.g, mode).cm) - fh.fbar));
            }
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("re-Gaussified CMs pass theta but leave the physical set at short distance") {
    for (auto g : {Geometry::asym, Geometry::sym}) {
        const RegaussMode mode = g == Geometry::sym ? RegaussMode::sym : RegaussMode::asym;
        for (double l : {0.0, 10.0, 300.0}) {
            const BipartiteCM cm = table1_state(l, g);
            const PsOutcome po = ps2_gaussian(cm, 0.95);
            for (const Regaussified& r : {regaussify(cm, ps2_heuristic(cm).h, mode), regaussify(po.cm, po.g, mode)}) {
                CHECK(r.validity.valid);
                const double nu = symplectic_eigenvalues(r.cm.full()).minCoeff();
                CHECK(r.physical == (nu >= 1.0 - physical_tol));
                if (l < 20.0) CHECK(nu < 1.0);
                if (l > 100.0) CHECK(r.physical);
            }
        }
    }
}

TEST_CASE("re-Gaussified negativity gains at zero distance") {
    const BipartiteCM b0 = table1_state(0, Geometry::sym);
    const double bare = negativity(b0);
    const double heur = negativity(regaussify(b0, ps2_heuristic(b0).h, RegaussMode::sym).cm) / bare - 1;
    const PsOutcome po = ps2_gaussian(b0, 0.95);
    const double prob = negativity(regaussify(po.cm, po.g, RegaussMode::sym).cm) / bare - 1;
    MESSAGE("negativity gains: heuristic " << heur << ", probabilistic " << prob);
    CHECK(heur == doctest::Approx(0.46).epsilon(0.01));
    CHECK(prob == doctest::Approx(0.28).epsilon(0.02));
}

TEST_CASE("entanglement swapping fidelity") {
    CHECK(fidelity_swapped(2.0, 3.0, 0.0) == doctest::Approx(1 / 3.0));
    CHECK_THROWS_AS(fidelity_swapped(2.0, 0.0, 1.0), invalid_input);
    for (double l : {0.0, 150.0, 400.0}) {
        const BipartiteCM half = table1_state(l / 2, Geometry::asym);
        CHECK(fidelity_swapped(half.beta(), half.alpha(), half.gamma()) ==
              doctest::Approx(fidelity_gaussian(swapped_table1(l))).epsilon(1e-12));
    }
    for (double l : {0.0, 100.0, 300.0})
        CHECK(fidelity_gaussian(swapped_table1(l)) < fidelity_gaussian(table1_state(l, Geometry::asym)));
    CHECK(fidelity_gaussian(swapped_table1(479)) > fidelity_gaussian(table1_state(479, Geometry::asym)));
    const double es = classical_limit_distance([](double l) { return fidelity_gaussian(swapped_table1(l)); }, 0, 3000);
    const double bare = classical_limit_distance(
        [](double l) { return fidelity_gaussian(table1_state(l, Geometry::asym)); }, 0, 2000);
    MESSAGE("classical limit: swapped " << es << " m, bare " << bare << " m");
    CHECK(es / bare - 1 == doctest::Approx(0.14).epsilon(0.1));
}

TEST_CASE("finite-gain homodyne detection") {
    const BipartiteCM cm = table1_state(200, Geometry::asym);
    const double ideal = fidelity_standard(cm.alpha(), cm.beta(), cm.gamma());
    const double e10 = std::abs(fidelity_finite_gain(cm.alpha(), cm.beta(), cm.gamma(), 1e10) - ideal);
    const double e12 = std::abs(fidelity_finite_gain(cm.alpha(), cm.beta(), cm.gamma(), 1e12) - ideal);
    CHECK(e12 < 1e-5);
    CHECK(e10 / e12 == doctest::Approx(10.0).epsilon(0.05));
    CHECK(fidelity_finite_gain(cm.alpha(), cm.beta(), cm.gamma(), 125) < ideal);
    const SwapFiniteGain s = swap_finite_gain(2, 3, 2.5, 1e14);
    const SymmetricSwap ref = swap_symmetric(2, 3, 2.5);
    CHECK(s.alpha == doctest::Approx(ref.alpha).epsilon(1e-6));
    CHECK(s.eps == doctest::Approx(ref.eps).epsilon(1e-6));

    auto limit = [](Geometry g) {
        return classical_limit_distance(
            [g](double l) {
                const BipartiteCM c = table1_state(l, g);
                return fidelity_finite_gain(c.alpha(), c.beta(), c.gamma(), 125);
            },
            0, 2000);
    };
    CHECK(limit(Geometry::asym) == doctest::Approx(434).epsilon(1.0 / 434));
    CHECK(limit(Geometry::sym) == doctest::Approx(429).epsilon(1.0 / 429));
    const double es = classical_limit_distance(
        [](double l) {
            const BipartiteCM c = table1_state(l / 2, Geometry::asym);
            const SwapFiniteGain sw = swap_finite_gain(c.beta(), c.alpha(), c.gamma(), 125);
            return fidelity_finite_gain(sw.alpha, sw.alpha, sw.eps, 125);
        },
        0, 3000);
    CHECK(es == doctest::Approx(416).epsilon(1.0 / 416));
}
