#pragma once

#include "cvq/channel.hpp"
#include "cvq/distill_swap.hpp"

#include <functional>

namespace cvq {

/// sigma_z Sigma_A sigma_z + Sigma_B - sigma_z eps - eps^T sigma_z.
Mat2 gamma_of(const BipartiteCM& cm);

/// Average fidelity 1/sqrt(det(I + Gamma/2)) for teleporting coherent states.
double fidelity_gaussian(const BipartiteCM& cm);
/// 1/(1 + (alpha + beta - 2 gamma)/2) for standard-form resources.
double fidelity_standard(double alpha, double beta, double gamma);
/// k teleportations in sequence: 1/sqrt(det(I + (k - 1/2) Gamma)).
double fidelity_concatenated(const BipartiteCM& cm, int k);

/// Closed forms for 2k photons subtracted from a TMSV, k in {1, 2}, with lambda_tau = tanh(r) tau.
double fidelity_ps_tmsv(double lambda_tau, int k);

double fidelity_tmst_channel(const AirChannel& ch, double r, double n, Geometry geometry);

struct Ps2Fidelity {
    double fbar = 0.0;
    double g = 0.0;
};

/// (1 + g) F_Gauss(Sigma_tilde) for probabilistic two-photon subtraction.
Ps2Fidelity fidelity_2ps_general(const BipartiteCM& cm, double tau);
/// (1 + h) F_Gauss(Sigma) for heuristic two-photon subtraction.
Ps2Fidelity fidelity_2ps_heuristic(const BipartiteCM& cm);

enum class RegaussMode { sym, asym };

struct Regaussified {
    BipartiteCM cm;
    Validity validity;
    /// Symplectic spectrum >= 1; theta >= 0 alone also admits sqrt(det Sigma) < 1.
    bool physical = false;
};

/// Gaussian covariance with the same teleportation fidelity as the corrected non-Gaussian resource.
/// sym: (Sigma - c I)/(1 + c) per block; asym: both local blocks replaced by their mean first.
Regaussified regaussify(const BipartiteCM& cm, double correction, RegaussMode mode);

/// 1/(1 + alpha - gamma^2/beta) with alpha the kept arm and beta the arm sent to the swap station.
double fidelity_swapped(double alpha, double beta, double gamma);

/// Finite-gain homodyne fidelity for a standard-form resource (alpha = lossy arm) and target displacement theta.
double fidelity_finite_gain(double alpha, double beta, double gamma, double gain, double theta = 0.0);

struct SwapFiniteGain {
    double alpha;
    double eps;
};

/// Swapped resource when the swap homodynes have gain G; G -> infinity gives swap_symmetric.
SwapFiniteGain swap_finite_gain(double alpha, double beta, double gamma, double gain);

/// L where fidelity(L) - 1/2 changes sign inside [lo, hi], bisected to `tol` metres.
double classical_limit_distance(const std::function<double(double)>& fidelity, double lo, double hi,
                                double tol = 0.01);

}  // namespace cvq
