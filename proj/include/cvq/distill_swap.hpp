#pragma once

#include "cvq/entanglement.hpp"

#include <vector>

namespace cvq {

/// Gauss hypergeometric series, stopped once a term falls below 1e-15 of the partial sum.
double hyp2f1(double a, double b, double c, double z);

struct PsTmsv {
    /// a_n for n = 0, 1, ... until the squared term is below 1e-18 of the running sum.
    std::vector<double> amplitudes;
    /// sum |a_n|^2 over the stored amplitudes.
    double probability_sum = 0.0;
    /// (1 - lambda^2)(lambda - lambda tau)^{2k} 2F1(k+1, k+1; 1; (lambda tau)^2).
    double probability = 0.0;
    double negativity = 0.0;
};

/// Photon subtraction of k photons per mode from a TMSV with lambda = tanh r through splitters of transmissivity tau.
PsTmsv ps_tmsv(double lambda, double tau, int k);
double ps_tmsv_probability(double lambda, double tau, int k);
/// Displayed k = 1, 2 success probabilities.
double ps_tmsv_probability_printed(double lambda, double tau, int k);
/// (1/2)((1 - lambda tau)^{-2(k+1)} / 2F1(k+1, k+1; 1; (lambda tau)^2) - 1).
double ps_tmsv_negativity(double lambda, double tau, int k);

/// Coefficients of the two-photon-subtracted characteristic function
/// chi = [(m1 + P(a,b))(m2 + Q(a,b)) + m3 + R(a,b)] / (m1 m2 + m3) * chi_Gauss(Sigma_tilde), with
/// P(a,b) = a^T P1 a + b^T P2 b + a^T P12 b and likewise for Q and R.
struct PsOutcome {
    BipartiteCM cm;
    double probability = 0.0;
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    Mat2 p1, p2, p12, q1, q2, q12, r1, r2, r12;
    /// Teleportation-fidelity correction: F = (1 + g) F_Gauss(Sigma_tilde).
    double g = 0.0;
};

/// One photon subtracted from each mode through splitters of transmissivity tau.
PsOutcome ps2_gaussian(const BipartiteCM& cm, double tau);

struct Ps2Printed {
    double alpha, beta, gamma, probability;
};

/// Displayed standard-form submatrices and success probability.
Ps2Printed ps2_printed(double alpha, double beta, double gamma, double tau);

/// Heuristic subtraction a_A a_B applied directly to a Gaussian state.
struct HeuristicPs {
    double m_a = 0.0, m_b = 0.0, m_c = 0.0;
    Mat2 M_a, M_b, M_c, M_ac, M_bc;
    /// 1 / (m_a m_b + m_c).
    double normalization = 0.0;
    double h = 0.0;
};

HeuristicPs ps2_heuristic(const BipartiteCM& cm);
/// Displayed trace form of h (E0, E1, E2 terms).
double heuristic_h_printed(const BipartiteCM& cm);

/// Mean of the polynomial correction against the teleportation kernel of `cm`, divided by m1 m2 + m3.
double fidelity_correction(const BipartiteCM& cm, double m1, double m2, double m3, const Mat2& p1, const Mat2& p2,
                           const Mat2& p12, const Mat2& q1, const Mat2& q2, const Mat2& q12, const Mat2& r1,
                           const Mat2& r2, const Mat2& r12);

struct VacuumConditioned {
    BipartiteCM cm;
    /// Probability that both ancillas stay in vacuum.
    double p0 = 0.0;
};

/// Gaussian state after mixing each mode with vacuum at transmissivity tau and finding both ancillas empty.
VacuumConditioned vacuum_condition(const BipartiteCM& cm, double tau);

/// Characteristic function of the probabilistically subtracted state at (alpha_pt, beta_pt).
cplx char_fn_2ps(const BipartiteCM& cm, double tau, const Vec& alpha_pt, const Vec& beta_pt);
/// Characteristic function of the heuristically subtracted state.
cplx char_fn_heuristic(const BipartiteCM& cm, const Vec& alpha_pt, const Vec& beta_pt);

/// Bell-type homodyne measurement on modes B and C of (A,B) and (C,D); returns the (A,D) state.
BipartiteCM swap(const BipartiteCM& ab, const BipartiteCM& cd);

struct SymmetricSwap {
    double alpha;
    double eps;
};

/// alpha - gamma^2/(2 beta) on the diagonal and gamma^2/(2 beta) sigma_z correlation.
SymmetricSwap swap_symmetric(double alpha, double beta, double gamma);

}  // namespace cvq
