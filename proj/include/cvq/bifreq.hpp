#pragma once

#include "cvq/entanglement.hpp"
#include "cvq/estimation.hpp"

#include <array>

namespace cvq {

struct BifreqParams {
    /// Reference reflectivity at the first frequency.
    double eta1 = 0.0;
    /// Reflectivity difference eta2 - eta1.
    double lambda = 0.0;
    /// Squeezing photons sinh^2 r.
    double n_r = 0.0;
    /// Thermal photons of the two inputs to the squeezer.
    double n = 0.0;
    double n_th = 0.0;
    /// Medium absorption exponent mu * L; scales both signal transmissions by e^{-gamma}.
    double absorption = 0.0;

    /// Photon number per mode of the probe, n (1 + 2 N_r) + N_r.
    double n_s() const { return n * (1 + 2 * n_r) + n_r; }
    double eta2() const { return eta1 + lambda; }
};

void validate(const BifreqParams& p);

struct ThermalRatio {
    double exact;
    double first_order;
};

/// N1 / N2 for two Bose-Einstein occupations at omega1 and omega1 (1 + delta_rel).
ThermalRatio thermal_ratio(double beta_omega1, double delta_rel);

/// Four modes ordered (bath 1, signal 1, bath 2, signal 2). The signals form a two-mode squeezed
/// thermal pair whose per-mode diagonal is (1+2n)(1+4N_r).
GaussianState bifreq_probe(const BifreqParams& p);

/// Received (signal 1, signal 2) state after reflectivities eta1 and eta1+lambda on the two arms.
BipartiteCM bifreq_received(const BifreqParams& p);

/// Diagonal entries of the received covariance in the displayed closed form.
double bifreq_printed_a(const BifreqParams& p);
double bifreq_printed_c(const BifreqParams& p);

/// Two coherent beams with |alpha|^2 = N_S each, reflected with the same reflectivities.
GaussianState bifreq_coherent_received(const BifreqParams& p);

/// Families in lambda with every other parameter frozen.
GaussianFamily bifreq_quantum_family(const BifreqParams& p);
GaussianFamily bifreq_coherent_family(const BifreqParams& p);

/// Finite-difference step used for the two-sided lambda -> 0 limit.
double bifreq_step(const BifreqParams& p);

/// Numeric QFI at lambda = 0, evaluated on the absorption-free problem at eta1 e^{-gamma} and rescaled by e^{-2 gamma}.
double h_q_bifreq(const BifreqParams& p);
double h_c_bifreq_numeric(const BifreqParams& p);
/// Closed form; the bath-only term is taken as its limit 0 when N_th = 0.
double h_c_bifreq(const BifreqParams& p);

double bifreq_ratio(const BifreqParams& p);
/// eta1 -> 1 value of H_Q / H_C.
double bifreq_ratio_limit(double n_s, double n_th);
/// eta1 -> 1, N_th -> infinity value of H_Q / H_C.
double bifreq_high_noise_limit(double n_s);

/// Optimal observable L0 + L11 a1^dag a1 + L22 a2^dag a2 + L12 (a1 a2 + a1^dag a2^dag).
struct ObservableCoeffs {
    double l11 = 0.0;
    double l22 = 0.0;
    double l12 = 0.0;
    double l0 = 0.0;
};

QuadraticObservable to_quadratic(const ObservableCoeffs& c);
/// Reads the number-operator form off a quadratic observable; throws if it has another structure.
ObservableCoeffs from_quadratic(const QuadraticObservable& o, double tol = 1e-6);

/// Coefficients of lambda + L/H from the numeric SLD at lambda = 0.
ObservableCoeffs optimal_coeffs_numeric(const BifreqParams& p);

/// Displayed closed-form L11, L22, L12 for the slice n = 0, N_r = N_S, with L0 fixed by
/// zero mean on the received state.
ObservableCoeffs optimal_coeffs_closed(double eta1, double n_s, double n_th);

/// eta1 -> 1 closed forms; L0 from zero mean on the eta1 = 1 received state.
ObservableCoeffs optimal_coeffs_high_reflectivity(double n_s, double n_th);

/// eta1 -> 1, N_th -> 0 operator -b1^dag b1 with b1 = -i(a2^dag - mu a1), mu^2 = 1 + 1/(2 N_S).
ObservableCoeffs optimal_coeffs_noiseless(double n_s);
/// Displayed version of the same operator, with constant -(1 + 1/(4 N_S)).
ObservableCoeffs optimal_coeffs_noiseless_printed(double n_s);

/// Displayed variance 2 N_S^2 L12 (1 + N_S) of the optimal observable.
double printed_variance(double eta1, double n_s, double n_th);

/// printed_variance * H_Q - 1 on the slice n = 0, N_r = N_S.
double qcr_residual(double eta1, double n_s, double n_th);

struct QcrRoot {
    bool found = false;
    double n_th = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

/// Scans N_th on a log grid over [n_th_min, n_th_max] for a sign change of qcr_residual and refines it.
QcrRoot qcr_root(double eta1, double n_s, double n_th_min = 1e-3, double n_th_max = 1e6, int grid = 91);

/// Two beam splitters, two single-mode squeezers and a phase shift acting on (a1, a2).
struct JpaNetwork {
    double phi = 0.0;
    double theta = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double phi_shift = 0.0;
};

/// Output mode b1 = u1 a1 + u2 a2 + v1 a1^dag + v2 a2^dag.
struct Bogoliubov {
    cplx u1, u2, v1, v2;
};

Bogoliubov jpa_forward(const JpaNetwork& net);

/// (u1 - i mu, v2 + i) split into real and imaginary parts.
std::array<double, 4> jpa_residual(const JpaNetwork& net, double mu);

struct JpaSolution {
    JpaNetwork network;
    double residual = 0.0;
    int iterations = 0;
};

/// Damped Gauss-Newton search from phi = theta = pi/4, r1 = r2 = asinh 1.
JpaSolution jpa_synthesis(double mu, int max_iter = 200);

}  // namespace cvq
