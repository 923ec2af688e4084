#pragma once

#include "cvq/entanglement.hpp"
#include "cvq/estimation.hpp"

namespace cvq {

struct QiParams {
    double n_s = 0.0;
    double n_th = 0.0;
    /// Absorption exponent mu * L.
    double gamma = 0.0;
    double eta = 0.0;
};

void validate(const QiParams& p);

double eta_eff(double eta, double gamma);

/// Total transmissivity of 2^k identical splitters, each with reflectivity gamma / 2^k,
/// composed through the logistic-map recursion; approaches e^{-gamma}.
double absorption_transmissivity_logistic(double gamma, int k);

/// Three modes (bath, signal, idler) with null displacement.
GaussianState qi_probe(double n_s, double n_th);

/// Received (reflected signal, idler) covariance from the closed f, g entries.
BipartiteCM qi_received(const QiParams& p);

/// Same state built by a beam splitter of amplitude eta_eff on (bath, signal), then tracing the transmitted port.
BipartiteCM qi_received_constructive(const QiParams& p);

/// Received coherent-probe state (single mode) for alpha^2 = n_s.
GaussianState qi_classical_received(const QiParams& p);

/// Families in eta used by the numeric QFI cross-checks.
GaussianFamily qi_quantum_family(double n_s, double n_th, double gamma);
GaussianFamily qi_classical_family(double n_s, double n_th, double gamma);

double h_q(const QiParams& p);
double h_c(const QiParams& p);
double gain(const QiParams& p);

/// Displayed radical closed form of the signal-idler partially transposed nu_minus of the probe.
double qi_probe_nu_minus(double n_s, double n_th);

}  // namespace cvq
