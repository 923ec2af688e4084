#include "cvq/illumination.hpp"

#include <cmath>

namespace cvq {

void validate(const QiParams& p) {
    if (!(p.n_s >= 0.0) || !(p.n_th >= 0.0) || !(p.gamma >= 0.0))
        throw invalid_input("QI parameters must be non-negative");
    if (!(p.eta >= 0.0 && p.eta <= 1.0)) throw invalid_input("QI reflectivity must lie in [0,1]");
}

double eta_eff(double eta, double gamma) { return eta * std::exp(-gamma); }

double absorption_transmissivity_logistic(double gamma, int k) {
    if (k < 0 || k > 60) throw invalid_input("absorption_transmissivity_logistic: k out of range");
    // Reflectivity of the composed array x_{j+1} = 2 x_j - x_j^2, starting from gamma / 2^k.
    double x = gamma / std::ldexp(1.0, k);
    for (int j = 0; j < k; ++j) x = 2.0 * x - x * x;
    return 1.0 - x;
}

GaussianState qi_probe(double n_s, double n_th) {
    if (!(n_s >= 0.0) || !(n_th >= 0.0)) throw invalid_input("qi_probe: photon numbers must be non-negative");
    Mat s = Mat::Zero(6, 6);
    s.block<2, 2>(0, 0) = (1 + 2 * n_th) * Mat2::Identity();
    s.block<2, 2>(2, 2) = (1 + 2 * n_s + 2 * n_th) * Mat2::Identity();
    s.block<2, 2>(4, 4) = (1 + 2 * n_s) * Mat2::Identity();
    const Mat2 e = 2.0 * std::sqrt(n_s * (n_s + 1)) * sigma_z();
    s.block<2, 2>(2, 4) = e;
    s.block<2, 2>(4, 2) = e;
    return {3, Vec::Zero(6), s};
}

BipartiteCM qi_received(const QiParams& p) {
    validate(p);
    const double x = eta_eff(p.eta, p.gamma);
    const double f = 1 + 2 * p.n_th + 2 * p.n_s * x * x;
    const double g = 2 * std::sqrt(p.n_s * (1 + p.n_s)) * x;
    BipartiteCM cm = BipartiteCM::standard(f, 1 + 2 * p.n_s, g);
    return cm;
}

BipartiteCM qi_received_constructive(const QiParams& p) {
    validate(p);
    const double x = eta_eff(p.eta, p.gamma);
    // Amplitude x on the diagonal corresponds to intensity x^2 in beam_splitter.
    const GaussianState out = apply(qi_probe(p.n_s, p.n_th), beam_splitter(x * x), {0, 1});
    return BipartiteCM::from_full(partial_trace(out, {1, 2}).sigma);
}

GaussianState qi_classical_received(const QiParams& p) {
    validate(p);
    const double x = eta_eff(p.eta, p.gamma);
    GaussianState in{2, Vec::Zero(4), (1 + 2 * p.n_th) * Mat::Identity(4, 4)};
    in.d(2) = std::sqrt(2.0 * p.n_s);
    return partial_trace(apply(in, beam_splitter(x * x), {0, 1}), {1});
}

GaussianFamily qi_quantum_family(double n_s, double n_th, double gamma) {
    return [=](double eta) { return qi_received(QiParams{n_s, n_th, gamma, eta}).state(); };
}

GaussianFamily qi_classical_family(double n_s, double n_th, double gamma) {
    return [=](double eta) { return qi_classical_received(QiParams{n_s, n_th, gamma, eta}); };
}

double h_q(const QiParams& p) {
    validate(p);
    if (!(p.n_th > 0.0)) throw regularization_error("h_q: N_th = 0 makes the received state pure at eta ~ 0");
    if (!(p.n_s > 0.0)) return 0.0;
    return 4 * p.n_s * std::exp(-2 * p.gamma) * (1 + p.n_s) / (1 + 2 * p.n_s * p.n_th + p.n_s + p.n_th);
}

double h_c(const QiParams& p) {
    validate(p);
    return 4 * std::exp(-2 * p.gamma) * p.n_s / (2 * p.n_th + 1);
}

double gain(const QiParams& p) {
    validate(p);
    return (1 + p.n_s) * (1 + 2 * p.n_th) / (1 + 2 * p.n_s * p.n_th + p.n_s + p.n_th);
}

double qi_probe_nu_minus(double n_s, double n_th) {
    const double inner = 8 * n_s * n_s - 2 * (2 * n_s + n_th + 1) * std::sqrt(4 * n_s * (n_s + 1) + n_th * n_th) +
                         4 * n_s * n_th + 8 * n_s + 2 * n_th * n_th + 2 * n_th + 1;
    return std::sqrt(std::max(0.0, inner));
}

}  // namespace cvq
