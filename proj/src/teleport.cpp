#include "cvq/teleport.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>

namespace cvq {

Mat2 gamma_of(const BipartiteCM& cm) {
    const Mat2 s = sigma_z();
    return s * cm.sigma_a * s + cm.sigma_b - s * cm.eps - cm.eps.transpose() * s;
}

double fidelity_gaussian(const BipartiteCM& cm) { return fidelity_concatenated(cm, 1); }

double fidelity_standard(double alpha, double beta, double gamma) {
    return 1.0 / (1.0 + 0.5 * (alpha + beta - 2 * gamma));
}

double fidelity_concatenated(const BipartiteCM& cm, int k) {
    if (k < 1) throw invalid_input("fidelity_concatenated: k must be at least 1");
    const double det = (Mat2::Identity() + (k - 0.5) * gamma_of(cm)).determinant();
    if (!(det > 0.0)) throw computation_error("fidelity: det(I + Gamma/2) must be positive");
    return 1.0 / std::sqrt(det);
}

double fidelity_ps_tmsv(double lt, int k) {
    if (!(lt >= 0.0 && lt < 1.0)) throw invalid_input("fidelity_ps_tmsv: lambda_tau must lie in [0,1)");
    if (k == 1) return (1 - lt + lt * lt / 2) * std::pow(1 + lt, 3) / (2 * (1 + lt * lt));
    if (k == 2) {
        const double u = lt * (2 - lt);
        return std::pow(1 + lt, 5) * (8 - u * (8 - 3 * u)) / (16 * (1 + 4 * lt * lt + std::pow(lt, 4)));
    }
    throw invalid_input("fidelity_ps_tmsv: k must be 1 or 2");
}

double fidelity_tmst_channel(const AirChannel& ch, double r, double n, Geometry geometry) {
    return fidelity_gaussian(lossy_tmst(ch, r, n, geometry));
}

Ps2Fidelity fidelity_2ps_general(const BipartiteCM& cm, double tau) {
    const PsOutcome o = ps2_gaussian(cm, tau);
    return {(1 + o.g) * fidelity_gaussian(o.cm), o.g};
}

Ps2Fidelity fidelity_2ps_heuristic(const BipartiteCM& cm) {
    const double h = ps2_heuristic(cm).h;
    return {(1 + h) * fidelity_gaussian(cm), h};
}

Regaussified regaussify(const BipartiteCM& cm, double c, RegaussMode mode) {
    if (!(c > -1.0)) throw invalid_input("regaussify: correction must exceed -1");
    const Mat2 I = Mat2::Identity();
    Regaussified out;
    Mat2 a = cm.sigma_a, b = cm.sigma_b;
    if (mode == RegaussMode::asym) a = b = 0.5 * (cm.sigma_a + cm.sigma_b);
    out.cm.sigma_a = (a - c * I) / (1 + c);
    out.cm.sigma_b = (b - c * I) / (1 + c);
    out.cm.eps = cm.eps / (1 + c);
    out.validity = cm_validity(out.cm);
    out.physical = is_physical(out.cm);
    return out;
}

double fidelity_swapped(double alpha, double beta, double gamma) {
    if (!(beta > 0.0)) throw invalid_input("fidelity_swapped: beta must be positive");
    return 1.0 / (1.0 + alpha - gamma * gamma / beta);
}

double fidelity_finite_gain(double a, double b, double g, double gain, double theta) {
    if (!(gain > 0.0)) throw invalid_input("fidelity_finite_gain: gain must be positive");
    const double s = 1.0 / std::sqrt(gain);
    const double num = 2 * (2 + s * (1 + a));
    const double den = 4 * (1 + (a + b - 2 * g) / 2) + s * (a * (5 + b) + b - (g - 1) * (g + 5)) + 2 / gain * (1 + a);
    const double expo = 2 / gain * std::pow(1 - a + g, 2) * theta * theta / ((2 + s * (1 + a)) * den);
    return num / den * std::exp(-expo);
}

SwapFiniteGain swap_finite_gain(double alpha, double beta, double gamma, double gain) {
    if (!(gain > 0.0)) throw invalid_input("swap_finite_gain: gain must be positive");
    const double s = 1.0 / std::sqrt(gain);
    const double den = 2 * (beta + s * (1 + beta * beta) + beta / gain);
    return {alpha - gamma * gamma * (1 + 2 * s * beta + 1 / gain) / den, gamma * gamma * (1 - 1 / gain) / den};
}

double classical_limit_distance(const std::function<double(double)>& fidelity, double lo, double hi, double tol) {
    auto f = [&](double length) { return fidelity(length) - 0.5; };
    const double flo = f(lo), fhi = f(hi);
    if ((flo < 0) == (fhi < 0)) throw computation_error("classical_limit_distance: no crossing of 1/2 in range");
    auto done = [tol](double a, double b) { return std::abs(b - a) <= tol; };
    const auto [a, b] = boost::math::tools::bisect(f, lo, hi, done);
    return 0.5 * (a + b);
}

}  // namespace cvq
