#include "cvq/channel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

namespace cvq {

namespace {

using boost::math::quadrature::gauss_kronrod;

double integrate(const std::function<double(double)>& f, double a, double b) {
    double err = 0.0;
    const double val = gauss_kronrod<double, 21>::integrate(f, a, b, 15, 1e-10, &err);
    if (!(std::abs(err) <= 1e-8 * std::max(1.0, std::abs(val))))
        throw computation_error("eta_env_inhomogeneous: quadrature did not converge");
    return val;
}

/// Mixes the listed modes of `state` with fresh thermal modes of n_th photons at reflectivity eta.
GaussianState lossy_arms(const GaussianState& state, const std::vector<int>& arms, double eta, double n_th) {
    const int base = state.n_modes;
    const int total = base + static_cast<int>(arms.size());
    GaussianState big{total, Vec::Zero(2 * total), Mat::Identity(2 * total, 2 * total) * (1 + 2 * n_th)};
    big.sigma.topLeftCorner(2 * base, 2 * base) = state.sigma;
    big.d.head(2 * base) = state.d;
    for (std::size_t k = 0; k < arms.size(); ++k)
        big = apply(big, beam_splitter(1.0 - eta), {arms[k], base + static_cast<int>(k)});
    std::vector<int> keep(base);
    for (int i = 0; i < base; ++i) keep[i] = i;
    return partial_trace(big, keep);
}

AirChannel arm_channel(const AirChannel& ch, Geometry geometry) {
    AirChannel arm = ch;
    if (geometry == Geometry::sym) arm.length = ch.length / 2;
    return arm;
}

double nu_minus_at(const AirChannel& ch, double r, double n, Geometry geometry, double length) {
    AirChannel c = ch;
    c.length = length;
    return pts_eigenvalues(lossy_tmst(c, r, n, geometry)).first;
}

}  // namespace

double bose_einstein(double nu, double temperature) {
    if (!(nu > 0.0) || !(temperature > 0.0)) throw invalid_input("bose_einstein: frequency and temperature must be positive");
    return 1.0 / std::expm1(planck_h * nu / (boltzmann_k * temperature));
}

void validate(const AirChannel& ch) {
    if (!(ch.mu >= 0.0) || !(ch.length >= 0.0) || !(ch.n_th >= 0.0))
        throw invalid_input("channel: mu, length and n_th must be non-negative");
    if (!(ch.eta_ant >= 0.0 && ch.eta_ant <= 1.0)) throw invalid_input("channel: eta_ant must lie in [0,1]");
}

double eta_env(const AirChannel& ch) {
    validate(ch);
    return -std::expm1(-ch.mu * ch.length);
}

double eta_eff(const AirChannel& ch) {
    validate(ch);
    return 1.0 - std::exp(-ch.mu * ch.length) * (1.0 - ch.eta_ant);
}

InhomogeneousChannel eta_env_inhomogeneous(const std::function<double(double)>& mu_fn,
                                           const std::function<double(double)>& n_fn, double length) {
    if (!(length >= 0.0)) throw invalid_input("eta_env_inhomogeneous: length must be non-negative");
    if (length == 0.0) return {0.0, 0.0};
    const double depth = integrate(mu_fn, 0.0, length);
    const double eta = -std::expm1(-depth);
    if (!(eta > 0.0)) return {0.0, 0.0};
    auto weight = [&](double x) {
        const double tail = x < length ? integrate(mu_fn, x, length) : 0.0;
        return mu_fn(x) * n_fn(x) * std::exp(-tail);
    };
    return {eta, integrate(weight, 0.0, length) / eta};
}

BipartiteCM lossy_tmst(const AirChannel& ch, double r, double n, Geometry geometry) {
    validate(ch);
    if (!(n >= 0.0)) throw invalid_input("lossy_tmst: n must be non-negative");
    const double eta = eta_eff(arm_channel(ch, geometry));
    const double c2 = (1 + 2 * n) * std::cosh(2 * r);
    const double s2 = (1 + 2 * n) * std::sinh(2 * r);
    const double lossy = (1 + 2 * ch.n_th) * eta + (1 - eta) * c2;
    if (geometry == Geometry::asym) return BipartiteCM::standard(lossy, c2, std::sqrt(1 - eta) * s2);
    return BipartiteCM::standard(lossy, lossy, (1 - eta) * s2);
}

BipartiteCM lossy_tmst_constructive(const AirChannel& ch, double r, double n, Geometry geometry) {
    validate(ch);
    const double eta = eta_eff(arm_channel(ch, geometry));
    const std::vector<int> arms = geometry == Geometry::asym ? std::vector<int>{0} : std::vector<int>{0, 1};
    return BipartiteCM::from_full(lossy_arms(tmst(r, n), arms, eta, ch.n_th).sigma);
}

double eta_max(double r, double n, double n_th) {
    if (!(r > 0.0) || !(n < std::exp(-r) * std::sinh(r))) return 0.0;
    return 1.0 / (1.0 + n_th / (1.0 + 2 * n * (1 + n) / (1.0 - (1 + 2 * n) * std::cosh(2 * r))));
}

Reach l_max(const AirChannel& ch, double r, double n, Geometry geometry, double tol) {
    validate(ch);
    if (!(ch.mu > 0.0)) throw invalid_input("l_max: mu must be positive");
    if (geometry == Geometry::asym) {
        const double em = eta_max(r, n, ch.n_th);
        if (!(em > ch.eta_ant)) return {};
        return {true, -std::log((1 - em) / (1 - ch.eta_ant)) / ch.mu};
    }
    auto f = [&](double length) { return nu_minus_at(ch, r, n, geometry, length) - 1.0; };
    if (!(f(0.0) < 0.0)) return {};
    double hi = 1.0 / ch.mu;
    while (f(hi) < 0.0) {
        hi *= 2;
        if (hi > 1e6 / ch.mu) return {true, std::numeric_limits<double>::infinity()};
    }
    auto done = [tol](double a, double b) { return std::abs(b - a) <= tol; };
    const auto [a, b] = boost::math::tools::bisect(f, 0.0, hi, done);
    return {true, 0.5 * (a + b)};
}

BipartiteCM hemt_amplify(const BipartiteCM& cm, double gain, double n_h, const std::vector<int>& modes) {
    if (!(gain >= 1.0)) throw invalid_input("hemt_amplify: gain must be at least 1");
    if (!(n_h >= 0.0)) throw invalid_input("hemt_amplify: n_h must be non-negative");
    validate_modes(modes, 2);
    Mat4 s = cm.full();
    Vec scale = Vec::Ones(4);
    for (int m : modes) scale.segment<2>(2 * m).setConstant(std::sqrt(gain));
    s = scale.asDiagonal() * s * scale.asDiagonal();
    for (int m : modes) s.block<2, 2>(2 * m, 2 * m) += (gain - 1) * (1 + 2 * n_h) * Mat2::Identity();
    return BipartiteCM::from_full(s);
}

double wavelength(double nu) {
    if (!(nu > 0.0)) throw invalid_input("wavelength: frequency must be positive");
    return speed_of_light / nu;
}

PathLoss fspl(double nu, double d) {
    if (!(nu > 0.0) || !(d > 0.0)) throw invalid_input("fspl: frequency and distance must be positive");
    const double amp = 4 * std::numbers::pi * d * nu / speed_of_light;
    return {amp * amp, 20 * std::log10(amp)};
}

namespace {

void validate(const LinkGeometry& g) {
    if (!(g.nu > 0.0) || !(g.d > 0.0)) throw invalid_input("link: frequency and distance must be positive");
    if (!(g.e_a > 0.0 && g.e_a <= 1.0)) throw invalid_input("link: aperture efficiency must lie in (0,1]");
}

}  // namespace

double directivity(const LinkGeometry& g) {
    validate(g);
    const double x = std::numbers::pi * g.a / wavelength(g.nu);
    return x * x * g.e_a;
}

double friis(const LinkGeometry& g) {
    const double dir = directivity(g);
    return dir * dir / fspl(g.nu, g.d).linear;
}

double tau_path(const LinkGeometry& g) {
    validate(g);
    const double x = std::numbers::pi * g.a * g.a * g.e_a / (4 * g.d * wavelength(g.nu));
    return x * x;
}

double rayleigh_distance(const LinkGeometry& g) {
    validate(g);
    if (!(g.w0 > 0.0)) throw invalid_input("link: spot size must be positive");
    return std::numbers::pi * g.w0 * g.w0 / (2 * wavelength(g.nu));
}

double spot_size(const LinkGeometry& g) {
    const double dr = rayleigh_distance(g);
    const double focus = std::isinf(g.r0) ? 1.0 : 1.0 - g.d / g.r0;
    return g.w0 / std::sqrt(2.0) * std::sqrt(focus * focus + (g.d / dr) * (g.d / dr));
}

double tau_diffraction(const LinkGeometry& g) {
    if (!(g.a_r > 0.0)) throw invalid_input("link: receiver aperture must be positive");
    const double w = spot_size(g);
    return -std::expm1(-2 * g.a_r * g.a_r / (w * w));
}

double tau_diffraction_far_field(const LinkGeometry& g) {
    validate(g);
    const double x = std::numbers::pi * g.w0 * g.a_r / (wavelength(g.nu) * g.d);
    return x * x;
}

double eta_threshold_asym(double n_th) {
    if (!(n_th >= 0.0)) throw invalid_input("eta_threshold_asym: n_th must be non-negative");
    return 1.0 / (1.0 + n_th);
}

double eta_threshold_sym(double n_th, double r) {
    if (!(n_th >= 0.0) || !(r > 0.0)) throw invalid_input("eta_threshold_sym: need n_th >= 0 and r > 0");
    return 1.0 / (1.0 + n_th * (1.0 + 1.0 / std::tanh(r)));
}

double entanglement_region_constant(double lambda_wl, double eta_lim) {
    if (!(lambda_wl > 0.0) || !(eta_lim > 0.0 && eta_lim < 1.0))
        throw invalid_input("entanglement_region_constant: need lambda > 0 and eta_lim in (0,1)");
    return lambda_wl / std::numbers::pi * std::sqrt(-std::log(eta_lim));
}

double aperture_product_threshold(double lambda_wl, double eta_lim, double d) {
    if (!(d > 0.0)) throw invalid_input("aperture_product_threshold: distance must be positive");
    return d * entanglement_region_constant(lambda_wl, eta_lim);
}

}  // namespace cvq
