#pragma once

#include "cvq/entanglement.hpp"

#include <functional>
#include <limits>

namespace cvq {

inline constexpr double planck_h = 6.62607015e-34;
inline constexpr double boltzmann_k = 1.380649e-23;
inline constexpr double speed_of_light = 299792458.0;

/// Mean photon number 1/(e^{h nu / k_B T} - 1).
double bose_einstein(double nu, double temperature);

struct AirChannel {
    /// Attenuation density in 1/m.
    double mu = 0.0;
    /// Distance in m.
    double length = 0.0;
    double n_th = 0.0;
    double eta_ant = 0.0;
};

void validate(const AirChannel& ch);

double eta_env(const AirChannel& ch);
/// 1 - e^{-mu L}(1 - eta_ant).
double eta_eff(const AirChannel& ch);

struct InhomogeneousChannel {
    double eta = 0.0;
    double n_th_eff = 0.0;
};

/// eta = 1 - e^{-int_0^L mu}, and the thermal photons seen at x = L weighted by mu(x) e^{-int_x^L mu}.
InhomogeneousChannel eta_env_inhomogeneous(const std::function<double(double)>& mu_fn,
                                           const std::function<double(double)>& n_fn, double length);

enum class Geometry { asym, sym };

/// Two-mode squeezed thermal pair sent through the channel: asym loses one arm over L, sym loses
/// both arms over L/2 each.
BipartiteCM lossy_tmst(const AirChannel& ch, double r, double n, Geometry geometry);
/// Same state built from tmst, a thermal environment mode and a beam splitter per lossy arm.
BipartiteCM lossy_tmst_constructive(const AirChannel& ch, double r, double n, Geometry geometry);

/// Upper reflectivity below which the asym state stays entangled; 0 when n >= e^{-r} sinh r or r <= 0.
double eta_max(double r, double n, double n_th);

struct Reach {
    bool ever_entangled = false;
    double length = 0.0;
};

/// Distance at which the partially transposed nu_minus reaches 1 (closed form for asym, bisection for sym).
Reach l_max(const AirChannel& ch, double r, double n, Geometry geometry, double tol = 0.01);

/// Phase-insensitive amplification of the listed modes: Sigma -> g Sigma + (g-1)(1+2n_h) I.
BipartiteCM hemt_amplify(const BipartiteCM& cm, double gain, double n_h, const std::vector<int>& modes);

struct PathLoss {
    double linear = 0.0;
    double db = 0.0;
};

double wavelength(double nu);
/// (4 pi d nu / c)^2.
PathLoss fspl(double nu, double d);

struct LinkGeometry {
    double nu = 0.0;
    double d = 0.0;
    /// Parabolic aperture radius.
    double a = 0.0;
    double e_a = 1.0;
    /// Initial spot size.
    double w0 = 0.0;
    /// Receiver aperture radius.
    double a_r = 0.0;
    /// Beam curvature radius at the transmitter; infinity for a collimated beam.
    double r0 = std::numeric_limits<double>::infinity();
};

/// (pi a / lambda)^2 e_a.
double directivity(const LinkGeometry& g);
/// Received-to-emitted power ratio D^2 / L_FSPL for identical antennas.
double friis(const LinkGeometry& g);
/// (pi a^2 e_a / (4 d lambda))^2.
double tau_path(const LinkGeometry& g);

double rayleigh_distance(const LinkGeometry& g);
double spot_size(const LinkGeometry& g);
/// 1 - e^{-2 a_r^2 / w^2}.
double tau_diffraction(const LinkGeometry& g);
/// (pi w0 a_r / (lambda d))^2.
double tau_diffraction_far_field(const LinkGeometry& g);

/// Reflectivity thresholds below which entanglement survives: 1/(1+N_th) and 1/(1+N_th(1+coth r)).
double eta_threshold_asym(double n_th);
double eta_threshold_sym(double n_th, double r);

/// (lambda / pi) sqrt(-ln eta_lim).
double entanglement_region_constant(double lambda_wl, double eta_lim);
/// Minimum a_r w0 in m^2 at distance d.
double aperture_product_threshold(double lambda_wl, double eta_lim, double d);

/// Attenuation densities (1/m).
inline constexpr double mu_oxygen_5ghz = 1.44e-6;
inline constexpr double mu_water_vapor_average = 1.44e-6 * 551.38 / 450.0;
inline constexpr double mu_water_vapor_maximum = 1.44e-6 * 551.38 / 400.0;
inline constexpr double mu_qi_experiment = 2.3e-3 / 1000.0;

}  // namespace cvq
