#include "cvq/bifreq.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

namespace cvq {

namespace {

double signal_gain(const BifreqParams& p) { return std::exp(-p.absorption); }

/// Thermal bath on the first mode and `signal` on the second, mixed by a splitter of reflectivity eta.
Mat probe_covariance(const BifreqParams& p) {
    // Two-mode squeezing with sinh^2 r' = 2 N_r acting on thermal inputs of n photons.
    const double rp = std::asinh(std::sqrt(2.0 * p.n_r));
    const GaussianState pair = tmst(rp, p.n);
    Mat s = Mat::Zero(8, 8);
    const double bath = 1 + 2 * p.n_th;
    s.block<2, 2>(0, 0) = bath * Mat2::Identity();
    s.block<2, 2>(4, 4) = bath * Mat2::Identity();
    const int sig[2] = {2, 6};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s.block<2, 2>(sig[i], sig[j]) = pair.sigma.block<2, 2>(2 * i, 2 * j);
    return s;
}

struct ReflectionCoefficients {
    double eta1;
    double eta2;
};

ReflectionCoefficients effective(const BifreqParams& p) {
    const double g = signal_gain(p);
    return {g * p.eta1, g * p.eta2()};
}

struct ClosedDenominator {
    double a, b, c, d;
    double value() const { return a - b + c - d; }
    double scale() const { return std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d); }
};

ClosedDenominator closed_denominator(double e, double ns, double nth) {
    ClosedDenominator k{};
    k.a = 8 * (e - 1) * e * std::pow(ns, 3) * (2 * nth + 1);
    k.b = 4 * ns * ns *
          (-e + std::pow(e + 3 * e * nth, 2) - e * nth * (10 * nth + 7) + 3 * nth * (nth + 1) + 1);
    k.c = 2 * ns * nth * (-e + nth * (e * (3 * e - 8) + 4 * (e - 1) * (2 * e - 1) * nth + 3) + 1);
    k.d = nth * nth * (2 * (e - 1) * nth * ((e - 1) * nth - 1) + 1);
    if (!(std::abs(k.value()) > 1e-14 * k.scale()))
        throw computation_error("optimal_coeffs_closed: singular parameters, A - B + C - D vanishes");
    return k;
}

double closed_l12(double e, double ns, double nth) {
    const ClosedDenominator k = closed_denominator(e, ns, nth);
    return -std::sqrt(2.0) * std::sqrt(ns * (2 * ns + 1)) * (e * e * (ns * (4 * nth + 2) - nth * nth) + nth * (nth + 1)) /
           k.value();
}

void require_positive_signal(double n_s, const char* where) {
    if (!(n_s > 0.0)) throw invalid_input(std::string(where) + ": N_S must be positive");
}

}  // namespace

void validate(const BifreqParams& p) {
    if (!(p.n_r >= 0.0) || !(p.n >= 0.0) || !(p.n_th >= 0.0) || !(p.absorption >= 0.0))
        throw invalid_input("bifreq: photon numbers and absorption must be non-negative");
    if (!(p.eta1 >= 0.0 && p.eta1 <= 1.0)) throw invalid_input("bifreq: eta1 must lie in [0,1]");
    const double e2 = p.eta2();
    if (!(e2 >= 0.0 && e2 <= 1.0)) throw invalid_input("bifreq: eta1 + lambda must lie in [0,1]");
}

ThermalRatio thermal_ratio(double beta_omega1, double delta_rel) {
    if (!(beta_omega1 > 0.0)) throw invalid_input("thermal_ratio: beta omega1 must be positive");
    return {std::expm1(beta_omega1) / std::expm1(beta_omega1 * (1 + delta_rel)), 1.0 - delta_rel};
}

GaussianState bifreq_probe(const BifreqParams& p) {
    validate(p);
    return {4, Vec::Zero(8), probe_covariance(p)};
}

BipartiteCM bifreq_received(const BifreqParams& p) {
    const GaussianState probe = bifreq_probe(p);
    const auto [e1, e2] = effective(p);
    const GaussianState out = apply(apply(probe, beam_splitter(e1), {0, 1}), beam_splitter(e2), {2, 3});
    return BipartiteCM::from_full(partial_trace(out, {1, 3}).sigma);
}

double bifreq_printed_a(const BifreqParams& p) {
    validate(p);
    return 1 + 2 * p.n_th + 2 * p.eta1 * (2 * p.n_r + 4 * p.n * p.n_r - p.n_th);
}

double bifreq_printed_c(const BifreqParams& p) {
    validate(p);
    return (1 + 2 * p.n) *
           (1 + 4 * p.lambda * p.n_r + p.eta1 * (4 * p.n_r - 2 * p.n_th) + 2 * (1 - p.lambda) * p.n_th);
}

GaussianState bifreq_coherent_received(const BifreqParams& p) {
    validate(p);
    const auto [e1, e2] = effective(p);
    const double alpha = std::sqrt(p.n_s());
    GaussianState out{2, Vec::Zero(4), Mat::Zero(4, 4)};
    const double etas[2] = {e1, e2};
    for (int k = 0; k < 2; ++k) {
        GaussianState in{2, Vec::Zero(4), (1 + 2 * p.n_th) * Mat::Identity(4, 4)};
        in.sigma.block<2, 2>(2, 2) = Mat2::Identity();
        in.d(2) = std::sqrt(2.0) * alpha;
        const GaussianState arm = partial_trace(apply(in, beam_splitter(etas[k]), {0, 1}), {1});
        out.sigma.block<2, 2>(2 * k, 2 * k) = arm.sigma;
        out.d.segment<2>(2 * k) = arm.d;
    }
    return out;
}

GaussianFamily bifreq_quantum_family(const BifreqParams& p) {
    return [p](double lambda) {
        BifreqParams q = p;
        q.lambda = lambda;
        return bifreq_received(q).state();
    };
}

GaussianFamily bifreq_coherent_family(const BifreqParams& p) {
    return [p](double lambda) {
        BifreqParams q = p;
        q.lambda = lambda;
        return bifreq_coherent_received(q);
    };
}

double bifreq_step(const BifreqParams& p) {
    validate(p);
    const double room = std::min(1.0 - p.eta1, p.eta1);
    if (!(room > 0.0)) throw invalid_input("bifreq: the two-sided lambda limit needs 0 < eta1 < 1");
    return std::min(1e-5, room / 30.0);
}

namespace {

/// Same received states with the absorption folded into eta1; d eta_eff / d lambda = e^{-gamma}.
BifreqParams absorbed(const BifreqParams& p) {
    validate(p);
    BifreqParams q = p;
    q.eta1 = signal_gain(p) * p.eta1;
    q.lambda = signal_gain(p) * p.lambda;
    q.absorption = 0.0;
    return q;
}

}  // namespace

double h_q_bifreq(const BifreqParams& p) {
    const BifreqParams q = absorbed(p);
    const double g = signal_gain(p);
    return g * g * gaussian_qfi(bifreq_quantum_family(q), 0.0, bifreq_step(q), QfiRoute::general);
}

double h_c_bifreq_numeric(const BifreqParams& p) {
    const BifreqParams q = absorbed(p);
    const double g = signal_gain(p);
    return g * g * gaussian_qfi(bifreq_coherent_family(q), 0.0, bifreq_step(q), QfiRoute::general);
}

double h_c_bifreq(const BifreqParams& p) {
    validate(p);
    const double g = signal_gain(p);
    const double e = g * p.eta1;
    if (!(e > 0.0)) throw invalid_input("h_c_bifreq: effective eta1 must be positive");
    const double x = 1 + 2 * p.n_th * (1 - e);
    double bath_term = 0.0;
    if (p.n_th > 0.0) {
        const double den = std::pow(x, 4) - 1;
        if (!(den > 0.0)) throw regularization_error("h_c_bifreq: bath term diverges at eta1 = 1 with N_th > 0");
        bath_term = 4 * p.n_th * p.n_th * (x * x + 1) / den;
    }
    return g * g * (bath_term + p.n_s() / (e * x));
}

double bifreq_ratio(const BifreqParams& p) { return h_q_bifreq(p) / h_c_bifreq(p); }

double bifreq_ratio_limit(double n_s, double n_th) {
    if (!(n_th > 0.0)) throw invalid_input("bifreq_ratio_limit: N_th must be positive");
    return (n_s * n_s * (8 * n_th * (n_th + 1) + 4) + 4 * n_s * n_th * n_th + n_th * n_th) /
           (n_th * (n_s * (4 * n_th + 2) + n_th));
}

double bifreq_high_noise_limit(double n_s) { return 1 + 8 * n_s * n_s / (4 * n_s + 1); }

QuadraticObservable to_quadratic(const ObservableCoeffs& c) {
    QuadraticObservable o{Mat::Zero(4, 4), Vec::Zero(4), c.l0 - 0.5 * (c.l11 + c.l22)};
    o.quad(0, 0) = o.quad(1, 1) = 0.5 * c.l11;
    o.quad(2, 2) = o.quad(3, 3) = 0.5 * c.l22;
    o.quad(0, 2) = o.quad(2, 0) = 0.5 * c.l12;
    o.quad(1, 3) = o.quad(3, 1) = -0.5 * c.l12;
    return o;
}

ObservableCoeffs from_quadratic(const QuadraticObservable& o, double tol) {
    if (o.quad.rows() != 4 || o.lin.size() != 4) throw invalid_input("from_quadratic: two-mode observable expected");
    const Mat q = 0.5 * (o.quad + o.quad.transpose());
    ObservableCoeffs c{2 * q(0, 0), 2 * q(2, 2), 2 * q(0, 2), 0.0};
    c.l0 = o.c0 + 0.5 * (c.l11 + c.l22);
    const Mat rebuilt = to_quadratic(c).quad;
    const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
    if ((rebuilt - q).cwiseAbs().maxCoeff() > tol * scale || o.lin.cwiseAbs().maxCoeff() > tol * scale)
        throw computation_error("from_quadratic: observable is not of number-operator form");
    return c;
}

ObservableCoeffs optimal_coeffs_numeric(const BifreqParams& p) {
    const double h = bifreq_step(p);
    return from_quadratic(optimal_observable(bifreq_quantum_family(p), 0.0, h));
}

ObservableCoeffs optimal_coeffs_closed(double e, double ns, double nth) {
    require_positive_signal(ns, "optimal_coeffs_closed");
    if (!(nth > 0.0)) throw invalid_input("optimal_coeffs_closed: N_th must be positive");
    const ClosedDenominator k = closed_denominator(e, ns, nth);
    const double den = k.value();
    ObservableCoeffs c;
    c.l11 = -2 * e * ns * (2 * ns + 1) * (2 * nth + 1) / (-den);
    c.l22 = (4 * e * (2 * e - 1) * ns * ns * (2 * nth + 1) +
             2 * ns * (e - 2 * nth * ((e - 3) * e + (e - 1) * (3 * e - 1) * nth + 1) - 1) +
             nth * (2 * (e - 1) * nth * ((e - 1) * nth - 1) + 1)) /
            den;
    c.l12 = closed_l12(e, ns, nth);
    const BipartiteCM cm = bifreq_received(BifreqParams{e, 0.0, ns, 0.0, nth});
    c.l0 = -(0.5 * c.l11 * (cm.alpha() - 1) + 0.5 * c.l22 * (cm.beta() - 1) + c.l12 * cm.gamma());
    return c;
}

ObservableCoeffs optimal_coeffs_high_reflectivity(double ns, double nth) {
    require_positive_signal(ns, "optimal_coeffs_high_reflectivity");
    const double den = ns * ns * (8 * nth * (nth + 1) + 4) + 4 * ns * nth * nth + nth * nth;
    ObservableCoeffs c;
    c.l11 = -2 * ns * (2 * ns + 1) * (2 * nth + 1) / den;
    c.l22 = -(4 * ns * (2 * ns * nth + ns + nth) + nth) / den;
    c.l12 = std::sqrt(2.0) * std::sqrt(ns * (2 * ns + 1)) * (ns * (4 * nth + 2) + nth) / den;
    const BipartiteCM cm = bifreq_received(BifreqParams{1.0, 0.0, ns, 0.0, nth});
    c.l0 = -(0.5 * c.l11 * (cm.alpha() - 1) + 0.5 * c.l22 * (cm.beta() - 1) + c.l12 * cm.gamma());
    return c;
}

ObservableCoeffs optimal_coeffs_noiseless(double ns) {
    require_positive_signal(ns, "optimal_coeffs_noiseless");
    const double mu2 = 1 + 1 / (2 * ns);
    return {-mu2, -1.0, std::sqrt(mu2), -1.0};
}

ObservableCoeffs optimal_coeffs_noiseless_printed(double ns) {
    ObservableCoeffs c = optimal_coeffs_noiseless(ns);
    c.l0 = -(1 + 1 / (4 * ns));
    return c;
}

double printed_variance(double e, double ns, double nth) {
    require_positive_signal(ns, "printed_variance");
    return 2 * ns * ns * closed_l12(e, ns, nth) * (1 + ns);
}

double qcr_residual(double e, double ns, double nth) {
    return printed_variance(e, ns, nth) * h_q_bifreq(BifreqParams{e, 0.0, ns, 0.0, nth}) - 1.0;
}

QcrRoot qcr_root(double e, double ns, double lo, double hi, int grid) {
    if (!(lo > 0.0 && hi > lo) || grid < 2) throw invalid_input("qcr_root: invalid N_th scan range");
    auto f = [&](double nth) { return qcr_residual(e, ns, nth); };
    const double step = std::log(hi / lo) / (grid - 1);
    double x0 = lo, f0 = f(lo);
    for (int i = 1; i < grid; ++i) {
        const double x1 = lo * std::exp(step * i);
        const double f1 = f(x1);
        if (f0 == 0.0) return {true, x0, x0, x0};
        if ((f0 < 0) != (f1 < 0)) {
            std::uintmax_t iters = 100;
            const auto [a, b] = boost::math::tools::toms748_solve(f, x0, x1, f0, f1,
                                                                  boost::math::tools::eps_tolerance<double>(40), iters);
            return {true, 0.5 * (a + b), x0, x1};
        }
        x0 = x1;
        f0 = f1;
    }
    return {};
}

Bogoliubov jpa_forward(const JpaNetwork& n) {
    const double cth = std::cos(n.theta), sth = std::sin(n.theta);
    const double cph = std::cos(n.phi), sph = std::sin(n.phi);
    const cplx e1 = std::polar(1.0, n.theta1), e2 = std::polar(1.0, n.theta2);
    const cplx shift = std::polar(1.0, -n.phi_shift);
    Bogoliubov b;
    b.u1 = shift * (cth * cph * std::cosh(n.r1) - sth * sph * std::cosh(n.r2));
    b.u2 = shift * (cth * sph * std::cosh(n.r1) + sth * cph * std::cosh(n.r2));
    b.v1 = shift * (-e1 * cth * cph * std::sinh(n.r1) + e2 * sth * sph * std::sinh(n.r2));
    b.v2 = shift * (-e1 * cth * sph * std::sinh(n.r1) - e2 * sth * cph * std::sinh(n.r2));
    return b;
}

std::array<double, 4> jpa_residual(const JpaNetwork& net, double mu) {
    const Bogoliubov b = jpa_forward(net);
    const cplx r1 = b.u1 - cplx(0, mu);
    const cplx r2 = b.v2 + cplx(0, 1);
    return {r1.real(), r1.imag(), r2.real(), r2.imag()};
}

namespace {

using Params7 = Eigen::Matrix<double, 7, 1>;

JpaNetwork unpack(const Params7& x) { return {x(0), x(1), x(2), x(3), x(4), x(5), x(6)}; }

Eigen::Vector4d residual_vec(const Params7& x, double mu) {
    const auto r = jpa_residual(unpack(x), mu);
    return {r[0], r[1], r[2], r[3]};
}

}  // namespace

JpaSolution jpa_synthesis(double mu, int max_iter) {
    if (!(mu >= 1.0)) throw invalid_input("jpa_synthesis: mu must be at least 1");
    Params7 x;
    x << std::numbers::pi / 4, std::numbers::pi / 4, std::asinh(1.0), std::asinh(1.0), 0, 0, 0;
    double damping = 1e-3;
    const double fd = 1e-7;
    int it = 0;
    Eigen::Vector4d f = residual_vec(x, mu);
    for (; it < max_iter && f.norm() >= 1e-13; ++it) {
        Eigen::Matrix<double, 4, 7> jac;
        for (int k = 0; k < 7; ++k) {
            Params7 dx = Params7::Zero();
            dx(k) = fd;
            jac.col(k) = (residual_vec(x + dx, mu) - residual_vec(x - dx, mu)) / (2 * fd);
        }
        const Eigen::Matrix<double, 7, 7> normal =
            jac.transpose() * jac + damping * Eigen::Matrix<double, 7, 7>::Identity();
        const Params7 step = normal.ldlt().solve(-jac.transpose() * f);
        const Eigen::Vector4d f_new = residual_vec(x + step, mu);
        if (f_new.norm() < f.norm()) {
            x += step;
            f = f_new;
            damping *= 0.3;
        } else {
            damping *= 10;
        }
    }
    if (!(f.norm() < 1e-10)) throw computation_error("jpa_synthesis: no convergence");
    return {unpack(x), f.norm(), it};
}

}  // namespace cvq
