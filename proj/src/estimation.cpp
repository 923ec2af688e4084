#include "cvq/estimation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace cvq {

namespace {

struct Difference {
    Mat d_sigma;
    Vec d_d;
};

Difference central(const GaussianFamily& family, double lambda0, double h) {
    const GaussianState plus = family(lambda0 + h);
    const GaussianState minus = family(lambda0 - h);
    if (plus.sigma.rows() != minus.sigma.rows()) throw invalid_input("family changes dimension with lambda");
    return {(plus.sigma - minus.sigma) / (2 * h), (plus.d - minus.d) / (2 * h)};
}

Mat kron(const Mat& a, const Mat& b) {
    Mat k(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

bool sigma_static(const Mat& d_sigma) { return d_sigma.cwiseAbs().maxCoeff() < 1e-12; }

void require_mixed(const Mat& sigma) {
    const Vec nu = symplectic_eigenvalues(sigma);
    if (nu.minCoeff() < 1.0 + tol_pure)
        throw regularization_error("regularization required: a symplectic eigenvalue is within 1e-7 of 1");
}

double displacement_term(const FamilyPoint& p) {
    return 2.0 * p.d_d.dot(p.state.sigma.ldlt().solve(p.d_d));
}

/// vec(Phi) = (Sigma (x) Sigma - Omega (x) Omega)^{-1} vec(dSigma).
Mat solve_phi(const Mat& sigma, const Mat& d_sigma) {
    const int dim = static_cast<int>(sigma.rows());
    const Mat o = omega(dim / 2);
    const Mat m = kron(sigma, sigma) - kron(o, o);
    const Vec rhs = Eigen::Map<const Vec>(d_sigma.data(), d_sigma.size());
    Eigen::FullPivLU<Mat> lu(m);
    if (!lu.isInvertible()) throw regularization_error("regularization required: SLD system is singular");
    const Vec phi = lu.solve(rhs);
    Mat out = Eigen::Map<const Mat>(phi.data(), dim, dim);
    return 0.5 * (out + out.transpose());
}

double closed_two_mode(const GaussianFamily* family, double lambda0, double h, const FamilyPoint& p) {
    using CMat4 = Eigen::Matrix4cd;
    const Mat4 sigma = p.state.sigma;
    const CMat4 a = cplx(0, 1) * (omega(2) * sigma).cast<cplx>();
    const CMat4 da = cplx(0, 1) * (omega(2) * p.d_sigma).cast<cplx>();
    const CMat4 id = CMat4::Identity();
    const double det_a = a.determinant().real();

    auto [nu_m, nu_p] = symplectic_eigenvalues_two_mode(sigma);
    double dnu_m = 0.0, dnu_p = 0.0;
    if (family) {
        auto nus = [&](double step) {
            const auto up = symplectic_eigenvalues_two_mode(Mat4((*family)(lambda0 + step).sigma));
            const auto dn = symplectic_eigenvalues_two_mode(Mat4((*family)(lambda0 - step).sigma));
            return std::pair<double, double>{(up.first - dn.first) / (2 * step), (up.second - dn.second) / (2 * step)};
        };
        const auto coarse = nus(h);
        const auto fine = nus(h / 2);
        dnu_m = (4 * fine.first - coarse.first) / 3;
        dnu_p = (4 * fine.second - coarse.second) / 3;
    }

    const CMat4 ainv_da = a.inverse() * da;
    const CMat4 b = id + a * a;
    const CMat4 binv_da = b.inverse() * da;
    const double t1 = det_a * (ainv_da * ainv_da).trace().real();
    const double t2 = std::sqrt(b.determinant().real()) * (binv_da * binv_da).trace().real();
    double t3 = 0.0;
    if (nu_p * nu_p - nu_m * nu_m > 1e-14 * nu_p * nu_p) {
        t3 = -4.0 * (nu_p * nu_p - nu_m * nu_m) *
             (dnu_p * dnu_p / (std::pow(nu_p, 4) - 1.0) - dnu_m * dnu_m / (std::pow(nu_m, 4) - 1.0));
    }
    return (t1 + t2 + t3) / (2.0 * (det_a - 1.0));
}

}  // namespace

FamilyPoint differentiate(const GaussianFamily& family, double lambda0, double h) {
    if (!(h > 0.0)) throw invalid_input("differentiate: step must be positive");
    const Difference coarse = central(family, lambda0, h);
    const Difference fine = central(family, lambda0, h / 2);
    FamilyPoint p;
    p.state = family(lambda0);
    p.d_sigma = (4 * fine.d_sigma - coarse.d_sigma) / 3;
    p.d_sigma = 0.5 * (p.d_sigma + p.d_sigma.transpose());
    p.d_d = (4 * fine.d_d - coarse.d_d) / 3;
    return p;
}

double gaussian_qfi(const FamilyPoint& point, QfiRoute route) {
    double h_disp = displacement_term(point);
    if (sigma_static(point.d_sigma)) return h_disp;
    require_mixed(point.state.sigma);
    if (route == QfiRoute::two_mode_closed) {
        if (point.state.n_modes != 2) throw invalid_input("gaussian_qfi: closed route is two-mode only");
        return closed_two_mode(nullptr, 0.0, 0.0, point) + h_disp;
    }
    const Mat phi = solve_phi(point.state.sigma, point.d_sigma);
    return 0.5 * (point.d_sigma.cwiseProduct(phi)).sum() + h_disp;
}

double gaussian_qfi(const GaussianFamily& family, double lambda0, double h, QfiRoute route) {
    const FamilyPoint p = differentiate(family, lambda0, h);
    if (route == QfiRoute::general || sigma_static(p.d_sigma)) return gaussian_qfi(p, route);
    require_mixed(p.state.sigma);
    if (p.state.n_modes != 2) throw invalid_input("gaussian_qfi: closed route is two-mode only");
    return closed_two_mode(&family, lambda0, h, p) + displacement_term(p);
}

QuadraticObservable gaussian_sld(const FamilyPoint& p) {
    const int dim = 2 * p.state.n_modes;
    QuadraticObservable l{Mat::Zero(dim, dim), Vec::Zero(dim), 0.0};
    l.lin = 2.0 * p.state.sigma.ldlt().solve(p.d_d);
    if (!sigma_static(p.d_sigma)) {
        require_mixed(p.state.sigma);
        l.quad = solve_phi(p.state.sigma, p.d_sigma);
    }
    // Expressed around the mean: (r-d)^T Phi (r-d) + lin^T (r-d) - tr(Sigma Phi)/2.
    const Vec& d = p.state.d;
    l.c0 = d.dot(l.quad * d) - l.lin.dot(d) - 0.5 * (p.state.sigma * l.quad).trace();
    l.lin = l.lin - 2.0 * l.quad * d;
    return l;
}

QuadraticObservable gaussian_sld(const GaussianFamily& family, double lambda0, double h) {
    return gaussian_sld(differentiate(family, lambda0, h));
}

QuadraticObservable optimal_observable(const GaussianFamily& family, double lambda0, double h) {
    const FamilyPoint p = differentiate(family, lambda0, h);
    const double qfi = gaussian_qfi(p, QfiRoute::general);
    if (!(qfi > 0.0)) throw computation_error("optimal_observable: QFI vanishes, no informative observable");
    QuadraticObservable o = gaussian_sld(p);
    o.quad /= qfi;
    o.lin /= qfi;
    o.c0 = o.c0 / qfi + lambda0;
    return o;
}

Moments observable_moments(const GaussianState& state, const QuadraticObservable& obs) {
    const int dim = 2 * state.n_modes;
    if (obs.quad.rows() != dim || obs.lin.size() != dim) throw invalid_input("observable_moments: dimension mismatch");
    const Mat q = 0.5 * (obs.quad + obs.quad.transpose());
    const Mat& s = state.sigma;
    const Vec& d = state.d;
    const Mat o = omega(state.n_modes);
    Moments m;
    m.mean = obs.c0 + obs.lin.dot(d) + d.dot(q * d) + 0.5 * (q * s).trace();
    const Vec g = obs.lin + 2.0 * q * d;
    m.variance = 0.5 * g.dot(s * g) + 0.5 * ((q * s * q * s).trace() + (q * o * q * o).trace());
    return m;
}

QuadraticObservable number_operator(int n_modes, int mode) {
    const int dim = 2 * n_modes;
    QuadraticObservable n{Mat::Zero(dim, dim), Vec::Zero(dim), -0.5};
    n.quad(2 * mode, 2 * mode) = 0.5;
    n.quad(2 * mode + 1, 2 * mode + 1) = 0.5;
    return n;
}

}  // namespace cvq
