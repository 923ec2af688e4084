#include "cvq/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace cvq {

Mat omega(int n_modes) {
    if (n_modes < 1) throw invalid_input("omega: n_modes must be >= 1");
    Mat o = Mat::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        o(2 * k, 2 * k + 1) = 1.0;
        o(2 * k + 1, 2 * k) = -1.0;
    }
    return o;
}

Mat2 sigma_z() {
    Mat2 z;
    z << 1, 0, 0, -1;
    return z;
}

bool is_physical(const Mat& sigma, double tol) {
    const Vec nu = symplectic_eigenvalues(sigma);
    return nu.size() == 0 || nu.minCoeff() >= 1.0 - tol;
}

GaussianState make_state(const Vec& d, const Mat& sigma, bool unchecked) {
    if (sigma.rows() != sigma.cols() || sigma.rows() % 2 != 0 || sigma.rows() == 0)
        throw invalid_input("make_state: sigma must be a square 2N x 2N matrix");
    if (d.size() != sigma.rows()) throw invalid_input("make_state: d length must equal 2N");
    GaussianState s{static_cast<int>(sigma.rows() / 2), d, sigma};
    if (!unchecked) {
        if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw invalid_input("make_state: sigma is not symmetric");
        if (!is_physical(sigma)) throw invalid_input("make_state: symplectic eigenvalue below 1 (unphysical)");
    }
    return s;
}

GaussianState vacuum(int n_modes) {
    if (n_modes < 1) throw invalid_input("vacuum: n_modes must be >= 1");
    return {n_modes, Vec::Zero(2 * n_modes), Mat::Identity(2 * n_modes, 2 * n_modes)};
}

GaussianState thermal(int n_modes, double n_th) {
    if (!(n_th >= 0.0)) throw invalid_input("thermal: n_th must be non-negative");
    GaussianState s = vacuum(n_modes);
    s.sigma *= 1.0 + 2.0 * n_th;
    return s;
}

GaussianState coherent(double alpha_re, double alpha_im) {
    GaussianState s = vacuum(1);
    s.d << std::sqrt(2.0) * alpha_re, std::sqrt(2.0) * alpha_im;
    return s;
}

GaussianState squeezed_vacuum(double r, double theta) {
    GaussianState s = vacuum(1);
    const Mat sq = single_mode_squeezer(r, theta);
    s.sigma = sq * sq.transpose();
    return s;
}

GaussianState tmsv(double r) { return tmst(r, 0.0); }

GaussianState tmst(double r, double n) {
    if (!(n >= 0.0)) throw invalid_input("tmst: n must be non-negative");
    const double c = (1 + 2 * n) * std::cosh(2 * r);
    const double s = (1 + 2 * n) * std::sinh(2 * r);
    Mat sigma = Mat::Zero(4, 4);
    sigma.block<2, 2>(0, 0) = c * Mat2::Identity();
    sigma.block<2, 2>(2, 2) = c * Mat2::Identity();
    sigma.block<2, 2>(0, 2) = s * sigma_z();
    sigma.block<2, 2>(2, 0) = s * sigma_z();
    return {2, Vec::Zero(4), sigma};
}

Mat beam_splitter(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw invalid_input("beam_splitter: eta must lie in [0,1]");
    const double a = std::sqrt(eta);
    const double b = std::sqrt(1.0 - eta);
    Mat s = Mat::Zero(4, 4);
    s.block<2, 2>(0, 0) = a * Mat2::Identity();
    s.block<2, 2>(0, 2) = b * Mat2::Identity();
    s.block<2, 2>(2, 0) = -b * Mat2::Identity();
    s.block<2, 2>(2, 2) = a * Mat2::Identity();
    return s;
}

Mat phase_rotation(double phi) {
    Mat s(2, 2);
    s << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
    return s;
}

Mat single_mode_squeezer(double r, double theta) {
    // Squeezes x for theta = 0; theta rotates the squeezing axis by theta/2.
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = std::exp(-r);
    d(1, 1) = std::exp(r);
    const Mat rot = phase_rotation(-theta / 2);
    return rot * d * rot.transpose();
}

Mat two_mode_squeezer(double r) {
    Mat s = Mat::Zero(4, 4);
    s.block<2, 2>(0, 0) = std::cosh(r) * Mat2::Identity();
    s.block<2, 2>(2, 2) = std::cosh(r) * Mat2::Identity();
    s.block<2, 2>(0, 2) = std::sinh(r) * sigma_z();
    s.block<2, 2>(2, 0) = std::sinh(r) * sigma_z();
    return s;
}

Mat direct_sum(const Mat& a, const Mat& b) {
    Mat s = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    s.topLeftCorner(a.rows(), a.cols()) = a;
    s.bottomRightCorner(b.rows(), b.cols()) = b;
    return s;
}

bool is_symplectic(const Mat& s, double tol) {
    if (s.rows() != s.cols() || s.rows() % 2 != 0) return false;
    const Mat o = omega(static_cast<int>(s.rows() / 2));
    return (s * o * s.transpose() - o).cwiseAbs().maxCoeff() <= tol;
}

void validate_modes(const std::vector<int>& modes, int n_modes) {
    if (modes.empty()) throw invalid_input("mode subset must be non-empty");
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (modes[i] < 0 || modes[i] >= n_modes) throw invalid_input("mode index out of range");
        if (i > 0 && modes[i] <= modes[i - 1]) throw invalid_input("mode subset must be strictly increasing");
    }
}

std::vector<int> quadrature_indices(const std::vector<int>& modes) {
    std::vector<int> idx;
    idx.reserve(2 * modes.size());
    for (int m : modes) {
        idx.push_back(2 * m);
        idx.push_back(2 * m + 1);
    }
    return idx;
}

GaussianState apply(const GaussianState& state, const Mat& s, const std::vector<int>& on) {
    validate_modes(on, state.n_modes);
    if (s.rows() != static_cast<Eigen::Index>(2 * on.size()) || s.cols() != s.rows())
        throw invalid_input("apply: transform dimension does not match the mode subset");
    const int dim = 2 * state.n_modes;
    Mat emb = Mat::Identity(dim, dim);
    const auto idx = quadrature_indices(on);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) emb(idx[i], idx[j]) = s(i, j);
    GaussianState out = state;
    out.sigma = emb * state.sigma * emb.transpose();
    out.sigma = 0.5 * (out.sigma + out.sigma.transpose());
    out.d = emb * state.d;
    return out;
}

GaussianState partial_trace(const GaussianState& state, const std::vector<int>& keep) {
    validate_modes(keep, state.n_modes);
    const auto idx = quadrature_indices(keep);
    const int k = static_cast<int>(idx.size());
    GaussianState out{static_cast<int>(keep.size()), Vec(k), Mat(k, k)};
    for (int i = 0; i < k; ++i) {
        out.d(i) = state.d(idx[i]);
        for (int j = 0; j < k; ++j) out.sigma(i, j) = state.sigma(idx[i], idx[j]);
    }
    return out;
}

Vec symplectic_eigenvalues(const Mat& sigma) {
    if (sigma.rows() != sigma.cols() || sigma.rows() % 2 != 0)
        throw invalid_input("symplectic_eigenvalues: sigma must be 2N x 2N");
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, sigma.cwiseAbs().maxCoeff()))
        throw invalid_input("symplectic_eigenvalues: sigma is not symmetric");
    const int n = static_cast<int>(sigma.rows() / 2);
    // i*Omega*Sigma is Hermitian with respect to Sigma; its eigenvalues come in +-nu pairs.
    const Eigen::MatrixXcd a = cplx(0, 1) * (omega(n) * sigma).cast<cplx>();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
    std::vector<double> ev;
    for (int i = 0; i < 2 * n; ++i) ev.push_back(es.eigenvalues()(i).real());
    std::sort(ev.begin(), ev.end());
    Vec nu(n);
    // Pair the k-th smallest |value| from the positive half.
    for (int i = 0; i < n; ++i) nu(i) = 0.5 * (ev[n + i] - ev[n - 1 - i]);
    std::sort(nu.data(), nu.data() + n);
    return nu;
}

std::pair<double, double> symplectic_eigenvalues_two_mode(const Mat4& sigma) {
    const Eigen::Matrix4cd a = cplx(0, 1) * (omega(2) * sigma).cast<cplx>();
    const double tr = (a * a).trace().real();
    const double det = a.determinant().real();
    const double root = std::sqrt(std::max(0.0, tr * tr - 16.0 * det));
    const double nu_p = std::sqrt(std::max(0.0, (tr + root) / 4.0));
    const double nu_m = std::sqrt(std::max(0.0, (tr - root) / 4.0));
    return {nu_m, nu_p};
}

double purity(const GaussianState& state) {
    const double det = state.sigma.determinant();
    if (det < 1.0 - physical_tol) throw invalid_input("purity: det sigma < 1 (unphysical)");
    return 1.0 / std::sqrt(det);
}

cplx characteristic_function(const GaussianState& state, const Vec& r_point) {
    if (r_point.size() != 2 * state.n_modes) throw invalid_input("characteristic_function: length mismatch");
    const Mat o = omega(state.n_modes);
    const Vec ro = o.transpose() * r_point;
    const double quad = ro.dot(state.sigma * ro);
    const double lin = ro.dot(state.d);
    return std::exp(-0.25 * quad) * std::exp(cplx(0, -lin));
}

}  // namespace cvq
