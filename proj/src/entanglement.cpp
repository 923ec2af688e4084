#include "cvq/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace cvq {

Mat4 BipartiteCM::full() const {
    Mat4 s;
    s.block<2, 2>(0, 0) = sigma_a;
    s.block<2, 2>(0, 2) = eps;
    s.block<2, 2>(2, 0) = eps.transpose();
    s.block<2, 2>(2, 2) = sigma_b;
    return s;
}

GaussianState BipartiteCM::state() const { return {2, Vec::Zero(4), Mat(full())}; }

BipartiteCM BipartiteCM::from_full(const Mat& sigma) {
    if (sigma.rows() != 4 || sigma.cols() != 4) throw invalid_input("BipartiteCM: expected a 4x4 matrix");
    BipartiteCM cm;
    cm.sigma_a = sigma.block<2, 2>(0, 0);
    cm.sigma_b = sigma.block<2, 2>(2, 2);
    cm.eps = sigma.block<2, 2>(0, 2);
    return cm;
}

BipartiteCM BipartiteCM::standard(double alpha, double beta, double gamma) {
    BipartiteCM cm;
    cm.sigma_a = alpha * Mat2::Identity();
    cm.sigma_b = beta * Mat2::Identity();
    cm.eps = gamma * sigma_z();
    return cm;
}

std::pair<double, double> pts_eigenvalues(const BipartiteCM& cm) {
    const double det = cm.full().determinant();
    const double delta = cm.sigma_a.determinant() + cm.sigma_b.determinant() - 2.0 * cm.eps.determinant();
    double disc = delta * delta - 4.0 * det;
    if (disc < 0.0) {
        if (disc < -1e-9 * std::max(1.0, delta * delta))
            throw invalid_input("pts_eigenvalues: complex branch, not a valid covariance matrix");
        disc = 0.0;
    }
    const double root = std::sqrt(disc);
    return {std::sqrt(std::max(0.0, (delta - root) / 2.0)), std::sqrt((delta + root) / 2.0)};
}

double negativity(const BipartiteCM& cm) {
    const double nu = pts_eigenvalues(cm).first;
    return std::max(0.0, (1.0 - nu) / (2.0 * nu));
}

double log_negativity(const BipartiteCM& cm) {
    return std::max(0.0, -std::log2(pts_eigenvalues(cm).first));
}

Validity cm_validity(double alpha, double beta, double gamma) {
    Validity v;
    v.alpha_ok = alpha >= 1.0;
    v.beta_ok = beta >= 1.0;
    const double sqrt_det = std::abs(alpha * beta - gamma * gamma);
    v.theta = std::abs(sqrt_det - 1.0) - std::abs(alpha - beta);
    v.valid = v.alpha_ok && v.beta_ok && v.theta >= -1e-10;
    return v;
}

Validity cm_validity(const BipartiteCM& cm) { return cm_validity(cm.alpha(), cm.beta(), cm.gamma()); }

bool is_physical(const BipartiteCM& cm, double tol) {
    const Mat4 s = cm.full();
    Eigen::SelfAdjointEigenSolver<Mat4> es(s);
    if (es.eigenvalues().minCoeff() <= 0.0) return false;
    return is_physical(Mat(s), tol);
}

}  // namespace cvq
