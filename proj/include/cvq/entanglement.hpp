#pragma once

#include "cvq/gaussian.hpp"

namespace cvq {

/// Two-mode covariance matrix split into local blocks and the correlation block.
struct BipartiteCM {
    Mat2 sigma_a = Mat2::Identity();
    Mat2 sigma_b = Mat2::Identity();
    Mat2 eps = Mat2::Zero();

    Mat4 full() const;
    GaussianState state() const;
    static BipartiteCM from_full(const Mat& sigma);
    /// sigma_a = alpha I, sigma_b = beta I, eps = gamma sigma_z.
    static BipartiteCM standard(double alpha, double beta, double gamma);

    double alpha() const { return sigma_a(0, 0); }
    double beta() const { return sigma_b(0, 0); }
    double gamma() const { return eps(0, 0); }
};

/// Partially transposed symplectic eigenvalues (nu_minus, nu_plus).
std::pair<double, double> pts_eigenvalues(const BipartiteCM& cm);

double negativity(const BipartiteCM& cm);
/// log2(2N+1), clipped at 0 for separable states.
double log_negativity(const BipartiteCM& cm);

struct Validity {
    double theta = 0.0;
    bool valid = false;
    bool alpha_ok = true;
    bool beta_ok = true;
};

/// theta = |sqrt(det Sigma) - 1| - |alpha - beta| for standard-form inputs.
Validity cm_validity(double alpha, double beta, double gamma);
Validity cm_validity(const BipartiteCM& cm);

/// Physicality through the symplectic spectrum and positivity of the full matrix.
bool is_physical(const BipartiteCM& cm, double tol = physical_tol);

}  // namespace cvq
