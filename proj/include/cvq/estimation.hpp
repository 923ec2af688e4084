#pragma once

#include "cvq/gaussian.hpp"

#include <functional>

namespace cvq {

using GaussianFamily = std::function<GaussianState(double)>;

/// Raised when a pure (or numerically pure) state would require a regularized QFI.
class regularization_error : public computation_error {
public:
    using computation_error::computation_error;
};

inline constexpr double tol_pure = 1e-7;

/// State at lambda0 with Richardson-refined central-difference derivatives.
struct FamilyPoint {
    GaussianState state;
    Mat d_sigma;
    Vec d_d;
};

FamilyPoint differentiate(const GaussianFamily& family, double lambda0, double h);

enum class QfiRoute { two_mode_closed, general };

/// Gaussian QFI. The two-mode closed route uses A = i Omega Sigma and the nu+- derivatives;
/// the general route solves (Sigma (x) Sigma - Omega (x) Omega) vec(Phi) = vec(dSigma).
double gaussian_qfi(const GaussianFamily& family, double lambda0, double h = 1e-4,
                    QfiRoute route = QfiRoute::two_mode_closed);

/// QFI from already-differentiated data.
double gaussian_qfi(const FamilyPoint& point, QfiRoute route = QfiRoute::two_mode_closed);

/// c0 + lin^T r + r^T quad r with symmetrized operator ordering.
struct QuadraticObservable {
    Mat quad;
    Vec lin;
    double c0 = 0.0;
};

QuadraticObservable gaussian_sld(const GaussianFamily& family, double lambda0, double h = 1e-4);
QuadraticObservable gaussian_sld(const FamilyPoint& point);

/// lambda0 * 1 + L / H.
QuadraticObservable optimal_observable(const GaussianFamily& family, double lambda0, double h = 1e-4);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Exact Gaussian mean and variance of a symmetrized quadratic observable.
Moments observable_moments(const GaussianState& state, const QuadraticObservable& obs);

/// Number operator a_k^dag a_k of mode k as a quadrature observable.
QuadraticObservable number_operator(int n_modes, int mode);

}  // namespace cvq
