#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvq {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using cplx = std::complex<double>;

/// Raised for inputs outside an operation's domain (negative photon numbers, bad indices, ...).
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot be carried out for otherwise well-formed input.
class computation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double physical_tol = 1e-9;
inline constexpr double symplectic_tol = 1e-10;

/// Gaussian state in the real quadrature basis (x1,p1,...,xN,pN), vacuum sigma = I.
struct GaussianState {
    int n_modes = 0;
    Vec d;
    Mat sigma;
};

Mat omega(int n_modes);
Mat2 sigma_z();

/// Validates symmetry and physicality unless `unchecked` is set.
GaussianState make_state(const Vec& d, const Mat& sigma, bool unchecked = false);

GaussianState vacuum(int n_modes);
GaussianState thermal(int n_modes, double n_th);
GaussianState coherent(double alpha_re, double alpha_im);
GaussianState squeezed_vacuum(double r, double theta);
GaussianState tmsv(double r);
GaussianState tmst(double r, double n);

/// eta is the intensity reflectivity; entries sqrt(eta) on the diagonal blocks.
Mat beam_splitter(double eta);
Mat single_mode_squeezer(double r, double theta);
Mat two_mode_squeezer(double r);
Mat phase_rotation(double phi);
Mat direct_sum(const Mat& a, const Mat& b);

bool is_symplectic(const Mat& s, double tol = symplectic_tol);

GaussianState apply(const GaussianState& state, const Mat& s, const std::vector<int>& on);
GaussianState partial_trace(const GaussianState& state, const std::vector<int>& keep);

/// Ascending symplectic eigenvalues from the spectrum of i*Omega*Sigma.
Vec symplectic_eigenvalues(const Mat& sigma);

/// Closed form 2 nu^2 = Tr A^2 +- sqrt((Tr A^2)^2 - 16 det A), A = i Omega Sigma. Returns (nu_minus, nu_plus).
std::pair<double, double> symplectic_eigenvalues_two_mode(const Mat4& sigma);

bool is_physical(const Mat& sigma, double tol = physical_tol);
double purity(const GaussianState& state);
cplx characteristic_function(const GaussianState& state, const Vec& r_point);

/// Mode-subset helpers used by apply/partial_trace.
std::vector<int> quadrature_indices(const std::vector<int>& modes);
void validate_modes(const std::vector<int>& modes, int n_modes);

}  // namespace cvq
