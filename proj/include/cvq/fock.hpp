#pragma once

#include "cvq/estimation.hpp"
#include "cvq/gaussian.hpp"

#include <functional>

namespace cvq::fock {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Index of |n1, n2> in the two-mode product basis truncated at n_max photons per mode.
inline int index2(int n1, int n2, int n_max) { return n1 * (n_max + 1) + n2; }

struct FockKet {
    int n_max = 0;
    int n_modes = 0;
    CVec amplitudes;
    /// Probability weight lost to the truncation.
    double leakage = 0.0;
};

struct FockOperator {
    int n_max = 0;
    int n_modes = 0;
    CMat matrix;
    double leakage = 0.0;
};

CMat annihilation(int n_max);
CMat identity(int n_max, int n_modes);
/// Operator acting on `mode` of an n_modes product space.
CMat embed(const CMat& single, int mode, int n_modes);

/// <m|D(alpha)|n> from the normal-ordered sum e^{-|alpha|^2/2} sum_k <m|e^{alpha a^dag}|k><k|e^{-alpha* a}|n>.
cplx displacement_element(int m, int n, cplx alpha);
CMat displacement(int n_max, cplx alpha);
FockKet coherent_ket(cplx alpha, int n_max);

FockKet tmsv_ket(double r, int n_max);

struct Subtraction {
    FockKet ket;
    /// Squared norm before renormalization.
    double weight = 0.0;
};

/// Applies a_A^{k_a} a_B^{k_b} and renormalizes.
Subtraction photon_subtract(const FockKet& ket, int k_a, int k_b);

/// Applies the single-mode operator `op_a (x) op_b` to a two-mode ket and renormalizes.
Subtraction apply_local(const FockKet& ket, const CMat& op_a, const CMat& op_b);

/// Two-mode beam splitter U with U^dag a U = sqrt(eta) a + sqrt(1-eta) b, built from the
/// exponential of the generator on each fixed total-photon-number block.
CMat beam_splitter_unitary(int n_max, double eta);

/// <k|_anc U |0>_anc for a beam splitter of transmissivity tau between a mode and a vacuum ancilla.
CMat subtraction_kraus(int n_max, double tau, int k);

/// exp(r (a^dag b^dag - a b)) restricted to n_max, computed per photon-difference sector on a padded space.
CMat two_mode_squeezer_unitary(int n_max, double r, int pad = 20);

CMat thermal_density(double n_th, int n_max);

/// Density matrix of the two-mode Gaussian state with sigma_a = a I, sigma_b = b I, eps = c sigma_z,
/// as a two-mode squeezed pair of thermal states. Leakage = 1 - trace.
FockOperator gaussian_density_standard(double a, double b, double c, int n_max);

CMat partial_transpose(const CMat& rho, int dim_a, int dim_b);

/// Sum of |negative eigenvalues| of the partial transpose (block-decomposed by connectivity).
double negativity_fock(const CMat& rho, int dim_a, int dim_b);

/// Negativity of a pure two-mode ket from its Schmidt coefficients.
double negativity_pure(const FockKet& ket);

/// 2 sum |<m|d rho|n>|^2 / (p_m + p_n) over eigenpairs with p_m + p_n above eig_floor.
double qfi_spectral(const std::function<CMat(double)>& family, double lambda0, double step,
                    double eig_floor = 1e-12);

double uhlmann_fidelity(const CMat& rho, const CMat& sigma);

/// Quadrature operators (x1, p1, ..., xN, pN) on the truncated product space.
std::vector<CMat> quadratures(int n_max, int n_modes);

/// Symmetrized operator for c0 + lin^T r + r^T quad r.
CMat observable_operator(const QuadraticObservable& obs, int n_max);

CMat density(const FockKet& ket);

}  // namespace cvq::fock
