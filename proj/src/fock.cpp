#include "cvq/fock.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <numeric>

namespace cvq::fock {

namespace {

void check_n_max(int n_max) {
    if (n_max < 0) throw invalid_input("fock: n_max must be non-negative");
}

int ipow(int base, int e) {
    int r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Union-find over basis indices for block decomposition.
int find_root(std::vector<int>& parent, int i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

}  // namespace

CMat annihilation(int n_max) {
    check_n_max(n_max);
    CMat a = CMat::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

CMat identity(int n_max, int n_modes) {
    const int dim = ipow(n_max + 1, n_modes);
    return CMat::Identity(dim, dim);
}

CMat embed(const CMat& single, int mode, int n_modes) {
    if (mode < 0 || mode >= n_modes) throw invalid_input("embed: mode out of range");
    const int d = static_cast<int>(single.rows());
    CMat out = CMat::Identity(1, 1);
    for (int m = 0; m < n_modes; ++m) {
        const CMat f = (m == mode) ? single : CMat::Identity(d, d);
        CMat k(out.rows() * d, out.cols() * d);
        for (int i = 0; i < out.rows(); ++i)
            for (int j = 0; j < out.cols(); ++j) k.block(i * d, j * d, d, d) = out(i, j) * f;
        out = k;
    }
    return out;
}

cplx displacement_element(int m, int n, cplx alpha) {
    if (m < 0 || n < 0) throw invalid_input("displacement_element: negative index");
    const double a2 = std::norm(alpha);
    cplx sum = 0.0;
    const int kmax = std::min(m, n);
    for (int k = 0; k <= kmax; ++k) {
        const double log_mag =
            0.5 * (std::lgamma(m + 1.0) + std::lgamma(n + 1.0)) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0) -
            std::lgamma(n - k + 1.0);
        cplx term = std::exp(log_mag);
        if (m - k > 0) term *= std::pow(alpha, m - k);
        if (n - k > 0) term *= std::pow(-std::conj(alpha), n - k);
        sum += term;
    }
    return std::exp(-0.5 * a2) * sum;
}

CMat displacement(int n_max, cplx alpha) {
    check_n_max(n_max);
    CMat d(n_max + 1, n_max + 1);
    for (int m = 0; m <= n_max; ++m)
        for (int n = 0; n <= n_max; ++n) d(m, n) = displacement_element(m, n, alpha);
    return d;
}

FockKet coherent_ket(cplx alpha, int n_max) {
    FockKet k{n_max, 1, displacement(n_max, alpha).col(0), 0.0};
    k.leakage = std::max(0.0, 1.0 - k.amplitudes.squaredNorm());
    return k;
}

FockKet tmsv_ket(double r, int n_max) {
    check_n_max(n_max);
    const double lambda = std::tanh(r);
    FockKet k{n_max, 2, CVec::Zero((n_max + 1) * (n_max + 1)), 0.0};
    double amp = 1.0 / std::cosh(r);
    for (int j = 0; j <= n_max; ++j) {
        k.amplitudes(index2(j, j, n_max)) = amp;
        amp *= lambda;
    }
    k.leakage = std::max(0.0, 1.0 - k.amplitudes.squaredNorm());
    return k;
}

Subtraction apply_local(const FockKet& ket, const CMat& op_a, const CMat& op_b) {
    if (ket.n_modes != 2) throw invalid_input("apply_local: two-mode ket required");
    const int d = ket.n_max + 1;
    const CMat c = Eigen::Map<const CMat>(ket.amplitudes.data(), d, d).transpose();  // c(n1, n2)
    const CMat out = op_a * c * op_b.transpose();
    const double w = out.squaredNorm();
    if (!(w > 1e-300)) throw computation_error("photon subtraction annihilated the state (zero norm)");
    Subtraction s;
    s.weight = w;
    s.ket = ket;
    const CMat t = out.transpose() / std::sqrt(w);
    s.ket.amplitudes = Eigen::Map<const CVec>(t.data(), d * d);
    return s;
}

Subtraction photon_subtract(const FockKet& ket, int k_a, int k_b) {
    if (k_a < 0 || k_b < 0) throw invalid_input("photon_subtract: negative count");
    const CMat a = annihilation(ket.n_max);
    const int d = ket.n_max + 1;
    CMat pa = CMat::Identity(d, d), pb = CMat::Identity(d, d);
    for (int i = 0; i < k_a; ++i) pa = a * pa;
    for (int i = 0; i < k_b; ++i) pb = a * pb;
    return apply_local(ket, pa, pb);
}

CMat beam_splitter_unitary(int n_max, double eta) {
    check_n_max(n_max);
    if (!(eta >= 0.0 && eta <= 1.0)) throw invalid_input("beam_splitter_unitary: eta must lie in [0,1]");
    const double theta = std::acos(std::sqrt(eta));
    const int d = n_max + 1;
    CMat u = CMat::Zero(d * d, d * d);
    // Generator theta (a^dag b - a b^dag) couples |n1, n2> within fixed n1 + n2.
    for (int total = 0; total <= 2 * n_max; ++total) {
        const int lo = std::max(0, total - n_max);
        const int hi = std::min(total, n_max);
        const int size = hi - lo + 1;
        Mat g = Mat::Zero(size, size);
        for (int n1 = lo; n1 < hi; ++n1) {
            // a^dag b |n1, total-n1> = sqrt((n1+1)(total-n1)) |n1+1, total-n1-1>
            const double v = std::sqrt((n1 + 1.0) * (total - n1));
            g(n1 + 1 - lo, n1 - lo) += theta * v;
            g(n1 - lo, n1 + 1 - lo) -= theta * v;
        }
        const Mat e = g.exp();
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j)
                u(index2(lo + i, total - lo - i, n_max), index2(lo + j, total - lo - j, n_max)) = e(i, j);
    }
    return u;
}

CMat subtraction_kraus(int n_max, double tau, int k) {
    if (k < 0) throw invalid_input("subtraction_kraus: negative count");
    const CMat u = beam_splitter_unitary(n_max, tau);
    CMat kr = CMat::Zero(n_max + 1, n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        if (n - k < 0) continue;
        kr(n - k, n) = u(index2(n - k, k, n_max), index2(n, 0, n_max));
    }
    return kr;
}

CMat two_mode_squeezer_unitary(int n_max, double r, int pad) {
    check_n_max(n_max);
    const int big = n_max + std::max(0, pad);
    const int d = n_max + 1;
    CMat u = CMat::Zero(d * d, d * d);
    for (int diff = -n_max; diff <= n_max; ++diff) {
        // States |n2 + diff, n2> with both occupations in [0, big].
        const int n2_lo = std::max(0, -diff);
        const int n2_hi = std::min(big, big - diff);
        const int size = n2_hi - n2_lo + 1;
        Mat g = Mat::Zero(size, size);
        for (int i = 0; i + 1 < size; ++i) {
            const int n2 = n2_lo + i;
            const int n1 = n2 + diff;
            // a^dag b^dag |n1, n2> = sqrt((n1+1)(n2+1)) |n1+1, n2+1>
            const double v = std::sqrt((n1 + 1.0) * (n2 + 1.0));
            g(i + 1, i) += r * v;
            g(i, i + 1) -= r * v;
        }
        const Mat e = g.exp();
        for (int i = 0; i < size; ++i) {
            const int n2i = n2_lo + i, n1i = n2i + diff;
            if (n1i > n_max || n2i > n_max) continue;
            for (int j = 0; j < size; ++j) {
                const int n2j = n2_lo + j, n1j = n2j + diff;
                if (n1j > n_max || n2j > n_max) continue;
                u(index2(n1i, n2i, n_max), index2(n1j, n2j, n_max)) = e(i, j);
            }
        }
    }
    return u;
}

CMat thermal_density(double n_th, int n_max) {
    if (!(n_th >= 0.0)) throw invalid_input("thermal_density: n_th must be non-negative");
    CMat rho = CMat::Zero(n_max + 1, n_max + 1);
    const double q = n_th / (1.0 + n_th);
    double p = 1.0 / (1.0 + n_th);
    for (int k = 0; k <= n_max; ++k) {
        rho(k, k) = p;
        p *= q;
    }
    return rho;
}

FockOperator gaussian_density_standard(double a, double b, double c, int n_max) {
    if (!(a + b > 2.0 * std::abs(c))) throw invalid_input("gaussian_density_standard: requires a + b > 2|c|");
    const double r = 0.5 * std::atanh(2.0 * c / (a + b));
    const double s = (a + b) / std::cosh(2.0 * r);
    const double n1 = ((s + (a - b)) / 2.0 - 1.0) / 2.0;
    const double n2 = ((s - (a - b)) / 2.0 - 1.0) / 2.0;
    if (n1 < -1e-12 || n2 < -1e-12) throw invalid_input("gaussian_density_standard: unphysical covariance");
    const int pad = 20;
    const int big = n_max + pad;
    // Evolve each thermal basis product state on the padded space, then project to n_max.
    const CMat th1 = thermal_density(std::max(0.0, n1), big);
    const CMat th2 = thermal_density(std::max(0.0, n2), big);
    const int d = n_max + 1;
    CMat rho = CMat::Zero(d * d, d * d);
    for (int diff = -big; diff <= big; ++diff) {
        const int n2_lo = std::max(0, -diff);
        const int n2_hi = std::min(big, big - diff);
        const int size = n2_hi - n2_lo + 1;
        if (size <= 0) continue;
        Mat g = Mat::Zero(size, size);
        for (int i = 0; i + 1 < size; ++i) {
            const int n2 = n2_lo + i, nn1 = n2 + diff;
            const double v = std::sqrt((nn1 + 1.0) * (n2 + 1.0));
            g(i + 1, i) += r * v;
            g(i, i + 1) -= r * v;
        }
        const Mat e = g.exp();
        Vec w(size);
        for (int j = 0; j < size; ++j) w(j) = th1(n2_lo + j + diff, n2_lo + j + diff).real() * th2(n2_lo + j, n2_lo + j).real();
        const Mat block = e * w.asDiagonal() * e.transpose();
        for (int i = 0; i < size; ++i) {
            const int n2i = n2_lo + i, n1i = n2i + diff;
            if (n1i > n_max || n2i > n_max) continue;
            for (int j = 0; j < size; ++j) {
                const int n2j = n2_lo + j, n1j = n2j + diff;
                if (n1j > n_max || n2j > n_max) continue;
                rho(index2(n1i, n2i, n_max), index2(n1j, n2j, n_max)) = block(i, j);
            }
        }
    }
    FockOperator op{n_max, 2, rho, 0.0};
    op.leakage = std::max(0.0, 1.0 - rho.trace().real());
    return op;
}

CMat partial_transpose(const CMat& rho, int dim_a, int dim_b) {
    if (rho.rows() != dim_a * dim_b || rho.cols() != rho.rows()) throw invalid_input("partial_transpose: dimension mismatch");
    CMat out(rho.rows(), rho.cols());
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_b; ++j)
            for (int k = 0; k < dim_a; ++k)
                for (int l = 0; l < dim_b; ++l) out(i * dim_b + j, k * dim_b + l) = rho(i * dim_b + l, k * dim_b + j);
    return out;
}

double negativity_fock(const CMat& rho, int dim_a, int dim_b) {
    const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) throw invalid_input("negativity_fock: rho is not Hermitian");
    const CMat pt = partial_transpose(rho, dim_a, dim_b);
    const int n = static_cast<int>(pt.rows());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (pt(i, j) != cplx(0.0, 0.0)) {
                const int ri = find_root(parent, i), rj = find_root(parent, j);
                if (ri != rj) parent[ri] = rj;
            }
    std::vector<std::vector<int>> comps(n);
    for (int i = 0; i < n; ++i) comps[find_root(parent, i)].push_back(i);
    double neg = 0.0;
    for (const auto& c : comps) {
        if (c.empty()) continue;
        const int s = static_cast<int>(c.size());
        CMat blk(s, s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) blk(i, j) = pt(c[i], c[j]);
        Eigen::SelfAdjointEigenSolver<CMat> es(blk, Eigen::EigenvaluesOnly);
        for (int i = 0; i < s; ++i)
            if (es.eigenvalues()(i) < 0.0) neg -= es.eigenvalues()(i);
    }
    return neg;
}

double negativity_pure(const FockKet& ket) {
    if (ket.n_modes != 2) throw invalid_input("negativity_pure: two-mode ket required");
    const int d = ket.n_max + 1;
    const CMat c = Eigen::Map<const CMat>(ket.amplitudes.data(), d, d);
    Eigen::JacobiSVD<CMat> svd(c);
    const Vec s = svd.singularValues();
    const double norm2 = s.squaredNorm();
    const double sum = s.sum();
    return (sum * sum - norm2) / (2.0 * norm2);
}

double qfi_spectral(const std::function<CMat(double)>& family, double lambda0, double step, double eig_floor) {
    if (!(step > 0.0)) throw invalid_input("qfi_spectral: step must be positive");
    const CMat rho = family(lambda0);
    const CMat up = family(lambda0 + step);
    const CMat dn = family(lambda0 - step);
    const double t0 = rho.trace().real();
    if (std::abs(up.trace().real() - dn.trace().real()) > 1e-9 * std::abs(t0))
        throw computation_error("qfi_spectral: step too large (trace drift beyond 1e-9)");
    const CMat drho = (up - dn) / (2.0 * step);
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (rho + rho.adjoint()));
    const CMat& v = es.eigenvectors();
    const Vec p = es.eigenvalues();
    const CMat dm = v.adjoint() * drho * v;
    double h = 0.0;
    for (int m = 0; m < p.size(); ++m)
        for (int n = 0; n < p.size(); ++n) {
            const double s = p(m) + p(n);
            if (s > eig_floor) h += 2.0 * std::norm(dm(m, n)) / s;
        }
    return h;
}

namespace {
CMat psd_sqrt(const CMat& m) {
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (m + m.adjoint()));
    const Vec ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}
}  // namespace

double uhlmann_fidelity(const CMat& rho, const CMat& sigma) {
    const CMat sr = psd_sqrt(rho);
    const CMat inner = sr * sigma * sr;
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
    const double t = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return t * t;
}

std::vector<CMat> quadratures(int n_max, int n_modes) {
    const CMat a = annihilation(n_max);
    const CMat x = (a + a.adjoint()) / std::sqrt(2.0);
    const CMat p = (a - a.adjoint()) / cplx(0.0, std::sqrt(2.0));
    std::vector<CMat> r;
    for (int m = 0; m < n_modes; ++m) {
        r.push_back(embed(x, m, n_modes));
        r.push_back(embed(p, m, n_modes));
    }
    return r;
}

CMat observable_operator(const QuadraticObservable& obs, int n_max) {
    using SMat = Eigen::SparseMatrix<cplx>;
    const int n_modes = static_cast<int>(obs.lin.size() / 2);
    const int d = n_max + 1;
    SMat a(d, d);
    for (int n = 1; n <= n_max; ++n) a.insert(n - 1, n) = std::sqrt(static_cast<double>(n));
    const SMat ad = SMat(a.adjoint());
    const SMat x = (a + ad) / std::sqrt(2.0);
    const SMat p = (a - ad) / cplx(0.0, std::sqrt(2.0));
    SMat eye(d, d);
    eye.setIdentity();
    std::vector<SMat> r;
    for (int m = 0; m < n_modes; ++m)
        for (const SMat* single : {&x, &p}) {
            SMat acc = m == 0 ? *single : eye;
            for (int k = 1; k < n_modes; ++k) acc = kroneckerProduct(acc, k == m ? *single : eye).eval();
            r.push_back(acc);
        }
    const int dim = static_cast<int>(r[0].rows());
    SMat out(dim, dim);
    out.setIdentity();
    out *= obs.c0;
    for (int i = 0; i < 2 * n_modes; ++i) {
        out += obs.lin(i) * r[i];
        for (int j = 0; j < 2 * n_modes; ++j)
            if (obs.quad(i, j) != 0.0) out += (0.5 * obs.quad(i, j)) * SMat(r[i] * r[j] + r[j] * r[i]);
    }
    return CMat(out);
}

CMat density(const FockKet& ket) { return ket.amplitudes * ket.amplitudes.adjoint(); }

}  // namespace cvq::fock
