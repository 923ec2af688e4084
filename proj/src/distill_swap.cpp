#include "cvq/distill_swap.hpp"

#include <cmath>

namespace cvq {

namespace {

const Mat2& om() {
    static const Mat2 o = omega(1);
    return o;
}

const Mat2& sz() {
    static const Mat2 s = sigma_z();
    return s;
}

Mat2 sym(const Mat2& m) { return 0.5 * (m + m.transpose()); }

/// W(X, M) = X^{-1} tr(X^{-1} M) - Omega M Omega^T / det X.
Mat2 w_of(const Mat2& x, const Mat2& m) {
    const Mat2 xi = x.inverse();
    return xi * (xi * m).trace() - om() * m * om().transpose() / x.determinant();
}

Mat2 gamma_matrix(const BipartiteCM& cm) {
    return sz() * cm.sigma_a * sz() + cm.sigma_b - sz() * cm.eps - cm.eps.transpose() * sz();
}

void require_tau(double tau) {
    if (!(tau > 0.0 && tau < 1.0)) throw invalid_input("photon subtraction: tau must lie in (0,1)");
}

/// Appendix-style intermediate matrices of the probabilistic subtraction.
struct Parts {
    Mat2 xa, y, h, wx, wy, k1, k2, j1, j2, hwh;
};

Parts parts(const BipartiteCM& cm, double t) {
    const Mat2 I = Mat2::Identity();
    const Mat2& sa = cm.sigma_a;
    const Mat2& sb = cm.sigma_b;
    const Mat2& e = cm.eps;
    const Mat2& o = om();
    Parts p;
    p.xa = 0.5 * o * ((1 - t) * sa + (1 + t) * I) * o.transpose();
    const Mat2 xb = 0.5 * o * ((1 - t) * sb + (1 + t) * I) * o.transpose();
    p.h = -0.5 * (1 - t) * o * e * o.transpose();
    if (std::abs(p.xa.determinant()) < 1e-14) throw computation_error("ps2_gaussian: X_A is singular");
    const Mat2 xai = p.xa.inverse();
    p.y = xb - p.h * xai * p.h;
    if (std::abs(p.y.determinant()) < 1e-14) throw computation_error("ps2_gaussian: Y is singular");
    p.wx = w_of(p.xa, I);
    p.wy = w_of(p.y, I);
    const double q = 0.5 * std::sqrt(t * (1 - t));
    p.k1 = q * (e * o.transpose() + (sa - I) * o.transpose() * xai * p.h);
    p.k2 = q * ((sb - I) * o.transpose() + e * o.transpose() * xai * p.h);
    p.j1 = q * (sa - I) * o.transpose();
    p.j2 = q * e * o.transpose();
    p.hwh = p.h * p.wx * p.h;
    return p;
}

double quad_form(const Vec& u, const Mat2& m, const Vec& v) { return u.dot(m * v); }

/// exp(-r^T Omega Sigma Omega^T r / 4) for r = (alpha, beta).
double gaussian_envelope(const BipartiteCM& cm, const Vec& a, const Vec& b) {
    Vec r(4);
    r << a, b;
    const Mat o4 = omega(2);
    return std::exp(-0.25 * r.dot(o4 * Mat(cm.full()) * o4.transpose() * r));
}

void require_point(const Vec& a, const Vec& b) {
    if (a.size() != 2 || b.size() != 2) throw invalid_input("characteristic function: points must be 2-vectors");
}

}  // namespace

double hyp2f1(double a, double b, double c, double z) {
    if (!(std::abs(z) < 1.0)) throw invalid_input("hyp2f1: series requires |z| < 1");
    if (c <= 0.0 && std::floor(c) == c) throw invalid_input("hyp2f1: c must not be a non-positive integer");
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 1000000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z;
        sum += term;
        if (std::abs(term) < 1e-15 * std::abs(sum)) return sum;
        if (term == 0.0) return sum;
    }
    throw computation_error("hyp2f1: series did not converge");
}

double ps_tmsv_probability(double lambda, double tau, int k) {
    if (!(lambda >= 0.0 && lambda < 1.0) || !(tau > 0.0 && tau <= 1.0) || k < 0)
        throw invalid_input("ps_tmsv: need lambda in [0,1), tau in (0,1], k >= 0");
    const double lt = lambda * tau;
    return (1 - lambda * lambda) * std::pow(lambda - lt, 2 * k) * hyp2f1(k + 1, k + 1, 1, lt * lt);
}

double ps_tmsv_probability_printed(double lambda, double tau, int k) {
    const double lt2 = lambda * tau * lambda * tau;
    const double base = (1 - lambda * lambda);
    if (k == 1)
        return base * lambda * lambda * std::pow(1 - tau, 2) * (1 + lt2) / std::pow(1 - lt2, 3);
    if (k == 2)
        return 4 * base * std::pow(lambda, 4) * std::pow(1 - tau, 4) * (1 + lt2 * lt2 + 4 * lt2) / std::pow(1 - lt2, 5);
    throw invalid_input("ps_tmsv_probability_printed: k must be 1 or 2");
}

double ps_tmsv_negativity(double lambda, double tau, int k) {
    if (!(lambda >= 0.0 && lambda < 1.0) || !(tau > 0.0 && tau <= 1.0) || k < 0)
        throw invalid_input("ps_tmsv: need lambda in [0,1), tau in (0,1], k >= 0");
    const double lt = lambda * tau;
    return 0.5 * (std::pow(1 - lt, -2.0 * (k + 1)) / hyp2f1(k + 1, k + 1, 1, lt * lt) - 1);
}

PsTmsv ps_tmsv(double lambda, double tau, int k) {
    PsTmsv out;
    out.probability = ps_tmsv_probability(lambda, tau, k);
    out.negativity = ps_tmsv_negativity(lambda, tau, k);
    const double pre = std::sqrt(1 - lambda * lambda) * std::pow(lambda * (1 - tau), k);
    double binom = 1.0;  // C(n+k, k)
    for (int n = 0; n < 10000000; ++n) {
        if (n > 0) binom *= static_cast<double>(n + k) / n;
        const double a = pre * binom * std::pow(lambda * tau, n);
        out.amplitudes.push_back(a);
        out.probability_sum += a * a;
        if (a * a < 1e-18 * out.probability_sum || (a == 0.0 && n > 0)) break;
    }
    return out;
}

PsOutcome ps2_gaussian(const BipartiteCM& cm, double t) {
    require_tau(t);
    const Mat2 I = Mat2::Identity();
    const Mat2& o = om();
    const Parts p = parts(cm, t);
    const Mat2 xai = p.xa.inverse();
    const Mat2 yi = p.y.inverse();

    PsOutcome out;
    out.m1 = 1 - 0.5 * yi.trace();
    out.m2 = 1 - 0.5 * xai.trace() - 0.5 * (yi * p.hwh).trace();
    out.m3 = 0.5 * (p.wy * p.hwh).trace();

    out.cm.sigma_a = sym(t * cm.sigma_a + (1 - t) * I - 2 * (p.j1 * xai * p.j1.transpose() + p.k1 * yi * p.k1.transpose()));
    out.cm.sigma_b = sym(t * cm.sigma_b + (1 - t) * I - 2 * (p.j2 * xai * p.j2.transpose() + p.k2 * yi * p.k2.transpose()));
    out.cm.eps = t * cm.eps - 2 * (p.j1 * xai * p.j2.transpose() + p.k1 * yi * p.k2.transpose());
    out.probability = (out.m1 * out.m2 + out.m3) / std::sqrt(p.xa.determinant() * p.y.determinant());

    const Mat2 ot = o.transpose();
    out.p1 = -0.5 * o * p.k1 * p.wy * p.k1.transpose() * ot;
    out.p2 = -0.5 * o * p.k2 * p.wy * p.k2.transpose() * ot;
    out.p12 = -o * p.k1 * p.wy * p.k2.transpose() * ot;

    const Mat2 wyh = w_of(p.y, p.hwh);
    out.q1 = -0.5 * o *
             (p.j1 * p.wx * p.j1.transpose() + 2 * p.j1 * p.wx * p.h * yi * p.k1.transpose() +
              p.k1 * wyh * p.k1.transpose()) *
             ot;
    out.q2 = -0.5 * o *
             (p.j2 * p.wx * p.j2.transpose() + 2 * p.j2 * p.wx * p.h * yi * p.k2.transpose() +
              p.k2 * wyh * p.k2.transpose()) *
             ot;
    out.q12 = -o *
              (p.j1 * p.wx * p.j2.transpose() + p.j1 * p.wx * p.h * yi * p.k2.transpose() +
               p.k1 * yi * p.h * p.wx * p.j2.transpose() + p.k1 * wyh * p.k2.transpose()) *
              ot;

    const Mat2 z = p.wy * (yi * p.hwh).trace() + yi * (p.wy * p.hwh).trace() -
                   o * p.hwh * ot / p.y.determinant() * yi.trace();
    out.r1 = 0.5 * o *
             (p.j1 * p.wx * p.h * p.wy * p.k1.transpose() + p.k1 * p.wy * p.h * p.wx * p.j1.transpose() +
              p.k1 * z * p.k1.transpose()) *
             ot;
    out.r2 = 0.5 * o *
             (p.j2 * p.wx * p.h * p.wy * p.k2.transpose() + p.k2 * p.wy * p.h * p.wx * p.j2.transpose() +
              p.k2 * z * p.k2.transpose()) *
             ot;
    out.r12 = o *
              (p.j1 * p.wx * p.h * p.wy * p.k2.transpose() + p.k1 * p.wy * p.h * p.wx * p.j2.transpose() +
               p.k1 * z * p.k2.transpose()) *
              ot;

    out.g = fidelity_correction(out.cm, out.m1, out.m2, out.m3, out.p1, out.p2, out.p12, out.q1, out.q2, out.q12,
                                out.r1, out.r2, out.r12);
    return out;
}

Ps2Printed ps2_printed(double a, double b, double g, double t) {
    require_tau(t);
    const double c = (1 - a) * (1 - b) - g * g;
    const double dn = (1 + a) * (1 + b) - g * g + 2 * (1 - a * b + g * g) * t + c * t * t;
    Ps2Printed out;
    out.alpha = 1 - 2 * t * ((1 - a) * (1 + b) + g * g + c * t) / dn;
    out.beta = 1 - 2 * t * ((1 + a) * (1 - b) + g * g + c * t) / dn;
    out.gamma = 4 * t * g / dn;
    const double s = 1 - a * b + g * g + c * t;
    out.probability = 4 * std::pow(1 - t, 2) * (s * s - (a - b) * (a - b) + 4 * g * g) / std::pow(dn, 3);
    return out;
}

double fidelity_correction(const BipartiteCM& cm, double m1, double m2, double m3, const Mat2& p1, const Mat2& p2,
                           const Mat2& p12, const Mat2& q1, const Mat2& q2, const Mat2& q12, const Mat2& r1,
                           const Mat2& r2, const Mat2& r12) {
    const double norm = m1 * m2 + m3;
    if (!(std::abs(norm) > 1e-300)) throw computation_error("fidelity_correction: vanishing normalization");
    const Mat2 kg = Mat2::Identity() + 0.5 * gamma_matrix(cm);
    const Mat2 okio = om() * kg.inverse() * om().transpose();
    const Mat2 pp = sym(sz() * p1 * sz() + p2 + sz() * p12);
    const Mat2 qq = sym(sz() * q1 * sz() + q2 + sz() * q12);
    const Mat2 rr = sz() * r1 * sz() + r2 + sz() * r12;
    auto tr = [&](const Mat2& m) { return (okio * m).trace(); };
    const Mat2 wk = w_of(om() * kg * om().transpose(), pp);
    return (m1 * tr(qq) + m2 * tr(pp) + tr(pp) * tr(qq) + tr(rr) + 2 * (wk * qq).trace()) / norm;
}

HeuristicPs ps2_heuristic(const BipartiteCM& cm) {
    const Mat2 I = Mat2::Identity();
    const Mat2& o = om();
    const Mat2 ot = o.transpose();
    const Mat2& sa = cm.sigma_a;
    const Mat2& sb = cm.sigma_b;
    const Mat2& e = cm.eps;
    HeuristicPs hp;
    hp.m_a = 1 - 0.5 * sa.trace();
    hp.m_b = 1 - 0.5 * sb.trace();
    hp.m_c = 0.5 * (e.transpose() * e).trace();
    const double e0 = hp.m_a * hp.m_b + hp.m_c;
    if (!(e0 > 1e-14)) throw computation_error("ps2_heuristic: no photons to subtract (m_A m_B + m_C <= 0)");
    hp.normalization = 1.0 / e0;
    hp.M_a = 0.25 * (I - 2 * o * sa * ot + o * sa * sa * ot);
    hp.M_b = 0.25 * (I - 2 * o * sb * ot + o * sb * sb * ot);
    hp.M_c = 0.25 * o * e.transpose() * e * ot;
    hp.M_ac = 0.5 * (o * sa * e * ot - o * e * ot);
    hp.M_bc = 0.5 * (o * e * sb * ot - o * e * ot);
    const Mat2 x = I - o * sb * ot;
    const Mat2 oeo = o * e * ot;
    hp.h = fidelity_correction(cm, hp.m_b, hp.m_a, hp.m_c, hp.M_c, hp.M_b, hp.M_bc, hp.M_a, hp.M_c, hp.M_ac,
                               -hp.M_ac * oeo, 2 * hp.M_c * x, hp.M_ac * x - 2 * oeo * hp.M_c);
    return hp;
}

double heuristic_h_printed(const BipartiteCM& cm) {
    const HeuristicPs hp = ps2_heuristic(cm);
    const Mat2& o = om();
    const Mat2 ot = o.transpose();
    const Mat2 k = Mat2::Identity() + 0.5 * gamma_matrix(cm);
    const Mat2 okio = o * k.inverse() * ot;
    const double e0 = hp.m_a * hp.m_b + hp.m_c;
    const Mat2 e1 = hp.m_a * (hp.M_b + sz() * hp.M_c * sz() + sz() * hp.M_bc) +
                    hp.m_b * (sz() * hp.M_a * sz() + hp.M_c + sz() * hp.M_ac) +
                    (2 * hp.M_c + sz() * hp.M_ac) * o * (Mat2::Identity() + sz() * cm.eps - cm.sigma_b) * ot;
    const Mat2 e2a = hp.M_c + sz() * hp.M_ac + sz() * hp.M_a * sz();
    const Mat2 e2b = hp.M_b + sz() * hp.M_bc + sz() * hp.M_c * sz();
    return ((okio * e1).trace() - 2 / k.determinant() * (o * e2a * ot * e2b).trace() +
            3 * (okio * e2a).trace() * (okio * e2b).trace()) /
           e0;
}

VacuumConditioned vacuum_condition(const BipartiteCM& cm, double tau) {
    require_tau(tau);
    GaussianState s{4, Vec::Zero(8), Mat::Identity(8, 8)};
    s.sigma.topLeftCorner(4, 4) = cm.full();
    s = apply(s, beam_splitter(tau), {0, 2});
    s = apply(s, beam_splitter(tau), {1, 3});
    const Mat ss = s.sigma.topLeftCorner(4, 4);
    const Mat sc = s.sigma.topRightCorner(4, 4);
    const Mat cc = s.sigma.bottomRightCorner(4, 4) + Mat::Identity(4, 4);
    VacuumConditioned out;
    out.cm = BipartiteCM::from_full(ss - sc * cc.ldlt().solve(sc.transpose()));
    out.p0 = 4.0 / std::sqrt(cc.determinant());
    return out;
}

cplx char_fn_2ps(const BipartiteCM& cm, double tau, const Vec& a, const Vec& b) {
    require_point(a, b);
    const PsOutcome o = ps2_gaussian(cm, tau);
    auto f = [&](const Mat2& x, const Mat2& y, const Mat2& z) {
        return quad_form(a, x, a) + quad_form(b, y, b) + quad_form(a, z, b);
    };
    const double poly = (o.m1 + f(o.p1, o.p2, o.p12)) * (o.m2 + f(o.q1, o.q2, o.q12)) + o.m3 + f(o.r1, o.r2, o.r12);
    return poly / (o.m1 * o.m2 + o.m3) * gaussian_envelope(o.cm, a, b);
}

cplx char_fn_heuristic(const BipartiteCM& cm, const Vec& a, const Vec& b) {
    require_point(a, b);
    const HeuristicPs hp = ps2_heuristic(cm);
    const Mat2& o = om();
    const Mat2 ot = o.transpose();
    const Mat2 x = Mat2::Identity() - o * cm.sigma_b * ot;
    const Mat2 oeo = o * cm.eps * ot;
    const double poly =
        (hp.m_b + quad_form(b, hp.M_b, b) + quad_form(a, hp.M_bc, b) + quad_form(a, hp.M_c, a)) *
            (hp.m_a + quad_form(a, hp.M_a, a) + quad_form(a, hp.M_ac, b) + quad_form(b, hp.M_c, b)) +
        hp.m_c - quad_form(a, hp.M_ac * oeo, a) + 2 * quad_form(b, hp.M_c * x, b) +
        quad_form(a, hp.M_ac * x - 2 * oeo * hp.M_c, b);
    return poly * hp.normalization * gaussian_envelope(cm, a, b);
}

BipartiteCM swap(const BipartiteCM& ab, const BipartiteCM& cd) {
    const Mat2& o = om();
    const Mat2 ot = o.transpose();
    const Mat2 m = ab.sigma_b + sz() * cd.sigma_a * sz();
    const double det = m.determinant();
    if (!(std::abs(det) > 1e-14)) throw computation_error("swap: Sigma_B + sz Sigma_C sz is singular");
    BipartiteCM out;
    out.sigma_a = sym(ab.sigma_a - ab.eps * ot * m * o * ab.eps.transpose() / det);
    const Mat2 mc = cd.sigma_a + sz() * ab.sigma_b * sz();
    out.sigma_b = sym(cd.sigma_b - cd.eps.transpose() * ot * mc * o * cd.eps / det);
    out.eps = -ab.eps * ot * (ab.sigma_b * sz() + sz() * cd.sigma_a) * o * cd.eps / det;
    return out;
}

SymmetricSwap swap_symmetric(double alpha, double beta, double gamma) {
    if (!(beta > 0.0)) throw invalid_input("swap_symmetric: beta must be positive");
    const double e = gamma * gamma / (2 * beta);
    return {alpha - e, e};
}

}  // namespace cvq
