#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "gq/rng.hpp"
#include "gq/smallmat.hpp"

namespace gq {

enum class IwasawaOrder { SU_SB, SB_SU };

struct IwasawaFactors {
    CMat unitary;    // special unitary factor
    CMat triangular; // upper triangular, positive diagonal, det 1
};

/// The pairing <X, xi> = Im Tr(X xi) identifying sb(n+1) with su(n+1)*.
inline double lie_pairing(const CMat& x, const CMat& xi) {
    std::complex<double> t(0.0, 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < x.cols(); ++k) t += x(i, k) * xi(k, i);
    return t.imag();
}

/// Conjugation matrix sigma_t in SU(n+1): rotation by (sqrt(1-t), sqrt(t))
/// in the (1, n+1) plane, identity in between.
inline CMat sigma_t_matrix(int n, double t) {
    CMat s = CMat::identity(std::size_t(n + 1));
    const double c = std::sqrt(1.0 - t);
    const double sn = std::sqrt(t);
    s(0, 0) = c;
    s(0, std::size_t(n)) = sn;
    s(std::size_t(n), 0) = -sn;
    s(std::size_t(n), std::size_t(n)) = c;
    return s;
}

/// Iwasawa decomposition of d in SL(n+1,C): modified Gram-Schmidt on the
/// columns with positive-diagonal normalization gives d = u b; unit
/// determinant of both factors is automatic (det b > 0, |det u| = 1, and
/// det d = 1 forces det b = det u = 1).  SB_SU order factors d^{-1}.
inline IwasawaFactors iwasawa(const CMat& d, IwasawaOrder order = IwasawaOrder::SU_SB) {
    const std::size_t n = d.rows();
    if (std::abs(d.det() - std::complex<double>(1.0, 0.0)) > 1e-8)
        throw std::domain_error("iwasawa: input determinant is not 1");

    if (order == IwasawaOrder::SB_SU) {
        auto f = iwasawa(d.inverse(), IwasawaOrder::SU_SB);
        return {adjoint(f.unitary), f.triangular.inverse()};
    }

    CMat q = d;
    CMat r(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            std::complex<double> proj(0.0, 0.0);
            for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * q(i, j);
            r(k, j) = proj;
            for (std::size_t i = 0; i < n; ++i) q(i, j) -= proj * q(i, k);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(q(i, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-14) throw std::domain_error("iwasawa: singular input");
        r(j, j) = nrm;
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
    }
    return {q, r};
}

/// p_1/p_2 projections of a traceless matrix onto su(n+1) (anti-hermitian)
/// and sb(n+1) (upper triangular, real diagonal).  Exact closed form: the
/// su part is fixed below the diagonal by X, completed anti-hermitially,
/// with the imaginary part of the diagonal.
struct SuSbSplit {
    CMat su;
    CMat sb;
};

inline SuSbSplit su_sb_split(const CMat& x) {
    const std::size_t n = x.rows();
    if (std::abs(x.trace()) > 1e-10) throw std::domain_error("su_sb_split: input not traceless");
    CMat su(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        su(i, i) = std::complex<double>(0.0, x(i, i).imag());
        for (std::size_t j = 0; j < i; ++j) {
            su(i, j) = x(i, j);
            su(j, i) = -std::conj(x(i, j));
        }
    }
    return {su, x - su};
}

/// h_k = log det_k(gamma) for gamma in SB(n+1,C): the Cartan momentum of
/// the groupoid, additive under SB multiplication.
inline std::vector<double> momentum_h(const CMat& gamma) {
    const std::size_t n1 = gamma.rows();
    std::vector<double> h(n1 - 1, 0.0);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < n1; ++k) {
        const std::complex<double> d = gamma(k, k);
        if (!(d.real() > 0.0) || std::abs(d.imag()) > 1e-10 * (1.0 + std::abs(d.real())))
            throw std::domain_error("momentum_h: diagonal entry not positive real");
        acc += std::log(d.real());
        h[k] = acc;
    }
    return h;
}

/// c_k(g) at pencil parameter t: with X = e_1^T sigma_t^{-1} g the
/// homogeneous coordinates of the projected point, c_k is the normalized
/// partial sum of |X_j|^2; nondecreasing with values in [0,1].
inline std::vector<double> momentum_c(const CMat& g, double t) {
    const std::size_t n1 = g.rows();
    const CMat sig = sigma_t_matrix(int(n1) - 1, t);
    // e_1^T sigma_t^{-1} = first row of sigma_t^H (sigma_t is unitary)
    std::vector<std::complex<double>> x(n1, {0.0, 0.0});
    for (std::size_t j = 0; j < n1; ++j)
        for (std::size_t i = 0; i < n1; ++i) x[j] += std::conj(sig(i, 0)) * g(i, j);
    double total = 0.0;
    for (const auto& v : x) total += std::norm(v);
    std::vector<double> c(n1 - 1, 0.0);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < n1; ++k) {
        acc += std::norm(x[k]);
        c[k] = acc / total;
    }
    return c;
}

/// Element xi of u_0(n)^perp: first row, columns 2..n+1.
inline CMat xi_matrix(const std::vector<std::complex<double>>& row) {
    const std::size_t n1 = row.size() + 1;
    CMat xi(n1, n1);
    for (std::size_t j = 0; j < row.size(); ++j) xi(0, j + 1) = row[j];
    return xi;
}

struct GroupoidElement {
    CMat gamma; // SB factor of the arrow
    CMat u0;    // target representative g^gamma in SU(n+1)
    CMat lambda; // {}^g gamma in U_t(n)^perp
};

/// Construct the symplectic-groupoid element over source g determined by
/// xi in u_0(n)^perp: lambda = exp p_2(Ad_{sigma_t} xi), then the Iwasawa
/// split lambda^{-1} g = u0 b yields gamma = b^{-1} with g gamma = lambda u0.
inline GroupoidElement build_element(const CMat& g, const CMat& xi, double t) {
    const std::size_t n1 = g.rows();
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            if (!(i == 0 && j > 0) && std::abs(xi(i, j)) > 0.0)
                throw std::domain_error("build_element: xi outside u_0(n)^perp");
    const CMat sig = sigma_t_matrix(int(n1) - 1, t);
    const CMat ad = sig * xi * adjoint(sig);
    const CMat lam = expm(su_sb_split(ad).sb);
    const auto f = iwasawa(lam.inverse() * g, IwasawaOrder::SU_SB);
    return {f.triangular.inverse(), f.unitary, lam};
}

struct RactionCheck {
    double residual = 0.0;     // max_i |c_tgt_i - (1-t+e^{-h_i}(c_src_i+t-1))|
    double pk_residual = 0.0;  // max over i with c_src_i = 1-t of |c_tgt_i - (1-t)|
    double reconstruction = 0.0; // ||g gamma - lambda u0||
};

/// Cross-check of the lattice action formula against the dressing action:
/// the momentum images of source and target satisfy
/// r(c,h)_i = 1-t + e^{-h_i}(c_i+t-1), and c_i = 1-t is preserved.
inline RactionCheck raction_crosscheck(const CMat& g, const CMat& xi, double t) {
    const auto el = build_element(g, xi, t);
    RactionCheck out;
    out.reconstruction = max_abs(g * el.gamma - el.lambda * el.u0);
    const auto c_src = momentum_c(g, t);
    const auto c_tgt = momentum_c(el.u0, t);
    const auto h = momentum_h(el.gamma);
    for (std::size_t i = 0; i < c_src.size(); ++i) {
        const double predicted = 1.0 - t + std::exp(-h[i]) * (c_src[i] + t - 1.0);
        out.residual = std::max(out.residual, std::abs(c_tgt[i] - predicted));
        if (std::abs(c_src[i] - (1.0 - t)) < 1e-9)
            out.pk_residual = std::max(out.pk_residual, std::abs(c_tgt[i] - (1.0 - t)));
    }
    return out;
}

/// Haar-style random special unitary: Gram-Schmidt orthonormalization of a
/// Gaussian complex matrix with determinant correction on the last column.
inline CMat random_su(int n1, Rng& rng) {
    CMat g(std::size_t(n1), std::size_t(n1));
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = rng.gaussian_complex();
    for (std::size_t j = 0; j < g.cols(); ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            std::complex<double> proj(0.0, 0.0);
            for (std::size_t i = 0; i < g.rows(); ++i) proj += std::conj(g(i, k)) * g(i, j);
            for (std::size_t i = 0; i < g.rows(); ++i) g(i, j) -= proj * g(i, k);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < g.rows(); ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < g.rows(); ++i) g(i, j) /= nrm;
    }
    const std::complex<double> det = g.det();
    for (std::size_t i = 0; i < g.rows(); ++i) g(i, g.cols() - 1) /= det;
    return g;
}

/// Random element of the Poisson subgroup S(U(k) x U(n+1-k)).
inline CMat random_su_block(int n1, int k, Rng& rng) {
    CMat g(std::size_t(n1), std::size_t(n1));
    const CMat a = random_su(k, rng);
    const CMat b = random_su(n1 - k, rng);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) g(std::size_t(i), std::size_t(j)) = a(std::size_t(i), std::size_t(j));
    for (int i = 0; i < n1 - k; ++i)
        for (int j = 0; j < n1 - k; ++j)
            g(std::size_t(k + i), std::size_t(k + j)) = b(std::size_t(i), std::size_t(j));
    return g; // product of two special unitaries: det = 1 already
}

inline CMat random_xi(int n1, Rng& rng, double scale = 0.7) {
    std::vector<std::complex<double>> row(std::size_t(n1 - 1));
    for (auto& v : row) v = scale * rng.gaussian_complex();
    return xi_matrix(row);
}

} // namespace gq
