#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "gq/dual.hpp"
#include "gq/lie.hpp"
#include "gq/smallmat.hpp"

namespace gq {

/// Chart point on the maximal cell in Lu coordinates: y_j = x_{2j-1} + i x_{2j}
/// packed in a real vector of length 2n.
struct ChartPoint {
    std::vector<double> x;

    int n() const { return int(x.size() / 2); }
    std::complex<double> y(int j) const { return {x[std::size_t(2 * j)], x[std::size_t(2 * j + 1)]}; }
};

// ---- chart maps -------------------------------------------------------------

/// Affine coordinates from Lu coordinates: z_i = y_i * prod_{j>i} sqrt(1+|y_j|^2).
template <typename T>
std::vector<T> z_of_y(const std::vector<T>& x) {
    const std::size_t n = x.size() / 2;
    std::vector<T> z(2 * n, T(0.0));
    T suffix(1.0);
    for (std::size_t i = n; i-- > 0;) {
        z[2 * i] = x[2 * i] * suffix;
        z[2 * i + 1] = x[2 * i + 1] * suffix;
        using std::sqrt;
        suffix = suffix * sqrt(T(1.0) + x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1]);
    }
    return z;
}

/// Inverse chart map: y_i = z_i * (1 + sum_{j>i} |z_j|^2)^{-1/2}.
template <typename T>
std::vector<T> y_of_z(const std::vector<T>& z) {
    const std::size_t n = z.size() / 2;
    std::vector<T> x(2 * n, T(0.0));
    T tail(0.0);
    for (std::size_t i = n; i-- > 0;) {
        using std::sqrt;
        const T f = T(1.0) / sqrt(T(1.0) + tail);
        x[2 * i] = z[2 * i] * f;
        x[2 * i + 1] = z[2 * i + 1] * f;
        tail += z[2 * i] * z[2 * i] + z[2 * i + 1] * z[2 * i + 1];
    }
    return x;
}

// ---- tensor fields ----------------------------------------------------------

/// Real form of the Liouville primitive i Tr[g^{-1}dg lambda] in the affine
/// chart: theta = (sum_i b_i da_i - a_i db_i) / (1 + sum |z_i|^2).
template <typename T>
std::vector<T> liouville_theta_z(const std::vector<T>& z) {
    const std::size_t n2 = z.size();
    T d(1.0);
    for (std::size_t i = 0; i < n2; ++i) d += z[i] * z[i];
    std::vector<T> th(n2, T(0.0));
    for (std::size_t i = 0; i + 1 < n2; i += 2) {
        th[i] = z[i + 1] / d;
        th[i + 1] = T(0.0) - z[i] / d;
    }
    return th;
}

/// The Kirillov-Kostant form omega_lambda pulled back to Lu coordinates:
/// omega = Jac^T (d theta) Jac with both factors differentiated by dual
/// numbers, so the construction stays valid under further dual nesting.
template <typename T>
Mat<T> omega_lambda(const std::vector<T>& x) {
    const std::size_t m = x.size();
    // Jacobian of z(y) and d(theta) at z(y)
    Mat<T> jac(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        auto zi = z_of_y(seed(x, i));
        for (std::size_t k = 0; k < m; ++k) jac(k, i) = zi[k].b;
    }
    const auto z = z_of_y(x);
    Mat<T> wz(m, m);
    for (std::size_t k = 0; k < m; ++k) {
        auto th = liouville_theta_z(seed(z, k));
        for (std::size_t l = 0; l < m; ++l) {
            // accumulate d theta = (d_k theta_l) dz^k ^ dz^l antisymmetrized
            wz(k, l) += th[l].b;
            wz(l, k) -= th[l].b;
        }
    }
    return jac.transpose() * wz * jac;
}

/// Bruhat tensor pi_0 = i sum (1+|y_i|^2) d_{y_i} ^ d_{ybar_i} expanded in
/// real coordinates: one 2x2 block per complex coordinate with
/// {Re y_i, Im y_i} = -(1+|y_i|^2)/2.
template <typename T>
Mat<T> pi0_matrix(const std::vector<T>& x) {
    const std::size_t m = x.size();
    Mat<T> p(m, m);
    for (std::size_t i = 0; i + 1 < m; i += 2) {
        const T f = (T(1.0) + x[i] * x[i] + x[i + 1] * x[i + 1]) / T(2.0);
        p(i, i + 1) = T(0.0) - f;
        p(i + 1, i) = f;
    }
    return p;
}

/// c_k = 1 - prod_{i<=k} (1+|y_i|^2)^{-1}, the toric momentum in Lu coordinates.
template <typename T>
T c_coordinate(const std::vector<T>& x, int k) {
    T prod(1.0);
    for (int i = 0; i < k; ++i)
        prod = prod * (T(1.0) + x[std::size_t(2 * i)] * x[std::size_t(2 * i)] +
                       x[std::size_t(2 * i + 1)] * x[std::size_t(2 * i + 1)]);
    return T(1.0) - T(1.0) / prod;
}

/// Fundamental field of H_k: i sum_{j<=k} (y_j d_{y_j} - ybar_j d_{ybar_j})
/// = sum_{j<=k} (-Im y_j, +Re y_j) in the real slots of coordinate j.
template <typename T>
std::vector<T> sigma_field(const std::vector<T>& x, int k) {
    std::vector<T> v(x.size(), T(0.0));
    for (int j = 0; j < k; ++j) {
        v[std::size_t(2 * j)] = T(0.0) - x[std::size_t(2 * j + 1)];
        v[std::size_t(2 * j + 1)] = x[std::size_t(2 * j)];
    }
    return v;
}

/// Hamiltonian vector field of f from its gradient: X^j = sum_i Pi^{ij} d_i f.
template <typename T>
std::vector<T> hamiltonian_field(const Mat<T>& pi, const std::vector<T>& grad) {
    return pi.transpose().apply(grad);
}

/// Orientation of pi_lambda relative to omega_lambda^{-1}, pinned once by
/// the momentum condition sigma_{H_k} = pi_lambda(dc_k, .) at a fixed
/// generic point of the chart.
inline int pencil_sign(int n) {
    static const std::array<double, 8> ref = {0.37, -0.21, 0.13, 0.29, -0.33, 0.17, 0.23, -0.11};
    std::vector<double> x(ref.begin(), ref.begin() + 2 * n);
    const auto inv = omega_lambda(x).inverse();
    double best[2] = {0.0, 0.0};
    for (int si = 0; si < 2; ++si) {
        const double s = si == 0 ? 1.0 : -1.0;
        double worst = 0.0;
        for (int k = 1; k <= n; ++k) {
            auto grad = gradient([k](const std::vector<D1>& q) { return c_coordinate(q, k); }, x);
            auto field = hamiltonian_field(RMat(s * inv), grad);
            auto sig = sigma_field(x, k);
            for (std::size_t i = 0; i < field.size(); ++i)
                worst = std::max(worst, std::abs(field[i] - sig[i]));
        }
        best[si] = worst;
    }
    return best[0] <= best[1] ? 1 : -1;
}

/// pi_lambda = sign * omega_lambda^{-1}; valid under dual nesting, where the
/// inverse differentiates through d(Omega^{-1}) = -Omega^{-1} dOmega Omega^{-1}.
template <typename T>
Mat<T> pi_lambda_matrix(const std::vector<T>& x, int sign) {
    Mat<T> inv = omega_lambda(x).inverse();
    return T(double(sign)) * inv;
}

template <typename T>
Mat<T> pi_t_matrix(const std::vector<T>& x, double t, int sign) {
    return pi0_matrix(x) + T(t) * pi_lambda_matrix(x, sign);
}

/// Everything the verification suites need at one chart point.
struct TensorsAtPoint {
    RMat pi0;
    RMat omega;      // omega_lambda
    RMat pi_lambda;
    RMat pi_t;
    RMat recursion;  // J = pi0 * omega
    std::vector<double> c;
    std::vector<std::vector<double>> sigma; // n fundamental fields
    std::vector<double> invariants;         // I_k = tr(J^k)/k
};

inline TensorsAtPoint tensors_at(const ChartPoint& p, double t) {
    const int n = p.n();
    TensorsAtPoint out;
    out.pi0 = pi0_matrix(p.x);
    out.omega = omega_lambda(p.x);
    const int sign = pencil_sign(n);
    out.pi_lambda = pi_lambda_matrix(p.x, sign);
    out.pi_t = out.pi0 + t * out.pi_lambda;
    out.recursion = out.pi0 * out.omega;
    out.c.resize(std::size_t(n));
    out.sigma.resize(std::size_t(n));
    out.invariants.resize(std::size_t(n));
    RMat jk = RMat::identity(p.x.size());
    for (int k = 1; k <= n; ++k) {
        out.c[std::size_t(k - 1)] = c_coordinate(p.x, k);
        out.sigma[std::size_t(k - 1)] = sigma_field(p.x, k);
        jk = jk * out.recursion;
        out.invariants[std::size_t(k - 1)] = jk.trace() / double(k);
    }
    return out;
}

// ---- Schouten bracket -------------------------------------------------------

/// [A,B]^{ijk} = sum_l A^{li} d_l B^{jk} + A^{lj} d_l B^{ki} + A^{lk} d_l B^{ij}
///             + (A <-> B); the Jacobi defect 2x when A = B.
/// Fields are callables returning Mat<Dual<double>> from seeded coordinates.
template <typename FieldA, typename FieldB>
double schouten_bracket_max(const FieldA& fa, const FieldB& fb, const std::vector<double>& x) {
    const std::size_t m = x.size();
    // values and first derivatives
    RMat a0(m, m), b0(m, m);
    std::vector<RMat> da(m, RMat(m, m)), db(m, RMat(m, m));
    for (std::size_t l = 0; l < m; ++l) {
        const auto sa = fa(seed(x, l));
        const auto sb = fb(seed(x, l));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                da[l](i, j) = sa(i, j).b;
                db[l](i, j) = sb(i, j).b;
                if (l == 0) {
                    a0(i, j) = sa(i, j).a;
                    b0(i, j) = sb(i, j).a;
                }
            }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                double acc = 0.0;
                for (std::size_t l = 0; l < m; ++l) {
                    acc += a0(l, i) * db[l](j, k) + a0(l, j) * db[l](k, i) + a0(l, k) * db[l](i, j);
                    acc += b0(l, i) * da[l](j, k) + b0(l, j) * da[l](k, i) + b0(l, k) * da[l](i, j);
                }
                worst = std::max(worst, std::abs(acc));
            }
    return worst;
}

struct Pi0Field {
    template <typename T>
    Mat<T> operator()(const std::vector<T>& x) const {
        return pi0_matrix(x);
    }
};

struct PiLambdaField {
    int sign;
    template <typename T>
    Mat<T> operator()(const std::vector<T>& x) const {
        return pi_lambda_matrix(x, sign);
    }
};

struct PiTField {
    double t;
    int sign;
    template <typename T>
    Mat<T> operator()(const std::vector<T>& x) const {
        return pi_t_matrix(x, t, sign);
    }
};

// ---- identity suite ---------------------------------------------------------

struct IdentityReport {
    double recursion = 0.0;    // J sigma_k - (c_k - 1) sigma_k
    double hamiltonian = 0.0;  // pi_t db_k - sigma_k   (skipped near c_k = 1-t)
    double lenard = 0.0;       // grad I_{k+1} - J^T grad I_k
    double modular = 0.0;      // div_rho(pi_t) - sum_k sigma_k
    double involution = 0.0;   // |{c_i, c_j}_{pi_t}|
    std::vector<int> skipped_hamiltonian;

    double worst() const {
        return std::max({recursion, hamiltonian, lenard, modular, involution});
    }
};

/// Modular vector field of pi with respect to the density rho:
/// chi^i = (1/rho) sum_j d_j (rho pi^{ji}); rho is the Pfaffian of
/// omega_lambda (the Fubini-Study volume in these coordinates).
template <typename Field>
std::vector<double> modular_field(const Field& f, const std::vector<double>& x) {
    const std::size_t m = x.size();
    std::vector<double> chi(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        auto xs = seed(x, j);
        const auto pi = f(xs);
        const auto rho = pfaffian(omega_lambda(xs));
        for (std::size_t i = 0; i < m; ++i) chi[i] += (rho * pi(j, i)).b;
    }
    const double rho0 = pfaffian(omega_lambda(x));
    for (auto& v : chi) v /= rho0;
    return chi;
}

inline IdentityReport identity_suite(const ChartPoint& p, double t) {
    const int n = p.n();
    const std::size_t m = p.x.size();
    const int sign = pencil_sign(n);
    IdentityReport rep;
    const auto tp = tensors_at(p, t);

    // (a) recursion operator eigenvalue on the fundamental fields
    for (int k = 1; k <= n; ++k) {
        const auto js = tp.recursion.apply(tp.sigma[std::size_t(k - 1)]);
        const double ev = tp.c[std::size_t(k - 1)] - 1.0;
        for (std::size_t i = 0; i < m; ++i)
            rep.recursion =
                std::max(rep.recursion, std::abs(js[i] - ev * tp.sigma[std::size_t(k - 1)][i]));
    }

    // (b) local hamiltonian b_k = log|c_k - 1 + t| away from the singular locus
    for (int k = 1; k <= n; ++k) {
        if (std::abs(tp.c[std::size_t(k - 1)] - (1.0 - t)) < 1e-6) {
            rep.skipped_hamiltonian.push_back(k);
            continue;
        }
        auto grad = gradient(
            [k, t](const std::vector<D1>& q) {
                using gq::abs;
                using gq::log;
                return log(abs(c_coordinate(q, k) - D1(1.0 - t)));
            },
            p.x);
        const auto field = hamiltonian_field(tp.pi_t, grad);
        for (std::size_t i = 0; i < m; ++i)
            rep.hamiltonian =
                std::max(rep.hamiltonian, std::abs(field[i] - tp.sigma[std::size_t(k - 1)][i]));
    }

    // (c) Lenard recursion dI_{k+1} = J^* dI_k
    if (n > 1) {
        std::vector<std::vector<double>> grads(std::size_t(n));
        for (int k = 1; k <= n; ++k)
            grads[std::size_t(k - 1)] = gradient(
                [k](const std::vector<D1>& q) {
                    Mat<D1> j = pi0_matrix(q) * omega_lambda(q);
                    Mat<D1> jk = j;
                    for (int i = 1; i < k; ++i) jk = jk * j;
                    return jk.trace() / D1(double(k));
                },
                p.x);
        const auto jt = tp.recursion.transpose();
        for (int k = 1; k < n; ++k) {
            const auto rhs = jt.apply(grads[std::size_t(k - 1)]);
            for (std::size_t i = 0; i < m; ++i)
                rep.lenard = std::max(rep.lenard, std::abs(grads[std::size_t(k)][i] - rhs[i]));
        }
    }

    // (d) modular field of pi_t against sum_k sigma_k
    {
        const auto chi = modular_field(PiTField{t, sign}, p.x);
        std::vector<double> total(m, 0.0);
        for (int k = 1; k <= n; ++k)
            for (std::size_t i = 0; i < m; ++i) total[i] += tp.sigma[std::size_t(k - 1)][i];
        for (std::size_t i = 0; i < m; ++i)
            rep.modular = std::max(rep.modular, std::abs(chi[i] - total[i]));
    }

    // (e) involution of the momenta
    for (int i = 1; i <= n; ++i) {
        auto gi = gradient([i](const std::vector<D1>& q) { return c_coordinate(q, i); }, p.x);
        for (int j = i + 1; j <= n; ++j) {
            auto gj = gradient([j](const std::vector<D1>& q) { return c_coordinate(q, j); }, p.x);
            double br = 0.0;
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b) br += gi[a] * tp.pi_t(a, b) * gj[b];
            rep.involution = std::max(rep.involution, std::abs(br));
        }
    }
    return rep;
}

// ---- SU(2) cross-check ------------------------------------------------------

struct Su2Check {
    double tensor_residual = 0.0;  // dressing formula vs i(1+|y|^2)
    double omega_residual = 0.0;   // omega_lambda vs -i dy^dybar/(1+|y|^2)^2
    double pairing_residual = 0.0; // Gram matrix of the dual bases vs identity
};

namespace detail_su2 {

inline std::array<CMat, 3> su_basis() {
    CMat x1(2, 2), x2(2, 2), x3(2, 2);
    x1(0, 1) = {0.0, 1.0};
    x1(1, 0) = {0.0, 1.0};
    x2(0, 1) = {-1.0, 0.0};
    x2(1, 0) = {1.0, 0.0};
    x3(0, 0) = {0.0, 0.5};
    x3(1, 1) = {0.0, -0.5};
    return {x1, x2, x3};
}

inline std::array<CMat, 3> sb_basis() {
    CMat e1(2, 2), e2(2, 2), e3(2, 2);
    e1(0, 1) = {1.0, 0.0};
    e2(0, 1) = {0.0, 1.0};
    e3(0, 0) = {1.0, 0.0};
    e3(1, 1) = {-1.0, 0.0};
    return {e1, e2, e3};
}

inline CMat cell_matrix(std::complex<double> y) {
    const double eps = std::sqrt(1.0 + std::norm(y));
    CMat g(2, 2);
    g(0, 0) = -y / eps;
    g(0, 1) = 1.0 / eps;
    g(1, 0) = -1.0 / eps;
    g(1, 1) = -std::conj(y) / eps;
    return g;
}

/// {y, ybar} at g(y) from the dressing formula on right-invariant forms.
inline std::complex<double> bracket_y_ybar(std::complex<double> y) {
    const auto su = su_basis();
    const auto sb = sb_basis();
    const CMat g = cell_matrix(y);
    const CMat gi = adjoint(g);

    // coordinate differentials along the right-invariant directions
    std::array<std::complex<double>, 3> dy{};
    for (int a = 0; a < 3; ++a) {
        const CMat xg = su[std::size_t(a)] * g;
        dy[std::size_t(a)] = xg(0, 0) / g(1, 0) - g(0, 0) * xg(1, 0) / (g(1, 0) * g(1, 0));
    }

    std::complex<double> acc(0.0, 0.0);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const auto sa = su_sb_split(gi * sb[std::size_t(a)] * g);
            const auto sbp = su_sb_split(gi * sb[std::size_t(b)] * g);
            std::complex<double> tr(0.0, 0.0);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t k = 0; k < 2; ++k) tr += sa.su(i, k) * sbp.sb(k, i);
            const double pi_ab = -0.5 * tr.imag();
            acc += pi_ab * dy[std::size_t(a)] * std::conj(dy[std::size_t(b)]);
        }
    return acc;
}

/// Coset-convention orientation between the dressing formula and the
/// appendix chart, calibrated once at y = 0.
inline double orientation() {
    const auto v = bracket_y_ybar({0.0, 0.0});
    return v.imag() >= 0.0 ? 1.0 : -1.0;
}

} // namespace detail_su2

inline Su2Check su2_check(std::complex<double> y) {
    Su2Check out;

    // pairing consistency: Im Tr(X_a xi^b) = delta_ab
    const auto su = detail_su2::su_basis();
    const auto sb = detail_su2::sb_basis();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const double want = a == b ? 1.0 : 0.0;
            out.pairing_residual = std::max(
                out.pairing_residual,
                std::abs(lie_pairing(su[std::size_t(a)], sb[std::size_t(b)]) - want));
        }

    // dressing formula against the closed form i(1+|y|^2)
    const double s = detail_su2::orientation();
    const std::complex<double> got = s * detail_su2::bracket_y_ybar(y);
    const std::complex<double> want(0.0, 1.0 + std::norm(y));
    out.tensor_residual = std::abs(got - want);

    // omega_lambda at n=1 against the Kirillov-Kostant closed form
    std::vector<double> x = {y.real(), y.imag()};
    const auto om = omega_lambda(x);
    const double d = 1.0 + std::norm(y);
    out.omega_residual = std::abs(om(0, 1) - (-2.0 / (d * d)));
    return out;
}

} // namespace gq
