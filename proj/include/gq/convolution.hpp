#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "gq/groupoid.hpp"

namespace gq {

/// Finite-support function on the arrows of G with complex values; the
/// element of the twisted convolution *-algebra C_c(G, zeta).
template <Groupoid G>
using AlgebraElement = std::map<typename G::Arrow, std::complex<double>>;

template <Groupoid G>
using Cocycle2 = std::function<std::complex<double>(const typename G::Arrow&,
                                                    const typename G::Arrow&)>;

template <Groupoid G>
using UnitMeasure = std::function<double(const typename G::Unit&)>;

template <Groupoid G>
Cocycle2<G> trivial_cocycle2() {
    return [](const typename G::Arrow&, const typename G::Arrow&) {
        return std::complex<double>(1.0, 0.0);
    };
}

/// Phase cocycle zeta(a,b) = exp(i s f(a) f(b)): a genuine 2-cocycle for any
/// additive f, since the defect telescopes under the cocycle identity.
template <Groupoid G>
Cocycle2<G> bilinear_phase_cocycle(std::function<double(const typename G::Arrow&)> f,
                                   double scale = 1.0) {
    return [f = std::move(f), scale](const typename G::Arrow& a, const typename G::Arrow& b) {
        return std::exp(std::complex<double>(0.0, scale * f(a) * f(b)));
    };
}

/// zeta(a,b) = exp(i s f(a)^2): norm one but generically NOT a 2-cocycle;
/// the negative control for the twisted-associativity tests.
template <Groupoid G>
Cocycle2<G> square_phase_noncocycle(std::function<double(const typename G::Arrow&)> f,
                                    double scale = 1.0) {
    return [f = std::move(f), scale](const typename G::Arrow& a, const typename G::Arrow&) {
        const double v = f(a);
        return std::exp(std::complex<double>(0.0, scale * v * v));
    };
}

template <Groupoid G>
void prune_zeros(AlgebraElement<G>& a, double eps = 0.0) {
    for (auto it = a.begin(); it != a.end();) {
        if (std::abs(it->second) <= eps)
            it = a.erase(it);
        else
            ++it;
    }
}

namespace detail {

/// Composable products of supp(a) x supp(b) grouped by resulting arrow,
/// each group in deterministic (a-then-b) order.  The convolution value at
/// an output arrow is the finite sum over its group.
template <Groupoid G>
std::map<typename G::Arrow, std::vector<std::pair<const typename G::Arrow*, const typename G::Arrow*>>>
factorizations(const G& g, const AlgebraElement<G>& a, const AlgebraElement<G>& b) {
    std::map<typename G::Arrow,
             std::vector<std::pair<const typename G::Arrow*, const typename G::Arrow*>>>
        groups;
    for (const auto& [ga, va] : a) {
        (void)va;
        for (const auto& [gb, vb] : b) {
            (void)vb;
            auto c = g.compose(ga, gb);
            if (c) groups[*c].emplace_back(&ga, &gb);
        }
    }
    return groups;
}

} // namespace detail

/// Serial reference convolution:
///   (a*b)(gamma) = sum over factorizations gamma = gamma1 gamma2 of
///                  a(gamma1) b(gamma2) zeta(gamma1, gamma2).
/// The sum is exact: etale fibers are discrete and supports are finite, so
/// the factorization set is finite with no truncation.
template <Groupoid G>
AlgebraElement<G> convolve_serial(const G& g, const AlgebraElement<G>& a,
                                  const AlgebraElement<G>& b,
                                  const Cocycle2<G>& zeta = trivial_cocycle2<G>()) {
    AlgebraElement<G> out;
    auto groups = detail::factorizations(g, a, b);
    for (const auto& [arrow, terms] : groups) {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& [pa, pb] : terms) acc += a.at(*pa) * b.at(*pb) * zeta(*pa, *pb);
        out[arrow] = acc;
    }
    return out;
}

/// OpenMP convolution, parallel over output arrows.  Each output value is
/// an independent finite sum accumulated in the same order as the serial
/// reference, so the results agree bitwise for any thread count.
template <Groupoid G>
AlgebraElement<G> convolve(const G& g, const AlgebraElement<G>& a, const AlgebraElement<G>& b,
                           const Cocycle2<G>& zeta = trivial_cocycle2<G>()) {
    auto groups = detail::factorizations(g, a, b);
    std::vector<const typename G::Arrow*> keys;
    std::vector<const std::vector<std::pair<const typename G::Arrow*, const typename G::Arrow*>>*>
        terms;
    keys.reserve(groups.size());
    for (const auto& [arrow, t] : groups) {
        keys.push_back(&arrow);
        terms.push_back(&t);
    }
    std::vector<std::complex<double>> vals(keys.size());
    const std::int64_t nk = static_cast<std::int64_t>(keys.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < nk; ++i) {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& [pa, pb] : *terms[std::size_t(i)])
            acc += a.at(*pa) * b.at(*pb) * zeta(*pa, *pb);
        vals[std::size_t(i)] = acc;
    }
    AlgebraElement<G> out;
    for (std::size_t i = 0; i < keys.size(); ++i) out.emplace(*keys[i], vals[i]);
    return out;
}

/// a*(gamma) = conj(a(inverse(gamma))).
template <Groupoid G>
AlgebraElement<G> involution(const G& g, const AlgebraElement<G>& a) {
    AlgebraElement<G> out;
    for (const auto& [arrow, v] : a) out[g.inverse(arrow)] = std::conj(v);
    return out;
}

/// The weight phi(a) = sum over units x of a(eps(x)) mu(x).
template <Groupoid G>
std::complex<double> weight_phi(const G& g, const AlgebraElement<G>& a,
                                const UnitMeasure<G>& mu) {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [arrow, v] : a) {
        const auto x = g.source(arrow);
        if (arrow == g.unit_arrow(x)) acc += v * mu(x);
    }
    return acc;
}

/// KMS residual |phi(a*b) - phi(b*sigma(a))| with sigma(a) = e^{f} a; zero
/// exactly when mu is quasi-invariant with modular cocycle f.
template <Groupoid G>
double kms_check(const G& g, const AlgebraElement<G>& a, const AlgebraElement<G>& b,
                 const UnitMeasure<G>& mu, const std::function<double(const typename G::Arrow&)>& f) {
    AlgebraElement<G> sa;
    for (const auto& [arrow, v] : a) sa[arrow] = std::exp(f(arrow)) * v;
    const auto lhs = weight_phi(g, convolve_serial(g, a, b), mu);
    const auto rhs = weight_phi(g, convolve_serial(g, b, sa), mu);
    return std::abs(lhs - rhs);
}

/// Restriction to an arrow-invariant unit set: keeps arrows whose source
/// satisfies the predicate.  An algebra *-homomorphism; its kernel is a
/// two-sided ideal.
template <Groupoid G>
AlgebraElement<G> restrict_element(const G& g, const AlgebraElement<G>& a,
                                   const std::function<bool(const typename G::Unit&)>& pred) {
    AlgebraElement<G> out;
    for (const auto& [arrow, v] : a)
        if (pred(g.source(arrow))) out[arrow] = v;
    return out;
}

template <Groupoid G>
struct RegularRep {
    std::vector<std::vector<std::complex<double>>> matrix;
    bool window_closed = true; // false when a product left the window
};

/// Matrix of xi -> a * xi on span{ delta_gamma : gamma in window }, where
/// the window lies in one r-fiber.  Multiplicative whenever products of
/// supp(a) with the window stay inside it; violations flag the result.
template <Groupoid G>
RegularRep<G> regular_rep(const G& g, const AlgebraElement<G>& a,
                          const std::vector<typename G::Arrow>& window) {
    RegularRep<G> rep;
    std::map<typename G::Arrow, std::size_t> index;
    for (std::size_t i = 0; i < window.size(); ++i) index.emplace(window[i], i);
    rep.matrix.assign(window.size(), std::vector<std::complex<double>>(window.size(), {0.0, 0.0}));
    for (std::size_t j = 0; j < window.size(); ++j) {
        for (const auto& [ga, va] : a) {
            auto c = g.compose(ga, window[j]);
            if (!c) continue;
            auto it = index.find(*c);
            if (it == index.end()) {
                if (std::abs(va) > 0.0) rep.window_closed = false;
                continue;
            }
            rep.matrix[it->second][j] += va;
        }
    }
    return rep;
}

} // namespace gq
