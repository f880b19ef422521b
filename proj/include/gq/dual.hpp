#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace gq {

/// Forward-mode dual number a + b*eps with eps^2 = 0.  Nest as
/// Dual<Dual<double>> for second derivatives.
template <typename T>
struct Dual {
    T a{}; // value
    T b{}; // derivative

    Dual() = default;
    Dual(double v) : a(v), b(0.0) {}
    Dual(T value, T deriv) : a(std::move(value)), b(std::move(deriv)) {}

    friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
    friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
    friend Dual operator-(const Dual& x) { return {-x.a, -x.b}; }
    friend Dual operator*(const Dual& x, const Dual& y) {
        return {x.a * y.a, x.a * y.b + x.b * y.a};
    }
    friend Dual operator/(const Dual& x, const Dual& y) {
        const T q = x.a / y.a;
        return {q, (x.b - q * y.b) / y.a};
    }

    Dual& operator+=(const Dual& y) { return *this = *this + y; }
    Dual& operator-=(const Dual& y) { return *this = *this - y; }
    Dual& operator*=(const Dual& y) { return *this = *this * y; }
    Dual& operator/=(const Dual& y) { return *this = *this / y; }

    friend bool operator<(const Dual& x, const Dual& y) { return x.a < y.a; }
};

inline double value_of(double x) { return x; }
template <typename T>
double value_of(const Dual<T>& x) {
    return value_of(x.a);
}

template <typename T>
Dual<T> sqrt(const Dual<T>& x) {
    using std::sqrt;
    const T r = sqrt(x.a);
    return {r, x.b / (r + r)};
}

template <typename T>
Dual<T> exp(const Dual<T>& x) {
    using std::exp;
    const T e = exp(x.a);
    return {e, x.b * e};
}

template <typename T>
Dual<T> log(const Dual<T>& x) {
    using std::log;
    return {log(x.a), x.b / x.a};
}

/// |x| with the derivative sign(x); undefined at 0 like the real abs.
template <typename T>
Dual<T> abs(const Dual<T>& x) {
    return value_of(x.a) < 0.0 ? -x : x;
}

using D1 = Dual<double>;
using D2 = Dual<Dual<double>>;

/// Seed coordinate `i` of `x` with unit derivative.
template <typename T>
std::vector<Dual<T>> seed(const std::vector<T>& x, std::size_t i) {
    std::vector<Dual<T>> d(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) d[k] = Dual<T>(x[k], T(k == i ? 1.0 : 0.0));
    return d;
}

/// Gradient of a scalar field via one dual sweep per coordinate.
template <typename T, typename F>
std::vector<T> gradient(const F& f, const std::vector<T>& x) {
    std::vector<T> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = f(seed(x, i)).b;
    return g;
}

} // namespace gq
