#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "gq/ext_int.hpp"

namespace gq {

/// Contract every discrete groupoid in this repo satisfies.  Arrows and
/// units are value types; composition is partial and returns nullopt on a
/// source/target mismatch instead of throwing.
template <typename G>
concept Groupoid = requires(const G& g, const typename G::Arrow& a, const typename G::Unit& u) {
    typename G::Unit;
    typename G::Arrow;
    { g.is_unit(u) } -> std::convertible_to<bool>;
    { g.is_arrow(a) } -> std::convertible_to<bool>;
    { g.source(a) } -> std::convertible_to<typename G::Unit>;
    { g.target(a) } -> std::convertible_to<typename G::Unit>;
    { g.compose(a, a) } -> std::convertible_to<std::optional<typename G::Arrow>>;
    { g.inverse(a) } -> std::convertible_to<typename G::Arrow>;
    { g.unit_arrow(u) } -> std::convertible_to<typename G::Arrow>;
};

/// Outcome of an axiom / cocycle / morphism battery: counters plus the
/// first few human-readable witnesses of each violation.
struct CheckReport {
    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
    double max_residual = 0.0;
    std::vector<std::string> witnesses;

    bool pass() const { return violations == 0; }

    void merge(const CheckReport& o) {
        checks += o.checks;
        violations += o.violations;
        max_residual = std::max(max_residual, o.max_residual);
        for (const auto& w : o.witnesses)
            if (witnesses.size() < 16) witnesses.push_back(w);
    }

    void fail(const std::string& witness) {
        ++violations;
        if (witnesses.size() < 16) witnesses.push_back(witness);
    }
};

namespace detail {

template <typename A>
std::string describe(const A& a) {
    if constexpr (requires { a.str(); })
        return a.str();
    else
        return "<arrow>";
}

} // namespace detail

/// Identity, inverse and associativity axioms over every composable pair
/// and triple found inside `sample`.  Products may land outside the sample;
/// they are still checked for validity and consistency of l/r.
template <Groupoid G>
CheckReport check_groupoid_axioms(const G& g, std::span<const typename G::Arrow> sample) {
    CheckReport rep;
    rep.name = "groupoid-axioms";

    for (const auto& a : sample) {
        if (!g.is_arrow(a)) {
            throw std::invalid_argument("check_groupoid_axioms: invalid arrow in sample: " +
                                        detail::describe(a));
        }
        const auto src = g.source(a);
        const auto tgt = g.target(a);

        // unit axioms: l(eps(x)) = r(eps(x)) = x, eps is a left/right identity
        const auto el = g.unit_arrow(src);
        const auto er = g.unit_arrow(tgt);
        ++rep.checks;
        if (!(g.source(el) == src && g.target(el) == src))
            rep.fail("eps(l(a)) is not a unit arrow at l(a): " + detail::describe(a));
        ++rep.checks;
        auto lcomp = g.compose(el, a);
        if (!lcomp || !(*lcomp == a))
            rep.fail("eps(l(a)) * a != a for " + detail::describe(a));
        ++rep.checks;
        auto rcomp = g.compose(a, er);
        if (!rcomp || !(*rcomp == a))
            rep.fail("a * eps(r(a)) != a for " + detail::describe(a));

        // inverse axioms
        const auto inv = g.inverse(a);
        ++rep.checks;
        if (!(g.source(inv) == tgt && g.target(inv) == src))
            rep.fail("inverse does not swap l and r: " + detail::describe(a));
        ++rep.checks;
        if (!(g.inverse(inv) == a))
            rep.fail("inverse not involutive: " + detail::describe(a));
        ++rep.checks;
        auto ai = g.compose(a, inv);
        if (!ai || !(*ai == g.unit_arrow(src)))
            rep.fail("a * inv(a) != eps(l(a)): " + detail::describe(a));
        ++rep.checks;
        auto ia = g.compose(inv, a);
        if (!ia || !(*ia == g.unit_arrow(tgt)))
            rep.fail("inv(a) * a != eps(r(a)): " + detail::describe(a));
    }

    // pairs and triples
    for (const auto& a : sample) {
        for (const auto& b : sample) {
            const bool match = g.target(a) == g.source(b);
            auto ab = g.compose(a, b);
            ++rep.checks;
            if (ab.has_value() != match) {
                rep.fail("compose defined/undefined inconsistently with r(a)=l(b): " +
                         detail::describe(a) + " , " + detail::describe(b));
                continue;
            }
            if (!ab) continue;
            ++rep.checks;
            if (!g.is_arrow(*ab))
                rep.fail("composite not a valid arrow: " + detail::describe(*ab));
            ++rep.checks;
            if (!(g.source(*ab) == g.source(a) && g.target(*ab) == g.target(b)))
                rep.fail("l/r of composite wrong: " + detail::describe(a) + " , " +
                         detail::describe(b));
            for (const auto& c : sample) {
                if (!(g.target(b) == g.source(c))) continue;
                auto bc = g.compose(b, c);
                ++rep.checks;
                if (!bc) {
                    rep.fail("compose(b,c) undefined with r(b)=l(c)");
                    continue;
                }
                auto left = g.compose(*ab, c);
                auto right = g.compose(a, *bc);
                if (!left || !right || !(*left == *right))
                    rep.fail("associativity fails: " + detail::describe(a) + " , " +
                             detail::describe(b) + " , " + detail::describe(c));
            }
        }
    }
    return rep;
}

/// f(ab) = f(a) + f(b) over the composable pairs of `sample`.  The exact
/// overload takes an integer-valued cocycle and admits no tolerance.
template <Groupoid G>
CheckReport check_cocycle1(const G& g,
                           const std::function<double(const typename G::Arrow&)>& f,
                           std::span<const typename G::Arrow> sample, double tol = 1e-12) {
    CheckReport rep;
    rep.name = "cocycle1";
    for (const auto& a : sample)
        for (const auto& b : sample) {
            if (!(g.target(a) == g.source(b))) continue;
            auto ab = g.compose(a, b);
            if (!ab) throw std::invalid_argument("check_cocycle1: non-composable pair reached compose");
            ++rep.checks;
            const double r = std::abs(f(*ab) - f(a) - f(b));
            rep.max_residual = std::max(rep.max_residual, r);
            if (r > tol)
                rep.fail("1-cocycle identity fails on " + detail::describe(a) + " , " +
                         detail::describe(b));
        }
    return rep;
}

template <Groupoid G>
CheckReport check_cocycle1_exact(const G& g,
                                 const std::function<std::int64_t(const typename G::Arrow&)>& f,
                                 std::span<const typename G::Arrow> sample) {
    CheckReport rep;
    rep.name = "cocycle1-exact";
    for (const auto& a : sample)
        for (const auto& b : sample) {
            if (!(g.target(a) == g.source(b))) continue;
            auto ab = g.compose(a, b);
            if (!ab) throw std::invalid_argument("check_cocycle1: non-composable pair reached compose");
            ++rep.checks;
            if (f(*ab) != checked_add(f(a), f(b)))
                rep.fail("integer 1-cocycle identity fails on " + detail::describe(a) + " , " +
                         detail::describe(b));
        }
    return rep;
}

/// zeta(a,bc) zeta(b,c) = zeta(a,b) zeta(ab,c) over composable triples,
/// i.e. the multiplicative 2-cocycle identity; |zeta| = 1 is also enforced.
template <Groupoid G>
CheckReport check_cocycle2(
    const G& g,
    const std::function<std::complex<double>(const typename G::Arrow&, const typename G::Arrow&)>& zeta,
    std::span<const typename G::Arrow> sample, double tol = 1e-10) {
    CheckReport rep;
    rep.name = "cocycle2";
    for (const auto& a : sample)
        for (const auto& b : sample) {
            if (!(g.target(a) == g.source(b))) continue;
            auto ab = g.compose(a, b);
            if (!ab) continue;
            {
                const double nrm = std::abs(zeta(a, b));
                if (std::abs(nrm - 1.0) > tol)
                    throw std::domain_error("check_cocycle2: |zeta| != 1 on a composable pair");
            }
            for (const auto& c : sample) {
                if (!(g.target(b) == g.source(c))) continue;
                auto bc = g.compose(b, c);
                if (!bc) continue;
                ++rep.checks;
                const std::complex<double> lhs = zeta(a, *bc) * zeta(b, c);
                const std::complex<double> rhs = zeta(a, b) * zeta(*ab, c);
                const double r = std::abs(lhs - rhs);
                rep.max_residual = std::max(rep.max_residual, r);
                if (r > tol)
                    rep.fail("2-cocycle identity fails on a triple starting at " +
                             detail::describe(a));
            }
        }
    return rep;
}

/// Action groupoid X ⋊ Z^n over a subset of ExtInt^n, with the translation
/// action (infinity is fixed) and an optional extra arrow restriction.
/// l(x,g) = x, r(x,g) = x+g, m((x,g),(x+g,g')) = (x,g+g'), i(x,g) = (x+g,-g).
class ExtIntActionGroupoid {
public:
    using Point = std::vector<ExtInt>;
    using Shift = std::vector<std::int64_t>;

    struct ArrowT {
        Point base;
        Shift shift;
        friend bool operator==(const ArrowT&, const ArrowT&) = default;
        friend auto operator<=>(const ArrowT&, const ArrowT&) = default;
        std::string str() const {
            std::ostringstream os;
            os << "(";
            for (const auto& e : base) os << e.str() << " ";
            os << "|";
            for (auto s : shift) os << " " << s;
            os << ")";
            return os.str();
        }
    };

    using Unit = Point;
    using Arrow = ArrowT;

    ExtIntActionGroupoid(std::size_t dim, std::function<bool(const Point&)> in_space,
                         std::function<bool(const Arrow&)> arrow_restriction = nullptr)
        : dim_(dim), in_space_(std::move(in_space)), restriction_(std::move(arrow_restriction)) {}

    static Point translate(const Point& x, const Shift& g) {
        Point y = x;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = y[i] + g[i];
        return y;
    }

    bool is_unit(const Unit& u) const { return u.size() == dim_ && in_space_(u); }

    bool is_arrow(const Arrow& a) const {
        if (a.base.size() != dim_ || a.shift.size() != dim_) return false;
        if (!in_space_(a.base)) return false;
        if (!in_space_(translate(a.base, a.shift))) return false;
        return !restriction_ || restriction_(a);
    }

    Unit source(const Arrow& a) const { return a.base; }
    Unit target(const Arrow& a) const { return translate(a.base, a.shift); }

    std::optional<Arrow> compose(const Arrow& a, const Arrow& b) const {
        if (!(target(a) == b.base)) return std::nullopt;
        Shift s(dim_);
        for (std::size_t i = 0; i < dim_; ++i) s[i] = checked_add(a.shift[i], b.shift[i]);
        return Arrow{a.base, std::move(s)};
    }

    Arrow inverse(const Arrow& a) const {
        Shift s(dim_);
        for (std::size_t i = 0; i < dim_; ++i) s[i] = checked_neg(a.shift[i]);
        return Arrow{target(a), std::move(s)};
    }

    Arrow unit_arrow(const Unit& u) const { return Arrow{u, Shift(dim_, 0)}; }

    std::size_t dim() const { return dim_; }

private:
    std::size_t dim_;
    std::function<bool(const Point&)> in_space_;
    std::function<bool(const Arrow&)> restriction_;
};

inline ExtIntActionGroupoid restricted_action_groupoid(
    std::size_t dim, std::function<bool(const ExtIntActionGroupoid::Point&)> in_space,
    std::function<bool(const ExtIntActionGroupoid::Arrow&)> arrow_restriction = nullptr) {
    return ExtIntActionGroupoid(dim, std::move(in_space), std::move(arrow_restriction));
}

/// Restriction of a groupoid to an invariant set of units.  The predicate
/// is expected to be invariant under arrows; the axiom checker surfaces a
/// violation lazily if it is not.
template <Groupoid G>
class RestrictedGroupoid {
public:
    using Unit = typename G::Unit;
    using Arrow = typename G::Arrow;

    RestrictedGroupoid(G base, std::function<bool(const Unit&)> pred)
        : base_(std::move(base)), pred_(std::move(pred)) {}

    bool is_unit(const Unit& u) const { return base_.is_unit(u) && pred_(u); }
    bool is_arrow(const Arrow& a) const {
        return base_.is_arrow(a) && pred_(base_.source(a)) && pred_(base_.target(a));
    }
    Unit source(const Arrow& a) const { return base_.source(a); }
    Unit target(const Arrow& a) const { return base_.target(a); }
    std::optional<Arrow> compose(const Arrow& a, const Arrow& b) const { return base_.compose(a, b); }
    Arrow inverse(const Arrow& a) const { return base_.inverse(a); }
    Arrow unit_arrow(const Unit& u) const { return base_.unit_arrow(u); }

    const G& base() const { return base_; }
    bool contains(const Unit& u) const { return pred_(u); }

private:
    G base_;
    std::function<bool(const Unit&)> pred_;
};

} // namespace gq
