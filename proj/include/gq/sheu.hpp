#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gq/bs_groupoid.hpp"
#include "gq/ext_int.hpp"
#include "gq/groupoid.hpp"

namespace gq {

namespace detail_sheu {

/// Canonical quotient form: every coordinate after the first infinity is
/// itself infinity.
inline void erase_tail(std::vector<ExtInt>& k) {
    bool seen = false;
    for (auto& e : k) {
        if (seen) e = ExtInt::infinity();
        if (e.is_infinite()) seen = true;
    }
}

inline std::string ints_str(const std::vector<std::int64_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

inline std::string exts_str(const std::vector<ExtInt>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + "]";
}

} // namespace detail_sheu

// ---- the groupoid T_n of the standard quantum projective space ---------------

/// Equivalence class (j;k)~ in canonical erased-tail form.
struct SheuTElement {
    std::vector<std::int64_t> j;
    std::vector<ExtInt> k;

    void canonicalize() { detail_sheu::erase_tail(k); }

    friend bool operator==(const SheuTElement&, const SheuTElement&) = default;
    friend auto operator<=>(const SheuTElement& a, const SheuTElement& b) {
        if (auto c = std::lexicographical_compare_three_way(a.j.begin(), a.j.end(), b.j.begin(),
                                                            b.j.end());
            c != 0)
            return c;
        return std::lexicographical_compare_three_way(a.k.begin(), a.k.end(), b.k.begin(),
                                                      b.k.end());
    }

    std::string str() const {
        return "(j=" + detail_sheu::ints_str(j) + ";k=" + detail_sheu::exts_str(k) + ")";
    }
};

class SheuTGroupoid {
public:
    using Unit = std::vector<ExtInt>;
    using Arrow = SheuTElement;

    explicit SheuTGroupoid(int n) : n_(n) {
        if (n < 1) throw std::invalid_argument("SheuTGroupoid: n must be >= 1");
    }

    int n() const { return n_; }

    bool is_unit(const Unit& k) const {
        if (int(k.size()) != n_) return false;
        if (!canonical(k)) return false;
        for (const auto& e : k)
            if (e.is_finite() && e.finite_value() < 0) return false;
        return true;
    }

    bool is_arrow(const Arrow& a) const {
        if (int(a.j.size()) != n_ || int(a.k.size()) != n_) return false;
        if (!canonical(a.k)) return false;
        std::int64_t jsum = 0;
        for (int i = 0; i < n_; ++i) {
            const auto& ki = a.k[std::size_t(i)];
            const std::int64_t ji = a.j[std::size_t(i)];
            if (ki.is_finite()) {
                if (ki.finite_value() < 0) return false;
                if (ji + ki.finite_value() < 0) return false;
                jsum = checked_add(jsum, ji);
            } else {
                // at and after the first infinity: sum of j vanishes there,
                // and j is zero strictly beyond it
                const bool first = i == 0 || a.k[std::size_t(i - 1)].is_finite();
                if (first) {
                    jsum = checked_add(jsum, ji);
                    if (jsum != 0) return false;
                } else if (ji != 0) {
                    return false;
                }
            }
        }
        return true;
    }

    Unit source(const Arrow& a) const { return a.k; }
    Unit target(const Arrow& a) const {
        Unit t = a.k;
        for (int i = 0; i < n_; ++i) t[std::size_t(i)] = t[std::size_t(i)] + a.j[std::size_t(i)];
        return t;
    }

    std::optional<Arrow> compose(const Arrow& a, const Arrow& b) const {
        if (!(target(a) == b.k)) return std::nullopt;
        Arrow c;
        c.k = a.k;
        c.j.resize(std::size_t(n_));
        for (int i = 0; i < n_; ++i)
            c.j[std::size_t(i)] = checked_add(a.j[std::size_t(i)], b.j[std::size_t(i)]);
        return c;
    }

    Arrow inverse(const Arrow& a) const {
        Arrow c;
        c.k = target(a);
        c.j.resize(std::size_t(n_));
        for (int i = 0; i < n_; ++i) c.j[std::size_t(i)] = checked_neg(a.j[std::size_t(i)]);
        return c;
    }

    Arrow unit_arrow(const Unit& u) const {
        return Arrow{std::vector<std::int64_t>(std::size_t(n_), 0), u};
    }

    /// Independent window enumeration of T_n: all arrows whose source and
    /// target level prefix sums stay within [0, max_level] and whose shift
    /// prefix sums stay within [-max_shift, max_shift].  Used to check that
    /// the standard isomorphism is onto.
    std::vector<Arrow> enumerate_window(std::int64_t max_level, std::int64_t max_shift) const {
        std::vector<Arrow> out;
        Arrow cur;
        cur.j.assign(std::size_t(n_), 0);
        cur.k.assign(std::size_t(n_), ExtInt(0));
        rec_enumerate(cur, 0, 0, 0, false, max_level, max_shift, out);
        return out;
    }

private:
    int n_;

    static bool canonical(const Unit& k) {
        bool seen = false;
        for (const auto& e : k) {
            if (seen && e.is_finite()) return false;
            if (e.is_infinite()) seen = true;
        }
        return true;
    }

    void rec_enumerate(Arrow& cur, int i, std::int64_t qsum, std::int64_t psum, bool inf,
                       std::int64_t max_level, std::int64_t max_shift,
                       std::vector<Arrow>& out) const {
        if (i == n_) {
            out.push_back(cur);
            return;
        }
        if (!inf) {
            // finite coordinate: k >= 0 and j+k >= 0 are the membership
            // constraints; prefix sums stay inside the window
            for (std::int64_t k = 0; qsum + k <= max_level; ++k) {
                const std::int64_t jlo = std::max(-k, -max_shift - psum);
                const std::int64_t jhi = max_shift - psum;
                for (std::int64_t j = jlo; j <= jhi; ++j) {
                    if (qsum + k + psum + j > max_level) continue;
                    cur.k[std::size_t(i)] = ExtInt(k);
                    cur.j[std::size_t(i)] = j;
                    rec_enumerate(cur, i + 1, qsum + k, psum + j, false, max_level, max_shift, out);
                }
            }
        }
        // first or repeated infinite coordinate: the shift prefix must
        // vanish from here on
        cur.k[std::size_t(i)] = ExtInt::infinity();
        cur.j[std::size_t(i)] = inf ? 0 : -psum;
        rec_enumerate(cur, i + 1, qsum, 0, true, max_level, max_shift, out);
    }
};

// ---- the groupoid of the non standard CP^1 -----------------------------------

struct SheuGElement {
    std::int64_t j = 0;
    ExtInt k1;
    ExtInt k2;

    friend bool operator==(const SheuGElement&, const SheuGElement&) = default;
    friend auto operator<=>(const SheuGElement&, const SheuGElement&) = default;

    std::string str() const {
        return "(" + std::to_string(j) + "," + std::to_string(j) + "," + k1.str() + "," + k2.str() +
               ")";
    }
};

class SheuGGroupoid {
public:
    struct UnitT {
        ExtInt k1, k2;
        friend bool operator==(const UnitT&, const UnitT&) = default;
        friend auto operator<=>(const UnitT&, const UnitT&) = default;
    };
    using Unit = UnitT;
    using Arrow = SheuGElement;

    bool is_unit(const Unit& u) const { return ok(0, u.k1) && ok(0, u.k2) && infinite_somewhere(u); }

    bool is_arrow(const Arrow& a) const {
        return ok(a.j, a.k1) && ok(a.j, a.k2) && (a.k1.is_infinite() || a.k2.is_infinite());
    }

    Unit source(const Arrow& a) const { return {a.k1, a.k2}; }
    Unit target(const Arrow& a) const { return {a.k1 + a.j, a.k2 + a.j}; }

    std::optional<Arrow> compose(const Arrow& a, const Arrow& b) const {
        if (!(target(a) == source(b))) return std::nullopt;
        return Arrow{checked_add(a.j, b.j), a.k1, a.k2};
    }

    Arrow inverse(const Arrow& a) const {
        return Arrow{checked_neg(a.j), a.k1 + a.j, a.k2 + a.j};
    }

    Arrow unit_arrow(const Unit& u) const { return Arrow{0, u.k1, u.k2}; }

private:
    static bool infinite_somewhere(const Unit& u) {
        return u.k1.is_infinite() || u.k2.is_infinite();
    }
    static bool ok(std::int64_t j, const ExtInt& k) {
        if (k.is_infinite()) return true;
        return k.finite_value() >= 0 && j + k.finite_value() >= 0;
    }
};

// ---- the odd-sphere groupoid F_{n-1} -----------------------------------------

struct SheuFElement {
    std::int64_t z = 0;
    std::vector<std::int64_t> x; // n-1
    std::vector<ExtInt> w;       // n-1, canonical erased-tail form

    void canonicalize() { detail_sheu::erase_tail(w); }

    friend bool operator==(const SheuFElement&, const SheuFElement&) = default;
    friend auto operator<=>(const SheuFElement& a, const SheuFElement& b) {
        if (auto c = a.z <=> b.z; c != 0) return c;
        if (auto c = std::lexicographical_compare_three_way(a.x.begin(), a.x.end(), b.x.begin(),
                                                            b.x.end());
            c != 0)
            return c;
        return std::lexicographical_compare_three_way(a.w.begin(), a.w.end(), b.w.begin(),
                                                      b.w.end());
    }

    std::string str() const {
        return "(z=" + std::to_string(z) + ";x=" + detail_sheu::ints_str(x) +
               ";w=" + detail_sheu::exts_str(w) + ")";
    }
};

class SheuFGroupoid {
public:
    struct UnitT {
        std::vector<ExtInt> w;
        friend bool operator==(const UnitT&, const UnitT&) = default;
        friend auto operator<=>(const UnitT& a, const UnitT& b) {
            return std::lexicographical_compare_three_way(a.w.begin(), a.w.end(), b.w.begin(),
                                                          b.w.end());
        }
    };
    using Unit = UnitT;
    using Arrow = SheuFElement;

    explicit SheuFGroupoid(int n) : n_(n) {
        if (n < 1) throw std::invalid_argument("SheuFGroupoid: n must be >= 1");
    }

    int n() const { return n_; }

    bool is_unit(const Unit& u) const {
        if (int(u.w.size()) != n_ - 1) return false;
        if (!canonical(u.w)) return false;
        for (const auto& e : u.w)
            if (e.is_finite() && e.finite_value() < 0) return false;
        return true;
    }

    bool is_arrow(const Arrow& a) const {
        if (int(a.x.size()) != n_ - 1 || int(a.w.size()) != n_ - 1) return false;
        if (!canonical(a.w)) return false;
        std::int64_t xsum = 0;
        bool seen_inf = false;
        for (int i = 0; i < n_ - 1; ++i) {
            const auto& wi = a.w[std::size_t(i)];
            const std::int64_t xi = a.x[std::size_t(i)];
            if (wi.is_finite()) {
                if (wi.finite_value() < 0) return false;
                if (xi + wi.finite_value() < 0) return false;
                xsum = checked_add(xsum, xi);
            } else {
                if (!seen_inf) {
                    seen_inf = true;
                    xsum = checked_add(xsum, xi);
                    if (a.z != -xsum) return false;
                } else if (xi != 0) {
                    return false;
                }
            }
        }
        return true;
    }

    Unit source(const Arrow& a) const { return {a.w}; }
    Unit target(const Arrow& a) const {
        Unit t{a.w};
        for (int i = 0; i < n_ - 1; ++i)
            t.w[std::size_t(i)] = t.w[std::size_t(i)] + a.x[std::size_t(i)];
        return t;
    }

    std::optional<Arrow> compose(const Arrow& a, const Arrow& b) const {
        if (!(target(a) == source(b))) return std::nullopt;
        Arrow c;
        c.z = checked_add(a.z, b.z);
        c.w = a.w;
        c.x.resize(std::size_t(n_ - 1));
        for (int i = 0; i < n_ - 1; ++i)
            c.x[std::size_t(i)] = checked_add(a.x[std::size_t(i)], b.x[std::size_t(i)]);
        return c;
    }

    Arrow inverse(const Arrow& a) const {
        Arrow c;
        c.z = checked_neg(a.z);
        c.w = target(a).w;
        c.x.resize(std::size_t(n_ - 1));
        for (int i = 0; i < n_ - 1; ++i) c.x[std::size_t(i)] = checked_neg(a.x[std::size_t(i)]);
        return c;
    }

    Arrow unit_arrow(const Unit& u) const {
        Arrow a;
        a.z = 0;
        a.x.assign(std::size_t(n_ - 1), 0);
        a.w = u.w;
        return a;
    }

private:
    int n_;

    static bool canonical(const std::vector<ExtInt>& w) {
        bool seen = false;
        for (const auto& e : w) {
            if (seen && e.is_finite()) return false;
            if (e.is_infinite()) seen = true;
        }
        return true;
    }
};

static_assert(Groupoid<SheuTGroupoid>);
static_assert(Groupoid<SheuGGroupoid>);
static_assert(Groupoid<SheuFGroupoid>);

// ---- the isomorphisms ---------------------------------------------------------

/// Levels q_i of a unit read as extended integers (At -> infinity).
inline std::vector<ExtInt> unit_levels(const UnitLeaf& u) {
    std::vector<ExtInt> q;
    q.reserve(u.coords.size());
    for (const auto& bc : u.coords)
        q.push_back(bc.is_at() ? ExtInt::infinity() : ExtInt(bc.level));
    return q;
}

/// Standard case t=0: Phi(c,h) = (difference of shifts; difference of
/// levels) in canonical form, where c_i = 1 - e^{-hbar q_i}, h_i = hbar p_i.
inline SheuTElement phi_standard(const BsGroupoid& bs, const ArrowLeaf& a) {
    if (bs.params().t != 0.0) throw std::domain_error("phi_standard: defined at t=0 only");
    const auto q = unit_levels(a.source);
    SheuTElement e;
    const std::size_t n = q.size();
    e.j.resize(n);
    e.k.resize(n);
    std::int64_t prev_p = 0;
    std::int64_t prev_q = 0;
    for (std::size_t i = 0; i < n; ++i) {
        e.j[i] = checked_add(a.shift[i], -prev_p);
        prev_p = a.shift[i];
        if (q[i].is_finite()) {
            e.k[i] = ExtInt(checked_add(q[i].finite_value(), -prev_q));
            prev_q = q[i].finite_value();
        } else {
            e.k[i] = ExtInt::infinity();
        }
    }
    e.canonicalize();
    return e;
}

inline ArrowLeaf phi_standard_inverse(const BsGroupoid& bs, const SheuTElement& e) {
    if (bs.params().t != 0.0) throw std::domain_error("phi_standard_inverse: defined at t=0 only");
    UnitLeaf u;
    std::vector<std::int64_t> p(e.j.size());
    std::int64_t psum = 0;
    std::int64_t qsum = 0;
    bool inf = false;
    for (std::size_t i = 0; i < e.j.size(); ++i) {
        psum = checked_add(psum, e.j[i]);
        if (!inf && e.k[i].is_finite()) {
            qsum = checked_add(qsum, e.k[i].finite_value());
            u.coords.push_back(BranchCoord::below(qsum));
        } else {
            inf = true;
            u.coords.push_back(BranchCoord::at());
        }
        p[i] = inf ? 0 : psum;
    }
    return bs.make_arrow(std::move(u), std::move(p));
}

/// Non standard CP^1, t in (0,1): the three components map to
/// (p,p,inf,q-q_b), (p,p,q-q_a,inf), (p,p,inf,inf), with the integer
/// thresholds q_b, q_a standing in for -log(1-t)/hbar and -log(t)/hbar.
inline SheuGElement phi_cp1(const BsGroupoid& bs, const ArrowLeaf& a) {
    const auto& p = bs.params();
    if (p.n != 1 || !bs.interior_t())
        throw std::domain_error("phi_cp1: defined for n=1, t in (0,1) only");
    const auto& bc = a.source.coords[0];
    SheuGElement e;
    e.j = a.shift[0];
    switch (bc.branch) {
    case Branch::Below:
        e.k1 = ExtInt::infinity();
        e.k2 = ExtInt(checked_add(bc.level, -*bs.min_level_below()));
        break;
    case Branch::Above:
        e.k1 = ExtInt(checked_add(bc.level, -*bs.min_level_above()));
        e.k2 = ExtInt::infinity();
        break;
    default:
        e.k1 = ExtInt::infinity();
        e.k2 = ExtInt::infinity();
    }
    return e;
}

inline ArrowLeaf phi_cp1_inverse(const BsGroupoid& bs, const SheuGElement& e) {
    const auto& p = bs.params();
    if (p.n != 1 || !bs.interior_t())
        throw std::domain_error("phi_cp1_inverse: defined for n=1, t in (0,1) only");
    UnitLeaf u;
    if (e.k1.is_infinite() && e.k2.is_infinite())
        u.coords.push_back(BranchCoord::at());
    else if (e.k1.is_infinite())
        u.coords.push_back(
            BranchCoord::below(checked_add(e.k2.finite_value(), *bs.min_level_below())));
    else
        u.coords.push_back(
            BranchCoord::above(checked_add(e.k1.finite_value(), *bs.min_level_above())));
    return bs.make_arrow(std::move(u), {e.j});
}

/// Odd spheres: arrows of the P_n(t) subgroupoid (last coordinate At) map
/// to (-p_n; diff p; diff q - threshold) in canonical form.
inline SheuFElement phi_spheres(const BsGroupoid& bs, const ArrowLeaf& a) {
    const auto& p = bs.params();
    if (!bs.interior_t()) throw std::domain_error("phi_spheres: defined for t in (0,1) only");
    if (!a.source.coords.back().is_at())
        throw std::domain_error("phi_spheres: arrow is not in the P_n(t) subgroupoid");
    const std::size_t n = std::size_t(p.n);
    SheuFElement e;
    e.z = checked_neg(a.shift[n - 1]);
    e.x.resize(n - 1);
    e.w.resize(n - 1);
    std::int64_t prev_p = 0;
    std::int64_t prev_q = *bs.min_level_below();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        e.x[i] = checked_add(a.shift[i], -prev_p);
        prev_p = a.shift[i];
        const auto& bc = a.source.coords[i];
        if (bc.is_at()) {
            e.w[i] = ExtInt::infinity();
        } else {
            e.w[i] = ExtInt(checked_add(bc.level, -prev_q));
            prev_q = bc.level;
        }
    }
    e.canonicalize();
    return e;
}

inline ArrowLeaf phi_spheres_inverse(const BsGroupoid& bs, const SheuFElement& e) {
    const auto& p = bs.params();
    if (!bs.interior_t())
        throw std::domain_error("phi_spheres_inverse: defined for t in (0,1) only");
    const std::size_t n = std::size_t(p.n);
    UnitLeaf u;
    std::vector<std::int64_t> shift(n);
    std::int64_t qsum = *bs.min_level_below();
    std::int64_t psum = 0;
    bool inf = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!inf && e.w[i].is_finite()) {
            qsum = checked_add(qsum, e.w[i].finite_value());
            u.coords.push_back(BranchCoord::below(qsum));
            psum = checked_add(psum, e.x[i]);
            shift[i] = psum;
        } else {
            inf = true;
            u.coords.push_back(BranchCoord::at());
            shift[i] = checked_neg(e.z);
        }
    }
    u.coords.push_back(BranchCoord::at());
    shift[n - 1] = checked_neg(e.z);
    return bs.make_arrow(std::move(u), std::move(shift));
}

// ---- morphism verification -----------------------------------------------------

/// Checks that `map` is an injective groupoid morphism into H on the given
/// window: units to units, l/r intertwined, multiplicative, inversion
/// preserved, images valid in H; with `inv` also the round trip.
template <Groupoid G, Groupoid H, typename MapFn, typename InvFn>
CheckReport verify_morphism(const G& g, const H& h, MapFn map, InvFn inv,
                            std::span<const typename G::Arrow> window) {
    CheckReport rep;
    rep.name = "morphism";

    auto unit_image = [&](const typename G::Unit& u) { return h.source(map(g.unit_arrow(u))); };

    std::vector<typename H::Arrow> images;
    images.reserve(window.size());
    for (const auto& a : window) {
        const auto ma = map(a);
        images.push_back(ma);
        rep.checks += 5;
        if (!h.is_arrow(ma))
            rep.fail("image not in H: " + detail::describe(a) + " -> " + detail::describe(ma));
        const auto mu = map(g.unit_arrow(g.source(a)));
        if (!(mu == h.unit_arrow(h.source(mu))))
            rep.fail("unit does not map to a unit at l(" + detail::describe(a) + ")");
        if (!(h.source(ma) == unit_image(g.source(a))))
            rep.fail("source not intertwined for " + detail::describe(a));
        if (!(h.target(ma) == unit_image(g.target(a))))
            rep.fail("target not intertwined for " + detail::describe(a));
        if (!(map(g.inverse(a)) == h.inverse(ma)))
            rep.fail("inversion not intertwined for " + detail::describe(a));
        if constexpr (!std::is_null_pointer_v<InvFn>) {
            ++rep.checks;
            if (!(inv(ma) == a)) rep.fail("round trip fails for " + detail::describe(a));
        }
    }

    // injectivity on the window
    {
        auto sorted = images;
        std::sort(sorted.begin(), sorted.end());
        ++rep.checks;
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            rep.fail("map not injective on window");
    }

    // multiplicativity over composable pairs
    for (std::size_t i = 0; i < window.size(); ++i)
        for (std::size_t j = 0; j < window.size(); ++j) {
            const auto& a = window[i];
            const auto& b = window[j];
            if (!(g.target(a) == g.source(b))) continue;
            auto ab = g.compose(a, b);
            auto mab = h.compose(images[i], images[j]);
            ++rep.checks;
            if (!ab || !mab || !(map(*ab) == *mab))
                rep.fail("multiplicativity fails on " + detail::describe(a) + " , " +
                         detail::describe(b));
        }
    return rep;
}

template <Groupoid G, Groupoid H, typename MapFn>
CheckReport verify_morphism(const G& g, const H& h, MapFn map,
                            std::span<const typename G::Arrow> window) {
    return verify_morphism(g, h, std::move(map), nullptr, window);
}

} // namespace gq
