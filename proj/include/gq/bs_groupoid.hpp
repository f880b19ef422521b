#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gq/ext_int.hpp"
#include "gq/groupoid.hpp"

namespace gq {

/// Model parameters: complex dimension n, pencil parameter t in [0,1],
/// Planck constant hbar > 0, and the tie tolerance used when a branch
/// threshold -log(1-t)/hbar or -log(t)/hbar falls on an integer.
struct Params {
    int n = 1;
    double t = 0.0;
    double hbar = 1.0;
    double tol = 1e-12;

    void validate() const {
        if (n < 1) throw std::invalid_argument("Params: n must be >= 1");
        if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("Params: t must lie in [0,1]");
        if (!(hbar > 0.0)) throw std::invalid_argument("Params: hbar must be > 0");
        if (!(tol >= 0.0)) throw std::invalid_argument("Params: tol must be >= 0");
    }
};

enum class Branch : std::uint8_t { Below = 0, At = 1, Above = 2 };

/// One lattice coordinate of a unit leaf.
///   Below(m): c = 1-t - e^{-hbar m}   (requires e^{-hbar m} <= 1-t)
///   At:       c = 1-t                 (the level-infinity point)
///   Above(m): c = 1-t + e^{-hbar m}   (requires e^{-hbar m} <= t)
struct BranchCoord {
    Branch branch = Branch::At;
    std::int64_t level = 0; // meaningful for Below/Above only

    static BranchCoord below(std::int64_t m) { return {Branch::Below, m}; }
    static BranchCoord at() { return {Branch::At, 0}; }
    static BranchCoord above(std::int64_t m) { return {Branch::Above, m}; }

    bool is_at() const { return branch == Branch::At; }

    friend bool operator==(const BranchCoord& a, const BranchCoord& b) {
        return a.branch == b.branch && (a.branch == Branch::At || a.level == b.level);
    }
    friend auto operator<=>(const BranchCoord& a, const BranchCoord& b) {
        if (auto c = a.branch <=> b.branch; c != 0) return c;
        if (a.branch == Branch::At) return std::strong_ordering::equal;
        // order by the value of c: Below ascending in m, Above descending
        if (a.branch == Branch::Below) return a.level <=> b.level;
        return b.level <=> a.level;
    }

    std::string str() const {
        switch (branch) {
        case Branch::Below: return "lo:" + std::to_string(level);
        case Branch::At: return "at";
        default: return "hi:" + std::to_string(level);
        }
    }
};

/// A point of the lattice simplex: n branch coordinates with all Below
/// coordinates first, then At, then Above, and the level monotonicity that
/// makes c_1 <= ... <= c_n.
struct UnitLeaf {
    std::vector<BranchCoord> coords;

    friend bool operator==(const UnitLeaf&, const UnitLeaf&) = default;
    friend auto operator<=>(const UnitLeaf& a, const UnitLeaf& b) {
        return std::lexicographical_compare_three_way(a.coords.begin(), a.coords.end(),
                                                      b.coords.begin(), b.coords.end());
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (i) s += ",";
            s += coords[i].str();
        }
        return s + ")";
    }
};

/// An arrow: source unit plus an integer shift vector p (h = hbar p).
struct ArrowLeaf {
    UnitLeaf source;
    std::vector<std::int64_t> shift;

    friend bool operator==(const ArrowLeaf&, const ArrowLeaf&) = default;
    friend auto operator<=>(const ArrowLeaf& a, const ArrowLeaf& b) {
        if (auto c = (a.source <=> b.source); c != 0) return c;
        return std::lexicographical_compare_three_way(a.shift.begin(), a.shift.end(),
                                                      b.shift.begin(), b.shift.end());
    }

    std::string str() const {
        std::string s = source.str() + "|p=[";
        for (std::size_t i = 0; i < shift.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(shift[i]);
        }
        return s + "]";
    }
};

/// (r,s) = (#Below, #Above); labels the stratum the leaf quantizes.
struct StratumLabel {
    int r = 0;
    int s = 0;
    friend bool operator==(const StratumLabel&, const StratumLabel&) = default;
    friend auto operator<=>(const StratumLabel&, const StratumLabel&) = default;
};

struct BsWindow {
    std::vector<UnitLeaf> units;
    std::vector<ArrowLeaf> arrows;
};

/// The Bohr-Sommerfeld groupoid of (CP_n, pi_t): a wide subgroupoid of the
/// translation action groupoid on extended-integer level vectors.  All
/// membership tests are integer-exact; the real c-values are derived views.
class BsGroupoid {
public:
    using Unit = UnitLeaf;
    using Arrow = ArrowLeaf;

    explicit BsGroupoid(Params p) : p_(p) {
        p_.validate();
        mb_ = threshold_level(-(std::log1p(-p_.t)), p_.hbar, p_.tol, p_.t < 1.0);
        ma_ = threshold_level(-std::log(p_.t), p_.hbar, p_.tol, p_.t > 0.0);
    }

    const Params& params() const { return p_; }

    /// Smallest admissible Below level, absent at t=1.
    std::optional<std::int64_t> min_level_below() const { return mb_; }
    /// Smallest admissible Above level, absent at t=0.
    std::optional<std::int64_t> min_level_above() const { return ma_; }

    bool interior_t() const { return p_.t > 0.0 && p_.t < 1.0; }

    // ---- units ------------------------------------------------------------

    bool is_unit(const UnitLeaf& u) const { return unit_error(u).empty(); }

    /// Empty string when valid, else the violated invariant.
    std::string unit_error(const UnitLeaf& u) const {
        if (static_cast<int>(u.coords.size()) != p_.n) return "unit has wrong dimension";
        int phase = 0;
        const BranchCoord* prev = nullptr;
        for (const auto& bc : u.coords) {
            const int ph = static_cast<int>(bc.branch);
            if (ph < phase) return "branch blocks out of order (Below < At < Above)";
            if (bc.branch == Branch::Below) {
                if (!mb_) return "Below coordinate impossible at t=1";
                if (bc.level < *mb_)
                    return "Below level " + std::to_string(bc.level) + " under threshold " +
                           std::to_string(*mb_);
                if (prev && ph == phase && prev->level > bc.level)
                    return "Below levels must be nondecreasing";
            } else if (bc.branch == Branch::Above) {
                if (!ma_) return "Above coordinate impossible at t=0";
                if (bc.level < *ma_)
                    return "Above level " + std::to_string(bc.level) + " under threshold " +
                           std::to_string(*ma_);
                if (prev && ph == phase && prev->level < bc.level)
                    return "Above levels must be nonincreasing";
            }
            phase = ph;
            prev = &bc;
        }
        return {};
    }

    UnitLeaf make_unit(std::vector<BranchCoord> coords) const {
        UnitLeaf u{std::move(coords)};
        if (auto e = unit_error(u); !e.empty())
            throw std::invalid_argument("make_unit: " + e + " in " + u.str());
        return u;
    }

    /// Derived real view c_k = 1-t -/+ e^{-hbar m}, or 1-t on At.
    std::vector<double> c_values(const UnitLeaf& u) const {
        std::vector<double> c(u.coords.size());
        for (std::size_t i = 0; i < u.coords.size(); ++i) c[i] = c_value(u.coords[i]);
        return c;
    }

    double c_value(const BranchCoord& bc) const {
        switch (bc.branch) {
        case Branch::Below: return 1.0 - p_.t - std::exp(-p_.hbar * double(bc.level));
        case Branch::At: return 1.0 - p_.t;
        default: return 1.0 - p_.t + std::exp(-p_.hbar * double(bc.level));
        }
    }

    static StratumLabel stratum(const UnitLeaf& u) {
        StratumLabel l;
        for (const auto& bc : u.coords) {
            if (bc.branch == Branch::Below) ++l.r;
            if (bc.branch == Branch::Above) ++l.s;
        }
        return l;
    }

    // ---- arrows -----------------------------------------------------------

    /// Branch-wise shift rule: Below(m) -> Below(m+p), At -> At,
    /// Above(m) -> Above(m+p).  Agrees with r(c,h) = 1-t + e^{-h}(c+t-1).
    UnitLeaf target_unit(const ArrowLeaf& a) const {
        UnitLeaf v = a.source;
        for (std::size_t i = 0; i < v.coords.size(); ++i)
            if (v.coords[i].branch != Branch::At)
                v.coords[i].level = checked_add(v.coords[i].level, a.shift[i]);
        return v;
    }

    bool is_arrow(const ArrowLeaf& a) const { return arrow_error(a).empty(); }

    std::string arrow_error(const ArrowLeaf& a) const {
        if (a.shift.size() != a.source.coords.size()) return "shift has wrong dimension";
        if (auto e = unit_error(a.source); !e.empty()) return "source: " + e;
        // shift constraint on the At block
        bool have_at = false;
        std::int64_t at_shift = 0;
        for (std::size_t i = 0; i < a.source.coords.size(); ++i) {
            if (!a.source.coords[i].is_at()) continue;
            if (!interior_t()) {
                if (a.shift[i] != 0) return "At coordinate must carry shift 0 at t in {0,1}";
            } else if (!have_at) {
                have_at = true;
                at_shift = a.shift[i];
            } else if (a.shift[i] != at_shift) {
                return "shift must be constant across the At block for t in (0,1)";
            }
        }
        UnitLeaf v = target_unit(a);
        if (auto e = unit_error(v); !e.empty()) return "target: " + e;
        return {};
    }

    ArrowLeaf make_arrow(UnitLeaf source, std::vector<std::int64_t> shift) const {
        ArrowLeaf a{std::move(source), std::move(shift)};
        if (auto e = arrow_error(a); !e.empty())
            throw std::invalid_argument("make_arrow: " + e + " in " + a.str());
        return a;
    }

    UnitLeaf source(const ArrowLeaf& a) const { return a.source; }
    UnitLeaf target(const ArrowLeaf& a) const { return target_unit(a); }

    std::optional<ArrowLeaf> compose(const ArrowLeaf& a, const ArrowLeaf& b) const {
        if (!(target_unit(a) == b.source)) return std::nullopt;
        std::vector<std::int64_t> s(a.shift.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = checked_add(a.shift[i], b.shift[i]);
        return ArrowLeaf{a.source, std::move(s)};
    }

    ArrowLeaf inverse(const ArrowLeaf& a) const {
        std::vector<std::int64_t> s(a.shift.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = checked_neg(a.shift[i]);
        return ArrowLeaf{target_unit(a), std::move(s)};
    }

    ArrowLeaf unit_arrow(const UnitLeaf& u) const {
        return ArrowLeaf{u, std::vector<std::int64_t>(u.coords.size(), 0)};
    }

    // ---- modular data -----------------------------------------------------

    std::int64_t shift_sum(const ArrowLeaf& a) const {
        std::int64_t s = 0;
        for (auto p : a.shift) s = checked_add(s, p);
        return s;
    }

    /// f_FS = hbar * sum_i p_i and its exponential, the Radon-Nikodym
    /// derivative of the quasi-invariant measure.
    std::pair<double, double> modular_data(const ArrowLeaf& a) const {
        const double f = p_.hbar * double(shift_sum(a));
        return {f, std::exp(f)};
    }

    /// mu_FS(c) = prod_k |c_k - 1 + t| = e^{-hbar * sum of levels}; any At
    /// coordinate makes the product vanish.
    double measure_mu(const UnitLeaf& u) const {
        std::int64_t level_sum = 0;
        for (const auto& bc : u.coords) {
            if (bc.is_at()) return 0.0;
            level_sum = checked_add(level_sum, bc.level);
        }
        return std::exp(-p_.hbar * double(level_sum));
    }

    // ---- Poisson-submanifold subgroupoids ----------------------------------

    /// Predicate "coordinate k is At" (1-based k); arrow-invariant, so the
    /// restriction is a subgroupoid.
    std::function<bool(const UnitLeaf&)> pk_predicate(int k) const {
        if (k < 1 || k > p_.n) throw std::invalid_argument("pk_predicate: k out of range");
        return [k](const UnitLeaf& u) { return u.coords[std::size_t(k - 1)].is_at(); };
    }

    RestrictedGroupoid<BsGroupoid> pk_subgroupoid(int k) const {
        return RestrictedGroupoid<BsGroupoid>(*this, pk_predicate(k));
    }

    // ---- duality -----------------------------------------------------------

    /// Parameters of the dual model (t -> 1-t).
    Params dual_params() const {
        Params q = p_;
        q.t = 1.0 - p_.t;
        return q;
    }

    /// psi-duality: reverse coordinate order, swap Below(m) <-> Above(m),
    /// reverse the shift vector.  A groupoid isomorphism onto the t -> 1-t
    /// model; involutive (psi of the dual composed with psi is the identity).
    UnitLeaf psi_dual(const UnitLeaf& u) const {
        UnitLeaf v;
        v.coords.reserve(u.coords.size());
        for (auto it = u.coords.rbegin(); it != u.coords.rend(); ++it) {
            BranchCoord bc = *it;
            if (bc.branch == Branch::Below)
                bc.branch = Branch::Above;
            else if (bc.branch == Branch::Above)
                bc.branch = Branch::Below;
            v.coords.push_back(bc);
        }
        return v;
    }

    ArrowLeaf psi_dual(const ArrowLeaf& a) const {
        ArrowLeaf b;
        b.source = psi_dual(a.source);
        b.shift.assign(a.shift.rbegin(), a.shift.rend());
        return b;
    }

    // ---- window enumeration -------------------------------------------------

    /// All units whose finite levels are <= max_level, in lexicographic
    /// order.  A window too small to contain a unit yields an empty result.
    std::vector<UnitLeaf> enumerate_units(std::int64_t max_level) const {
        std::vector<UnitLeaf> out;
        for (int r = 0; r <= p_.n; ++r) {
            if (r > 0 && !mb_) continue;
            if (r > 0 && *mb_ > max_level) continue;
            for (int s = 0; r + s <= p_.n; ++s) {
                if (s > 0 && !ma_) continue;
                if (s > 0 && *ma_ > max_level) continue;
                auto lows = nondecreasing_tuples(r, mb_ ? *mb_ : 0, max_level);
                auto highs = nondecreasing_tuples(s, ma_ ? *ma_ : 0, max_level);
                for (const auto& lo : lows)
                    for (const auto& hi : highs) {
                        UnitLeaf u;
                        u.coords.reserve(std::size_t(p_.n));
                        for (auto m : lo) u.coords.push_back(BranchCoord::below(m));
                        for (int i = 0; i < p_.n - r - s; ++i) u.coords.push_back(BranchCoord::at());
                        for (auto it = hi.rbegin(); it != hi.rend(); ++it)
                            u.coords.push_back(BranchCoord::above(*it));
                        out.push_back(std::move(u));
                    }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Valid shifts out of `u` with |p_i| <= max_shift and target inside the
    /// same level window; the discrete l-fiber of Theorem-style windows.
    std::vector<std::vector<std::int64_t>> l_fiber_shifts(const UnitLeaf& u, std::int64_t max_level,
                                                          std::int64_t max_shift) const {
        std::vector<std::vector<std::int64_t>> box(u.coords.size());
        for (std::size_t i = 0; i < u.coords.size(); ++i) {
            box[i] = {-max_shift, max_shift};
        }
        return l_fiber_shifts_boxed(u, max_level, box);
    }

    /// Same, with a per-coordinate shift interval box[i] = {lo, hi}.
    std::vector<std::vector<std::int64_t>> l_fiber_shifts_boxed(
        const UnitLeaf& u, std::int64_t max_level,
        const std::vector<std::vector<std::int64_t>>& box) const {
        std::vector<std::vector<std::int64_t>> fibers;
        const std::size_t n = u.coords.size();
        // candidate shifts per coordinate; the At block contributes one
        // degree of freedom at interior t and none at t in {0,1}
        std::vector<std::vector<std::int64_t>> cand(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& bc = u.coords[i];
            const std::int64_t lo = box[i][0], hi = box[i][1];
            if (bc.is_at()) {
                if (!interior_t()) {
                    if (lo <= 0 && 0 <= hi) cand[i] = {0};
                } else {
                    for (std::int64_t p = lo; p <= hi; ++p) cand[i].push_back(p);
                }
            } else {
                const std::int64_t mmin = bc.branch == Branch::Below ? *mb_ : *ma_;
                for (std::int64_t p = lo; p <= hi; ++p) {
                    const std::int64_t m = bc.level + p;
                    if (m >= mmin && m <= max_level) cand[i].push_back(p);
                }
            }
        }
        // the At block is a single choice: collapse to its first member
        std::vector<std::size_t> at_idx;
        for (std::size_t i = 0; i < n; ++i)
            if (u.coords[i].is_at()) at_idx.push_back(i);
        if (interior_t() && at_idx.size() > 1) {
            std::vector<std::int64_t> common = cand[at_idx[0]];
            for (std::size_t k = 1; k < at_idx.size(); ++k) {
                std::vector<std::int64_t> merged;
                std::set_intersection(common.begin(), common.end(), cand[at_idx[k]].begin(),
                                      cand[at_idx[k]].end(), std::back_inserter(merged));
                common.swap(merged);
            }
            cand[at_idx[0]] = common;
            for (std::size_t k = 1; k < at_idx.size(); ++k) cand[at_idx[k]] = {0}; // slaved below
        }

        std::vector<std::int64_t> p(n, 0);
        enumerate_rec(u, cand, at_idx, 0, p, fibers);
        return fibers;
    }

    /// All valid units with levels <= max_level and all valid arrows among
    /// them with |p_i| <= max_shift, deterministically ordered.
    BsWindow enumerate(std::int64_t max_level, std::int64_t max_shift) const {
        BsWindow w;
        w.units = enumerate_units(max_level);
        for (const auto& u : w.units) {
            auto shifts = l_fiber_shifts(u, max_level, max_shift);
            for (auto& p : shifts) w.arrows.push_back(ArrowLeaf{u, std::move(p)});
        }
        std::sort(w.arrows.begin(), w.arrows.end());
        return w;
    }

private:
    Params p_;
    std::optional<std::int64_t> mb_;
    std::optional<std::int64_t> ma_;

    /// Smallest integer m with hbar*m >= x, snapping to a nearby integer
    /// within tol; disabled branches yield nullopt.
    static std::optional<std::int64_t> threshold_level(double x, double hbar, double tol,
                                                       bool enabled) {
        if (!enabled) return std::nullopt;
        const double q = x / hbar;
        const double r = std::round(q);
        if (std::abs(q - r) <= tol) return static_cast<std::int64_t>(r);
        return static_cast<std::int64_t>(std::ceil(q));
    }

    static std::vector<std::vector<std::int64_t>> nondecreasing_tuples(int len, std::int64_t lo,
                                                                       std::int64_t hi) {
        std::vector<std::vector<std::int64_t>> out;
        if (len == 0) {
            out.push_back({});
            return out;
        }
        if (lo > hi) return out;
        std::vector<std::int64_t> cur(std::size_t(len), lo);
        // odometer over nondecreasing tuples
        for (;;) {
            out.push_back(cur);
            int i = len - 1;
            while (i >= 0 && cur[std::size_t(i)] == hi) --i;
            if (i < 0) break;
            const std::int64_t v = cur[std::size_t(i)] + 1;
            for (int j = i; j < len; ++j) cur[std::size_t(j)] = v;
        }
        return out;
    }

    void enumerate_rec(const UnitLeaf& u, const std::vector<std::vector<std::int64_t>>& cand,
                       const std::vector<std::size_t>& at_idx, std::size_t i,
                       std::vector<std::int64_t>& p,
                       std::vector<std::vector<std::int64_t>>& out) const {
        const std::size_t n = u.coords.size();
        if (i == n) {
            ArrowLeaf a{u, p};
            if (is_arrow(a)) out.push_back(p);
            return;
        }
        const bool slaved =
            interior_t() && u.coords[i].is_at() && !at_idx.empty() && i != at_idx[0];
        if (slaved) {
            p[i] = p[at_idx[0]];
            enumerate_rec(u, cand, at_idx, i + 1, p, out);
            return;
        }
        for (auto v : cand[i]) {
            p[i] = v;
            enumerate_rec(u, cand, at_idx, i + 1, p, out);
        }
    }
};

static_assert(Groupoid<BsGroupoid>);
static_assert(Groupoid<ExtIntActionGroupoid>);
static_assert(Groupoid<RestrictedGroupoid<BsGroupoid>>);

} // namespace gq
