#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gq/groupoid.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gq {

/// Indexed view of a finite arrow window of a groupoid: units and arrows
/// interned, adjacency by source/target unit.  Composites may leave the
/// window; the kernels below only need their values, not their indices.
template <Groupoid G>
struct WindowGraph {
    const G* g = nullptr;
    std::vector<typename G::Unit> units;
    std::vector<typename G::Arrow> arrows;
    std::vector<int> src;                // arrow -> unit index
    std::vector<int> tgt;                // arrow -> unit index
    std::vector<std::vector<int>> out;   // unit -> arrows with that source
    std::vector<std::vector<int>> in;    // unit -> arrows with that target

    static WindowGraph build(const G& g, std::span<const typename G::Arrow> sample) {
        WindowGraph w;
        w.g = &g;
        std::map<typename G::Unit, int> uix;
        auto intern = [&](const typename G::Unit& u) {
            auto it = uix.find(u);
            if (it != uix.end()) return it->second;
            const int id = static_cast<int>(w.units.size());
            uix.emplace(u, id);
            w.units.push_back(u);
            return id;
        };
        for (const auto& a : sample) {
            if (!g.is_arrow(a))
                throw std::invalid_argument("WindowGraph: invalid arrow in sample");
            w.arrows.push_back(a);
            w.src.push_back(intern(g.source(a)));
            w.tgt.push_back(intern(g.target(a)));
        }
        w.out.resize(w.units.size());
        w.in.resize(w.units.size());
        for (std::size_t i = 0; i < w.arrows.size(); ++i) {
            w.out[std::size_t(w.src[i])].push_back(int(i));
            w.in[std::size_t(w.tgt[i])].push_back(int(i));
        }
        return w;
    }

    std::uint64_t composable_pairs() const {
        std::uint64_t n = 0;
        for (std::size_t x = 0; x < units.size(); ++x)
            n += std::uint64_t(in[x].size()) * std::uint64_t(out[x].size());
        return n;
    }
};

namespace detail {

/// Per-arrow axioms: units, inverses, and a handful of deliberately
/// non-composable probes.
template <Groupoid G>
void axioms_arrow_pass(const WindowGraph<G>& w, std::size_t i, CheckReport& rep) {
    const auto& g = *w.g;
    const auto& a = w.arrows[i];
    const auto& srcu = w.units[std::size_t(w.src[i])];
    const auto& tgtu = w.units[std::size_t(w.tgt[i])];

    const auto el = g.unit_arrow(srcu);
    const auto er = g.unit_arrow(tgtu);
    rep.checks += 7;
    if (!(g.source(el) == srcu && g.target(el) == srcu))
        rep.fail("eps(x) not a loop at x for x=l(" + detail::describe(a) + ")");
    if (auto c = g.compose(el, a); !c || !(*c == a))
        rep.fail("eps(l(a))*a != a for " + detail::describe(a));
    if (auto c = g.compose(a, er); !c || !(*c == a))
        rep.fail("a*eps(r(a)) != a for " + detail::describe(a));
    const auto inv = g.inverse(a);
    if (!g.is_arrow(inv)) rep.fail("inverse invalid for " + detail::describe(a));
    if (!(g.source(inv) == tgtu && g.target(inv) == srcu))
        rep.fail("inverse does not swap l/r for " + detail::describe(a));
    if (!(g.inverse(inv) == a)) rep.fail("inverse not involutive for " + detail::describe(a));
    if (auto c = g.compose(a, inv); !c || !(*c == g.unit_arrow(srcu)))
        rep.fail("a*inv(a) != eps(l(a)) for " + detail::describe(a));
    if (auto c = g.compose(inv, a); !c || !(*c == g.unit_arrow(tgtu)))
        rep.fail("inv(a)*a != eps(r(a)) for " + detail::describe(a));

    // compose must reject mismatched sources: probe the next few arrows
    for (std::size_t k = 1; k <= 3 && k < w.arrows.size(); ++k) {
        const std::size_t j = (i + k) % w.arrows.size();
        const bool match = w.tgt[i] == w.src[j];
        ++rep.checks;
        if (g.compose(a, w.arrows[j]).has_value() != match)
            rep.fail("compose defined iff r(a)=l(b) violated for " + detail::describe(a));
    }
}

/// Pair and triple axioms rooted at composable pair (i,j).
template <Groupoid G>
void axioms_pair_pass(const WindowGraph<G>& w, int i, int j, CheckReport& rep) {
    const auto& g = *w.g;
    const auto ab = g.compose(w.arrows[std::size_t(i)], w.arrows[std::size_t(j)]);
    rep.checks += 3;
    if (!ab) {
        rep.fail("compose undefined on composable pair");
        return;
    }
    if (!g.is_arrow(*ab)) rep.fail("composite arrow invalid");
    if (!(g.source(*ab) == w.units[std::size_t(w.src[std::size_t(i)])] &&
          g.target(*ab) == w.units[std::size_t(w.tgt[std::size_t(j)])]))
        rep.fail("l/r of composite wrong");
    for (int k : w.out[std::size_t(w.tgt[std::size_t(j)])]) {
        ++rep.checks;
        const auto bc = g.compose(w.arrows[std::size_t(j)], w.arrows[std::size_t(k)]);
        if (!bc) {
            rep.fail("compose undefined on composable pair");
            continue;
        }
        const auto left = g.compose(w.arrows[std::size_t(i)], *bc);
        const auto right = g.compose(*ab, w.arrows[std::size_t(k)]);
        if (!left || !right || !(*left == *right)) rep.fail("associativity violated");
    }
}

} // namespace detail

/// Serial reference for the exhaustive window axiom check.
template <Groupoid G>
CheckReport check_axioms_window_serial(const WindowGraph<G>& w) {
    CheckReport rep;
    rep.name = "window-axioms-serial";
    for (std::size_t i = 0; i < w.arrows.size(); ++i) detail::axioms_arrow_pass(w, i, rep);
    for (std::size_t x = 0; x < w.units.size(); ++x)
        for (int i : w.in[x])
            for (int j : w.out[x]) detail::axioms_pair_pass(w, i, j, rep);
    return rep;
}

/// OpenMP kernel: same checks, parallel over arrows and composable pairs.
template <Groupoid G>
CheckReport check_axioms_window(const WindowGraph<G>& w) {
    CheckReport rep;
    rep.name = "window-axioms";

    const std::int64_t na = static_cast<std::int64_t>(w.arrows.size());
#pragma omp parallel
    {
        CheckReport local;
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < na; ++i)
            detail::axioms_arrow_pass(w, std::size_t(i), local);
#pragma omp critical(gq_axioms_merge_arrows)
        rep.merge(local);
    }

    // flatten composable pairs for balanced scheduling
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(std::size_t(w.composable_pairs()));
    for (std::size_t x = 0; x < w.units.size(); ++x)
        for (int i : w.in[x])
            for (int j : w.out[x]) pairs.emplace_back(i, j);

    const std::int64_t np = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel
    {
        CheckReport local;
#pragma omp for schedule(dynamic, 256) nowait
        for (std::int64_t k = 0; k < np; ++k)
            detail::axioms_pair_pass(w, pairs[std::size_t(k)].first, pairs[std::size_t(k)].second,
                                     local);
#pragma omp critical(gq_axioms_merge_pairs)
        rep.merge(local);
    }
    rep.witnesses.resize(std::min<std::size_t>(rep.witnesses.size(), 16));
    return rep;
}

/// Haar left-invariance witness: for each arrow gamma, left translation
/// gamma' -> gamma gamma' is a bijection from the truncated l-fiber at
/// r(gamma) onto the l-fiber at l(gamma) truncated by the translated box.
/// `fiber(gamma, at_target)` enumerates the relevant truncated fiber and
/// owns the box translation.
template <Groupoid G, typename FiberFn>
CheckReport check_left_invariance(const WindowGraph<G>& w, FiberFn fiber) {
    CheckReport rep;
    rep.name = "haar-left-invariance";
    const auto& g = *w.g;
    for (std::size_t i = 0; i < w.arrows.size(); ++i) {
        const auto& a = w.arrows[i];
        std::vector<typename G::Arrow> from_target = fiber(a, true);
        std::vector<typename G::Arrow> from_source = fiber(a, false);
        ++rep.checks;
        std::vector<typename G::Arrow> mapped;
        mapped.reserve(from_target.size());
        for (const auto& ar : from_target) {
            auto c = g.compose(a, ar);
            if (!c) {
                rep.fail("left translation undefined inside fiber at " + detail::describe(a));
                continue;
            }
            mapped.push_back(*c);
        }
        std::sort(mapped.begin(), mapped.end());
        if (std::adjacent_find(mapped.begin(), mapped.end()) != mapped.end())
            rep.fail("left translation not injective at " + detail::describe(a));
        std::sort(from_source.begin(), from_source.end());
        if (!(mapped == from_source))
            rep.fail("left translation is not a bijection of truncated fibers at " +
                     detail::describe(a));
    }
    return rep;
}

} // namespace gq
