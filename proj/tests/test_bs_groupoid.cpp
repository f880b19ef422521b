#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gq/bs_groupoid.hpp"
#include "gq/suites.hpp"
#include "gq/window_graph.hpp"

using namespace gq;

namespace {

const double kLn2 = std::log(2.0);

Params make_params(int n, double t, double hbar) {
    Params p;
    p.n = n;
    p.t = t;
    p.hbar = hbar;
    return p;
}

UnitLeaf unit(std::vector<BranchCoord> coords) { return UnitLeaf{std::move(coords)}; }

} // namespace

TEST_CASE("branch thresholds") {
    BsGroupoid half(make_params(1, 0.5, kLn2));
    CHECK(half.min_level_below().value() == 1);
    CHECK(half.min_level_above().value() == 1);

    BsGroupoid std0(make_params(1, 0.0, 1.0));
    CHECK(std0.min_level_below().value() == 0);
    CHECK_FALSE(std0.min_level_above().has_value());

    BsGroupoid std1(make_params(1, 1.0, 1.0));
    CHECK_FALSE(std1.min_level_below().has_value());
    CHECK(std1.min_level_above().value() == 0);

    // -log(1-t)/hbar = 2 exactly: the tie is admitted as a valid level
    BsGroupoid quarter(make_params(1, 0.75, kLn2));
    CHECK(quarter.min_level_below().value() == 2);
}

TEST_CASE("make_unit validates branch bounds and ordering") {
    BsGroupoid bs(make_params(2, 0.5, kLn2));

    // oracle: c = 1 - t -/+ e^{-hbar m}
    const auto u = bs.make_unit({BranchCoord::below(1), BranchCoord::above(2)});
    const auto c = bs.c_values(u);
    CHECK(c[0] == doctest::Approx(0.5 - std::exp(-kLn2 * 1)).epsilon(1e-15)); // 0.0
    CHECK(c[1] == doctest::Approx(0.5 + std::exp(-kLn2 * 2)).epsilon(1e-15)); // 0.75
    CHECK(c[0] == doctest::Approx(0.0));
    CHECK(c[1] == doctest::Approx(0.75));

    // Above impossible at t=0
    BsGroupoid std0(make_params(1, 0.0, 1.0));
    CHECK_THROWS_AS(std0.make_unit({BranchCoord::above(5)}), std::invalid_argument);

    // block order: Above before Below rejected
    CHECK_THROWS_AS(bs.make_unit({BranchCoord::above(1), BranchCoord::below(1)}),
                    std::invalid_argument);

    // under-threshold level rejected
    CHECK_THROWS_AS(bs.make_unit({BranchCoord::below(0), BranchCoord::at()}),
                    std::invalid_argument);

    // level monotonicity inside blocks
    CHECK_THROWS_AS(bs.make_unit({BranchCoord::below(3), BranchCoord::below(1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(bs.make_unit({BranchCoord::above(1), BranchCoord::above(3)}),
                    std::invalid_argument);
    CHECK(bs.is_unit(unit({BranchCoord::below(2), BranchCoord::below(2)})));
}

TEST_CASE("c_values on the distinguished examples") {
    BsGroupoid bs(make_params(2, 0.5, kLn2));
    const auto c = bs.c_values(unit({BranchCoord::below(1), BranchCoord::above(1)}));
    CHECK(c[0] == doctest::Approx(0.0));
    CHECK(c[1] == doctest::Approx(1.0));

    const auto at = bs.c_values(unit({BranchCoord::at(), BranchCoord::at()}));
    CHECK(at[0] == doctest::Approx(0.5));
    CHECK(at[1] == doctest::Approx(0.5));

    BsGroupoid std0(make_params(1, 0.0, 1.0));
    CHECK(std0.c_values(unit({BranchCoord::below(0)}))[0] == doctest::Approx(0.0));
}

TEST_CASE("target follows the branch shift rule and the exponential formula") {
    BsGroupoid bs(make_params(2, 0.5, kLn2));
    const auto u = bs.make_unit({BranchCoord::below(1), BranchCoord::above(2)});

    // zero shift is the identity
    CHECK(bs.target_unit(ArrowLeaf{u, {0, 0}}) == u);

    const auto a = bs.make_arrow(u, {2, -1});
    const auto v = bs.target_unit(a);
    CHECK(v == unit({BranchCoord::below(3), BranchCoord::above(1)}));
    const auto cv = bs.c_values(v);
    CHECK(cv[0] == doctest::Approx(0.375));
    CHECK(cv[1] == doctest::Approx(1.0));

    // independent route: r(c,h) = 1-t + e^{-h}(c+t-1)
    const auto cu = bs.c_values(u);
    for (int i = 0; i < 2; ++i) {
        const double direct = 0.5 + std::exp(-kLn2 * double(a.shift[std::size_t(i)])) *
                                        (cu[std::size_t(i)] + 0.5 - 1.0);
        CHECK(cv[std::size_t(i)] == doctest::Approx(direct).epsilon(1e-14));
    }
    // the Above coordinate reproduces 0.5 + e^{ln2} (0.75 - 0.5) = 1
    CHECK(cv[1] == doctest::Approx(0.5 + std::exp(kLn2) * (0.75 - 0.5)));

    // At coordinates are fixed by every admissible shift
    BsGroupoid bs1(make_params(1, 0.5, kLn2));
    const auto at = bs1.make_unit({BranchCoord::at()});
    for (std::int64_t p = -3; p <= 3; ++p)
        CHECK(bs1.target_unit(ArrowLeaf{at, {p}}) == at);
}

TEST_CASE("arrow constraints on the At block") {
    // t in (0,1): the shift is constant across the At block
    BsGroupoid bs(make_params(3, 0.5, kLn2));
    const auto u = bs.make_unit({BranchCoord::below(1), BranchCoord::at(), BranchCoord::at()});
    CHECK(bs.is_arrow(ArrowLeaf{u, {2, 5, 5}}));
    CHECK_FALSE(bs.is_arrow(ArrowLeaf{u, {2, 5, 4}}));

    // t in {0,1}: the At shift vanishes
    BsGroupoid std0(make_params(2, 0.0, 1.0));
    const auto v = std0.make_unit({BranchCoord::below(0), BranchCoord::at()});
    CHECK(std0.is_arrow(ArrowLeaf{v, {1, 0}}));
    CHECK_FALSE(std0.is_arrow(ArrowLeaf{v, {1, 1}}));
}

TEST_CASE("composition, inverse and units") {
    BsGroupoid bs(make_params(2, 0.5, kLn2));
    const auto u = bs.make_unit({BranchCoord::below(1), BranchCoord::above(2)});
    const auto a = bs.make_arrow(u, {1, 1});
    const auto b = bs.make_arrow(bs.target_unit(a), {2, -1});

    const auto ab = bs.compose(a, b);
    REQUIRE(ab.has_value());
    CHECK(*ab == ArrowLeaf{u, {3, 0}});

    CHECK(bs.compose(bs.unit_arrow(u), a).value() == a);
    CHECK(bs.compose(a, bs.inverse(a)).value() == bs.unit_arrow(u));
    CHECK_FALSE(bs.compose(b, b).has_value());
}

TEST_CASE("enumeration reproduces the documented counts") {
    CHECK(BsGroupoid(make_params(1, 0.5, kLn2)).enumerate_units(3).size() == 7);
    CHECK(BsGroupoid(make_params(2, 0.5, kLn2)).enumerate_units(2).size() == 15);
    CHECK(BsGroupoid(make_params(1, 0.0, 1.0)).enumerate_units(2).size() == 4);
    CHECK(BsGroupoid(make_params(2, 0.0, 1.0)).enumerate_units(0).size() == 3);

    // window too small to contain any unit: empty result, not an error
    CHECK(BsGroupoid(make_params(1, 0.75, kLn2)).enumerate_units(1).empty());

    // deterministic order
    const BsGroupoid bs(make_params(2, 0.5, kLn2));
    const auto a = bs.enumerate_units(2);
    const auto b = bs.enumerate_units(2);
    CHECK(a == b);
    CHECK(std::is_sorted(a.begin(), a.end()));
}

TEST_CASE("stratum labels") {
    CHECK(BsGroupoid::stratum(unit({BranchCoord::at(), BranchCoord::at()})) == StratumLabel{0, 0});
    CHECK(BsGroupoid::stratum(unit({BranchCoord::below(1), BranchCoord::above(2)})) ==
          StratumLabel{1, 1});
    CHECK(BsGroupoid::stratum(unit({BranchCoord::below(1), BranchCoord::below(2),
                                    BranchCoord::at()})) == StratumLabel{2, 0});
}

TEST_CASE("modular data and quasi-invariant measure") {
    BsGroupoid bs(make_params(2, 0.5, kLn2));
    const auto u = bs.make_unit({BranchCoord::below(1), BranchCoord::above(2)});
    const auto a = bs.make_arrow(u, {2, -1});

    const auto [f, d] = bs.modular_data(a);
    CHECK(f == doctest::Approx(kLn2));
    CHECK(d == doctest::Approx(2.0));

    const auto [f0, d0] = bs.modular_data(bs.unit_arrow(u));
    CHECK(f0 == 0.0);
    CHECK(d0 == 1.0);

    CHECK(bs.measure_mu(u) == doctest::Approx(0.125));
    CHECK(bs.measure_mu(bs.target_unit(a)) == doctest::Approx(0.0625));
    CHECK(bs.measure_mu(u) == doctest::Approx(d * bs.measure_mu(bs.target_unit(a))));

    CHECK(bs.measure_mu(unit({BranchCoord::at(), BranchCoord::above(1)})) == 0.0);
    BsGroupoid std0(make_params(1, 0.0, 1.0));
    CHECK(std0.measure_mu(unit({BranchCoord::below(0)})) == doctest::Approx(1.0));
}

TEST_CASE("P_k subgroupoids") {
    // n=1, k=1: units {At}; arrows are all shifts at interior t, only the
    // unit arrow at t in {0,1}
    BsGroupoid bs(make_params(1, 0.5, kLn2));
    const auto at = unit({BranchCoord::at()});
    auto pk = bs.pk_subgroupoid(1);
    CHECK(pk.is_unit(at));
    CHECK_FALSE(pk.is_unit(unit({BranchCoord::below(1)})));
    CHECK(pk.is_arrow(ArrowLeaf{at, {7}}));

    BsGroupoid std0(make_params(1, 0.0, 1.0));
    auto pk0 = std0.pk_subgroupoid(1);
    CHECK(pk0.is_arrow(ArrowLeaf{at, {0}}));
    CHECK_FALSE(pk0.is_arrow(ArrowLeaf{at, {1}}));

    // invariance: composing inside P_k stays inside P_k
    BsGroupoid bs3(make_params(3, 0.3, 1.0));
    const auto w = bs3.enumerate(3, 2);
    auto pred = bs3.pk_predicate(2);
    for (const auto& a : w.arrows)
        if (pred(a.source)) CHECK(pred(bs3.target_unit(a)));
}

TEST_CASE("psi duality swaps branches and reverses order") {
    BsGroupoid bs(make_params(2, 0.5, kLn2));
    const auto u = bs.make_unit({BranchCoord::below(1), BranchCoord::above(2)});
    CHECK(bs.psi_dual(u) == unit({BranchCoord::below(2), BranchCoord::above(1)}));

    const auto at = unit({BranchCoord::at(), BranchCoord::at()});
    CHECK(bs.psi_dual(at) == at);

    // involution through the dual model
    BsGroupoid dual(bs.dual_params());
    const auto w = bs.enumerate(3, 2);
    for (const auto& a : w.arrows) {
        const auto d = bs.psi_dual(a);
        CHECK(dual.is_arrow(d));
        CHECK(dual.psi_dual(d) == a);
    }
}

TEST_CASE("window axiom battery on exhaustive windows") {
    for (double t : {0.0, 0.3, 0.5, 1.0}) {
        for (int n : {1, 2}) {
            BsGroupoid bs(make_params(n, t, kLn2));
            const auto w = bs.enumerate(2, 2);
            const auto rep =
                check_groupoid_axioms(bs, std::span<const ArrowLeaf>(w.arrows));
            INFO("n=", n, " t=", t);
            CHECK(rep.pass());
        }
    }
}

TEST_CASE("graph kernels match the generic checker on a medium window") {
    BsGroupoid bs(make_params(2, 0.5, kLn2));
    const auto w = bs.enumerate(2, 2);
    const auto graph = WindowGraph<BsGroupoid>::build(bs, std::span<const ArrowLeaf>(w.arrows));
    const auto serial = check_axioms_window_serial(graph);
    const auto parallel = check_axioms_window(graph);
    CHECK(serial.pass());
    CHECK(parallel.pass());
    CHECK(serial.checks == parallel.checks);
}

TEST_CASE("each component embeds identically into the extended-integer action groupoid") {
    // fixed branch pattern (r,s) = (1,1) inside n=2 at interior t: the level
    // and shift data transfer verbatim
    const Params p = make_params(2, 0.5, kLn2);
    BsGroupoid bs(p);
    const std::int64_t mb = *bs.min_level_below();
    const std::int64_t ma = *bs.min_level_above();

    using AG = ExtIntActionGroupoid;
    AG component = restricted_action_groupoid(2, [&](const AG::Point& q) {
        // (m, n) with m a Below level and n an Above level
        return q[0].is_finite() && q[1].is_finite() && q[0].finite_value() >= mb &&
               q[1].finite_value() >= ma;
    });

    const auto w = bs.enumerate(3, 2);
    std::vector<ArrowLeaf> in_component;
    for (const auto& a : w.arrows)
        if (BsGroupoid::stratum(a.source) == StratumLabel{1, 1}) in_component.push_back(a);
    REQUIRE(in_component.size() > 0);

    auto embed = [](const ArrowLeaf& a) {
        AG::Point q = {ExtInt(a.source.coords[0].level), ExtInt(a.source.coords[1].level)};
        return AG::Arrow{q, a.shift};
    };
    const auto rep =
        verify_morphism(bs, component, embed, std::span<const ArrowLeaf>(in_component));
    CHECK(rep.pass());
}

TEST_CASE("groupoid suite passes end to end on a small model") {
    for (double t : {0.0, 0.5}) {
        const auto result = groupoid_suite(make_params(2, t, kLn2), 2, 2);
        INFO("t=", t);
        for (const auto& c : result.checks) {
            INFO(c.name, ": ", c.witnesses.empty() ? "" : c.witnesses.front());
            CHECK(c.pass());
        }
    }
}
