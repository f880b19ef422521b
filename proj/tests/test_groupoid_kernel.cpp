#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "gq/groupoid.hpp"
#include "gq/window_graph.hpp"

using namespace gq;

namespace {

using AG = ExtIntActionGroupoid;

AG::Arrow mk(std::vector<std::int64_t> base, std::vector<std::int64_t> shift) {
    AG::Point p;
    for (auto v : base) p.push_back(ExtInt(v));
    return AG::Arrow{std::move(p), std::move(shift)};
}

/// Full translation groupoid on extended integers, no restriction.
AG zbar_translation(std::size_t dim) {
    return restricted_action_groupoid(dim, [](const AG::Point&) { return true; });
}

/// Wraps a groupoid and corrupts the compose table: the composite's shift
/// is deliberately off by one in the first coordinate.
struct Corrupted {
    using Unit = AG::Unit;
    using Arrow = AG::Arrow;
    AG base;

    bool is_unit(const Unit& u) const { return base.is_unit(u); }
    bool is_arrow(const Arrow& a) const { return base.is_arrow(a); }
    Unit source(const Arrow& a) const { return base.source(a); }
    Unit target(const Arrow& a) const { return base.target(a); }
    std::optional<Arrow> compose(const Arrow& a, const Arrow& b) const {
        auto c = base.compose(a, b);
        if (c && !c->shift.empty()) c->shift[0] += 1;
        return c;
    }
    Arrow inverse(const Arrow& a) const { return base.inverse(a); }
    Arrow unit_arrow(const Unit& u) const { return base.unit_arrow(u); }
};

std::vector<AG::Arrow> window_1d(std::int64_t lo, std::int64_t hi, std::int64_t s) {
    std::vector<AG::Arrow> w;
    for (std::int64_t x = lo; x <= hi; ++x)
        for (std::int64_t p = -s; p <= s; ++p) w.push_back(mk({x}, {p}));
    for (std::int64_t p = -s; p <= s; ++p) {
        AG::Arrow a{{ExtInt::infinity()}, {p}};
        w.push_back(a);
    }
    return w;
}

} // namespace

TEST_CASE("unit axioms on a single unit arrow") {
    auto g = zbar_translation(1);
    std::vector<AG::Arrow> sample = {g.unit_arrow({ExtInt(0)})};
    const auto rep = check_groupoid_axioms(g, sample);
    CHECK(rep.pass());
    CHECK(rep.checks > 0);
}

TEST_CASE("translation groupoid on extended integers passes exhaustively") {
    auto g = zbar_translation(1);
    const auto w = window_1d(-2, 2, 2);
    const auto rep = check_groupoid_axioms(g, std::span<const AG::Arrow>(w));
    CHECK(rep.pass());

    // graph kernels agree with the generic checker
    const auto graph = WindowGraph<AG>::build(g, std::span<const AG::Arrow>(w));
    const auto serial = check_axioms_window_serial(graph);
    const auto parallel = check_axioms_window(graph);
    CHECK(serial.pass());
    CHECK(parallel.pass());
    CHECK(serial.checks == parallel.checks);
    CHECK(serial.violations == parallel.violations);
}

TEST_CASE("corrupted compose table fails with witnesses") {
    Corrupted g{zbar_translation(1)};
    const auto w = window_1d(-1, 1, 1);
    const auto rep = check_groupoid_axioms(g, std::span<const AG::Arrow>(w));
    CHECK_FALSE(rep.pass());
    CHECK(rep.witnesses.size() > 0);
}

TEST_CASE("invalid arrow in the sample is an input error") {
    auto g = restricted_action_groupoid(1, [](const AG::Point& p) {
        return p[0].is_infinite() || p[0].finite_value() >= 0;
    });
    std::vector<AG::Arrow> sample = {mk({-3}, {0})};
    CHECK_THROWS_AS(check_groupoid_axioms(g, std::span<const AG::Arrow>(sample)),
                    std::invalid_argument);
}

TEST_CASE("trivial action on a restricted space is a bundle of groups") {
    // shifts restricted to 0: every arrow is a unit arrow
    auto g = restricted_action_groupoid(
        2, [](const AG::Point&) { return true; },
        [](const AG::Arrow& a) { return a.shift[0] == 0 && a.shift[1] == 0; });
    std::vector<AG::Arrow> w;
    for (std::int64_t x = 0; x < 3; ++x)
        for (std::int64_t y = 0; y < 3; ++y) w.push_back(mk({x, y}, {0, 0}));
    const auto rep = check_groupoid_axioms(g, std::span<const AG::Arrow>(w));
    CHECK(rep.pass());
    for (const auto& a : w) CHECK(g.source(a) == g.target(a));
}

TEST_CASE("1-cocycle checker accepts sums of shifts and rejects absolute values") {
    auto g = zbar_translation(1);
    const auto w = window_1d(-2, 2, 2);
    const std::span<const AG::Arrow> ws(w);

    const auto zero = check_cocycle1(g, [](const AG::Arrow&) { return 0.0; }, ws);
    CHECK(zero.pass());

    const auto sum = check_cocycle1_exact(
        g, [](const AG::Arrow& a) { return a.shift[0]; }, ws);
    CHECK(sum.pass());

    const auto bad = check_cocycle1(
        g, [](const AG::Arrow& a) { return double(std::llabs(a.shift[0])); }, ws);
    CHECK_FALSE(bad.pass());
}

TEST_CASE("2-cocycle checker: trivial and bilinear pass, squared phase fails") {
    auto g = zbar_translation(1);
    const auto w = window_1d(-2, 2, 2);
    const std::span<const AG::Arrow> ws(w);
    auto f = [](const AG::Arrow& a) { return double(a.shift[0]); };

    const auto triv = check_cocycle2(
        g, [](const AG::Arrow&, const AG::Arrow&) { return std::complex<double>(1.0); }, ws);
    CHECK(triv.pass());

    const auto bilinear = check_cocycle2(
        g,
        [&](const AG::Arrow& a, const AG::Arrow& b) {
            return std::exp(std::complex<double>(0.0, f(a) * f(b)));
        },
        ws);
    CHECK(bilinear.pass());

    const auto square = check_cocycle2(
        g,
        [&](const AG::Arrow& a, const AG::Arrow&) {
            return std::exp(std::complex<double>(0.0, f(a) * f(a)));
        },
        ws);
    CHECK_FALSE(square.pass());

    CHECK_THROWS_AS(check_cocycle2(
                        g, [](const AG::Arrow&, const AG::Arrow&) {
                            return std::complex<double>(2.0);
                        },
                        ws),
                    std::domain_error);
}

TEST_CASE("non-composable pair reaching the 1-cocycle checker is an input error") {
    auto g = zbar_translation(1);
    // restriction that breaks closure under composition is surfaced lazily:
    // here we just confirm the checker validates pair composability itself
    std::vector<AG::Arrow> w = {mk({0}, {1})};
    const auto rep = check_cocycle1(g, [](const AG::Arrow&) { return 0.0; },
                                    std::span<const AG::Arrow>(w));
    CHECK(rep.checks == 0); // no composable pair in the sample
}
