// Timing comparison of the OpenMP kernels against their serial reference
// implementations.  Each kernel pair is also checked for agreement, so the
// benchmark doubles as a smoke test.

#include <chrono>
#include <cstdio>
#include <string>

#include "gq/convolution.hpp"
#include "gq/rng.hpp"
#include "gq/suites.hpp"
#include "gq/window_graph.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s %10.1f ms %10.1f ms %7.2fx   %s\n", name.c_str(), serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "agree" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    const bool full = argc > 1 && std::string(argv[1]) == "--full";
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    // window axiom sweep
    {
        gq::Params p;
        p.n = full ? 4 : 3;
        p.t = 0.5;
        p.hbar = std::log(2.0);
        const gq::BsGroupoid bs(p);
        const auto w = bs.enumerate(3, 3);
        const auto graph = gq::WindowGraph<gq::BsGroupoid>::build(bs, w.arrows);
        auto t0 = Clock::now();
        const auto serial = gq::check_axioms_window_serial(graph);
        const double ts = ms_since(t0);
        t0 = Clock::now();
        const auto parallel = gq::check_axioms_window(graph);
        const double tp = ms_since(t0);
        row("axioms n=" + std::to_string(p.n) + " window", ts, tp,
            serial.violations == parallel.violations && serial.checks == parallel.checks);
    }

    // convolution with a large support
    {
        gq::Params p;
        p.n = 2;
        p.t = 0.5;
        p.hbar = std::log(2.0);
        const gq::BsGroupoid bs(p);
        const auto w = bs.enumerate(full ? 7 : 5, 3);
        gq::Rng rng(17);
        gq::AlgebraElement<gq::BsGroupoid> a, b;
        const std::size_t support = full ? 20000 : 5000;
        for (std::size_t i = 0; i < support; ++i) {
            a[w.arrows[rng.below(w.arrows.size())]] += {rng.gaussian(), rng.gaussian()};
            b[w.arrows[rng.below(w.arrows.size())]] += {rng.gaussian(), rng.gaussian()};
        }
        auto t0 = Clock::now();
        const auto cs = gq::convolve_serial(bs, a, b);
        const double ts = ms_since(t0);
        t0 = Clock::now();
        const auto cp = gq::convolve(bs, a, b);
        const double tp = ms_since(t0);
        row("convolve |supp|=" + std::to_string(a.size()), ts, tp, cs == cp);
    }

    // chart identity batch
    {
        const int n = 3, samples = full ? 400 : 120;
        auto t0 = Clock::now();
        const auto serial = gq::poisson_suite(n, 0.5, samples, 11, /*parallel=*/false);
        const double ts = ms_since(t0);
        t0 = Clock::now();
        const auto parallel = gq::poisson_suite(n, 0.5, samples, 11, /*parallel=*/true);
        const double tp = ms_since(t0);
        row("poisson batch n=3", ts, tp,
            serial.pass() == parallel.pass() && serial.max_residual() == parallel.max_residual());
    }

    // dressing-action batch
    {
        const int n = 3, samples = full ? 600 : 200;
        auto t0 = Clock::now();
        const auto serial = gq::cross_suite(n, 0.25, samples, 11, /*parallel=*/false);
        const double ts = ms_since(t0);
        t0 = Clock::now();
        const auto parallel = gq::cross_suite(n, 0.25, samples, 11, /*parallel=*/true);
        const double tp = ms_since(t0);
        row("dressing batch n=3", ts, tp,
            serial.pass() == parallel.pass() && serial.max_residual() == parallel.max_residual());
    }

    return 0;
}
