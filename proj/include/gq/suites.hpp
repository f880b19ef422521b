#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gq/bs_groupoid.hpp"
#include "gq/groupoid.hpp"

namespace gq {

struct SuiteResult {
    std::string suite;
    std::vector<CheckReport> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass()) return false;
        return true;
    }

    double max_residual() const {
        double r = 0.0;
        for (const auto& c : checks) r = std::max(r, c.max_residual);
        return r;
    }
};

/// Window battery for the lattice groupoid: axioms, the two routes of the
/// action formula, stratum/orbit structure, modular cocycle and measure,
/// Haar invariance, psi-duality and P_k closure.
SuiteResult groupoid_suite(const Params& params, std::int64_t max_level, std::int64_t max_shift,
                           bool parallel = true);

/// The isomorphisms onto the reference groupoids, whichever apply at
/// (n, t): standard (t=0), CP^1 (n=1, 0<t<1), odd spheres (0<t<1).
SuiteResult sheu_suite(const Params& params, std::int64_t max_level, std::int64_t max_shift);

/// Randomized convolution algebra battery on a window: associativity,
/// involution, twisted associativity with a valid and an invalid cocycle,
/// KMS, restriction homomorphism and ideal, regular representation.
SuiteResult algebra_suite(const Params& params, std::int64_t max_level, std::int64_t max_shift,
                          int samples, std::uint64_t seed);

/// Seeded chart-point battery: Schouten brackets, recursion eigenvalue,
/// local hamiltonians, Lenard chain, modular field (and t-independence),
/// involution of the momenta, chart round trips, SU(2) closed forms.
SuiteResult poisson_suite(int n, double t, int samples, std::uint64_t seed, bool parallel = true);

/// Seeded Lie-layer battery: Iwasawa reconstruction, split projections,
/// momentum additivity, dressing-vs-lattice action formula, Poisson
/// subgroup invariance.
SuiteResult cross_suite(int n, double t, int samples, std::uint64_t seed, bool parallel = true);

} // namespace gq
