#include "gq/suites.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "gq/convolution.hpp"
#include "gq/lie.hpp"
#include "gq/poisson.hpp"
#include "gq/rng.hpp"
#include "gq/sheu.hpp"
#include "gq/window_graph.hpp"

namespace gq {

namespace {

constexpr double kExactTol = 1e-12;
constexpr double kAlgebraicTol = 1e-10;
constexpr double kFirstDerivTol = 1e-8;
constexpr double kSecondDerivTol = 1e-6;

void residual_check(CheckReport& rep, double residual, double tol, const std::string& what) {
    ++rep.checks;
    rep.max_residual = std::max(rep.max_residual, residual);
    if (!(residual <= tol)) rep.fail(what + " residual " + std::to_string(residual));
}

/// Uniformly random element supported on `support_size` window arrows.
AlgebraElement<BsGroupoid> random_element(const BsWindow& w, std::size_t support_size, Rng& rng) {
    AlgebraElement<BsGroupoid> e;
    for (std::size_t i = 0; i < support_size; ++i) {
        const auto& a = w.arrows[rng.below(w.arrows.size())];
        e[a] += std::complex<double>(rng.gaussian(), rng.gaussian());
    }
    return e;
}

double element_distance(const AlgebraElement<BsGroupoid>& a, const AlgebraElement<BsGroupoid>& b) {
    double worst = 0.0;
    for (const auto& [k, v] : a) {
        auto it = b.find(k);
        worst = std::max(worst, std::abs(v - (it == b.end() ? std::complex<double>(0) : it->second)));
    }
    for (const auto& [k, v] : b)
        if (!a.count(k)) worst = std::max(worst, std::abs(v));
    return worst;
}

} // namespace

SuiteResult groupoid_suite(const Params& params, std::int64_t max_level, std::int64_t max_shift,
                           bool parallel) {
    SuiteResult out;
    out.suite = "groupoid";
    const BsGroupoid bs(params);
    const BsWindow w = bs.enumerate(max_level, max_shift);
    const auto graph = WindowGraph<BsGroupoid>::build(bs, w.arrows);

    out.checks.push_back(parallel ? check_axioms_window(graph) : check_axioms_window_serial(graph));

    // action formula: integer branch-shift rule against the exponential form
    {
        CheckReport rep;
        rep.name = "action-formula";
        for (const auto& a : w.arrows) {
            const auto cs = bs.c_values(a.source);
            const auto ct = bs.c_values(bs.target_unit(a));
            ++rep.checks;
            double r = 0.0;
            for (std::size_t i = 0; i < cs.size(); ++i) {
                const double direct =
                    1.0 - params.t +
                    std::exp(-params.hbar * double(a.shift[i])) * (cs[i] + params.t - 1.0);
                r = std::max(r, std::abs(ct[i] - direct));
            }
            rep.max_residual = std::max(rep.max_residual, r);
            if (r > kExactTol) rep.fail("action formula routes disagree at " + a.str());
        }
        out.checks.push_back(std::move(rep));
    }

    // stratum preservation and orbit-stratum correspondence
    {
        CheckReport rep;
        rep.name = "strata-orbits";
        for (const auto& a : w.arrows) {
            ++rep.checks;
            if (!(BsGroupoid::stratum(a.source) == BsGroupoid::stratum(bs.target_unit(a))))
                rep.fail("stratum not preserved by " + a.str());
        }
        // in the maximal stratum, units with the same branch pattern and
        // per-coordinate level gap <= max_shift are directly connected
        for (std::size_t i = 0; i < w.units.size(); ++i) {
            const auto st = BsGroupoid::stratum(w.units[i]);
            if (st.r + st.s != params.n) continue;
            for (std::size_t j = 0; j < w.units.size(); ++j) {
                if (i == j) continue;
                if (!(BsGroupoid::stratum(w.units[j]) == st)) continue;
                std::vector<std::int64_t> p(w.units[i].coords.size());
                bool in_range = true;
                for (std::size_t c = 0; c < p.size(); ++c) {
                    p[c] = w.units[j].coords[c].level - w.units[i].coords[c].level;
                    if (std::llabs(p[c]) > max_shift) in_range = false;
                }
                if (!in_range) continue;
                ++rep.checks;
                if (!bs.is_arrow(ArrowLeaf{w.units[i], p}))
                    rep.fail("maximal-stratum units not connected: " + w.units[i].str() + " -> " +
                             w.units[j].str());
            }
        }
        out.checks.push_back(std::move(rep));
    }

    // modular cocycle f_FS: exact integer additivity over the shift sums
    {
        CheckReport rep;
        rep.name = "modular-cocycle";
        for (std::size_t x = 0; x < graph.units.size(); ++x)
            for (int i : graph.in[x])
                for (int j : graph.out[x]) {
                    ++rep.checks;
                    const auto ab =
                        bs.compose(graph.arrows[std::size_t(i)], graph.arrows[std::size_t(j)]);
                    if (bs.shift_sum(*ab) != bs.shift_sum(graph.arrows[std::size_t(i)]) +
                                                  bs.shift_sum(graph.arrows[std::size_t(j)]))
                        rep.fail("f_FS not additive");
                }
        out.checks.push_back(std::move(rep));
    }

    // measure identity mu(l) = e^{f_FS} mu(r), relative to 1e-12
    {
        CheckReport rep;
        rep.name = "measure-identity";
        for (const auto& a : w.arrows) {
            const double lhs = bs.measure_mu(a.source);
            const double rhs = bs.modular_data(a).second * bs.measure_mu(bs.target_unit(a));
            ++rep.checks;
            const double scale = std::max({lhs, rhs, 1e-300});
            const double r = std::abs(lhs - rhs) / scale;
            rep.max_residual = std::max(rep.max_residual, r);
            if (r > kExactTol) rep.fail("measure identity fails at " + a.str());
        }
        out.checks.push_back(std::move(rep));
    }

    // etale fibers are finite shift sets; left translation is a bijection
    // of truncated fibers (box translated by the arrow's own shift)
    {
        auto fiber = [&](const ArrowLeaf& gamma, bool at_target) {
            std::vector<std::vector<std::int64_t>> box(gamma.shift.size());
            const UnitLeaf u = at_target ? bs.target_unit(gamma) : gamma.source;
            for (std::size_t i = 0; i < gamma.shift.size(); ++i) {
                if (at_target)
                    box[i] = {-max_shift, max_shift};
                else
                    box[i] = {gamma.shift[i] - max_shift, gamma.shift[i] + max_shift};
            }
            // widen the level window so translated fibers stay comparable
            const std::int64_t wide_level = max_level + 2 * max_shift;
            std::vector<ArrowLeaf> arrows;
            for (auto& p : bs.l_fiber_shifts_boxed(u, wide_level, box))
                arrows.push_back(ArrowLeaf{u, std::move(p)});
            return arrows;
        };
        out.checks.push_back(check_left_invariance(graph, fiber));
    }

    // psi-duality is an isomorphism onto the t -> 1-t model
    {
        const BsGroupoid dual(bs.dual_params());
        auto rep = verify_morphism(
            bs, dual, [&](const ArrowLeaf& a) { return bs.psi_dual(a); },
            [&](const ArrowLeaf& a) { return dual.psi_dual(a); },
            std::span<const ArrowLeaf>(w.arrows));
        rep.name = "psi-duality";
        // involution through the dual model
        for (const auto& a : w.arrows) {
            ++rep.checks;
            if (!(dual.psi_dual(bs.psi_dual(a)) == a)) rep.fail("psi o psi != id at " + a.str());
        }
        out.checks.push_back(std::move(rep));
    }

    // P_k subgroupoids: closure under structure maps
    {
        CheckReport rep;
        rep.name = "pk-closure";
        for (int k = 1; k <= params.n; ++k) {
            auto pred = bs.pk_predicate(k);
            for (const auto& a : w.arrows) {
                if (!pred(a.source)) continue;
                ++rep.checks;
                if (!pred(bs.target_unit(a)))
                    rep.fail("P_k not invariant under arrow " + a.str());
                const auto inv = bs.inverse(a);
                if (!pred(inv.source)) rep.fail("P_k not closed under inversion at " + a.str());
            }
        }
        out.checks.push_back(std::move(rep));
    }

    return out;
}

SuiteResult sheu_suite(const Params& params, std::int64_t max_level, std::int64_t max_shift) {
    SuiteResult out;
    out.suite = "sheu";
    const BsGroupoid bs(params);
    const BsWindow w = bs.enumerate(max_level, max_shift);

    if (params.t == 0.0) {
        const SheuTGroupoid tn(params.n);
        auto rep = verify_morphism(
            bs, tn, [&](const ArrowLeaf& a) { return phi_standard(bs, a); },
            [&](const SheuTElement& e) { return phi_standard_inverse(bs, e); },
            std::span<const ArrowLeaf>(w.arrows));
        rep.name = "phi-standard";
        out.checks.push_back(std::move(rep));

        // image characterization: Phi maps the window onto the
        // independently enumerated window of T_n
        CheckReport onto;
        onto.name = "phi-standard-onto";
        std::vector<SheuTElement> image;
        image.reserve(w.arrows.size());
        for (const auto& a : w.arrows) image.push_back(phi_standard(bs, a));
        std::sort(image.begin(), image.end());
        auto independent = tn.enumerate_window(max_level, max_shift);
        std::sort(independent.begin(), independent.end());
        ++onto.checks;
        if (!(image == independent))
            onto.fail("image of the window differs from the T_n window (" +
                      std::to_string(image.size()) + " vs " + std::to_string(independent.size()) +
                      " arrows)");
        out.checks.push_back(std::move(onto));
    }

    if (params.n == 1 && params.t > 0.0 && params.t < 1.0) {
        const SheuGGroupoid gg;
        auto rep = verify_morphism(
            bs, gg, [&](const ArrowLeaf& a) { return phi_cp1(bs, a); },
            [&](const SheuGElement& e) { return phi_cp1_inverse(bs, e); },
            std::span<const ArrowLeaf>(w.arrows));
        rep.name = "phi-cp1";
        out.checks.push_back(std::move(rep));
    }

    if (params.t > 0.0 && params.t < 1.0) {
        const SheuFGroupoid fn(params.n);
        auto pn = bs.pk_subgroupoid(params.n);
        std::vector<ArrowLeaf> parrows;
        for (const auto& a : w.arrows)
            if (pn.contains(a.source)) parrows.push_back(a);
        auto rep = verify_morphism(
            pn, fn, [&](const ArrowLeaf& a) { return phi_spheres(bs, a); },
            [&](const SheuFElement& e) { return phi_spheres_inverse(bs, e); },
            std::span<const ArrowLeaf>(parrows));
        rep.name = "phi-spheres";
        out.checks.push_back(std::move(rep));
    }

    return out;
}

SuiteResult algebra_suite(const Params& params, std::int64_t max_level, std::int64_t max_shift,
                          int samples, std::uint64_t seed) {
    SuiteResult out;
    out.suite = "algebra";
    const BsGroupoid bs(params);
    const BsWindow w = bs.enumerate(max_level, max_shift);
    if (w.arrows.empty()) throw std::invalid_argument("algebra_suite: empty window");

    const auto mu = [&](const UnitLeaf& u) { return bs.measure_mu(u); };
    const auto f_fs = [&](const ArrowLeaf& a) { return bs.modular_data(a).first; };
    const auto zeta_good = bilinear_phase_cocycle<BsGroupoid>(f_fs, 0.37);
    const auto zeta_bad = square_phase_noncocycle<BsGroupoid>(f_fs, 0.37);

    CheckReport assoc;
    assoc.name = "associativity";
    CheckReport star;
    star.name = "star-identities";
    CheckReport twisted;
    twisted.name = "twisted-associativity";
    CheckReport twisted_neg;
    twisted_neg.name = "twisted-negative-control";
    CheckReport kms;
    kms.name = "kms";
    CheckReport par;
    par.name = "parallel-vs-serial";

    double worst_bad = 0.0;
    for (int s = 0; s < samples; ++s) {
        Rng rng(seed, std::uint64_t(s));
        const std::size_t size = 1 + rng.below(50);
        const auto a = random_element(w, size, rng);
        const auto b = random_element(w, size, rng);
        const auto c = random_element(w, size, rng);

        // (a*b)*c == a*(b*c), both orders computed independently
        residual_check(assoc,
                       element_distance(convolve_serial(bs, convolve_serial(bs, a, b), c),
                                        convolve_serial(bs, a, convolve_serial(bs, b, c))),
                       kExactTol, "associativity");

        // (a*)* = a and (a*b)* = b* * a*
        residual_check(star, element_distance(involution(bs, involution(bs, a)), a), 0.0,
                       "involution not involutive");
        residual_check(star,
                       element_distance(involution(bs, convolve_serial(bs, a, b)),
                                        convolve_serial(bs, involution(bs, b), involution(bs, a))),
                       kExactTol, "anti-homomorphism");

        // twisted associativity with a genuine 2-cocycle
        residual_check(
            twisted,
            element_distance(convolve_serial(bs, convolve_serial(bs, a, b, zeta_good), c, zeta_good),
                             convolve_serial(bs, a, convolve_serial(bs, b, c, zeta_good), zeta_good)),
            kExactTol, "twisted associativity");
        worst_bad = std::max(
            worst_bad,
            element_distance(convolve_serial(bs, convolve_serial(bs, a, b, zeta_bad), c, zeta_bad),
                             convolve_serial(bs, a, convolve_serial(bs, b, c, zeta_bad), zeta_bad)));

        residual_check(kms, kms_check(bs, a, b, mu, f_fs), kExactTol, "kms");

        // the OpenMP kernel agrees with the serial reference bitwise
        residual_check(par, element_distance(convolve(bs, a, b), convolve_serial(bs, a, b)), 0.0,
                       "parallel kernel mismatch");
    }
    ++twisted_neg.checks;
    twisted_neg.max_residual = worst_bad;
    if (worst_bad <= 1e-6)
        twisted_neg.fail("invalid 2-cocycle failed to break associativity (max defect " +
                         std::to_string(worst_bad) + ")");

    out.checks.push_back(std::move(assoc));
    out.checks.push_back(std::move(star));
    out.checks.push_back(std::move(twisted));
    out.checks.push_back(std::move(twisted_neg));
    out.checks.push_back(std::move(kms));
    out.checks.push_back(std::move(par));

    // restriction to each P_k: *-homomorphism with two-sided ideal kernel
    {
        CheckReport rep;
        rep.name = "pk-restriction";
        for (int k = 1; k <= params.n; ++k) {
            auto pred = bs.pk_predicate(k);
            for (int s = 0; s < std::max(1, samples / 4); ++s) {
                Rng rng(seed ^ 0xabcdef12u, std::uint64_t(k * 1000 + s));
                const auto a = random_element(w, 1 + rng.below(30), rng);
                const auto b = random_element(w, 1 + rng.below(30), rng);
                residual_check(rep,
                               element_distance(restrict_element(bs, convolve_serial(bs, a, b), pred),
                                                convolve_serial(bs, restrict_element(bs, a, pred),
                                                                restrict_element(bs, b, pred))),
                               0.0, "restriction homomorphism");
                // kernel ideal: a off P_k makes a*b and b*a vanish on P_k
                AlgebraElement<BsGroupoid> off;
                for (const auto& [arrow, v] : a)
                    if (!pred(arrow.source)) off[arrow] = v;
                residual_check(
                    rep,
                    element_distance(restrict_element(bs, convolve_serial(bs, off, b), pred), {}),
                    0.0, "left ideal");
                residual_check(
                    rep,
                    element_distance(restrict_element(bs, convolve_serial(bs, b, off), pred), {}),
                    0.0, "right ideal");
            }
        }
        out.checks.push_back(std::move(rep));
    }

    // regular representation on r-fibers: multiplicativity under closure
    {
        CheckReport rep;
        rep.name = "regular-representation";
        for (int s = 0; s < std::max(1, samples / 10); ++s) {
            Rng rng(seed ^ 0x5eed5eedu, std::uint64_t(s));
            const auto& x = w.units[rng.below(w.units.size())];
            // the full in-window r-fiber of x
            std::vector<ArrowLeaf> fiber;
            for (const auto& a : w.arrows)
                if (bs.target_unit(a) == x) fiber.push_back(a);
            if (fiber.empty()) continue;
            // delta at a unit acts as the diagonal projection onto the
            // arrows emanating from that unit
            AlgebraElement<BsGroupoid> a;
            a[bs.unit_arrow(x)] = {1.0, 0.0};
            const auto proj = regular_rep(bs, a, fiber);
            ++rep.checks;
            if (!proj.window_closed) rep.fail("unit-supported element left the fiber window");
            double r = 0.0;
            for (std::size_t i = 0; i < fiber.size(); ++i)
                for (std::size_t j = 0; j < fiber.size(); ++j) {
                    const std::complex<double> want =
                        (i == j && fiber[j].source == x) ? std::complex<double>(1.0) : 0.0;
                    r = std::max(r, std::abs(proj.matrix[i][j] - want));
                }
            residual_check(rep, r, 0.0, "unit projection matrix");
            // multiplicativity for generic pairs, flagged windows skipped
            const auto b1 = random_element(w, 5, rng);
            const auto b2 = random_element(w, 5, rng);
            const auto r1 = regular_rep(bs, b1, fiber);
            const auto r2 = regular_rep(bs, b2, fiber);
            const auto r12 = regular_rep(bs, convolve_serial(bs, b1, b2), fiber);
            if (r1.window_closed && r2.window_closed && r12.window_closed) {
                double worst = 0.0;
                for (std::size_t i = 0; i < fiber.size(); ++i)
                    for (std::size_t j = 0; j < fiber.size(); ++j) {
                        std::complex<double> acc(0.0, 0.0);
                        for (std::size_t m = 0; m < fiber.size(); ++m)
                            acc += r1.matrix[i][m] * r2.matrix[m][j];
                        worst = std::max(worst, std::abs(acc - r12.matrix[i][j]));
                    }
                residual_check(rep, worst, kExactTol, "regular rep multiplicativity");
            }
        }
        out.checks.push_back(std::move(rep));
    }

    return out;
}

SuiteResult poisson_suite(int n, double t, int samples, std::uint64_t seed, bool parallel) {
    SuiteResult out;
    out.suite = "poisson";
    const int sign = pencil_sign(n);

    CheckReport schouten;
    schouten.name = "schouten";
    CheckReport ident;
    ident.name = "identity-suite";
    CheckReport chart;
    chart.name = "chart-roundtrip";
    CheckReport su2;
    su2.name = "su2-closed-forms";

    struct Local {
        double schouten = 0.0, recursion = 0.0, hamiltonian = 0.0, lenard = 0.0, modular = 0.0,
               involution = 0.0, chart = 0.0, su2 = 0.0, modular_t0 = 0.0, modular_t7 = 0.0;
    };
    std::vector<Local> locals(std::size_t(samples));

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int s = 0; s < samples; ++s) {
        Rng rng(seed, std::uint64_t(s));
        ChartPoint p;
        p.x.resize(std::size_t(2 * n));
        for (auto& v : p.x) v = 0.6 * rng.gaussian();
        Local& L = locals[std::size_t(s)];

        L.schouten = std::max({schouten_bracket_max(Pi0Field{}, Pi0Field{}, p.x),
                               schouten_bracket_max(Pi0Field{}, PiLambdaField{sign}, p.x),
                               schouten_bracket_max(PiTField{t, sign}, PiTField{t, sign}, p.x)});

        const auto rep = identity_suite(p, t);
        L.recursion = rep.recursion;
        L.hamiltonian = rep.hamiltonian;
        L.lenard = rep.lenard;
        L.modular = rep.modular;
        L.involution = rep.involution;

        // the modular field is independent of t: re-run the comparison at
        // two other pencil parameters
        L.modular_t0 = identity_suite(p, 0.0).modular;
        L.modular_t7 = identity_suite(p, 0.7).modular;

        // chart round trips
        {
            const auto z = z_of_y(p.x);
            const auto back = y_of_z(z);
            for (std::size_t i = 0; i < p.x.size(); ++i)
                L.chart = std::max(L.chart, std::abs(back[i] - p.x[i]));
            if (n == 1)
                for (std::size_t i = 0; i < p.x.size(); ++i)
                    L.chart = std::max(L.chart, std::abs(z[i] - p.x[i]));
        }

        // SU(2) closed forms probed on the first coordinate
        {
            const auto chk = su2_check({p.x[0], p.x[1]});
            L.su2 = std::max({chk.tensor_residual, chk.omega_residual, chk.pairing_residual});
        }
    }

    for (const auto& L : locals) {
        residual_check(schouten, L.schouten, kFirstDerivTol, "schouten");
        residual_check(ident, L.recursion, kFirstDerivTol, "recursion eigenvalue");
        residual_check(ident, L.hamiltonian, kSecondDerivTol, "local hamiltonian");
        residual_check(ident, L.lenard, kSecondDerivTol, "lenard");
        residual_check(ident, L.modular, kSecondDerivTol, "modular field");
        residual_check(ident, L.modular_t0, kSecondDerivTol, "modular field (t=0)");
        residual_check(ident, L.modular_t7, kSecondDerivTol, "modular field (t=0.7)");
        residual_check(ident, L.involution, kFirstDerivTol, "momentum involution");
        residual_check(chart, L.chart, kExactTol, "chart roundtrip");
        residual_check(su2, L.su2, kFirstDerivTol, "su2 closed form");
    }

    out.checks.push_back(std::move(schouten));
    out.checks.push_back(std::move(ident));
    out.checks.push_back(std::move(chart));
    out.checks.push_back(std::move(su2));
    return out;
}

SuiteResult cross_suite(int n, double t, int samples, std::uint64_t seed, bool parallel) {
    SuiteResult out;
    out.suite = "cross";
    const int n1 = n + 1;

    CheckReport iwa;
    iwa.name = "iwasawa";
    CheckReport add;
    add.name = "momentum-additivity";
    CheckReport act;
    act.name = "action-crosscheck";
    CheckReport pk;
    pk.name = "pk-invariance";

    struct Local {
        double iwa = 0.0, add = 0.0, act = 0.0, recon = 0.0, pk = 0.0;
    };
    std::vector<Local> locals(std::size_t(samples));

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int s = 0; s < samples; ++s) {
        Rng rng(seed, std::uint64_t(s));
        Local& L = locals[std::size_t(s)];

        // Iwasawa reconstruction and factor membership on a random SL matrix
        {
            CMat d(std::size_t(n1), std::size_t(n1));
            for (std::size_t i = 0; i < d.rows(); ++i)
                for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) = rng.gaussian_complex();
            const auto det = d.det();
            // scale one column to unit determinant
            for (std::size_t i = 0; i < d.rows(); ++i) d(i, 0) /= det;
            for (auto order : {IwasawaOrder::SU_SB, IwasawaOrder::SB_SU}) {
                const auto f = iwasawa(d, order);
                const CMat recon = order == IwasawaOrder::SU_SB ? f.unitary * f.triangular
                                                                : f.triangular * f.unitary;
                L.iwa = std::max(L.iwa, max_abs(recon - d));
                L.iwa = std::max(L.iwa, max_abs(adjoint(f.unitary) * f.unitary -
                                                CMat::identity(std::size_t(n1))));
                L.iwa = std::max(L.iwa, std::abs(f.triangular.det() - std::complex<double>(1.0)));
                for (std::size_t i = 0; i < f.triangular.rows(); ++i)
                    for (std::size_t j = 0; j < i; ++j)
                        L.iwa = std::max(L.iwa, std::abs(f.triangular(i, j)));
            }
        }

        // momentum additivity h(g1 g2) = h(g1) + h(g2) via two composable
        // dressing elements
        {
            const CMat g = random_su(n1, rng);
            const auto e1 = build_element(g, random_xi(n1, rng), t);
            const auto e2 = build_element(e1.u0, random_xi(n1, rng), t);
            const auto h1 = momentum_h(e1.gamma);
            const auto h2 = momentum_h(e2.gamma);
            const auto h12 = momentum_h(e1.gamma * e2.gamma);
            for (std::size_t i = 0; i < h1.size(); ++i)
                L.add = std::max(L.add, std::abs(h12[i] - h1[i] - h2[i]));
            L.recon = std::max(max_abs(g * e1.gamma - e1.lambda * e1.u0),
                               max_abs(e1.u0 * e2.gamma - e2.lambda * e2.u0));
        }

        // lattice action formula against the dressing action
        {
            const CMat g = random_su(n1, rng);
            const auto chk = raction_crosscheck(g, random_xi(n1, rng), t);
            L.act = std::max({chk.residual, chk.reconstruction});
        }

        // Poisson subgroup samples: c_k = 1-t on source forces it on target
        {
            const int k = 1 + int(rng.below(std::uint64_t(n)));
            const CMat g = random_su_block(n1, k, rng);
            const auto chk = raction_crosscheck(g, random_xi(n1, rng), t);
            L.pk = std::max({chk.residual, chk.pk_residual});
        }
    }

    for (const auto& L : locals) {
        residual_check(iwa, L.iwa, kAlgebraicTol, "iwasawa");
        residual_check(add, std::max(L.add, L.recon), kAlgebraicTol, "momentum additivity");
        residual_check(act, L.act, kFirstDerivTol, "action crosscheck");
        residual_check(pk, L.pk, kFirstDerivTol, "pk invariance");
    }

    out.checks.push_back(std::move(iwa));
    out.checks.push_back(std::move(add));
    out.checks.push_back(std::move(act));
    out.checks.push_back(std::move(pk));
    return out;
}

} // namespace gq
