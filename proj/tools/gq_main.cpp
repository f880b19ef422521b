// gq: enumeration, verification and convolution CLI for the lattice
// groupoid models.  Exit codes: 0 success, 1 verification failure, 2 usage
// or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gq/emit.hpp"
#include "gq/json_io.hpp"
#include "gq/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// hbar accepts a decimal or the literal "ln2" used throughout the dyadic
/// examples.
double parse_hbar(const std::string& s) {
    if (s == "ln2") return std::log(2.0);
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw CLI::ValidationError("--hbar", "expected a number or 'ln2'");
    return v;
}

std::optional<std::uint64_t> env_seed() {
    if (const char* e = std::getenv("GQ_SEED")) return std::strtoull(e, nullptr, 10);
    return std::nullopt;
}

void write_output(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << body;
}

gq::json suite_to_json(const gq::SuiteResult& r) {
    gq::json checks = gq::json::array();
    for (const auto& c : r.checks) checks.push_back(gq::to_json(c));
    return gq::json{{"suite", r.suite}, {"pass", r.pass()}, {"checks", checks}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bohr-Sommerfeld lattice groupoids over CP_n: enumeration and verification"};
    app.require_subcommand(1);

    int n = 1;
    double t = 0.0;
    std::string hbar_str = "1";
    double tol = 1e-12;
    std::int64_t max_level = 3;
    std::int64_t max_shift = 0;
    int samples = 100;
    std::optional<std::uint64_t> seed;
    std::string output = "-";

    auto add_common = [&](CLI::App* cmd, bool window) {
        cmd->add_option("--n", n, "complex dimension")->check(CLI::PositiveNumber);
        cmd->add_option("--t", t, "pencil parameter in [0,1]")->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--hbar", hbar_str, "Planck constant (> 0, or the literal ln2)");
        cmd->add_option("--tol", tol, "threshold tie tolerance");
        cmd->add_option("--output,-o", output, "output file ('-' for stdout)");
        if (window) {
            cmd->add_option("--max-level", max_level, "level window bound");
            cmd->add_option("--max-shift", max_shift, "shift window bound");
        }
    };

    // ---- enumerate ----
    auto* cmd_enum = app.add_subcommand("enumerate", "list the units (and arrows) of a window");
    bool as_json = false, as_csv = false, as_svg = false, with_arrows = false;
    add_common(cmd_enum, true);
    cmd_enum->add_flag("--json", as_json, "emit JSON");
    cmd_enum->add_flag("--csv", as_csv, "emit CSV (units only)");
    cmd_enum->add_flag("--svg", as_svg, "emit an SVG point figure (n in {1,2})");
    cmd_enum->add_flag("--arrows", with_arrows, "also list arrows (uses --max-shift)");

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all";
    add_common(cmd_verify, true);
    cmd_verify->add_option("--suite", suite, "groupoid|sheu|algebra|poisson|cross|all")
        ->check(CLI::IsMember({"groupoid", "sheu", "algebra", "poisson", "cross", "all"}));
    cmd_verify->add_option("--samples", samples, "random samples for the randomized suites");
    std::uint64_t seed_opt = 0;
    auto* seed_flag = cmd_verify->add_option("--seed", seed_opt, "seed for the randomized suites");

    // ---- convolve ----
    auto* cmd_conv = app.add_subcommand("convolve", "convolve two algebra elements");
    std::string file_a, file_b, file_cocycle;
    bool kms = false;
    add_common(cmd_conv, true);
    cmd_conv->add_option("--a", file_a, "left element (JSON)")->required();
    cmd_conv->add_option("--b", file_b, "right element (JSON)")->required();
    cmd_conv->add_option("--cocycle", file_cocycle, "2-cocycle spec (JSON)");
    cmd_conv->add_flag("--kms", kms, "also report the KMS residual of the pair");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        gq::Params params;
        params.n = n;
        params.t = t;
        params.hbar = parse_hbar(hbar_str);
        params.tol = tol;
        params.validate();

        if (cmd_enum->parsed()) {
            const gq::BsGroupoid bs(params);
            if (as_svg) {
                write_output(output, gq::units_to_svg(bs, bs.enumerate_units(max_level)));
                return kExitPass;
            }
            if (as_csv) {
                write_output(output, gq::units_to_csv(bs, bs.enumerate_units(max_level)));
                return kExitPass;
            }
            const auto units = bs.enumerate_units(max_level);
            std::vector<gq::ArrowLeaf> arrows;
            if (with_arrows) arrows = bs.enumerate(max_level, max_shift).arrows;
            if (as_json) {
                gq::json j;
                j["params"] = gq::to_json(params);
                j["window"] = {{"max_level", max_level}, {"max_shift", max_shift}};
                j["units"] = gq::json::array();
                for (const auto& u : units) j["units"].push_back(gq::to_json(u));
                if (with_arrows) {
                    j["arrows"] = gq::json::array();
                    for (const auto& a : arrows) j["arrows"].push_back(gq::to_json(a));
                }
                j["counts"] = {{"units", units.size()}};
                if (with_arrows) j["counts"]["arrows"] = arrows.size();
                write_output(output, j.dump(2) + "\n");
            } else {
                std::ostringstream os;
                for (const auto& u : units) os << u.str() << "\n";
                if (with_arrows)
                    for (const auto& a : arrows) os << a.str() << "\n";
                os << "units: " << units.size() << "\n";
                if (with_arrows) os << "arrows: " << arrows.size() << "\n";
                write_output(output, os.str());
            }
            return kExitPass;
        }

        if (cmd_verify->parsed()) {
            const bool randomized = suite == "algebra" || suite == "poisson" || suite == "cross" ||
                                    suite == "all";
            if (seed_flag->count() > 0) seed = seed_opt;
            if (!seed) seed = env_seed();
            if (randomized && !seed) {
                std::cerr << "error: --seed (or GQ_SEED) is required for randomized suites\n";
                return kExitUsage;
            }
            std::vector<gq::SuiteResult> results;
            if (suite == "groupoid" || suite == "all")
                results.push_back(gq::groupoid_suite(params, max_level, max_shift));
            if (suite == "sheu" || suite == "all")
                results.push_back(gq::sheu_suite(params, max_level, max_shift));
            if (suite == "algebra" || suite == "all")
                results.push_back(gq::algebra_suite(params, max_level, max_shift, samples, *seed));
            if (suite == "poisson" || suite == "all")
                results.push_back(gq::poisson_suite(params.n, params.t, samples, *seed));
            if (suite == "cross" || suite == "all")
                results.push_back(gq::cross_suite(params.n, params.t, samples, *seed));

            bool pass = true;
            gq::json j;
            j["params"] = gq::to_json(params);
            j["window"] = {{"max_level", max_level}, {"max_shift", max_shift}};
            j["samples"] = samples;
            if (seed) j["seed"] = *seed;
            j["suites"] = gq::json::array();
            for (const auto& r : results) {
                j["suites"].push_back(suite_to_json(r));
                pass = pass && r.pass();
            }
            j["pass"] = pass;
            write_output(output, j.dump(2) + "\n");
            return pass ? kExitPass : kExitFail;
        }

        if (cmd_conv->parsed()) {
            const gq::BsGroupoid bs(params);
            auto load = [](const std::string& path) {
                std::ifstream is(path);
                if (!is) throw std::runtime_error("cannot open: " + path);
                return gq::json::parse(is);
            };
            const auto a = gq::element_from_json(bs, load(file_a));
            const auto b = gq::element_from_json(bs, load(file_b));
            auto zeta = gq::trivial_cocycle2<gq::BsGroupoid>();
            const auto f_fs = [&](const gq::ArrowLeaf& ar) { return bs.modular_data(ar).first; };
            if (!file_cocycle.empty()) {
                const auto spec = load(file_cocycle);
                const std::string kind = spec.at("kind").get<std::string>();
                const double scale = spec.value("scale", 1.0);
                if (kind == "trivial") {
                } else if (kind == "bilinear") {
                    zeta = gq::bilinear_phase_cocycle<gq::BsGroupoid>(f_fs, scale);
                } else if (kind == "square") {
                    zeta = gq::square_phase_noncocycle<gq::BsGroupoid>(f_fs, scale);
                } else {
                    throw std::runtime_error("unknown cocycle kind: " + kind);
                }
            }
            const auto prod = gq::convolve(bs, a, b, zeta);
            gq::json j;
            j["product"] = gq::to_json(prod);
            int code = kExitPass;
            if (kms) {
                const auto mu = [&](const gq::UnitLeaf& u) { return bs.measure_mu(u); };
                const double residual = gq::kms_check(bs, a, b, mu, f_fs);
                const auto sa = [&] {
                    gq::AlgebraElement<gq::BsGroupoid> s;
                    for (const auto& [arrow, v] : a) s[arrow] = std::exp(f_fs(arrow)) * v;
                    return s;
                }();
                const auto lhs = gq::weight_phi(bs, gq::convolve_serial(bs, a, b), mu);
                const auto rhs = gq::weight_phi(bs, gq::convolve_serial(bs, b, sa), mu);
                j["kms"] = {{"phi_ab", {{"re", lhs.real()}, {"im", lhs.imag()}}},
                            {"phi_b_sigma_a", {{"re", rhs.real()}, {"im", rhs.imag()}}},
                            {"residual", residual}};
                if (residual > 1e-12) code = kExitFail;
            }
            write_output(output, j.dump(2) + "\n");
            return code;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const gq::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
