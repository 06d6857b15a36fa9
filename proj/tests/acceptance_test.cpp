// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "ncstar/deformation.hpp"
#include "ncstar/expression.hpp"
#include "ncstar/fockspace.hpp"
#include "ncstar/polystar.hpp"
#include "ncstar/scenario.hpp"
#include "ncstar/wavestar.hpp"
#include "support.hpp"

using namespace ncstar;

namespace {

// Tolerances
constexpr double tol_ncr = 1e-12;
constexpr double tol_algebra = 1e-10;
constexpr double tol_equiv_wave = 1e-12;
constexpr double tol_equiv_poly = 1e-10;
constexpr double tol_preset = 1e-15;
constexpr double tol_kernel = 1e-12;
constexpr double tol_fock = 1e-6;
constexpr double fock_noise_floor = 1e-14;
constexpr double tol_heisenberg_rel = 1e-13; // relative to the HS norm of the state
constexpr double tol_coherent_overlap = 1e-10;

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail)
{
    std::printf("criterion %d %s: %s (%s)\n", id, ok ? "PASS" : "FAIL", title, detail.c_str());
    if (!ok)
        ++failures;
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string worst(double err, double tol) { return "max error " + fmt(err) + ", tolerance " + fmt(tol); }

void commutator_invariance()
{
    testing::Rng rng(1001);
    const auto x1 = Polynomial2::variable(0), x2 = Polynomial2::variable(1);
    double err = 0.0;
    for (double theta : {0.1, 1.0, 2.0})
        for (int k = 0; k < 100; ++k) {
            const auto p = rng.params(theta);
            err = std::max(err, star_commutator(x1, x2, p).max_abs_diff(Polynomial2::constant(I * theta)));
        }
    report(1, "[x1, x2] = i theta for every Phi", err <= tol_ncr, worst(err, tol_ncr) + ", 300 instances");
}

void algebra_laws()
{
    testing::Rng rng(1002);
    double assoc = 0, anti = 0, jacobi = 0, leibniz = 0;
    for (int k = 0; k < 200; ++k) {
        const auto p = rng.params(rng.uniform(0.1, 2.0));
        const auto f = rng.polynomial(4), g = rng.polynomial(4), h = rng.polynomial(4);
        auto st = [&](const Polynomial2& a, const Polynomial2& b) { return star_poly(a, b, p); };
        auto br = [&](const Polynomial2& a, const Polynomial2& b) { return star_commutator(a, b, p); };
        assoc = std::max(assoc, st(st(f, g), h).max_abs_diff(st(f, st(g, h))));
        anti = std::max(anti, (br(f, g) + br(g, f)).max_abs_diff(Polynomial2{}));
        jacobi = std::max(jacobi, (br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g))).max_abs_diff(Polynomial2{}));
        leibniz = std::max(leibniz, br(f, st(g, h)).max_abs_diff(st(br(f, g), h) + st(g, br(f, h))));
    }
    const double err = std::max({assoc, anti, jacobi, leibniz});
    report(2, "associativity, antisymmetry, Jacobi, Leibniz", err <= tol_algebra,
           "assoc " + fmt(assoc) + ", anti " + fmt(anti) + ", jacobi " + fmt(jacobi) + ", leibniz " + fmt(leibniz)
               + ", tolerance " + fmt(tol_algebra) + ", 200 triples");
}

void equivalence()
{
    testing::Rng rng(1003);
    double wave = 0.0, poly = 0.0;
    for (int k = 0; k < 100; ++k) {
        const auto p = rng.params(rng.uniform(0.1, 2.0));
        wave = std::max(wave, equivalence_residual(rng.wavesum(1, 2.0), rng.wavesum(1, 2.0), p));

        const auto moyal = make_params(p.theta(), 0.0, 0.0, 0.0);
        const auto f = rng.polynomial(4), g = rng.polynomial(4);
        const auto lhs = testing::naive_tmap(testing::naive_star(f, g, moyal), p);
        const auto rhs = testing::naive_star(testing::naive_tmap(f, p), testing::naive_tmap(g, p), p);
        poly = std::max(poly, std::max(lhs.max_abs_diff(rhs),
                                       tmap_poly(star_poly(f, g, moyal), p)
                                           .max_abs_diff(star_poly(tmap_poly(f, p), tmap_poly(g, p), p))));
    }
    report(3, "T(f *M g) = T(f) * T(g)", wave <= tol_equiv_wave && poly <= tol_equiv_poly,
           "waves " + fmt(wave) + " (tol " + fmt(tol_equiv_wave) + "), polynomials " + fmt(poly) + " (tol "
               + fmt(tol_equiv_poly) + "), 100 pairs each");
}

void presets()
{
    double err = 0.0;
    auto dist = [](const ComplexStarCoefficients& c, cplx a, cplx b, cplx d, cplx e) {
        return std::max({std::abs(c.c_zz - a), std::abs(c.c_zzbar - b), std::abs(c.c_zbarz - d),
                         std::abs(c.c_zbarzbar - e)});
    };
    for (double theta : {0.1, 0.5, 1.0, 2.0, 7.0}) {
        err = std::max(err, dist(complex_coefficients(preset_params(Preset::moyal, theta)), 0.0, 0.5, -0.5, 0.0));
        err = std::max(err, dist(complex_coefficients(preset_params(Preset::voros, theta)), 0.0, 1.0, 0.0, 0.0));
    }
    report(4, "Moyal and Voros complex coefficients", err <= tol_preset, worst(err, tol_preset));
}

std::vector<std::array<double, 2>> grid20()
{
    std::vector<std::array<double, 2>> g;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j)
            g.push_back({-2.0 + 4.0 * i / 19, -2.0 + 4.0 * j / 19});
    return g;
}

void position_resolution()
{
    const auto grid = grid20();
    double moyal = 0.0;
    for (double theta : {0.5, 1.0, 2.0}) {
        const auto p = preset_params(Preset::moyal, theta);
        for (const auto& q : grid)
            moyal = std::max(moyal, std::abs(position_roi_amplitude(p, q, q) - 1.0));
    }
    const DeformationParams others[] = {
        make_params(1.0, 0.2, 0.0, 0.2),
        preset_params(Preset::voros, 1.0),
        make_params(1.5, cplx(0.3, -0.2), cplx(0.5, 0.1), cplx(0.0, -0.4)),
    };
    double predicted = 0.0, printed = 0.0, min_dev = INFINITY;
    for (const auto& p : others) {
        double dev = 0.0;
        for (const auto& q : grid) {
            const cplx a = position_roi_amplitude(p, q, q);
            const cplx phipp = p.phi11() * q[0] * q[0] + 2.0 * p.phi12() * q[0] * q[1] + p.phi22() * q[1] * q[1];
            predicted = std::max(predicted, std::abs(a - std::exp(0.5 * I * phipp)));
            printed = std::max(printed, std::abs(a - testing::position_kernel_printed(p, q, q)));
            dev = std::max(dev, std::abs(a - 1.0));
        }
        min_dev = std::min(min_dev, dev);
    }
    const bool ok = moyal <= tol_kernel && predicted <= tol_kernel && printed <= tol_kernel && min_dev > 1e-3;
    report(5, "position states: identity for Moyal, exp((i/2) Phi p p) otherwise", ok,
           "Moyal |a-1| " + fmt(moyal) + ", non-Moyal vs prediction " + fmt(predicted) + ", vs printed kernel "
               + fmt(printed) + ", tolerance " + fmt(tol_kernel) + ", smallest non-Moyal deviation from 1 "
               + fmt(min_dev));
}

void coherent_resolution()
{
    std::vector<cplx> disk;
    for (const auto& q : grid20())
        if (std::hypot(q[0], q[1]) <= 2.0)
            disk.emplace_back(q[0], q[1]);
    double voros = 0.0, moyal = 0.0, generic = 0.0;
    for (double theta : {0.5, 1.0, 2.0}) {
        const auto v = preset_params(Preset::voros, theta), m = preset_params(Preset::moyal, theta);
        for (const cplx q : disk) {
            voros = std::max(voros, std::abs(coherent_roi_amplitude(v, q, q) - 1.0));
            moyal = std::max(moyal, std::abs(coherent_roi_amplitude(m, q, q) - std::exp(-theta * std::norm(q) / 2)));
        }
    }
    testing::Rng rng(1006);
    std::vector<DeformationParams> generics{make_params(1.0, -I, 1.0, -I)};
    for (int k = 0; k < 20; ++k)
        generics.push_back(rng.params(rng.uniform(0.1, 2.0)));
    for (const auto& p : generics)
        for (const cplx q : disk)
            generic = std::max(generic, std::abs(coherent_roi_amplitude(p, q, q) - testing::coherent_kernel_printed(p, q, q)));
    const bool ok = voros <= tol_kernel && moyal <= tol_kernel && generic <= tol_kernel;
    report(6, "coherent states: identity for Voros, exp(-theta|p|^2/2) for Moyal", ok,
           "Voros |a-1| " + fmt(voros) + ", Moyal " + fmt(moyal) + ", generic vs printed kernel " + fmt(generic)
               + ", tolerance " + fmt(tol_kernel));
}

void fock_oracle()
{
    testing::Rng rng(1007);
    double err64 = 0.0;
    bool shrinking = true;
    for (int k = 0; k < 20; ++k) {
        const double theta = k % 2 == 0 ? 1.0 : 2.0;
        const cplx z = rng.in_disk(1.0), p = rng.in_disk(2.0);
        const double e16 = overlap_vs_closedform(z, p, theta, 16).abs_error;
        const double e32 = overlap_vs_closedform(z, p, theta, 32).abs_error;
        const double e64 = overlap_vs_closedform(z, p, theta, 64).abs_error;
        err64 = std::max(err64, e64);
        shrinking = shrinking && e32 <= std::max(e16, fock_noise_floor) && e64 <= std::max(e32, fock_noise_floor);
    }
    report(7, "Fock trace overlap vs closed form", err64 < tol_fock && shrinking,
           "N=64 " + worst(err64, tol_fock) + ", error non-increasing 16->32->64 above " + fmt(fock_noise_floor)
               + (shrinking ? "" : " VIOLATED"));
}

void heisenberg()
{
    testing::Rng rng(1008);
    const Eigen::Index n = 64;
    double rel = 0.0;
    for (double theta : {0.5, 1.0, 2.0}) {
        const auto ops = quantum_ops(make_params(theta, 0.0, 0.0, 0.0), n);
        for (int k = 0; k < 3; ++k) {
            FockMatrix m = FockMatrix::Zero(n, n);
            for (Eigen::Index i = 0; i < n - 2; ++i)
                for (Eigen::Index j = 0; j < n - 2; ++j)
                    m(i, j) = rng.in_disk(1.0);
            const FockOp psi(m);
            const auto zero = FockOp::zero(n);
            auto e = [&](const QuantumOp& a, const QuantumOp& b, const FockOp& x) {
                return (apply_commutator(a, b, psi) - x).hs_norm() / psi.hs_norm();
            };
            rel = std::max({rel, e(ops.X1, ops.X2, (I * theta) * psi), e(ops.X1, ops.P1, I * psi),
                            e(ops.X2, ops.P2, I * psi), e(ops.P1, ops.P2, zero), e(ops.X1, ops.P2, zero),
                            e(ops.X2, ops.P1, zero)});
        }
    }
    double overlap = 0.0;
    for (int k = 0; k < 20; ++k) {
        const cplx z = rng.in_disk(1.0), zp = rng.in_disk(1.0);
        overlap = std::max(overlap, std::abs(hs_inner(coherent_projector(zp, n), coherent_projector(z, n))
                                             - std::exp(-std::norm(z - zp))));
    }
    report(8, "Heisenberg algebra at N=64 and coherent overlaps", rel <= tol_heisenberg_rel && overlap <= tol_coherent_overlap,
           "relative commutator error " + fmt(rel) + " (tol " + fmt(tol_heisenberg_rel) + "), overlap " + fmt(overlap)
               + " (tol " + fmt(tol_coherent_overlap) + ")");
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void parser_and_cli()
{
    int round_trip_failures = 0, corpus_size = 0;
    for (const char* text : testing::expression_corpus) {
        ++corpus_size;
        const auto e = parse_expression(text);
        if (!(parse_expression(to_string(e)) == e))
            ++round_trip_failures;
    }
    bool deterministic = true, codes = true;
    std::string detail;
    for (const auto& [name, expected] : {std::pair{"moyal-pass", 0}, {"voros-pass", 0}, {"generic-finding", 1}}) {
        const auto text = read_file(std::string(NCSTAR_SCENARIO_DIR) + "/" + name + ".scn");
        const auto s1 = parse_scenario(text), s2 = parse_scenario(text);
        const auto r1 = run_scenario(s1), r2 = run_scenario(s2);
        deterministic = deterministic && emit_report(r1, ReportFormat::json) == emit_report(r2, ReportFormat::json);
        const int code = exit_code(r1);
        codes = codes && code == expected;
        detail += std::string(", ") + name + " exit " + std::to_string(code);
    }
    const bool ok = corpus_size >= 30 && round_trip_failures == 0 && deterministic && codes;
    report(9, "parser round-trip, deterministic reports, exit codes", ok,
           std::to_string(corpus_size - round_trip_failures) + "/" + std::to_string(corpus_size) + " round-trips"
               + (deterministic ? ", JSON byte-identical" : ", JSON differs") + detail);
}

} // namespace

int main()
{
    const std::function<void()> criteria[] = {commutator_invariance, algebra_laws, equivalence,  presets,
                                              position_resolution,   coherent_resolution, fock_oracle, heisenberg,
                                              parser_and_cli};
    int id = 0;
    for (const auto& c : criteria) {
        ++id;
        try {
            c();
        } catch (const std::exception& e) {
            std::printf("criterion %d FAIL: unexpected exception: %s\n", id, e.what());
            ++failures;
        }
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
