#include "ncstar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "ncstar/fockspace.hpp"
#include "ncstar/polystar.hpp"
#include "ncstar/wavestar.hpp"

namespace ncstar {

Suite parse_suite(std::string_view name)
{
    if (name == "all")
        return Suite::all;
    if (name == "algebra")
        return Suite::algebra;
    if (name == "equivalence")
        return Suite::equivalence;
    if (name == "roi")
        return Suite::roi;
    if (name == "fock")
        return Suite::fock;
    throw ValidationError("unknown suite '" + std::string(name) + "' (expected all, algebra, equivalence, roi, fock)");
}

std::string to_string(Suite s)
{
    switch (s) {
    case Suite::all: return "all";
    case Suite::algebra: return "algebra";
    case Suite::equivalence: return "equivalence";
    case Suite::roi: return "roi";
    case Suite::fock: return "fock";
    }
    return "?";
}

cplx predicted_position_diagonal(const DeformationParams& params, const std::array<double, 2>& p)
{
    const cplx quad = params.phi11() * p[0] * p[0] + 2.0 * params.phi12() * p[0] * p[1] + params.phi22() * p[1] * p[1];
    return std::exp(0.5 * I * quad);
}

cplx predicted_coherent_diagonal(const DeformationParams& params, cplx p)
{
    const double theta = params.theta();
    const cplx f11 = params.phi11(), f12 = params.phi12(), f22 = params.phi22();
    const cplx pb = std::conj(p);
    const cplx bilinear = (I / 8.0)
                          * ((f11 - f22 + 2.0 * I * f12) * pb * pb + (f11 + f22 - 2.0 * I * theta) * pb * p
                             + (f11 + f22 + 2.0 * I * theta) * p * pb + (f11 - f22 - 2.0 * I * f12) * p * p);
    return std::exp(-theta / 2.0 * std::norm(p) + bilinear);
}

namespace {

class Draw {
public:
    Draw(std::uint64_t seed, std::uint64_t stream)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream)};
        engine_.seed(seq);
    }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

    cplx in_disk(double r)
    {
        return std::polar(r * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * std::numbers::pi));
    }

    Polynomial2 polynomial(unsigned max_degree)
    {
        Polynomial2 p;
        const int n = std::uniform_int_distribution<int>(1, 5)(engine_);
        for (int t = 0; t < n; ++t) {
            const unsigned total = std::uniform_int_distribution<unsigned>(0, max_degree)(engine_);
            const unsigned first = std::uniform_int_distribution<unsigned>(0, total)(engine_);
            p.add_term({first, total - first}, in_disk(1.0));
        }
        return p;
    }

    WaveSum wavesum(int terms, double k_max)
    {
        WaveSum w;
        for (int t = 0; t < terms; ++t)
            w.add_term(in_disk(1.0), {uniform(-k_max, k_max), uniform(-k_max, k_max)});
        return w;
    }

private:
    std::mt19937_64 engine_;
};

struct Context {
    std::uint64_t seed;
    int trials;
    const std::optional<DeformationParams>& fixed;
    std::vector<CheckResult>& out;
    std::uint64_t stream = 0;

    DeformationParams params(Draw& d, std::initializer_list<double> thetas = {}) const
    {
        if (fixed)
            return *fixed;
        double theta = d.uniform(0.1, 2.0);
        if (thetas.size() != 0)
            theta = thetas.begin()[static_cast<std::size_t>(d.uniform(0.0, 1.0) * thetas.size()) % thetas.size()];
        return make_params(theta, d.in_disk(1.0), d.in_disk(1.0), d.in_disk(1.0));
    }

    bool theta_ok() const { return !fixed || fixed->theta() > 0.0; }

    // Runs `trial` `n` times with its own random stream and records the worst error.
    void check(const char* suite, const char* name, double tolerance, int n,
               const std::function<double(Draw&)>& trial)
    {
        Draw d(seed, ++stream);
        CheckResult r{suite, name, n, 0.0, tolerance, false};
        bool finite = true;
        for (int k = 0; k < n; ++k) {
            const double e = trial(d);
            if (!std::isfinite(e))
                finite = false;
            else
                r.max_error = std::max(r.max_error, e);
        }
        r.passed = finite && r.max_error <= tolerance;
        if (!finite)
            r.max_error = std::numeric_limits<double>::infinity();
        out.push_back(r);
    }
};

void algebra(Context& c)
{
    const auto x1 = Polynomial2::variable(0), x2 = Polynomial2::variable(1);
    c.check("algebra", "commutator_x1_x2", 1e-12, c.trials, [&](Draw& d) {
        const auto p = c.params(d);
        return star_commutator(x1, x2, p).max_abs_diff(Polynomial2::constant(I * p.theta()));
    });
    c.check("algebra", "associativity", 1e-10, c.trials, [&](Draw& d) {
        const auto p = c.params(d);
        const auto f = d.polynomial(4), g = d.polynomial(4), h = d.polynomial(4);
        return star_poly(star_poly(f, g, p), h, p).max_abs_diff(star_poly(f, star_poly(g, h, p), p));
    });
    c.check("algebra", "antisymmetry", 1e-10, c.trials, [&](Draw& d) {
        const auto p = c.params(d);
        const auto f = d.polynomial(4), g = d.polynomial(4);
        return (star_commutator(f, g, p) + star_commutator(g, f, p)).max_abs_diff(Polynomial2{});
    });
    c.check("algebra", "jacobi", 1e-10, c.trials, [&](Draw& d) {
        const auto p = c.params(d);
        const auto f = d.polynomial(4), g = d.polynomial(4), h = d.polynomial(4);
        auto br = [&](const Polynomial2& a, const Polynomial2& b) { return star_commutator(a, b, p); };
        return (br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g))).max_abs_diff(Polynomial2{});
    });
    c.check("algebra", "leibniz", 1e-10, c.trials, [&](Draw& d) {
        const auto p = c.params(d);
        const auto f = d.polynomial(4), g = d.polynomial(4), h = d.polynomial(4);
        const auto lhs = star_commutator(f, star_poly(g, h, p), p);
        const auto rhs = star_poly(star_commutator(f, g, p), h, p) + star_poly(g, star_commutator(f, h, p), p);
        return lhs.max_abs_diff(rhs);
    });
    c.check("algebra", "xhat_left_multiplication", 1e-12, c.trials, [&](Draw& d) {
        const auto p = c.params(d);
        const auto f = d.polynomial(4);
        return std::max(xhat_apply(1, f, p).max_abs_diff(star_poly(x1, f, p)),
                        xhat_apply(2, f, p).max_abs_diff(star_poly(x2, f, p)));
    });
}

void equivalence(Context& c)
{
    c.check("equivalence", "plane_waves", 1e-12, c.trials, [&](Draw& d) {
        const auto p = c.params(d);
        return equivalence_residual(d.wavesum(2, 1.0), d.wavesum(2, 1.0), p);
    });
    c.check("equivalence", "polynomials", 1e-10, c.trials, [&](Draw& d) {
        const auto p = c.params(d);
        const auto moyal = make_params(p.theta(), 0.0, 0.0, 0.0);
        const auto f = d.polynomial(4), g = d.polynomial(4);
        return tmap_poly(star_poly(f, g, moyal), p).max_abs_diff(star_poly(tmap_poly(f, p), tmap_poly(g, p), p));
    });
}

void roi(Context& c)
{
    c.check("roi", "position_diagonal", 1e-12, c.trials, [&](Draw& d) {
        const auto p = c.params(d);
        const std::array<double, 2> q{d.uniform(-2.0, 2.0), d.uniform(-2.0, 2.0)};
        return std::abs(position_roi_amplitude(p, q, q) - predicted_position_diagonal(p, q));
    });
    if (!c.theta_ok())
        return;
    c.check("roi", "coherent_diagonal", 1e-12, c.trials, [&](Draw& d) {
        const auto p = c.params(d);
        const cplx q = d.in_disk(2.0);
        return std::abs(coherent_roi_amplitude(p, q, q) - predicted_coherent_diagonal(p, q));
    });
}

void fock(Context& c)
{
    if (!c.theta_ok())
        return;
    c.check("fock", "overlap_closed_form", 1e-6, c.trials, [&](Draw& d) {
        const double theta = c.params(d, {1.0, 2.0}).theta();
        const cplx z = d.in_disk(1.0), p = d.in_disk(2.0);
        return overlap_vs_closedform(z, p, theta, 64).abs_error;
    });
    c.check("fock", "heisenberg_algebra", 1e-12, std::min(c.trials, 10), [&](Draw& d) {
        const auto p = c.params(d, {1.0, 2.0});
        const Eigen::Index n = 32;
        const auto ops = quantum_ops(make_params(p.theta(), 0.0, 0.0, 0.0), n);
        FockMatrix m = FockMatrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n - 2; ++i)
            for (Eigen::Index j = 0; j < n - 2; ++j)
                m(i, j) = d.in_disk(1.0);
        const FockOp psi(m);
        const auto zero = FockOp::zero(n);
        auto err = [&](const QuantumOp& a, const QuantumOp& b, const FockOp& expected) {
            return (apply_commutator(a, b, psi) - expected).hs_norm();
        };
        return std::max({err(ops.X1, ops.X2, (I * p.theta()) * psi), err(ops.X1, ops.P1, I * psi),
                         err(ops.X2, ops.P2, I * psi), err(ops.P1, ops.P2, zero), err(ops.X1, ops.P2, zero),
                         err(ops.X2, ops.P1, zero)});
    });
}

} // namespace

std::vector<CheckResult> run_verify(Suite suite, std::uint64_t seed, int trials,
                                    const std::optional<DeformationParams>& params)
{
    if (trials < 1)
        throw ValidationError("trials must be positive");
    std::vector<CheckResult> out;
    Context c{seed, trials, params, out};
    // streams are offset per suite so a suite gives the same numbers alone or within "all"
    const auto run = [&](Suite s, std::uint64_t base, void (*fn)(Context&)) {
        if (suite == Suite::all || suite == s) {
            c.stream = base;
            fn(c);
        }
    };
    run(Suite::algebra, 100, algebra);
    run(Suite::equivalence, 200, equivalence);
    run(Suite::roi, 300, roi);
    run(Suite::fock, 400, fock);
    return out;
}

} // namespace ncstar
