// Shared test helpers: random generators and brute-force oracles that do not
// go through the library's multinomial expansion.
#ifndef NCSTAR_TESTS_SUPPORT_HPP
#define NCSTAR_TESTS_SUPPORT_HPP

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ncstar/deformation.hpp"
#include "ncstar/polystar.hpp"
#include "ncstar/wavestar.hpp"

namespace ncstar::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

    /// Uniform in the disk |c| <= r.
    cplx in_disk(double r)
    {
        const double rad = r * std::sqrt(uniform(0.0, 1.0));
        const double arg = uniform(0.0, 2.0 * 3.141592653589793);
        return std::polar(rad, arg);
    }

    DeformationParams params(double theta, double phi_magnitude = 1.0)
    {
        return make_params(theta, in_disk(phi_magnitude), in_disk(phi_magnitude), in_disk(phi_magnitude));
    }

    Polynomial2 polynomial(int max_degree, Frame frame = Frame::cartesian, int max_terms = 6)
    {
        Polynomial2 p(frame);
        const int n = integer(1, max_terms);
        for (int t = 0; t < n; ++t) {
            const unsigned total = static_cast<unsigned>(integer(0, max_degree));
            const unsigned first = static_cast<unsigned>(integer(0, static_cast<int>(total)));
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

/// Brute-force star product: sum_k (1/k!) sum over all 4^k index sequences
/// (i1 j1 ... ik jk) of prod C_{i j} (d_{i1..ik} f)(d_{j1..jk} g).
inline Polynomial2 naive_bidifferential(const Polynomial2& f, const Polynomial2& g,
                                        const std::array<std::array<cplx, 2>, 2>& C)
{
    Polynomial2 out(f.frame());
    const int kmax = std::min(f.degree(), g.degree());
    double kfact = 1.0;
    for (int k = 0; k <= std::max(kmax, 0); ++k) {
        if (k > 0)
            kfact *= k;
        const int sequences = 1 << (2 * k);
        for (int code = 0; code < sequences; ++code) {
            cplx weight = 1.0;
            unsigned lf[2] = {0, 0}, rg[2] = {0, 0};
            for (int a = 0; a < k; ++a) {
                const int i = (code >> (2 * a)) & 1;
                const int j = (code >> (2 * a + 1)) & 1;
                weight *= C[i][j];
                ++lf[i];
                ++rg[j];
            }
            if (weight == 0.0)
                continue;
            out += (weight / kfact) * (f.derivative(lf[0], lf[1]) * g.derivative(rg[0], rg[1]));
        }
    }
    return out;
}

inline Polynomial2 naive_star(const Polynomial2& f, const Polynomial2& g, const DeformationParams& params)
{
    std::array<std::array<cplx, 2>, 2> C{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            C[i][j] = 0.5 * I * params.kernel_matrix(i, j);
    return naive_bidifferential(f, g, C);
}

/// Brute-force T map: sum_k (1/k!) ((i/4) Phi_ij d_i d_j)^k f by repeated
/// application of the second-order operator.
inline Polynomial2 naive_tmap(const Polynomial2& f, const DeformationParams& params)
{
    auto apply = [&](const Polynomial2& p) {
        Polynomial2 out(p.frame());
        out += (0.25 * I * params.phi11()) * p.derivative(2, 0);
        out += (0.5 * I * params.phi12()) * p.derivative(1, 1);
        out += (0.25 * I * params.phi22()) * p.derivative(0, 2);
        return out;
    };
    Polynomial2 out = f;
    Polynomial2 power = f;
    for (int k = 1; k <= f.degree() / 2 + 1; ++k) {
        power = (1.0 / k) * apply(power);
        out += power;
    }
    return out;
}

/// Direct substitution into the closed-form coherent resolution kernel as it
/// is printed (prime placement included).
inline cplx coherent_kernel_printed(const DeformationParams& params, cplx p, cplx pp)
{
    const double theta = params.theta();
    const cplx f11 = params.phi11(), f12 = params.phi12(), f22 = params.phi22();
    const cplx pb = std::conj(p), ppb = std::conj(pp);
    const cplx bilinear = (I / 8.0)
                          * ((f11 - f22 + 2.0 * I * f12) * ppb * pb + (f11 + f22 - 2.0 * I * theta) * pb * pp
                             + (f11 + f22 + 2.0 * I * theta) * p * ppb + (f11 - f22 - 2.0 * I * f12) * pp * p);
    return std::exp(-theta / 4.0 * (std::norm(p) + std::norm(pp)) + bilinear);
}

/// Position kernel exponent as printed, including the p-p' cross phases
/// that cancel on the delta support.
inline cplx position_kernel_printed(const DeformationParams& params, std::array<double, 2> p,
                                   std::array<double, 2> q)
{
    const double theta = params.theta();
    const cplx f11 = params.phi11(), f12 = params.phi12(), f22 = params.phi22();
    const cplx first = 0.5 * I
                       * (f11 * p[0] * q[0] + (f12 + theta) * p[0] * q[1] + (f12 - theta) * p[1] * q[0]
                          + f22 * p[1] * q[1]);
    const cplx second = 0.5 * I * theta * (p[0] * p[1] + q[0] * q[1]);
    const cplx third = -I * theta * p[1] * q[0];
    return std::exp(first + second + third);
}

} // namespace ncstar::testing

#endif
