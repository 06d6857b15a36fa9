#include "ncstar/wavestar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ncstar {

namespace {

constexpr double pi = std::numbers::pi;

bool same_wavevector(const Vec2& a, const Vec2& b)
{
    const double scale = 1.0 + std::max(std::abs(a[0]) + std::abs(a[1]), std::abs(b[0]) + std::abs(b[1]));
    return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) <= 1e-12 * scale;
}

Vec2 add(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }

} // namespace

cplx star_exponent(const Vec2& k, const Vec2& q, Frame frame, const DeformationParams& params)
{
    if (frame == Frame::cartesian)
        return kernel_phase(k, q, params);
    const auto c = complex_coefficients(params);
    return c.c_zz * k[0] * q[0] + c.c_zzbar * k[0] * q[1] + c.c_zbarz * k[1] * q[0] + c.c_zbarzbar * k[1] * q[1];
}

WaveSum WaveSum::single(cplx amplitude, Vec2 wavevector, Frame frame)
{
    WaveSum s(frame);
    s.add_term(amplitude, wavevector);
    return s;
}

void WaveSum::add_term(cplx amplitude, const Vec2& wavevector)
{
    for (auto& k : wavevector)
        if (!std::isfinite(k.real()) || !std::isfinite(k.imag()))
            throw ValidationError("non-finite wavevector component");
    if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag()))
        throw ValidationError("non-finite amplitude");

    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const ExpLinearTerm& t) { return same_wavevector(t.wavevector, wavevector); });
    if (it == terms_.end()) {
        if (amplitude != 0.0)
            terms_.push_back({amplitude, wavevector});
        return;
    }
    it->amplitude += amplitude;
    if (it->amplitude == 0.0)
        terms_.erase(it);
}

cplx WaveSum::evaluate(cplx v0, cplx v1) const
{
    cplx sum{};
    for (const auto& t : terms_) {
        const cplx lin = t.wavevector[0] * v0 + t.wavevector[1] * v1;
        sum += t.amplitude * std::exp(frame_ == Frame::cartesian ? I * lin : lin);
    }
    return sum;
}

Polynomial2 WaveSum::taylor(unsigned max_degree) const
{
    Polynomial2 out(frame_);
    for (const auto& t : terms_) {
        // exp(c0 v0 + c1 v1) = sum_{n,m} c0^n c1^m v0^n v1^m / (n! m!)
        const cplx c0 = frame_ == Frame::cartesian ? I * t.wavevector[0] : t.wavevector[0];
        const cplx c1 = frame_ == Frame::cartesian ? I * t.wavevector[1] : t.wavevector[1];
        cplx pow0{1.0, 0.0};
        double fact0 = 1.0;
        for (unsigned n = 0; n <= max_degree; ++n) {
            cplx pow1{1.0, 0.0};
            double fact1 = 1.0;
            for (unsigned m = 0; n + m <= max_degree; ++m) {
                out.add_term({n, m}, t.amplitude * pow0 * pow1 / (fact0 * fact1));
                pow1 *= c1;
                fact1 *= static_cast<double>(m + 1);
            }
            pow0 *= c0;
            fact0 *= static_cast<double>(n + 1);
        }
    }
    return out;
}

cplx WaveSum::amplitude_at(const Vec2& wavevector) const
{
    for (const auto& t : terms_)
        if (same_wavevector(t.wavevector, wavevector))
            return t.amplitude;
    return {};
}

WaveSum& WaveSum::operator+=(const WaveSum& rhs)
{
    require_same_frame(frame_, rhs.frame_);
    for (const auto& t : rhs.terms_)
        add_term(t.amplitude, t.wavevector);
    return *this;
}

WaveSum& WaveSum::operator*=(cplx s)
{
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_)
        t.amplitude *= s;
    return *this;
}

WaveSum operator*(const WaveSum& a, const WaveSum& b)
{
    require_same_frame(a.frame_, b.frame_);
    WaveSum out(a.frame_);
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_)
            out.add_term(ta.amplitude * tb.amplitude, add(ta.wavevector, tb.wavevector));
    return out;
}

WaveSum star_wave(const WaveSum& f, const WaveSum& g, const DeformationParams& params)
{
    require_same_frame(f.frame(), g.frame());
    if (f.frame() == Frame::complex && params.theta() == 0.0)
        throw SingularParameterError("complex-frame star product needs theta != 0");
    WaveSum out(f.frame());
    for (const auto& tf : f.terms())
        for (const auto& tg : g.terms()) {
            const cplx e = star_exponent(tf.wavevector, tg.wavevector, f.frame(), params);
            out.add_term(tf.amplitude * tg.amplitude * std::exp(e), add(tf.wavevector, tg.wavevector));
        }
    return out;
}

WaveSum tmap_wave(const WaveSum& f, const DeformationParams& params)
{
    require_same_frame(f.frame(), Frame::cartesian);
    WaveSum out(Frame::cartesian);
    for (const auto& t : f.terms()) {
        cplx quad{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                quad += params.phi(i, j) * t.wavevector[i] * t.wavevector[j];
        out.add_term(t.amplitude * std::exp(-0.25 * I * quad), t.wavevector);
    }
    return out;
}

double equivalence_residual(const WaveSum& f, const WaveSum& g, const DeformationParams& params)
{
    require_same_frame(f.frame(), Frame::cartesian);
    require_same_frame(g.frame(), Frame::cartesian);
    const auto moyal = make_params(params.theta(), 0.0, 0.0, 0.0);
    const WaveSum lhs = tmap_wave(star_wave(f, g, moyal), params);
    const WaveSum rhs = star_wave(tmap_wave(f, params), tmap_wave(g, params), params);

    double worst = 0.0;
    for (const auto& t : lhs.terms())
        worst = std::max(worst, std::abs(t.amplitude - rhs.amplitude_at(t.wavevector)));
    for (const auto& t : rhs.terms())
        worst = std::max(worst, std::abs(t.amplitude - lhs.amplitude_at(t.wavevector)));
    return worst;
}

PlaneIntegral integrate_plane(const ExpLinearTerm& term, Frame frame)
{
    constexpr double tol = 1e-12;
    Vec2 k;
    cplx weight = term.amplitude * (2.0 * pi) * (2.0 * pi);
    if (frame == Frame::cartesian) {
        k = term.wavevector;
    } else {
        // z = u + i v: a z + b zbar = (a + b) u + i (a - b) v = i (k_u u + k_v v)
        const cplx a = term.wavevector[0], b = term.wavevector[1];
        k = {-I * (a + b), a - b};
        weight /= pi;
    }
    const double scale = 1.0 + std::abs(k[0]) + std::abs(k[1]);
    if (std::abs(k[0].imag()) > tol * scale || std::abs(k[1].imag()) > tol * scale)
        throw DivergentIntegralError("plane integral of a growing/decaying exponential diverges");
    return {weight, {k[0].real(), k[1].real()}};
}

KernelAmplitude::KernelAmplitude(const Matrix4& quad, cplx constant, bool diagonal_only)
    : quad_(quad), constant_(constant), diagonal_only_(diagonal_only)
{
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (std::abs(quad_[i][j] - quad_[j][i]) > 1e-12 * (1.0 + std::abs(quad_[i][j])))
                throw ValidationError("kernel quadratic form must be symmetric");
}

cplx KernelAmplitude::exponent(const std::array<double, 4>& w) const
{
    cplx sum = constant_;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            sum += quad_[i][j] * w[i] * w[j];
    return sum;
}

cplx KernelAmplitude::evaluate(const std::array<double, 2>& p, const std::array<double, 2>& pprime) const
{
    return std::exp(exponent({p[0], p[1], pprime[0], pprime[1]}));
}

KernelAmplitude KernelAmplitude::on_support() const
{
    Matrix4 q{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            q[i][j] = quad_[i][j] + quad_[i][j + 2] + quad_[i + 2][j] + quad_[i + 2][j + 2];
    return KernelAmplitude(q, constant_, true);
}

namespace {

// |det| of the real 2x2 map from (p - p') to the oscillation wavevector,
// which converts delta^2(k) into delta^2(p - p').
template <class WavevectorOf>
double delta_jacobian(WavevectorOf&& wavevector_of)
{
    const auto origin = wavevector_of(0.0, 0.0);
    const auto e1 = wavevector_of(1.0, 0.0);
    const auto e2 = wavevector_of(0.0, 1.0);
    const double j11 = e1[0] - origin[0], j21 = e1[1] - origin[1];
    const double j12 = e2[0] - origin[0], j22 = e2[1] - origin[1];
    const double det = std::abs(j11 * j22 - j12 * j21);
    if (det == 0.0)
        throw SingularParameterError("degenerate momentum-to-wavevector map");
    return det;
}

} // namespace

KernelAmplitude position_roi_kernel(const DeformationParams& params)
{
    // (p|x) = e^{-ip.x}/2pi and (x|p') = e^{ip'.x}/2pi as plane waves in x.
    auto bra = [](double p1, double p2) { return Vec2{-p1, -p2}; };
    auto ket = [](double p1, double p2) { return Vec2{p1, p2}; };

    auto integrated = [&](double p1, double p2) {
        // wavevector of (p|x)*(x|0) as a function of p - p' = p
        const auto pw = integrate_plane({1.0, add(bra(p1, p2), ket(0.0, 0.0))}, Frame::cartesian);
        return pw.wavevector;
    };
    const double jacobian = delta_jacobian(integrated);
    const double prefactor = 1.0 / (2.0 * pi);

    auto exponent = [&](const std::array<double, 4>& w) {
        const Vec2 kb = bra(w[0], w[1]);
        const Vec2 kk = ket(w[2], w[3]);
        const auto plane = integrate_plane({1.0, add(kb, kk)}, Frame::cartesian);
        // prefactor^2 exp(E) weight / jacobian, kept in log form
        return std::log(prefactor * prefactor * plane.weight.real() / jacobian)
               + star_exponent(kb, kk, Frame::cartesian, params);
    };
    return KernelAmplitude::from_exponent(exponent, true);
}

cplx position_roi_amplitude(const DeformationParams& params, const std::array<double, 2>& p,
                            const std::array<double, 2>& pprime)
{
    return position_roi_kernel(params).evaluate(p, pprime);
}

cplx coherent_momentum_overlap(cplx z, cplx p, double theta)
{
    if (!(theta > 0.0))
        throw SingularParameterError("coherent/momentum overlap needs theta > 0");
    const double gauss = -theta * std::norm(p) / 4.0;
    const cplx phase = I * std::sqrt(theta / 2.0) * (p * std::conj(z) + std::conj(p) * z);
    return std::sqrt(theta / (2.0 * pi)) * std::exp(gauss + phase);
}

cplx overlap_px(const std::array<double, 2>& p, const std::array<double, 2>& x)
{
    return std::exp(-I * (p[0] * x[0] + p[1] * x[1])) / (2.0 * pi);
}

WaveSum coherent_momentum_wave(cplx p, double theta)
{
    if (!(theta > 0.0))
        throw SingularParameterError("coherent/momentum overlap needs theta > 0");
    const double s = std::sqrt(theta / 2.0);
    const cplx amp = std::sqrt(theta / (2.0 * pi)) * std::exp(-theta * std::norm(p) / 4.0);
    // e^{i s (pbar z + p zbar)}
    return WaveSum::single(amp, {I * s * std::conj(p), I * s * p}, Frame::complex);
}

KernelAmplitude coherent_roi_kernel(const DeformationParams& params)
{
    const double theta = params.theta();
    if (!(theta > 0.0))
        throw SingularParameterError("coherent resolution of identity needs theta > 0");
    const double s = std::sqrt(theta / 2.0);

    // (p'|z,zbar) = conj((z,zbar|p')) -> wavevector (-i s pbar', -i s p')
    auto bra = [&](cplx pp) { return Vec2{-I * s * std::conj(pp), -I * s * pp}; };
    auto ket = [&](cplx p) { return Vec2{I * s * std::conj(p), I * s * p}; };
    auto log_amp = [&](cplx p) { return std::log(std::sqrt(theta / (2.0 * pi))) - theta * std::norm(p) / 4.0; };

    // integrand wavevector as a function of p - p' (take p' = 0)
    const double jacobian = delta_jacobian([&](double d1, double d2) {
        return integrate_plane({1.0, add(bra(0.0), ket({d1, d2}))}, Frame::complex).wavevector;
    });

    // w = (p1, p2, p1', p2') with p = p1 + i p2
    auto exponent = [&](const std::array<double, 4>& w) {
        const cplx p{w[0], w[1]}, pp{w[2], w[3]};
        const Vec2 kb = bra(pp), kk = ket(p);
        const auto plane = integrate_plane({1.0, add(kb, kk)}, Frame::complex);
        return log_amp(p) + log_amp(pp) + std::log(plane.weight.real() / jacobian)
               + star_exponent(kb, kk, Frame::complex, params);
    };
    return KernelAmplitude::from_exponent(exponent, true);
}

cplx coherent_roi_amplitude(const DeformationParams& params, cplx p, cplx pprime)
{
    return coherent_roi_kernel(params).evaluate({p.real(), p.imag()}, {pprime.real(), pprime.imag()});
}

} // namespace ncstar
