#ifndef NCSTAR_WAVESTAR_HPP
#define NCSTAR_WAVESTAR_HPP

#include <array>
#include <stdexcept>
#include <vector>

#include "ncstar/deformation.hpp"
#include "ncstar/polystar.hpp"

namespace ncstar {

/// Raised when a plane integral would diverge (wavevector with a nonzero
/// imaginary part in the integration variables).
class DivergentIntegralError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// amplitude * exp(i (k1 x1 + k2 x2))   (Cartesian frame)
/// amplitude * exp(a z + b zbar)        (complex frame, wavevector = (a, b))
struct ExpLinearTerm {
    cplx amplitude;
    Vec2 wavevector;
};

/// Finite sum of exponential-linear terms sharing one frame. Terms with
/// equal wavevectors are merged and zero amplitudes dropped.
class WaveSum {
public:
    explicit WaveSum(Frame frame = Frame::cartesian) : frame_(frame) {}

    static WaveSum single(cplx amplitude, Vec2 wavevector, Frame frame = Frame::cartesian);

    Frame frame() const noexcept { return frame_; }
    const std::vector<ExpLinearTerm>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    void add_term(cplx amplitude, const Vec2& wavevector);

    /// Value at a point: (x1, x2) for Cartesian, (z, zbar) for complex.
    cplx evaluate(cplx v0, cplx v1) const;

    /// Taylor expansion to the given total degree, as a polynomial in the
    /// same frame.
    Polynomial2 taylor(unsigned max_degree) const;

    /// Amplitude of the term with this wavevector (0 if absent).
    cplx amplitude_at(const Vec2& wavevector) const;

    WaveSum& operator+=(const WaveSum& rhs);
    WaveSum& operator*=(cplx s);

    friend WaveSum operator+(WaveSum a, const WaveSum& b) { return a += b; }
    friend WaveSum operator*(WaveSum a, cplx s) { return a *= s; }
    friend WaveSum operator*(cplx s, WaveSum a) { return a *= s; }
    /// Pointwise product: amplitudes multiply, wavevectors add.
    friend WaveSum operator*(const WaveSum& a, const WaveSum& b);

private:
    Frame frame_;
    std::vector<ExpLinearTerm> terms_;
};

/// Exponent E with (e^{k} * e^{q}) = exp(E) e^{k + q} for two exp-linear
/// factors in the given frame.
cplx star_exponent(const Vec2& k, const Vec2& q, Frame frame, const DeformationParams& params);

/// Termwise star product: amplitudes times exp(star_exponent), wavevectors
/// add. Cartesian exponent is kernel_phase; complex frame is
/// c_zz a1 a2 + c_zzbar a1 b2 + c_zbarz b1 a2 + c_zbarzbar b1 b2.
WaveSum star_wave(const WaveSum& f, const WaveSum& g, const DeformationParams& params);

/// T in momentum space: each amplitude times exp(-(i/4) Phi_ij k_i k_j).
WaveSum tmap_wave(const WaveSum& f, const DeformationParams& params);

/// max |T(f *_M g) - T(f) * T(g)| over matched wavevectors.
double equivalence_residual(const WaveSum& f, const WaveSum& g, const DeformationParams& params);

/// Result of integrating a single exp-linear term over the plane:
/// integral = weight * delta^2(k), with k the real oscillation wavevector.
struct PlaneIntegral {
    cplx weight;
    std::array<double, 2> wavevector;
};

/// Cartesian: int d^2x A e^{ik.x} = A (2 pi)^2 delta^2(k).
/// Complex: (1/pi) int d(Re z) d(Im z) A e^{a z + b zbar}
///          = A (2 pi)^2 / pi * delta^2(-i(a + b), a - b).
/// Throws DivergentIntegralError if the oscillation wavevector is not real.
PlaneIntegral integrate_plane(const ExpLinearTerm& term, Frame frame);

/// exp(w^T Q w + constant) with w = (p1, p2, p1', p2'), multiplying
/// delta^2(p - p'). Values off p = p' are reported but only the diagonal is
/// meaningful (diagonal_only).
class KernelAmplitude {
public:
    using Matrix4 = std::array<std::array<cplx, 4>, 4>;

    KernelAmplitude(const Matrix4& quad, cplx constant, bool diagonal_only);

    /// Recovers the quadratic form by polarization from an exponent function
    /// that is quadratic in w with no linear part.
    template <class ExponentFn>
    static KernelAmplitude from_exponent(ExponentFn&& exponent, bool diagonal_only);

    const Matrix4& quad() const noexcept { return quad_; }
    cplx constant() const noexcept { return constant_; }
    bool diagonal_only() const noexcept { return diagonal_only_; }

    cplx exponent(const std::array<double, 4>& w) const;
    cplx evaluate(const std::array<double, 2>& p, const std::array<double, 2>& pprime) const;
    cplx diagonal(const std::array<double, 2>& p) const { return evaluate(p, p); }

    /// Substitutes p' = p: the combined quadratic form lives in the (p, p)
    /// block, the p' rows and columns are zero.
    KernelAmplitude on_support() const;

private:
    Matrix4 quad_{};
    cplx constant_{};
    bool diagonal_only_ = true;
};

/// Kernel of (p| (int d^2x |x) * (x|) |p'), built from the star kernel
/// between the plane waves (p|x), (x|p') and a plane integral.
KernelAmplitude position_roi_kernel(const DeformationParams& params);
cplx position_roi_amplitude(const DeformationParams& params, const std::array<double, 2>& p,
                            const std::array<double, 2>& pprime);

/// Kernel of int (dz dzbar / pi) (p'|z,zbar) * (z,zbar|p), built from the
/// complex-frame star kernel between the two overlaps and a plane integral.
/// theta > 0.
KernelAmplitude coherent_roi_kernel(const DeformationParams& params);
cplx coherent_roi_amplitude(const DeformationParams& params, cplx p, cplx pprime);

/// (z,zbar|p) = sqrt(theta/2pi) e^{-theta|p|^2/4} e^{i sqrt(theta/2)(p zbar + pbar z)}
cplx coherent_momentum_overlap(cplx z, cplx p, double theta);

/// (p|x) = e^{-i p.x} / 2pi
cplx overlap_px(const std::array<double, 2>& p, const std::array<double, 2>& x);

/// The complex-frame exponential (z,zbar|p) as a single-term WaveSum.
WaveSum coherent_momentum_wave(cplx p, double theta);

// ---------------------------------------------------------------------------

template <class ExponentFn>
KernelAmplitude KernelAmplitude::from_exponent(ExponentFn&& exponent, bool diagonal_only)
{
    auto unit = [](int i, int j) {
        std::array<double, 4> w{};
        w[i] += 1.0;
        w[j] += 1.0;
        return w;
    };
    const cplx constant = exponent(std::array<double, 4>{});
    std::array<cplx, 4> single{};
    for (int i = 0; i < 4; ++i) {
        std::array<double, 4> w{};
        w[i] = 1.0;
        single[i] = exponent(w) - constant;
    }
    Matrix4 Q{};
    for (int i = 0; i < 4; ++i) {
        Q[i][i] = single[i];
        for (int j = i + 1; j < 4; ++j) {
            Q[i][j] = 0.5 * (exponent(unit(i, j)) - constant - single[i] - single[j]);
            Q[j][i] = Q[i][j];
        }
    }
    return KernelAmplitude(Q, constant, diagonal_only);
}

} // namespace ncstar

#endif
