#ifndef NCSTAR_DEFORMATION_HPP
#define NCSTAR_DEFORMATION_HPP

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ncstar {

using cplx = std::complex<double>;

/// Complex spatial 2-vector (wavevectors, momenta).
using Vec2 = std::array<cplx, 2>;

inline constexpr cplx I{0.0, 1.0};

/// Raised on non-finite inputs or malformed parameter bundles.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an operation needs theta != 0 (or > 0) and does not get it.
class SingularParameterError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class Preset { moyal, voros };

Preset parse_preset(std::string_view name);
std::string_view to_string(Preset p);

/// Noncommutativity scale theta and the spatial block of the symmetric
/// matrix Phi. Only the upper triangle of Phi is stored.
class DeformationParams {
public:
    DeformationParams() = default;

    double theta() const noexcept { return theta_; }
    cplx phi11() const noexcept { return phi11_; }
    cplx phi12() const noexcept { return phi12_; }
    cplx phi22() const noexcept { return phi22_; }

    /// Phi_{ij}, i, j in {0, 1} (zero-based spatial indices).
    cplx phi(int i, int j) const noexcept;
    /// Theta_{ij}: Theta_{01} = theta = -Theta_{10}.
    double big_theta(int i, int j) const noexcept;
    /// (Phi + Theta)_{ij}
    cplx kernel_matrix(int i, int j) const noexcept { return phi(i, j) + big_theta(i, j); }

    bool is_moyal() const noexcept { return phi11_ == 0.0 && phi12_ == 0.0 && phi22_ == 0.0; }

    friend bool operator==(const DeformationParams&, const DeformationParams&) = default;

    friend DeformationParams make_params(double theta, cplx phi11, cplx phi12, cplx phi22);

private:
    DeformationParams(double theta, cplx phi11, cplx phi12, cplx phi22)
        : theta_(theta), phi11_(phi11), phi12_(phi12), phi22_(phi22) {}

    double theta_ = 0.0;
    cplx phi11_{};
    cplx phi12_{};
    cplx phi22_{};
};

/// Validates and packages (theta, phi11, phi12, phi22). Throws ValidationError
/// naming the first non-finite field.
DeformationParams make_params(double theta, cplx phi11, cplx phi12, cplx phi22);

/// moyal: Phi = 0. voros: Phi = -i theta * Id.
DeformationParams preset_params(Preset kind, double theta);

/// Exponent of the two-plane-wave star kernel,
/// -(i/2) (Phi + Theta)_{ij} p_i q_j, so that
/// e^{ip.x} * e^{iq.x} = exp(kernel_phase(p, q)) e^{i(p+q).x}.
cplx kernel_phase(const Vec2& p, const Vec2& q, const DeformationParams& params);

/// Coefficients of the bidifferential exponent in complex coordinates
/// z = (x1 + i x2)/sqrt(2 theta):
///   c_zz <-d_z d_z-> + c_zzbar <-d_z d_zbar-> + c_zbarz <-d_zbar d_z-> + c_zbarzbar <-d_zbar d_zbar->
struct ComplexStarCoefficients {
    cplx c_zz;
    cplx c_zzbar;
    cplx c_zbarz;
    cplx c_zbarzbar;
};

/// Throws SingularParameterError for theta == 0.
ComplexStarCoefficients complex_coefficients(const DeformationParams& params);

/// Inverse of complex_coefficients at known theta. The coefficients are
/// scale invariant in (theta, Phi), so theta must be supplied. Throws
/// ValidationError if the coefficients are not of the form produced by
/// complex_coefficients (c_zzbar - c_zbarz must equal 1).
DeformationParams reconstruct_params(const ComplexStarCoefficients& c, double theta);

} // namespace ncstar

#endif
