#include "ncstar/deformation.hpp"

#include <cmath>

namespace ncstar {

namespace {

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

void require_finite(cplx v, const char* field)
{
    if (!finite(v))
        throw ValidationError(std::string("non-finite value for '") + field + "'");
}

} // namespace

Preset parse_preset(std::string_view name)
{
    if (name == "moyal")
        return Preset::moyal;
    if (name == "voros")
        return Preset::voros;
    throw ValidationError("unknown preset '" + std::string(name) + "' (expected moyal|voros)");
}

std::string_view to_string(Preset p)
{
    return p == Preset::moyal ? "moyal" : "voros";
}

cplx DeformationParams::phi(int i, int j) const noexcept
{
    if (i == 0 && j == 0)
        return phi11_;
    if (i == 1 && j == 1)
        return phi22_;
    return phi12_;
}

double DeformationParams::big_theta(int i, int j) const noexcept
{
    if (i == 0 && j == 1)
        return theta_;
    if (i == 1 && j == 0)
        return -theta_;
    return 0.0;
}

DeformationParams make_params(double theta, cplx phi11, cplx phi12, cplx phi22)
{
    if (!std::isfinite(theta))
        throw ValidationError("non-finite value for 'theta'");
    require_finite(phi11, "phi11");
    require_finite(phi12, "phi12");
    require_finite(phi22, "phi22");
    return DeformationParams(theta, phi11, phi12, phi22);
}

DeformationParams preset_params(Preset kind, double theta)
{
    if (kind == Preset::moyal)
        return make_params(theta, 0.0, 0.0, 0.0);
    const cplx d = -I * theta;
    return make_params(theta, d, 0.0, d);
}

cplx kernel_phase(const Vec2& p, const Vec2& q, const DeformationParams& params)
{
    cplx sum{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            sum += params.kernel_matrix(i, j) * p[i] * q[j];
    return -0.5 * I * sum;
}

ComplexStarCoefficients complex_coefficients(const DeformationParams& params)
{
    const double theta = params.theta();
    if (theta == 0.0)
        throw SingularParameterError("complex-frame star product needs theta != 0");
    const cplx pre = I / (4.0 * theta);
    const cplx trace = params.phi11() + params.phi22();
    const cplx diff = params.phi11() - params.phi22();
    const cplx off = 2.0 * I * params.phi12();
    const cplx rot = 2.0 * I * theta;
    return {pre * (diff + off), pre * (trace - rot), pre * (trace + rot), pre * (diff - off)};
}

DeformationParams reconstruct_params(const ComplexStarCoefficients& c, double theta)
{
    if (theta == 0.0)
        throw SingularParameterError("cannot reconstruct parameters at theta = 0");
    if (std::abs(c.c_zzbar - c.c_zbarz - 1.0) > 1e-9)
        throw ValidationError("coefficients violate c_zzbar - c_zbarz = 1");
    // Multiply through by 4 theta / i to recover the bracketed combinations.
    const cplx scale = 4.0 * theta / I;
    const cplx plus_off = scale * c.c_zz;          // phi11 - phi22 + 2i phi12
    const cplx minus_off = scale * c.c_zbarzbar;   // phi11 - phi22 - 2i phi12
    const cplx trace = 0.5 * scale * (c.c_zzbar + c.c_zbarz);
    const cplx diff = 0.5 * (plus_off + minus_off);
    const cplx phi12 = (plus_off - minus_off) / (4.0 * I);
    return make_params(theta, 0.5 * (trace + diff), phi12, 0.5 * (trace - diff));
}

} // namespace ncstar
