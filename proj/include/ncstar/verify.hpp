#ifndef NCSTAR_VERIFY_HPP
#define NCSTAR_VERIFY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncstar/deformation.hpp"

namespace ncstar {

enum class Suite { all, algebra, equivalence, roi, fock };

Suite parse_suite(std::string_view name);
std::string to_string(Suite s);

struct CheckResult {
    std::string suite;
    std::string name;
    int trials = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Closed-form diagonal amplitudes written out directly from the formulas,
/// independent of the kernel builders: exp((i/2) Phi_ij p_i p_j) for position
/// states, and the Gaussian prefactor times the bilinear at p = p' for
/// coherent states.
cplx predicted_position_diagonal(const DeformationParams& params, const std::array<double, 2>& p);
cplx predicted_coherent_diagonal(const DeformationParams& params, cplx p);

/// Randomized identity checks. With `params` unset every trial draws its own
/// theta in [0.1, 2] and complex Phi entries with modulus <= 1; otherwise all
/// trials use the given parameters. Checks that need theta > 0 are left out
/// when fixed parameters have theta <= 0.
std::vector<CheckResult> run_verify(Suite suite, std::uint64_t seed, int trials,
                                    const std::optional<DeformationParams>& params = std::nullopt);

} // namespace ncstar

#endif
