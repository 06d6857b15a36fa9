#ifndef NCSTAR_POLYSTAR_HPP
#define NCSTAR_POLYSTAR_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "ncstar/deformation.hpp"

namespace ncstar {

/// Coordinate frame of a function: (x1, x2) or (z, zbar).
enum class Frame { cartesian, complex };

std::string_view to_string(Frame f);

class FrameMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exponent pair (n1, n2): x1^n1 x2^n2 or z^n1 zbar^n2.
using Monomial = std::pair<unsigned, unsigned>;

/// Sparse polynomial in two variables with complex coefficients.
///
/// Coefficients with magnitude below prune_threshold are dropped after every
/// operation, so two polynomials compare equal iff their canonical maps do.
class Polynomial2 {
public:
    static constexpr double prune_threshold = 1e-14;

    explicit Polynomial2(Frame frame = Frame::cartesian) : frame_(frame) {}

    static Polynomial2 constant(cplx c, Frame frame = Frame::cartesian);
    /// Single variable: index 0 is x1 (or z), index 1 is x2 (or zbar).
    static Polynomial2 variable(int index, Frame frame = Frame::cartesian);
    static Polynomial2 monomial(Monomial m, cplx c, Frame frame = Frame::cartesian);

    Frame frame() const noexcept { return frame_; }
    const std::map<Monomial, cplx>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Total degree; -1 for the zero polynomial.
    int degree() const noexcept;
    /// Degree in a single variable.
    int degree_in(int index) const noexcept;
    cplx coefficient(Monomial m) const;

    /// Adds c to the coefficient of m, pruning if it cancels.
    void add_term(Monomial m, cplx c);

    /// Partial derivative of given order in each variable.
    Polynomial2 derivative(unsigned order0, unsigned order1) const;

    /// Keeps terms of total degree <= max_degree.
    Polynomial2 truncated(unsigned max_degree) const;

    cplx evaluate(cplx v0, cplx v1) const;

    /// Re-expresses a Cartesian polynomial in z = (x1 + i x2)/sqrt(2 theta),
    /// zbar = (x1 - i x2)/sqrt(2 theta). Requires theta > 0.
    Polynomial2 to_complex_frame(double theta) const;
    /// Inverse of to_complex_frame.
    Polynomial2 to_cartesian_frame(double theta) const;

    /// Largest coefficient magnitude of (*this - other).
    double max_abs_diff(const Polynomial2& other) const;

    Polynomial2& operator+=(const Polynomial2& rhs);
    Polynomial2& operator-=(const Polynomial2& rhs);
    Polynomial2& operator*=(cplx s);

    friend Polynomial2 operator+(Polynomial2 a, const Polynomial2& b) { return a += b; }
    friend Polynomial2 operator-(Polynomial2 a, const Polynomial2& b) { return a -= b; }
    friend Polynomial2 operator-(Polynomial2 a) { return a *= -1.0; }
    friend Polynomial2 operator*(Polynomial2 a, cplx s) { return a *= s; }
    friend Polynomial2 operator*(cplx s, Polynomial2 a) { return a *= s; }
    /// Pointwise (commutative) product.
    friend Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b);

    friend bool operator==(const Polynomial2&, const Polynomial2&) = default;

private:
    void prune();

    Frame frame_;
    std::map<Monomial, cplx> terms_;
};

void require_same_frame(Frame a, Frame b);

/// f * g with the exponential bidifferential kernel. The series terminates
/// at order min(deg f, deg g). Cartesian operands use (i/2)(Phi + Theta);
/// complex-frame operands use complex_coefficients (theta != 0).
Polynomial2 star_poly(const Polynomial2& f, const Polynomial2& g, const DeformationParams& params);

/// f * g - g * f
Polynomial2 star_commutator(const Polynomial2& f, const Polynomial2& g, const DeformationParams& params);

/// exp((i/4) Phi_{ij} d_i d_j) f, Cartesian frame only.
Polynomial2 tmap_poly(const Polynomial2& f, const DeformationParams& params);

/// x_mu f + (i/2)(Theta + Phi)_{mu a} d_a f for mu in {1, 2}.
Polynomial2 xhat_apply(int mu, const Polynomial2& f, const DeformationParams& params);

} // namespace ncstar

#endif
