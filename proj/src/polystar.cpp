#include "ncstar/polystar.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace ncstar {

std::string_view to_string(Frame f)
{
    return f == Frame::cartesian ? "cartesian" : "complex";
}

void require_same_frame(Frame a, Frame b)
{
    if (a != b)
        throw FrameMismatchError(std::string("frame mismatch: ") + std::string(to_string(a)) + " vs "
                                 + std::string(to_string(b)));
}

Polynomial2 Polynomial2::constant(cplx c, Frame frame)
{
    return monomial({0, 0}, c, frame);
}

Polynomial2 Polynomial2::variable(int index, Frame frame)
{
    return monomial(index == 0 ? Monomial{1, 0} : Monomial{0, 1}, 1.0, frame);
}

Polynomial2 Polynomial2::monomial(Monomial m, cplx c, Frame frame)
{
    Polynomial2 p(frame);
    p.add_term(m, c);
    return p;
}

int Polynomial2::degree() const noexcept
{
    int d = -1;
    for (const auto& [m, c] : terms_)
        d = std::max(d, static_cast<int>(m.first + m.second));
    return d;
}

int Polynomial2::degree_in(int index) const noexcept
{
    int d = -1;
    for (const auto& [m, c] : terms_)
        d = std::max(d, static_cast<int>(index == 0 ? m.first : m.second));
    return d;
}

cplx Polynomial2::coefficient(Monomial m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? cplx{} : it->second;
}

void Polynomial2::add_term(Monomial m, cplx c)
{
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted)
        it->second += c;
    if (std::abs(it->second) < prune_threshold)
        terms_.erase(it);
}

void Polynomial2::prune()
{
    std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < prune_threshold; });
}

namespace {

// n (n-1) ... (n-k+1)
double falling(unsigned n, unsigned k)
{
    double r = 1.0;
    for (unsigned j = 0; j < k; ++j)
        r *= static_cast<double>(n - j);
    return r;
}

// Repeated multiplication; std::pow(complex, int) goes through log and
// returns NaN for 0^0.
cplx ipow(cplx base, int n)
{
    cplx r{1.0, 0.0};
    for (int k = 0; k < n; ++k)
        r *= base;
    return r;
}

double factorial(unsigned n)
{
    return std::tgamma(static_cast<double>(n) + 1.0);
}

} // namespace

Polynomial2 Polynomial2::derivative(unsigned order0, unsigned order1) const
{
    Polynomial2 out(frame_);
    for (const auto& [m, c] : terms_) {
        if (m.first < order0 || m.second < order1)
            continue;
        out.add_term({m.first - order0, m.second - order1}, c * falling(m.first, order0) * falling(m.second, order1));
    }
    return out;
}

Polynomial2 Polynomial2::truncated(unsigned max_degree) const
{
    Polynomial2 out(frame_);
    for (const auto& [m, c] : terms_)
        if (m.first + m.second <= max_degree)
            out.terms_.emplace(m, c);
    return out;
}

cplx Polynomial2::evaluate(cplx v0, cplx v1) const
{
    cplx sum{};
    for (const auto& [m, c] : terms_)
        sum += c * ipow(v0, static_cast<int>(m.first)) * ipow(v1, static_cast<int>(m.second));
    return sum;
}

namespace {

// Substitutes var0 -> s0, var1 -> s1 (both given in the target frame).
Polynomial2 compose(const Polynomial2& p, const Polynomial2& s0, const Polynomial2& s1)
{
    const int d0 = std::max(p.degree_in(0), 0);
    const int d1 = std::max(p.degree_in(1), 0);
    std::vector<Polynomial2> pow0{Polynomial2::constant(1.0, s0.frame())};
    std::vector<Polynomial2> pow1{Polynomial2::constant(1.0, s0.frame())};
    for (int k = 1; k <= d0; ++k)
        pow0.push_back(pow0.back() * s0);
    for (int k = 1; k <= d1; ++k)
        pow1.push_back(pow1.back() * s1);

    Polynomial2 out(s0.frame());
    for (const auto& [m, c] : p.terms())
        out += c * (pow0[m.first] * pow1[m.second]);
    return out;
}

void require_positive_theta(double theta)
{
    if (!(theta > 0.0))
        throw SingularParameterError("frame conversion needs theta > 0");
}

} // namespace

Polynomial2 Polynomial2::to_complex_frame(double theta) const
{
    require_same_frame(frame_, Frame::cartesian);
    require_positive_theta(theta);
    // x1 = sqrt(theta/2)(z + zbar), x2 = -i sqrt(theta/2)(z - zbar)
    const double s = std::sqrt(theta / 2.0);
    const auto z = variable(0, Frame::complex);
    const auto zb = variable(1, Frame::complex);
    return compose(*this, s * (z + zb), (-I * s) * (z - zb));
}

Polynomial2 Polynomial2::to_cartesian_frame(double theta) const
{
    require_same_frame(frame_, Frame::complex);
    require_positive_theta(theta);
    const double s = 1.0 / std::sqrt(2.0 * theta);
    const auto x1 = variable(0, Frame::cartesian);
    const auto x2 = variable(1, Frame::cartesian);
    return compose(*this, s * (x1 + I * x2), s * (x1 - I * x2));
}

double Polynomial2::max_abs_diff(const Polynomial2& other) const
{
    require_same_frame(frame_, other.frame_);
    double worst = 0.0;
    for (const auto& [m, c] : terms_)
        worst = std::max(worst, std::abs(c - other.coefficient(m)));
    for (const auto& [m, c] : other.terms_)
        if (!terms_.contains(m))
            worst = std::max(worst, std::abs(c));
    return worst;
}

Polynomial2& Polynomial2::operator+=(const Polynomial2& rhs)
{
    require_same_frame(frame_, rhs.frame_);
    for (const auto& [m, c] : rhs.terms_)
        add_term(m, c);
    return *this;
}

Polynomial2& Polynomial2::operator-=(const Polynomial2& rhs)
{
    require_same_frame(frame_, rhs.frame_);
    for (const auto& [m, c] : rhs.terms_)
        add_term(m, -c);
    return *this;
}

Polynomial2& Polynomial2::operator*=(cplx s)
{
    for (auto& [m, c] : terms_)
        c *= s;
    prune();
    return *this;
}

Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b)
{
    require_same_frame(a.frame_, b.frame_);
    Polynomial2 out(a.frame_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            out.add_term({ma.first + mb.first, ma.second + mb.second}, ca * cb);
    return out;
}

namespace {

using KernelCoeffs = std::array<std::array<cplx, 2>, 2>;

// f exp(sum_ij C_ij <-d_i d_j->) g, expanded over the multinomial powers
// (a, b, c, d) of the four bidifferential terms C00, C01, C10, C11.
Polynomial2 bidifferential_exp(const Polynomial2& f, const Polynomial2& g, const KernelCoeffs& C)
{
    Polynomial2 out(f.frame());
    if (f.is_zero() || g.is_zero())
        return out;

    const int f0 = f.degree_in(0), f1 = f.degree_in(1);
    const int g0 = g.degree_in(0), g1 = g.degree_in(1);
    auto limit = [](cplx coeff, int bound) { return coeff == 0.0 ? 0 : bound; };

    for (int a = 0; a <= limit(C[0][0], std::min(f0, g0)); ++a)
        for (int b = 0; b <= limit(C[0][1], std::min(f0 - a, g1)); ++b)
            for (int c = 0; c <= limit(C[1][0], std::min(f1, g0 - a)); ++c)
                for (int d = 0; d <= limit(C[1][1], std::min(f1 - c, g1 - b)); ++d) {
                    const cplx weight = ipow(C[0][0], a) * ipow(C[0][1], b) * ipow(C[1][0], c)
                                        * ipow(C[1][1], d)
                                        / (factorial(a) * factorial(b) * factorial(c) * factorial(d));
                    const auto df = f.derivative(a + b, c + d);
                    const auto dg = g.derivative(a + c, b + d);
                    out += weight * (df * dg);
                }
    return out;
}

KernelCoeffs kernel_coeffs(Frame frame, const DeformationParams& params)
{
    KernelCoeffs C{};
    if (frame == Frame::cartesian) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                C[i][j] = 0.5 * I * params.kernel_matrix(i, j);
    } else {
        const auto cc = complex_coefficients(params);
        C = {{{cc.c_zz, cc.c_zzbar}, {cc.c_zbarz, cc.c_zbarzbar}}};
    }
    return C;
}

} // namespace

Polynomial2 star_poly(const Polynomial2& f, const Polynomial2& g, const DeformationParams& params)
{
    require_same_frame(f.frame(), g.frame());
    return bidifferential_exp(f, g, kernel_coeffs(f.frame(), params));
}

Polynomial2 star_commutator(const Polynomial2& f, const Polynomial2& g, const DeformationParams& params)
{
    return star_poly(f, g, params) - star_poly(g, f, params);
}

Polynomial2 tmap_poly(const Polynomial2& f, const DeformationParams& params)
{
    require_same_frame(f.frame(), Frame::cartesian);
    // (i/4) Phi_ij d_i d_j = A d1^2 + B d1 d2 + D d2^2
    const cplx A = 0.25 * I * params.phi11();
    const cplx B = 0.5 * I * params.phi12();
    const cplx D = 0.25 * I * params.phi22();
    const int f0 = f.degree_in(0), f1 = f.degree_in(1);

    Polynomial2 out(Frame::cartesian);
    for (int a = 0; 2 * a <= f0; ++a)
        for (int b = 0; 2 * a + b <= f0 && b <= f1; ++b)
            for (int d = 0; b + 2 * d <= f1; ++d) {
                const cplx weight = ipow(A, a) * ipow(B, b) * ipow(D, d)
                                    / (factorial(a) * factorial(b) * factorial(d));
                if (weight == 0.0)
                    continue;
                out += weight * f.derivative(2 * a + b, b + 2 * d);
            }
    return out;
}

Polynomial2 xhat_apply(int mu, const Polynomial2& f, const DeformationParams& params)
{
    require_same_frame(f.frame(), Frame::cartesian);
    if (mu != 1 && mu != 2)
        throw std::invalid_argument("xhat index must be 1 or 2");
    const int row = mu - 1;
    Polynomial2 out = Polynomial2::variable(row) * f;
    out += (0.5 * I * params.kernel_matrix(row, 0)) * f.derivative(1, 0);
    out += (0.5 * I * params.kernel_matrix(row, 1)) * f.derivative(0, 1);
    return out;
}

} // namespace ncstar
