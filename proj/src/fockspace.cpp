#include "ncstar/fockspace.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "ncstar/wavestar.hpp"

namespace ncstar {

namespace {

void require_dim(Eigen::Index n)
{
    if (n < 2)
        throw std::invalid_argument("Fock truncation needs N >= 2, got " + std::to_string(n));
}

void require_same_dim(Eigen::Index a, Eigen::Index b)
{
    if (a != b)
        throw std::invalid_argument("Fock dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

void require_positive_theta(double theta)
{
    if (!(theta > 0.0))
        throw SingularParameterError("Fock-space construction needs theta > 0");
}

} // namespace

FockVec::FockVec(Eigen::VectorXcd components) : v_(std::move(components))
{
    if (!v_.allFinite())
        throw ValidationError("non-finite Fock vector component");
}

FockOp::FockOp(FockMatrix m) : m_(std::move(m))
{
    if (m_.rows() != m_.cols())
        throw std::invalid_argument("Fock operator must be square");
    require_dim(m_.rows());
    if (!m_.allFinite())
        throw ValidationError("non-finite Fock operator entry");
}

FockOp FockOp::identity(Eigen::Index n)
{
    return FockOp(FockMatrix::Identity(n, n));
}

FockOp FockOp::zero(Eigen::Index n)
{
    return FockOp(FockMatrix::Zero(n, n));
}

FockOp FockOp::outer(const FockVec& v, const FockVec& w)
{
    require_same_dim(v.dim(), w.dim());
    return FockOp(v.components() * w.components().adjoint());
}

FockOp operator+(const FockOp& a, const FockOp& b)
{
    require_same_dim(a.dim(), b.dim());
    return FockOp(a.m_ + b.m_);
}

FockOp operator-(const FockOp& a, const FockOp& b)
{
    require_same_dim(a.dim(), b.dim());
    return FockOp(a.m_ - b.m_);
}

FockOp operator*(const FockOp& a, const FockOp& b)
{
    require_same_dim(a.dim(), b.dim());
    return FockOp(a.m_ * b.m_);
}

FockOp operator*(cplx s, const FockOp& a)
{
    return FockOp(s * a.m_);
}

FockVec operator*(const FockOp& a, const FockVec& v)
{
    require_same_dim(a.dim(), v.dim());
    return FockVec(a.m_ * v.components());
}

LadderOps ladder_ops(Eigen::Index n)
{
    require_dim(n);
    FockMatrix b = FockMatrix::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k)
        b(k - 1, k) = std::sqrt(static_cast<double>(k));
    FockMatrix bdag = b.adjoint();
    return {FockOp(std::move(b)), FockOp(std::move(bdag))};
}

FockVec coherent_vector(cplx z, Eigen::Index n)
{
    require_dim(n);
    Eigen::VectorXcd v(n);
    v(0) = std::exp(-0.5 * std::norm(z));
    for (Eigen::Index k = 1; k < n; ++k)
        v(k) = v(k - 1) * z / std::sqrt(static_cast<double>(k));
    return FockVec(std::move(v));
}

double coherent_tail(cplx z, Eigen::Index n)
{
    const double r2 = std::norm(z);
    // log of the first tail term e^{-r2} r2^N / N!, then the ratio recursion.
    if (r2 == 0.0)
        return 0.0;
    double term = std::exp(-r2 + static_cast<double>(n) * std::log(r2) - std::lgamma(static_cast<double>(n) + 1.0));
    double sum = 0.0;
    for (Eigen::Index k = n; k < n + 400 && term > 0.0; ++k) {
        sum += term;
        term *= r2 / static_cast<double>(k + 1);
        if (term < 1e-18 * sum)
            break;
    }
    return sum;
}

FockOp coherent_projector(cplx z, Eigen::Index n)
{
    const double tail = coherent_tail(z, n);
    if (tail > 1e-12)
        std::clog << "warning: coherent state |z|=" << std::abs(z) << " poorly resolved at N=" << n
                  << " (tail weight " << tail << ")\n";
    const auto v = coherent_vector(z, n);
    return FockOp::outer(v, v);
}

cplx hs_inner(const FockOp& phi, const FockOp& psi)
{
    require_same_dim(phi.dim(), psi.dim());
    // tr(A^dagger B) = sum_ij conj(A_ij) B_ij
    return (phi.matrix().conjugate().cwiseProduct(psi.matrix())).sum();
}

FockOp QuantumOp::operator()(const FockOp& psi) const
{
    require_same_dim(left_.rows(), psi.dim());
    return FockOp(left_ * psi.matrix() + psi.matrix() * right_);
}

QuantumOp operator+(const QuantumOp& a, const QuantumOp& b)
{
    return QuantumOp(a.left_ + b.left_, a.right_ + b.right_);
}

QuantumOp operator*(cplx s, const QuantumOp& a)
{
    return QuantumOp(s * a.left_, s * a.right_);
}

FockOp apply_commutator(const QuantumOp& a, const QuantumOp& b, const FockOp& psi)
{
    return a(b(psi)) - b(a(psi));
}

QuantumOps quantum_ops(const DeformationParams& params, Eigen::Index n)
{
    const double theta = params.theta();
    require_positive_theta(theta);
    const auto [b, bdag] = ladder_ops(n);
    const double s = std::sqrt(theta / 2.0);
    const FockMatrix x1 = s * (b.matrix() + bdag.matrix());
    const FockMatrix x2 = (s / I) * (b.matrix() - bdag.matrix());
    const FockMatrix zero = FockMatrix::Zero(n, n);

    QuantumOp X1(x1, zero), X2(x2, zero);
    QuantumOp P1(x2 / theta, -x2 / theta);
    QuantumOp P2(-x1 / theta, x1 / theta);
    QuantumOp B(b.matrix(), zero), Bdd(bdag.matrix(), zero);
    QuantumOp P = P1 + I * P2;
    QuantumOp Pdd = P1 + (-I) * P2;
    return {FockOp(x1), FockOp(x2), X1, X2, P1, P2, B, Bdd, P, Pdd};
}

FockMatrix expi_hermitian(const FockMatrix& h)
{
    Eigen::SelfAdjointEigenSolver<FockMatrix> eig(h);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition of Hermitian generator failed");
    const Eigen::VectorXcd phases = (I * eig.eigenvalues().cast<cplx>()).array().exp();
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

FockOp momentum_state_op(cplx p, double theta, Eigen::Index n)
{
    require_positive_theta(theta);
    if (theta * std::norm(p) > static_cast<double>(n) / 4.0)
        std::clog << "warning: theta|p|^2 = " << theta * std::norm(p) << " exceeds N/4 at N=" << n
                  << "; truncation error may be large\n";
    const auto [b, bdag] = ladder_ops(n);
    const FockMatrix generator = std::sqrt(theta / 2.0) * (std::conj(p) * b.matrix() + p * bdag.matrix());
    return FockOp(std::sqrt(theta / (2.0 * std::numbers::pi)) * expi_hermitian(generator));
}

OverlapCheck overlap_vs_closedform(cplx z, cplx p, double theta, Eigen::Index n)
{
    const cplx numeric = hs_inner(coherent_projector(z, n), momentum_state_op(p, theta, n));
    const cplx closed = coherent_momentum_overlap(z, p, theta);
    return {numeric, closed, std::abs(numeric - closed)};
}

bool interior_supported(const FockOp& psi)
{
    const Eigen::Index n = psi.dim();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if ((i > n - 3 || j > n - 3) && psi.matrix()(i, j) != 0.0)
                return false;
    return true;
}

} // namespace ncstar
