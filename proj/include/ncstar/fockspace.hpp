#ifndef NCSTAR_FOCKSPACE_HPP
#define NCSTAR_FOCKSPACE_HPP

#include <Eigen/Dense>

#include "ncstar/deformation.hpp"

namespace ncstar {

using FockMatrix = Eigen::MatrixXcd;

/// Vector in the boson Fock space truncated to levels 0..N-1.
class FockVec {
public:
    explicit FockVec(Eigen::VectorXcd components);

    Eigen::Index dim() const noexcept { return v_.size(); }
    const Eigen::VectorXcd& components() const noexcept { return v_; }

private:
    Eigen::VectorXcd v_;
};

/// Operator on the truncated Fock space; also an element of the
/// Hilbert-Schmidt quantum Hilbert space.
class FockOp {
public:
    explicit FockOp(FockMatrix m);

    static FockOp identity(Eigen::Index n);
    static FockOp zero(Eigen::Index n);
    /// |v><w|
    static FockOp outer(const FockVec& v, const FockVec& w);

    Eigen::Index dim() const noexcept { return m_.rows(); }
    const FockMatrix& matrix() const noexcept { return m_; }

    FockOp adjoint() const { return FockOp(m_.adjoint()); }
    double hs_norm() const { return m_.norm(); }

    friend FockOp operator+(const FockOp& a, const FockOp& b);
    friend FockOp operator-(const FockOp& a, const FockOp& b);
    friend FockOp operator*(const FockOp& a, const FockOp& b);
    friend FockOp operator*(cplx s, const FockOp& a);
    friend FockVec operator*(const FockOp& a, const FockVec& v);

private:
    FockMatrix m_;
};

struct LadderOps {
    FockOp b;
    FockOp bdag;
};

/// b|n> = sqrt(n)|n-1>, truncated to N levels. N >= 2.
LadderOps ladder_ops(Eigen::Index n);

/// e^{-|z|^2/2} sum_n z^n/sqrt(n!) |n>, n < N.
FockVec coherent_vector(cplx z, Eigen::Index n);

/// Probability weight of |z> above the truncation, e^{-|z|^2} sum_{n>=N} |z|^{2n}/n!.
double coherent_tail(cplx z, Eigen::Index n);

/// |z><z|. Logs a warning if the truncation tail exceeds 1e-12.
FockOp coherent_projector(cplx z, Eigen::Index n);

/// tr(phi^dagger psi)
cplx hs_inner(const FockOp& phi, const FockOp& psi);

/// psi -> left psi + psi right. Every operator on the quantum Hilbert space
/// used here is of this form.
class QuantumOp {
public:
    QuantumOp(FockMatrix left, FockMatrix right) : left_(std::move(left)), right_(std::move(right)) {}

    FockOp operator()(const FockOp& psi) const;

    friend QuantumOp operator+(const QuantumOp& a, const QuantumOp& b);
    friend QuantumOp operator*(cplx s, const QuantumOp& a);

private:
    FockMatrix left_;
    FockMatrix right_;
};

/// [A, B](psi) = A(B(psi)) - B(A(psi))
FockOp apply_commutator(const QuantumOp& a, const QuantumOp& b, const FockOp& psi);

/// Quantum-space operators with hbar = 1:
/// X_i(psi) = x_i psi, P1(psi) = [x2, psi]/theta, P2(psi) = -[x1, psi]/theta,
/// B = b psi, Bdd = b^dagger psi, P = P1 + i P2, Pdd = P1 - i P2.
struct QuantumOps {
    FockOp x1;
    FockOp x2;
    QuantumOp X1, X2, P1, P2, B, Bdd, P, Pdd;
};

/// Requires theta > 0 and N >= 2.
QuantumOps quantum_ops(const DeformationParams& params, Eigen::Index n);

/// sqrt(theta/2pi) exp(i sqrt(theta/2)(pbar b + p b^dagger)), exponentiated
/// through the eigendecomposition of the Hermitian generator.
FockOp momentum_state_op(cplx p, double theta, Eigen::Index n);

/// exp(i H) for Hermitian H.
FockMatrix expi_hermitian(const FockMatrix& h);

struct OverlapCheck {
    cplx numeric;
    cplx closed;
    double abs_error;
};

/// hs_inner(|z><z|, |p)) against the closed-form coherent/momentum overlap.
OverlapCheck overlap_vs_closedform(cplx z, cplx p, double theta, Eigen::Index n);

/// True if every nonzero entry of psi sits in rows and columns <= N-3.
bool interior_supported(const FockOp& psi);

} // namespace ncstar

#endif
