#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nullctrl {

using cxd = std::complex<double>;

// Dense square complex matrix, row-major.
struct ComplexMatrix {
    std::size_t n = 0;
    std::vector<cxd> a;

    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n_) : n(n_), a(n_ * n_, cxd{0.0, 0.0}) {}

    cxd& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const cxd& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    double frobenius_norm() const;
    // max_{i<j} |a_ij - conj(a_ji)|, plus |Im a_ii| on the diagonal
    double hermitian_defect() const;
    // Leading k-by-k block as a new matrix.
    ComplexMatrix leading_block(std::size_t k) const;
};

// Compensated (error-free-transformation based) complex dot product:
// returns sum_k x_k * y_k with roughly twice working precision.
cxd compensated_dot(const std::vector<cxd>& x, const std::vector<cxd>& y);

// Compensated residual r = c - M*alpha, accurate enough to drive
// iterative refinement on ill-conditioned systems.
std::vector<cxd> compensated_residual(const ComplexMatrix& m,
                                      const std::vector<cxd>& alpha,
                                      const std::vector<cxd>& c);

// All eigenvalues of a Hermitian matrix by cyclic Jacobi rotations,
// sorted ascending. Throws NonHermitianError if the symmetry defect
// exceeds hermitian_tol * ||A||_F, and ConvergenceError if the
// off-diagonal mass has not dropped below offdiag_tol * ||A||_F after
// max_sweeps sweeps.
struct JacobiOptions {
    double hermitian_tol = 1e-10;
    double offdiag_tol = 1e-13;
    int max_sweeps = 100;
};
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m,
                                          const JacobiOptions& opts = {});

// Cholesky factorization A = L L* of a Hermitian positive-definite
// matrix (lower triangular L). Throws IllConditionedError on a
// non-positive pivot.
ComplexMatrix cholesky_factor(const ComplexMatrix& m);

// Solves L L* x = b given the Cholesky factor.
std::vector<cxd> cholesky_solve(const ComplexMatrix& lower, const std::vector<cxd>& b);

// Solves A x = b for Hermitian positive-definite A with iterative
// refinement (compensated residuals). Refines until the residual
// drops below target_rel * ||b|| or stops improving.
struct RefinedSolve {
    std::vector<cxd> x;
    double residual_norm = 0.0;  // ||b - A x||_2 of the returned x
    int refinement_steps = 0;
};
RefinedSolve solve_hpd_refined(const ComplexMatrix& m, const std::vector<cxd>& b,
                               double target_rel = 1e-12);

double vector_norm(const std::vector<cxd>& v);

}  // namespace nullctrl
