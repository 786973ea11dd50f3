#pragma once

#include <Eigen/Dense>

#include "qpencil/errors.hpp"

// Self-contained dense Hermitian linear algebra used as the brute-force
// reference for the variational solver: Cholesky factorization, cyclic
// Jacobi eigendecomposition, and the generalized eigensolver reduction.
// Eigen supplies storage and expressions only; the factorizations are local
// so the reference path stays independent and easy to audit. All functions
// are pure and safe for concurrent calls.
namespace qpencil::dense {

inline constexpr int kDimCap = 4096;

// max |H - H^dagger| entrywise.
double hermitian_residue(const Eigen::MatrixXcd& h);

// Validated Hermitian matrix: residue < 1e-10 enforced at construction.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Eigen::MatrixXcd m);
  static HermitianMatrix from_real(const Eigen::MatrixXd& m);

  const Eigen::MatrixXcd& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Eigen::MatrixXcd m_;
};

struct EigResult {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // columns, same order as values
};

// Lower-triangular L with L L^dagger = s. Throws NumericalError when a pivot
// is not strictly positive (s not positive definite).
Eigen::MatrixXcd cholesky(const HermitianMatrix& s);

// Cyclic Jacobi rotations; sweep cap 100, NumericalError on non-convergence.
EigResult hermitian_eig(const HermitianMatrix& h);

// Solves g v = lambda s v for positive definite s via the Cholesky
// reduction L^-1 g L^-dagger. Eigenvectors are s-orthonormal.
EigResult generalized_eig(const HermitianMatrix& g, const HermitianMatrix& s);

// Forward substitution: returns x with l x = b (l lower triangular).
Eigen::MatrixXcd solve_lower(const Eigen::MatrixXcd& l, const Eigen::MatrixXcd& b);

// Back substitution: returns x with u x = b (u upper triangular).
Eigen::MatrixXcd solve_upper(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& b);

}  // namespace qpencil::dense
