#pragma once

#include <memory>

#include <Eigen/Dense>

#include "cohq/spaces.hpp"

namespace cohq {

/// Rank-revealing factorization G = R* R of a sample Gram matrix, obtained
/// from the eigendecomposition G = U Lambda U* by keeping eigenvalues above
/// eps_rank * lambda_max and setting R = Lambda_+^{1/2} U_+*. Column k of R
/// is the coherent vector of the k-th sample point expressed in the
/// orthonormal factor basis; eigenvectors below the cut span the numerical
/// null space.
struct GramFactorization {
  SampleSet sample;
  Eigen::MatrixXcd G;           // n x n, Hermitian
  Eigen::MatrixXcd R;           // r x n
  Eigen::MatrixXcd null_basis;  // n x (n - r)
  Eigen::VectorXd kept_eigenvalues;
  int rank = 0;
  double eps_rank = 0.0;
  double lambda_max = 0.0;

  Eigen::Index n() const { return G.rows(); }

  /// Coherent vector of sample point k in the factor basis.
  Eigen::VectorXcd coherent_vector(Eigen::Index k) const { return R.col(k); }

  /// Least-squares coordinates in the factor basis of the vector whose
  /// coherent matrix elements against the sample are f, i.e. the psi with
  /// R* psi ~ f. The residual norm of R* psi - f is written to *residual
  /// when given.
  Eigen::VectorXcd project(const Eigen::VectorXcd& f, double* residual = nullptr) const;

  /// Compression (R+)* X R+ of a kernel matrix to the factor basis.
  Eigen::MatrixXcd compress(const Eigen::MatrixXcd& X) const;
};

/// Factorizes the Gram matrix of the sample. Throws NotPositiveError when
/// lambda_min < -eps_rank * lambda_max.
GramFactorization factor_gram(const SampleSet& sample, double eps_rank = 1e-10);

/// Same, with a caller-provided Gram matrix (must match the sample).
GramFactorization factor_gram_matrix(SampleSet sample, const Eigen::MatrixXcd& G,
                                     double eps_rank = 1e-10);

/// Sample-relative admissibility of the function with values f(z_k): true
/// iff f is orthogonal to every numerical null vector of G within
/// tol * (1 + ||f||). A finite sample certifies only a necessary condition
/// of the global notion.
bool is_admissible(const GramFactorization& fact, const Eigen::VectorXcd& f, double tol = 1e-8);

/// Vector psi in the factor basis with <z_k| psi = f(z_k); least squares
/// through R with residual at most tol * (1 + ||f||), else
/// NotAdmissibleError.
Eigen::VectorXcd vector_from_admissible(const GramFactorization& fact, const Eigen::VectorXcd& f,
                                        double tol = 1e-8);

/// An operator on the span of the sampled coherent states, stored as an
/// r x r matrix in the orthonormal factor basis.
struct OperatorOnSpan {
  std::shared_ptr<const GramFactorization> fact;
  Eigen::MatrixXcd M;

  OperatorOnSpan adjoint() const { return {fact, M.adjoint()}; }
};

/// Reconstructs the operator whose shadow is the kernel matrix X, i.e.
/// M with <z_j| M |z_k> = X(z_j, z_k) on the sample. Preconditions from
/// the finite shadow test: every null vector c must satisfy Xc = 0 and
/// X*c = 0 within tolerance. The effective tolerance is
/// tol * (1 + ||X||_F); the reconstruction residual ||R* M R - X||_F is
/// certified against it and written to *residual when given. Throws
/// NotShadowError on violation.
OperatorOnSpan operator_from_kernel(std::shared_ptr<const GramFactorization> fact,
                                    const Eigen::MatrixXcd& X, double tol = 1e-8,
                                    double* residual = nullptr);

/// Shadow of an operator on the sample: the matrix R* M R of coherent
/// matrix elements <z_j| M |z_k>.
Eigen::MatrixXcd shadow_of_operator(const OperatorOnSpan& op);

}  // namespace cohq
