#include "cohq/gram.hpp"

#include <cmath>
#include <utility>

namespace cohq {

Eigen::VectorXcd GramFactorization::project(const Eigen::VectorXcd& f, double* residual) const {
  // min ||R* psi - f||: psi = Lambda_+^{-1/2} U_+* f, and R* psi is the
  // orthogonal projection of f onto the kept eigenspace.
  Eigen::VectorXcd psi(rank);
  // R = Lambda^{1/2} U*, so R f = Lambda^{1/2} (U* f); rescale by Lambda^{-1}.
  Eigen::VectorXcd rf = R * f;
  for (int k = 0; k < rank; ++k) psi[k] = rf[k] / kept_eigenvalues[k];
  if (residual) *residual = (R.adjoint() * psi - f).norm();
  return psi;
}

Eigen::MatrixXcd GramFactorization::compress(const Eigen::MatrixXcd& X) const {
  // (R+)* X R+ with R+ = U_+ Lambda_+^{-1/2}.
  Eigen::MatrixXcd m = R * X * R.adjoint();
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) m(i, j) /= kept_eigenvalues[i] * kept_eigenvalues[j];
  return m;
}

GramFactorization factor_gram(const SampleSet& sample, double eps_rank) {
  Eigen::MatrixXcd g = gram_matrix(sample);
  return factor_gram_matrix(sample, g, eps_rank);
}

GramFactorization factor_gram_matrix(SampleSet sample, const Eigen::MatrixXcd& G,
                                     double eps_rank) {
  const Eigen::Index n = G.rows();
  if (G.cols() != n || n != static_cast<Eigen::Index>(sample.size()))
    throw DimensionError("Gram matrix does not match the sample");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  const Eigen::VectorXd& lam = es.eigenvalues();  // ascending
  const double lam_max = std::max(lam.maxCoeff(), 0.0);
  const double cut = eps_rank * std::max(lam_max, 0.0);
  if (lam.minCoeff() < -cut)
    throw NotPositiveError("Gram matrix has eigenvalue " + std::to_string(lam.minCoeff()) +
                           " below -eps_rank * lambda_max");

  int rank = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (lam[i] > cut) ++rank;

  GramFactorization fact{std::move(sample), G, {}, {}, {}, rank, eps_rank, lam_max};
  fact.R.resize(rank, n);
  fact.kept_eigenvalues.resize(rank);
  fact.null_basis.resize(n, n - rank);
  int r = 0, z = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lam[i] > cut) {
      fact.kept_eigenvalues[r] = lam[i];
      fact.R.row(r) = std::sqrt(lam[i]) * es.eigenvectors().col(i).adjoint();
      ++r;
    } else {
      fact.null_basis.col(z++) = es.eigenvectors().col(i);
    }
  }
  return fact;
}

bool is_admissible(const GramFactorization& fact, const Eigen::VectorXcd& f, double tol) {
  if (f.size() != fact.n()) throw DimensionError("function values do not match the sample");
  const double bound = tol * (1.0 + f.norm());
  for (Eigen::Index k = 0; k < fact.null_basis.cols(); ++k) {
    // (e.psiIffSym1): sum c_k |z_k> = 0 must force sum conj(c_k) f(z_k) = 0
    if (std::abs(fact.null_basis.col(k).dot(f)) > bound) return false;
  }
  return true;
}

Eigen::VectorXcd vector_from_admissible(const GramFactorization& fact, const Eigen::VectorXcd& f,
                                        double tol) {
  if (f.size() != fact.n()) throw DimensionError("function values do not match the sample");
  double residual = 0.0;
  Eigen::VectorXcd psi = fact.project(f, &residual);
  if (residual > tol * (1.0 + f.norm()))
    throw NotAdmissibleError("function is not admissible on this sample (residual " +
                             std::to_string(residual) + ")");
  return psi;
}

OperatorOnSpan operator_from_kernel(std::shared_ptr<const GramFactorization> fact,
                                    const Eigen::MatrixXcd& X, double tol, double* residual) {
  const Eigen::Index n = fact->n();
  if (X.rows() != n || X.cols() != n) throw DimensionError("kernel matrix does not match sample");
  const double bound = tol * (1.0 + X.norm());
  for (Eigen::Index k = 0; k < fact->null_basis.cols(); ++k) {
    const Eigen::VectorXcd c = fact->null_basis.col(k);
    if ((X * c).norm() > bound || (X.adjoint() * c).norm() > bound)
      throw NotShadowError("kernel does not vanish on the Gram null space");
  }
  Eigen::MatrixXcd M = fact->compress(X);
  OperatorOnSpan op{std::move(fact), std::move(M)};
  const double res = (op.fact->R.adjoint() * op.M * op.fact->R - X).norm();
  if (residual) *residual = res;
  if (res > bound)
    throw NotShadowError("shadow reconstruction residual " + std::to_string(res) +
                         " exceeds tolerance " + std::to_string(bound));
  return op;
}

Eigen::MatrixXcd shadow_of_operator(const OperatorOnSpan& op) {
  return op.fact->R.adjoint() * op.M * op.fact->R;
}

}  // namespace cohq
