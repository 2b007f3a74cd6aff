#pragma once

#include <Eigen/Dense>

#include "cohq/point.hpp"

namespace cohq {

/// Element [rho, p, q, A] of the oscillator semigroup Os[V] over V = C^d,
/// kept in structured form; the (d+2) x (d+2) block matrix is the test
/// oracle, not the primary representation.
struct OscElement {
  Complex rho;
  Eigen::VectorXcd p;
  Eigen::VectorXcd q;
  Eigen::MatrixXcd A;

  int dim() const { return static_cast<int>(q.size()); }

  static OscElement identity(int d);
};

/// Semigroup product [rho'+rho+p*q', A'*p+p', q+Aq', AA'].
OscElement multiply(const OscElement& x, const OscElement& y);

/// Adjoint [conj(rho), q, p, A*]; an involution.
OscElement adjoint(const OscElement& x);

/// Inverse [p* A^{-1} q - rho, -A^{-*} p, -A^{-1} q, A^{-1}]. Throws
/// SingularError when sigma_min(A) <= 1e-12 sigma_max(A).
OscElement inverse(const OscElement& x);

/// Condition number sigma_max / sigma_min of the A block.
double condition_number(const OscElement& x);

/// Element [alpha, q, A] of the unitary oscillator group UOs(V):
/// alpha purely imaginary (stored by its imaginary part so the invariant
/// cannot be broken), A unitary.
struct UnitaryOscElement {
  double alpha_im = 0.0;
  Eigen::VectorXcd q;
  Eigen::MatrixXcd A;
};

/// Validated constructor; throws NotUnitaryError unless ||A*A - I|| <= 1e-12.
UnitaryOscElement make_unitary_osc(double alpha_im, Eigen::VectorXcd q, Eigen::MatrixXcd A);

/// Embedding [alpha, q, A] -> [(alpha - q*q)/2, -A*q, q, A] into Os[V].
OscElement embed_unitary(const UnitaryOscElement& u);

/// Group law of UOs(V) in [alpha, q, A] coordinates; consistent with
/// embed-then-multiply.
UnitaryOscElement unitary_multiply(const UnitaryOscElement& u, const UnitaryOscElement& v);

/// Heisenberg element W_lambda(q).
struct HeisenbergElement {
  double lambda = 0.0;
  Eigen::VectorXcd q;
};

/// Symplectic form sigma(q, q') = 2 Im q* q'.
double symplectic_form(const Eigen::VectorXcd& q, const Eigen::VectorXcd& qp);

/// Group law W_lambda(q) W_lambda'(q') = W_{lambda+lambda'+sigma(q,q')}(q+q').
/// Note the embedding below is an anti-homomorphism for this law: the Os
/// block product of the embedded elements composes the factors in the
/// opposite order (see README).
HeisenbergElement heisenberg_multiply(const HeisenbergElement& w, const HeisenbergElement& wp);

/// W_lambda(q)^{-1} = W_{-lambda}(-q).
HeisenbergElement heisenberg_inverse(const HeisenbergElement& w);

/// W_lambda(q) = [(i lambda - q*q)/2, -q, q, 1] in Os[V].
OscElement embed_heisenberg(const HeisenbergElement& w);

/// Coherent action [rho,p,q,A][z0,zeta] = [rho + z0 + p* zeta, q + A zeta]
/// on Klauder points.
Point act_on_point(const OscElement& x, const Point& z);

/// Block matrix [[1, p*, rho], [0, A, q], [0, 0, 1]] — the oracle
/// representation: multiply/adjoint/inverse agree with plain matrix algebra.
Eigen::MatrixXcd as_block_matrix(const OscElement& x);

/// Reads an element back from its block matrix (for oracle round trips).
OscElement from_block_matrix(const Eigen::MatrixXcd& m);

}  // namespace cohq
