#include "cohq/oscillator.hpp"

#include <cmath>

#include "cohq/errors.hpp"

namespace cohq {

namespace {

void require_same_dim(int a, int b) {
  if (a != b) throw DimensionError("oscillator elements have mismatched dimensions");
}

}  // namespace

OscElement OscElement::identity(int d) {
  return {Complex(0.0, 0.0), Eigen::VectorXcd::Zero(d), Eigen::VectorXcd::Zero(d),
          Eigen::MatrixXcd::Identity(d, d)};
}

OscElement multiply(const OscElement& x, const OscElement& y) {
  require_same_dim(x.dim(), y.dim());
  OscElement out;
  out.rho = y.rho + x.rho + x.p.dot(y.q);
  out.p = y.A.adjoint() * x.p + y.p;
  out.q = x.q + x.A * y.q;
  out.A = x.A * y.A;
  return out;
}

OscElement adjoint(const OscElement& x) {
  return {std::conj(x.rho), x.q, x.p, x.A.adjoint()};
}

double condition_number(const OscElement& x) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(x.A);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  return smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
}

OscElement inverse(const OscElement& x) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(x.A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smin <= 1e-12 * smax)
    throw SingularError("A block is numerically singular (cond >= 1e12)");
  const Eigen::MatrixXcd a_inv = svd.solve(Eigen::MatrixXcd::Identity(x.dim(), x.dim()));
  OscElement out;
  out.rho = x.p.dot(a_inv * x.q) - x.rho;
  out.p = -a_inv.adjoint() * x.p;
  out.q = -a_inv * x.q;
  out.A = a_inv;
  return out;
}

UnitaryOscElement make_unitary_osc(double alpha_im, Eigen::VectorXcd q, Eigen::MatrixXcd A) {
  const Eigen::Index d = q.size();
  if (A.rows() != d || A.cols() != d)
    throw DimensionError("unitary oscillator element has mismatched blocks");
  const double defect = (A.adjoint() * A - Eigen::MatrixXcd::Identity(d, d)).norm();
  if (defect > 1e-12)
    throw NotUnitaryError("A block is not unitary (defect " + std::to_string(defect) + ")");
  return {alpha_im, std::move(q), std::move(A)};
}

OscElement embed_unitary(const UnitaryOscElement& u) {
  OscElement out;
  const Complex alpha(0.0, u.alpha_im);
  out.rho = 0.5 * (alpha - u.q.dot(u.q));
  out.p = -u.A.adjoint() * u.q;
  out.q = u.q;
  out.A = u.A;
  return out;
}

UnitaryOscElement unitary_multiply(const UnitaryOscElement& u, const UnitaryOscElement& v) {
  require_same_dim(static_cast<int>(u.q.size()), static_cast<int>(v.q.size()));
  // alpha'' = alpha + alpha' - q* A q' + q'* A* q; the mixed terms are a
  // conjugate pair, so alpha'' stays purely imaginary by construction.
  const Complex mixed = u.q.dot(u.A * v.q);
  const double alpha_im = u.alpha_im + v.alpha_im - 2.0 * mixed.imag();
  return {alpha_im, u.q + u.A * v.q, u.A * v.A};
}

double symplectic_form(const Eigen::VectorXcd& q, const Eigen::VectorXcd& qp) {
  require_same_dim(static_cast<int>(q.size()), static_cast<int>(qp.size()));
  return 2.0 * q.dot(qp).imag();
}

HeisenbergElement heisenberg_multiply(const HeisenbergElement& w, const HeisenbergElement& wp) {
  return {w.lambda + wp.lambda + symplectic_form(w.q, wp.q), w.q + wp.q};
}

HeisenbergElement heisenberg_inverse(const HeisenbergElement& w) { return {-w.lambda, -w.q}; }

OscElement embed_heisenberg(const HeisenbergElement& w) {
  OscElement out;
  out.rho = 0.5 * (Complex(0.0, w.lambda) - w.q.dot(w.q));
  out.p = -w.q;
  out.q = w.q;
  out.A = Eigen::MatrixXcd::Identity(w.q.size(), w.q.size());
  return out;
}

Point act_on_point(const OscElement& x, const Point& z) {
  const auto& kp = z.as<KlauderPoint>();
  if (kp.zeta.size() != x.dim())
    throw DimensionError("oscillator element and Klauder point have different dimensions");
  return Point::klauder(x.rho + kp.z0 + x.p.dot(kp.zeta), x.q + x.A * kp.zeta);
}

Eigen::MatrixXcd as_block_matrix(const OscElement& x) {
  const int d = x.dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d + 2, d + 2);
  m(0, 0) = 1.0;
  m.block(0, 1, 1, d) = x.p.adjoint();
  m(0, d + 1) = x.rho;
  m.block(1, 1, d, d) = x.A;
  m.block(1, d + 1, d, 1) = x.q;
  m(d + 1, d + 1) = 1.0;
  return m;
}

OscElement from_block_matrix(const Eigen::MatrixXcd& m) {
  const Eigen::Index size = m.rows();
  if (m.cols() != size || size < 2) throw DimensionError("block matrix must be (d+2) x (d+2)");
  const Eigen::Index d = size - 2;
  OscElement out;
  out.rho = m(0, size - 1);
  out.p = m.block(0, 1, 1, d).adjoint();
  out.q = m.block(1, size - 1, d, 1);
  out.A = m.block(1, 1, d, d);
  return out;
}

}  // namespace cohq
