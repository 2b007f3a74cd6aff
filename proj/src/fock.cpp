#include "cohq/fock.hpp"

#include <cmath>
#include <cstdio>

#include "cohq/errors.hpp"
#include "cohq/spaces.hpp"

namespace cohq {

namespace {

void enumerate_states(int modes, int degree, std::vector<int>& partial,
                      std::vector<std::vector<int>>& out) {
  if (static_cast<int>(partial.size()) == modes - 1) {
    partial.push_back(degree);
    out.push_back(partial);
    partial.pop_back();
    return;
  }
  for (int a = 0; a <= degree; ++a) {
    partial.push_back(a);
    enumerate_states(modes, degree - a, partial, out);
    partial.pop_back();
  }
}

double sqrt_factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return std::sqrt(f);
}

void require_same_basis(const FockBasisPtr& a, const FockBasisPtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || a->modes() != b->modes() || a->cutoff() != b->cutoff())
    throw DimensionError("Fock objects live on different bases");
}

const KlauderPoint& klauder_of(const Point& z, int modes) {
  const auto& kp = z.as<KlauderPoint>();
  if (kp.zeta.size() != modes)
    throw DimensionError("Klauder point dimension does not match the Fock basis");
  return kp;
}

}  // namespace

FockBasis::FockBasis(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
  if (modes < 1) throw DimensionError("Fock basis needs at least one mode");
  if (cutoff < 0) throw DegreeError("Fock cutoff must be nonnegative");
  std::vector<int> partial;
  for (int m = 0; m <= cutoff; ++m) enumerate_states(modes, m, partial, states_);
  degrees_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    int deg = 0;
    for (int a : states_[i]) deg += a;
    degrees_.push_back(deg);
    index_[states_[i]] = i;
  }
}

std::size_t FockBasis::position(const std::vector<int>& alpha) const {
  auto it = index_.find(alpha);
  return it == index_.end() ? npos : it->second;
}

FockBasisPtr make_fock_basis(int modes, int cutoff) {
  return std::make_shared<const FockBasis>(modes, cutoff);
}

FockVector apply(const FockOperator& op, const FockVector& v) {
  require_same_basis(op.basis, v.basis);
  return {op.basis, op.matrix * v.coeffs};
}

FockOperator product(const FockOperator& a, const FockOperator& b) {
  require_same_basis(a.basis, b.basis);
  return {a.basis, a.matrix * b.matrix};
}

FockOperator annihilator(const FockBasisPtr& basis, int mode) {
  if (mode < 0 || mode >= basis->modes()) throw IndexError("mode index out of range");
  const auto dim = static_cast<Eigen::Index>(basis->size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < basis->size(); ++i) {
    std::vector<int> alpha = basis->state(i);
    if (alpha[static_cast<std::size_t>(mode)] == 0) continue;
    const double amp = std::sqrt(static_cast<double>(alpha[static_cast<std::size_t>(mode)]));
    alpha[static_cast<std::size_t>(mode)] -= 1;
    m(static_cast<Eigen::Index>(basis->position(alpha)), static_cast<Eigen::Index>(i)) = amp;
  }
  return {basis, m};
}

FockOperator creator(const FockBasisPtr& basis, int mode) {
  FockOperator a = annihilator(basis, mode);
  return {basis, a.matrix.adjoint()};
}

FockVector coherent_vector(const Point& z, const FockBasisPtr& basis) {
  const auto& kp = klauder_of(z, basis->modes());
  if (kp.zeta.cwiseAbs().maxCoeff() > 2.0)
    std::fprintf(stderr, "cohq: coherent vector with |zeta| > 2, truncation tail grows\n");
  const Complex scale = std::exp(kp.z0);
  Eigen::VectorXcd coeffs(static_cast<Eigen::Index>(basis->size()));
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const std::vector<int>& alpha = basis->state(i);
    Complex c = scale;
    for (int k = 0; k < basis->modes(); ++k) {
      const int a = alpha[static_cast<std::size_t>(k)];
      if (a > 0) c *= int_pow(kp.zeta[k], a) / sqrt_factorial(a);
    }
    coeffs[static_cast<Eigen::Index>(i)] = c;
  }
  return {basis, coeffs};
}

FockOperator smeared(const FockBasisPtr& basis, const Eigen::VectorXcd& p) {
  if (p.size() != basis->modes()) throw DimensionError("smearing vector has wrong length");
  const auto dim = static_cast<Eigen::Index>(basis->size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < basis->modes(); ++k) {
    if (p[k] == Complex(0.0, 0.0)) continue;
    m += std::conj(p[k]) * annihilator(basis, k).matrix;
  }
  return {basis, m};
}

FockOperator smeared_adjoint(const FockBasisPtr& basis, const Eigen::VectorXcd& q) {
  if (q.size() != basis->modes()) throw DimensionError("smearing vector has wrong length");
  const auto dim = static_cast<Eigen::Index>(basis->size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < basis->modes(); ++k) {
    if (q[k] == Complex(0.0, 0.0)) continue;
    m += q[k] * creator(basis, k).matrix;
  }
  return {basis, m};
}

FockOperator sym_power_operator(const FockBasisPtr& basis, const Eigen::MatrixXcd& A) {
  const int d = basis->modes();
  if (A.rows() != d || A.cols() != d) throw DimensionError("matrix does not match mode count");
  const auto dim = static_cast<Eigen::Index>(basis->size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  // Column alpha: expand prod_k (sum_j A_jk y_j)^{alpha_k}; the monomial
  // coefficients C_{beta,alpha} enter as C sqrt(beta!/alpha!).
  for (std::size_t col = 0; col < basis->size(); ++col) {
    const std::vector<int>& alpha = basis->state(col);
    std::map<std::vector<int>, Complex> poly;
    poly[std::vector<int>(static_cast<std::size_t>(d), 0)] = Complex(1.0, 0.0);
    for (int k = 0; k < d; ++k) {
      for (int rep = 0; rep < alpha[static_cast<std::size_t>(k)]; ++rep) {
        std::map<std::vector<int>, Complex> next;
        for (const auto& [mono, coeff] : poly) {
          for (int j = 0; j < d; ++j) {
            if (A(j, k) == Complex(0.0, 0.0)) continue;
            std::vector<int> raised = mono;
            raised[static_cast<std::size_t>(j)] += 1;
            next[raised] += coeff * A(j, k);
          }
        }
        poly.swap(next);
      }
    }
    double inv_norm = 1.0;
    for (int a : alpha) inv_norm *= sqrt_factorial(a);
    for (const auto& [beta, coeff] : poly) {
      double beta_norm = 1.0;
      for (int b : beta) beta_norm *= sqrt_factorial(b);
      const std::size_t row = basis->position(beta);
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
          coeff * beta_norm / inv_norm;
    }
  }
  return {basis, m};
}

FockOperator exp_degree_shifting(const FockOperator& op) {
  const auto dim = op.matrix.rows();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(dim, dim);
  for (int m = 1; m <= op.basis->cutoff() + 1; ++m) {
    term = (op.matrix * term) / static_cast<double>(m);
    if (term.norm() == 0.0) break;
    sum += term;
  }
  return {op.basis, sum};
}

FockOperator gamma_osc(const OscElement& x, const FockBasisPtr& basis) {
  if (x.dim() != basis->modes())
    throw DimensionError("oscillator element does not match the Fock basis");
  const FockOperator raise = exp_degree_shifting(smeared_adjoint(basis, x.q));
  const FockOperator lower = exp_degree_shifting(smeared(basis, x.p));
  const FockOperator lam = sym_power_operator(basis, x.A);
  Eigen::MatrixXcd m = std::exp(x.rho) * (raise.matrix * (lam.matrix * lower.matrix));
  return {basis, m};
}

WeylReport weyl_check(const FockBasisPtr& basis, const Eigen::VectorXcd& p,
                      const Eigen::VectorXcd& q, int probe_degree) {
  if (2 * probe_degree > basis->cutoff())
    throw DegreeError("probe degree must not exceed half the cutoff");
  const FockOperator ea = exp_degree_shifting(smeared(basis, p));
  const FockOperator ec = exp_degree_shifting(smeared_adjoint(basis, q));
  const Eigen::MatrixXcd lhs = ea.matrix * ec.matrix;
  const Eigen::MatrixXcd rhs = std::exp(p.dot(q)) * (ec.matrix * ea.matrix);
  WeylReport report;
  report.probe_degree = probe_degree;
  for (std::size_t i = 0; i < basis->size(); ++i) {
    if (basis->degree(i) > probe_degree) continue;
    const double diff = (lhs.col(static_cast<Eigen::Index>(i)) -
                         rhs.col(static_cast<Eigen::Index>(i)))
                            .norm();
    report.max_difference = std::max(report.max_difference, diff);
  }
  return report;
}

FockOperator normal_ordered_monomial(const FockBasisPtr& basis, const std::vector<int>& beta,
                                     const std::vector<int>& alpha) {
  const int d = basis->modes();
  if (static_cast<int>(beta.size()) != d || static_cast<int>(alpha.size()) != d)
    throw DimensionError("multi-index length does not match mode count");
  int total = 0;
  for (int b : beta) total += b;
  for (int a : alpha) total += a;
  if (total > basis->cutoff())
    throw DegreeError("monomial degree exceeds the cutoff");
  const auto dim = static_cast<Eigen::Index>(basis->size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
  for (int k = 0; k < d; ++k)
    for (int rep = 0; rep < alpha[static_cast<std::size_t>(k)]; ++rep)
      m = annihilator(basis, k).matrix * m;
  for (int k = 0; k < d; ++k)
    for (int rep = 0; rep < beta[static_cast<std::size_t>(k)]; ++rep)
      m = creator(basis, k).matrix * m;
  return {basis, m};
}

namespace {

struct GaussHermiteRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// Golub-Welsch for the weight e^{-t^2}: Jacobi matrix with off-diagonals
// sqrt(k/2); weights are sqrt(pi) times the squared first components.
GaussHermiteRule gauss_hermite_rule(int n) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double off = std::sqrt(0.5 * static_cast<double>(k));
    jacobi(k, k - 1) = off;
    jacobi(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  GaussHermiteRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights.resize(n);
  const double sqrt_pi = std::sqrt(M_PI);
  for (int k = 0; k < n; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    rule.weights[k] = sqrt_pi * v0 * v0;
  }
  return rule;
}

Complex gh_overlap_value(const KlauderPoint& a, const KlauderPoint& b,
                         const GaussHermiteRule& rule) {
  // overlap = pi^{-1/2} int e^{-t^2} h(t) dt with
  // h(t) = e^{2 t^2} conj(f_z(sqrt(2) t)) f_z'(sqrt(2) t).
  const Complex za = a.zeta[0];
  const Complex zb = b.zeta[0];
  Complex sum(0.0, 0.0);
  for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
    const double x = std::sqrt(2.0) * rule.nodes[k];
    const Complex fa = std::exp(std::conj(a.z0) - 0.5 * (x - std::conj(za)) * (x - std::conj(za)));
    const Complex fb = std::exp(b.z0 - 0.5 * (x - zb) * (x - zb));
    sum += rule.weights[k] * std::exp(2.0 * rule.nodes[k] * rule.nodes[k]) * fa * fb;
  }
  return sum / std::sqrt(M_PI);
}

}  // namespace

Complex gauss_hermite_overlap(const Point& z, const Point& zp, int nodes) {
  if (nodes < 64) throw DomainError("Gauss-Hermite overlap needs at least 64 nodes");
  const auto& a = klauder_of(z, 1);
  const auto& b = klauder_of(zp, 1);
  const Complex fine = gh_overlap_value(a, b, gauss_hermite_rule(nodes));
  const Complex coarse = gh_overlap_value(a, b, gauss_hermite_rule(nodes / 2));
  if (std::abs(fine - coarse) > 1e-9 * (1.0 + std::abs(fine)))
    throw QuadratureError("Gauss-Hermite overlap did not converge at " + std::to_string(nodes) +
                          " nodes");
  return fine;
}

double exp_tail(double x, int cutoff) {
  if (x < 0.0) throw DomainError("exp_tail needs a nonnegative argument");
  // term m = cutoff+1 of the exponential series, then the remaining ratio sum
  double term = 1.0;
  for (int m = 1; m <= cutoff + 1; ++m) term *= x / static_cast<double>(m);
  double sum = 0.0;
  for (int extra = 0; extra < 1000 && term > 0.0; ++extra) {
    sum += term;
    term *= x / static_cast<double>(cutoff + 2 + extra);
    if (term < sum * 1e-18) {
      sum += term;
      break;
    }
  }
  return sum;
}

double coherent_tail_norm(const Point& z, int cutoff) {
  const auto& kp = z.as<KlauderPoint>();
  const double nsq = kp.zeta.squaredNorm();
  return std::abs(std::exp(kp.z0)) * std::sqrt(exp_tail(nsq, cutoff));
}

}  // namespace cohq
