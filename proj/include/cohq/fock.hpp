#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "cohq/oscillator.hpp"
#include "cohq/point.hpp"

namespace cohq {

/// Occupation basis of the bosonic Fock space over C^d truncated by total
/// degree |alpha| <= cutoff, in graded lexicographic order: states sorted
/// by degree, and within one degree by lexicographically increasing
/// (alpha_1, ..., alpha_d). The order is part of the file-format contract;
/// matrix dumps are reproducible bit for bit.
class FockBasis {
 public:
  FockBasis(int modes, int cutoff);

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  std::size_t size() const { return states_.size(); }

  const std::vector<int>& state(std::size_t i) const { return states_[i]; }
  int degree(std::size_t i) const { return degrees_[i]; }

  /// Position of a multi-index, or npos if it exceeds the cutoff.
  std::size_t position(const std::vector<int>& alpha) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  int modes_;
  int cutoff_;
  std::vector<std::vector<int>> states_;
  std::vector<int> degrees_;
  std::map<std::vector<int>, std::size_t> index_;
};

using FockBasisPtr = std::shared_ptr<const FockBasis>;

FockBasisPtr make_fock_basis(int modes, int cutoff);

struct FockVector {
  FockBasisPtr basis;
  Eigen::VectorXcd coeffs;
};

struct FockOperator {
  FockBasisPtr basis;
  Eigen::MatrixXcd matrix;
};

FockVector apply(const FockOperator& op, const FockVector& v);
FockOperator product(const FockOperator& a, const FockOperator& b);

/// Lowering operator a_k: drops alpha_k by one with amplitude
/// sqrt(alpha_k). Modes are indexed from 0.
FockOperator annihilator(const FockBasisPtr& basis, int mode);

/// Raising operator a_k*: the exact matrix adjoint of annihilator(k);
/// top-degree states map to zero under the truncation.
FockOperator creator(const FockBasisPtr& basis, int mode);

/// Unnormalized coherent vector of a Klauder point [z0, zeta]:
/// coefficients e^{z0} prod_k zeta_k^{alpha_k} / sqrt(alpha_k!).
FockVector coherent_vector(const Point& z, const FockBasisPtr& basis);

/// p* a = sum_k conj(p_k) a_k.
FockOperator smeared(const FockBasisPtr& basis, const Eigen::VectorXcd& p);

/// a* q = sum_k q_k a_k*.
FockOperator smeared_adjoint(const FockBasisPtr& basis, const Eigen::VectorXcd& q);

/// Degree-preserving operator acting as A^{tensor m} on the symmetric
/// degree-m blocks; sends |zeta> to |A zeta> up to the truncation tail.
FockOperator sym_power_operator(const FockBasisPtr& basis, const Eigen::MatrixXcd& A);

/// Exponential power series of a degree-shifting (nilpotent below the
/// cutoff) operator; terminates exactly after cutoff+1 terms.
FockOperator exp_degree_shifting(const FockOperator& op);

/// Quantization of an oscillator element on the truncated Fock space,
/// realized as e^rho exp(a* q) Lambda(A) exp(p* a); each factor is exact
/// at finite cutoff, and the coherent-state action certifies equality
/// with the normally ordered exponential.
FockOperator gamma_osc(const OscElement& x, const FockBasisPtr& basis);

struct WeylReport {
  double max_difference = 0.0;
  int probe_degree = 0;
};

/// Compares both sides of e^{p*a} e^{a*q} = e^{p*q} e^{a*q} e^{p*a} on all
/// basis states of degree <= probe_degree. Requires
/// probe_degree <= cutoff/2: both sides agree exactly only away from the
/// truncation boundary.
WeylReport weyl_check(const FockBasisPtr& basis, const Eigen::VectorXcd& p,
                      const Eigen::VectorXcd& q, int probe_degree);

/// Normally ordered monomial (a*)^beta a^alpha. Throws DegreeError when
/// |beta| + |alpha| exceeds the cutoff.
FockOperator normal_ordered_monomial(const FockBasisPtr& basis, const std::vector<int>& beta,
                                     const std::vector<int>& alpha);

/// Overlap f_z* f_z' of the Gaussian coherent states
/// f_z(x) = e^{z0 - (x - zeta)^2 / 2} under the weight
/// (2 pi)^{-1/2} e^{x^2/2} dx, evaluated by Gauss-Hermite quadrature
/// (d = 1 only, nodes >= 64). Matches the Klauder kernel.
Complex gauss_hermite_overlap(const Point& z, const Point& zp, int nodes);

/// Remainder e^x - sum_{m<=cutoff} x^m/m! for x >= 0, summed directly so
/// tiny tails are exact.
double exp_tail(double x, int cutoff);

/// Norm of the truncation tail of the coherent vector of [z0, zeta]:
/// |e^{z0}| sqrt(exp_tail(||zeta||^2, cutoff)).
double coherent_tail_norm(const Point& z, int cutoff);

}  // namespace cohq
