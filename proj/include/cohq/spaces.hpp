#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cohq/point.hpp"
#include "cohq/rng.hpp"

namespace cohq {

enum class SpaceKind {
  FiniteMatrix,
  Embedded,
  Szego,
  Moebius,
  Klauder,
  ProjectiveExtension,
  Times,
};

/// A coherent space at desk scale: a kernel evaluator, a domain predicate,
/// and (when the space is projective) a scalar multiplication with its
/// degree. All callables are pure; descriptors are freely copyable and
/// shareable across threads.
struct CoherentSpace {
  SpaceKind kind = SpaceKind::FiniteMatrix;
  std::string name;
  int dim = 0;  // Klauder/embedded dimension, finite sample size; 0 otherwise

  std::function<Complex(const Point&, const Point&)> kernel;
  std::function<bool(const Point&)> domain_contains;

  std::optional<int> projective_degree;
  std::function<Point(Complex, const Point&)> scalar_multiply;

  /// Underlying space for projective extensions and times constructions.
  std::shared_ptr<const CoherentSpace> base;

  bool is_projective() const { return projective_degree.has_value(); }
};

/// Abstract n-point space whose coherent product is the given Hermitian matrix.
CoherentSpace finite_matrix_space(const Eigen::MatrixXcd& K);

/// Subset of C^d with coherent product K(z,z') = z* z'.
CoherentSpace embedded_space(int dim);

/// Open unit disk with K(z,z') = (1 - conj(z) z')^{-1}.
CoherentSpace szego_space();

/// {z in C^2 : |z1| > |z2|} with K(z,z') = (conj(z1) z1' - conj(z2) z2')^{-1};
/// projective of degree -1 under componentwise scalar multiplication.
CoherentSpace moebius_space();

/// Pairs [z0, zeta] in C x C^d with K(z,z') = exp(conj(z0) + z0' + zeta* zeta');
/// projective of degree 1 with alpha [z0, zeta] = [z0 + log alpha, zeta]
/// (principal branch of log).
CoherentSpace klauder_space(int dim);

/// Projective extension C* x Z of the given degree: kernel
/// conj(lambda)^e K(z,z') lambda'^e, scalar multiplication on the first slot.
CoherentSpace projective_extension(const CoherentSpace& base, int degree);

/// Times construction over (sep Z) x Z for the builtin family of scalar
/// separable maps: K_x((a,z); (a',z')) = K(a' z, a z'). Requires the base
/// space to expose scalar multiplication.
CoherentSpace times_space(const CoherentSpace& base);

/// Integer power of a complex scalar (negative exponents allowed).
Complex int_pow(Complex base, int e);

/// An ordered list of domain-checked points of one space.
struct SampleSet {
  CoherentSpace space;
  std::vector<Point> points;

  SampleSet(CoherentSpace s, std::vector<Point> pts);

  std::size_t size() const { return points.size(); }
};

/// Evaluates the coherent product, enforcing the domain predicate on both
/// arguments. Throws DomainError outside the domain and SingularityError
/// if a closed-form denominator vanishes (unreachable inside the open
/// domains, kept as a guard).
Complex eval_kernel(const CoherentSpace& space, const Point& z, const Point& zp);

/// Gram matrix G_jk = K(z_j, z_k), Hermitized by averaging with its
/// adjoint; the averaging correction must stay below 1e-12 relative.
Eigen::MatrixXcd gram_matrix(const SampleSet& sample);

struct PositiveTypeReport {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  bool passed = false;
};

/// Sampled positive-type check: passes iff
/// lambda_min(G) >= -eps * max(lambda_max(G), 1).
PositiveTypeReport check_positive_type(const SampleSet& sample, double eps = 1e-10);

struct ProjectivityReport {
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Samples random lambda in C* and checks K(z', lambda z) = lambda^e K(z', z)
/// over all sample pairs. Throws NotProjectiveError if the space has no
/// scalar multiplication.
ProjectivityReport check_projectivity(const SampleSet& sample, int trials, Rng& rng,
                                      double tol = 1e-10);

/// Seeded random point of a builtin space; the exact sampling rules are
/// part of the reproducibility contract (see README).
Point random_point(const CoherentSpace& space, Rng& rng);

SampleSet random_sample(const CoherentSpace& space, std::size_t n, Rng& rng);

/// The 12 icosahedron vertices embedded in R^3 (Gram rank 3).
SampleSet icosahedron_sample();

}  // namespace cohq
