#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cohq/gram.hpp"
#include "cohq/oscillator.hpp"
#include "cohq/spaces.hpp"

namespace cohq {

/// A self-map of a coherent space with an optional candidate adjoint and
/// optional inverse. Whether the adjoint really satisfies the coherence
/// identity K(z, Az') = K(A*z, z') is decided by check_coherence, not
/// assumed; degenerate spaces (Klauder) admit several adjoints and the
/// stored one is taken as-is.
struct MapSpec {
  std::function<Point(const Point&)> forward;
  std::function<Point(const Point&)> adjoint;  // empty when unknown
  std::function<Point(const Point&)> inverse;  // empty when not invertible
  std::string label;

  bool has_adjoint() const { return static_cast<bool>(adjoint); }
  bool has_inverse() const { return static_cast<bool>(inverse); }
};

MapSpec identity_map();

/// Composition A after B; the adjoint composes in reverse order and is
/// present only when both factors carry one (same for inverses).
MapSpec compose(const MapSpec& a, const MapSpec& b);

/// The adjoint as a map of its own (A** = A).
MapSpec adjoint_map(const MapSpec& a);

/// Scalar multiplication map of a projective space; adjoint is the
/// conjugate scalar, inverse the reciprocal.
MapSpec scalar_map(const CoherentSpace& space, Complex lambda);

/// Checks the Moebius containment inequalities alpha > 0, |beta| <= alpha,
/// gamma <= alpha - 2|beta| for a 2x2 matrix.
bool moebius_map_contains(const Eigen::Matrix2cd& A);

/// Linear map of the Moebius space given by a 2x2 matrix satisfying the
/// containment inequalities (DomainError otherwise). The adjoint is the
/// sigma-conjugate [[conj a11, -conj a21], [-conj a12, conj a22]], not the
/// matrix adjoint.
MapSpec moebius_matrix_map(const Eigen::Matrix2cd& A);

/// Same forward map with a caller-chosen adjoint candidate (used to
/// demonstrate failing coherence checks).
MapSpec moebius_matrix_map_with_adjoint(const Eigen::Matrix2cd& A, const Eigen::Matrix2cd& adj);

/// Action of an oscillator element on Klauder points; adjoint from the
/// *-semigroup structure, inverse present when the A block is invertible.
MapSpec osc_map(const OscElement& x);

/// A function m on Z paired with the map it multiplies.
struct MultiplierSpec {
  std::function<Complex(const Point&)> m;
  MapSpec map;
};

/// A map alpha with K(z, alpha z') = chi K(z, z').
struct SeparableSpec {
  std::function<Point(const Point&)> alpha;
  Complex chi;
  std::string label;
};

/// Base sample closed under all words of length <= depth in the given
/// maps, with the Gram factorization of the closed point set attached.
/// Closure points are deduplicated by exact structural equality.
struct OrbitSample {
  SampleSet base;
  std::vector<MapSpec> maps;
  int depth = 0;
  SampleSet closed_points;
  std::shared_ptr<const GramFactorization> fact;
};

OrbitSample build_orbit(const SampleSet& base, std::vector<MapSpec> maps, int depth,
                        double eps_rank = 1e-10);

struct CheckReport {
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Residual of K(z, Az') = K(A*z, z') over all sample pairs.
/// Throws MissingAdjointError when the map carries no adjoint.
CheckReport check_coherence(const SampleSet& sample, const MapSpec& map, double tol = 1e-10);

struct QuantizeReport {
  OperatorOnSpan op;
  double shadow_residual = 0.0;
};

/// Quantization Gamma(A) on the span of the closed sample: the operator
/// whose shadow is S(z, z') = K(z, Az'), so Gamma(A)|z> = |Az> for sampled
/// points. Requires every base point's image to lie in the closed sample
/// (OrbitNotClosedError) and certifies the shadow identity within
/// tol * (1 + ||S||_F) (NotShadowError).
QuantizeReport quantize_report(const OrbitSample& orbit, const MapSpec& map, double tol = 1e-8);
OperatorOnSpan quantize(const OrbitSample& orbit, const MapSpec& map, double tol = 1e-8);

struct HomomorphismReport {
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// ||Gamma(AB) - Gamma(A) Gamma(B)||_F relative, on an orbit closed under
/// A, B and AB (depth >= 2).
HomomorphismReport verify_homomorphism(const OrbitSample& orbit, const MapSpec& a,
                                       const MapSpec& b, double tol = 1e-8);

struct UnitaryReport {
  double kernel_residual = 0.0;     // max |K(Az,Az') - K(z,z')| relative
  double unitarity_residual = 0.0;  // ||M* M - I||_F on the span
  double tolerance = 0.0;
  bool passed = false;
};

UnitaryReport verify_unitary(const OrbitSample& orbit, const MapSpec& map, double tol = 1e-8);

/// Multiplier identity on sampled parallel pairs: whenever
/// |z'> = lambda |z> within the sample, m(z') K(w, Az') must equal
/// lambda m(z) K(w, Az) for every sampled w. Vacuously passes when the
/// sample contains no parallel pair.
CheckReport check_multiplier(const SampleSet& sample, const MultiplierSpec& mult,
                             double tol = 1e-8, double parallel_eps = 1e-10);

/// Residual of K(z, alpha z') = chi K(z, z') over sample pairs.
CheckReport check_separable(const SampleSet& sample, const SeparableSpec& sep, double tol = 1e-10);

/// Quantization relative to a multiplier: Gamma_m(A)|z> = m(z)|Az>.
/// Preconditions: the closed sample passes the slenderness probe
/// (IllConditionedError otherwise) and base images lie in the closure
/// (OrbitNotClosedError).
QuantizeReport quantize_with_multiplier(const OrbitSample& orbit, const MultiplierSpec& mult,
                                        double tol = 1e-8, double parallel_eps = 1e-10);

/// a(m): the diagonal-on-coherent-states operator with a(m)|z> = m(z)|z>;
/// the multiplier quantization of the identity. The adjoint convention is
/// a*(m) = a(conj m)*.
QuantizeReport diag_operator(const OrbitSample& orbit,
                             const std::function<Complex(const Point&)>& m, double tol = 1e-8);

/// Normal ordering N(X) of a homogeneous kernel given by its sample values:
/// the operator whose shadow is the entrywise product X o G. Homogeneity is
/// verified on detected parallel pairs.
QuantizeReport normal_kernel_operator(const OrbitSample& orbit, const Eigen::MatrixXcd& X,
                                      double tol = 1e-8, double parallel_eps = 1e-10);

/// Inverse direction for nowhere-vanishing coherent products: recovers the
/// kernel X = shadow / G entrywise.
Eigen::MatrixXcd normal_kernel_of_operator(const OperatorOnSpan& op);

struct SlendernessReport {
  int rank = 0;
  int n = 0;
  std::vector<std::pair<int, int>> parallel_pairs;
  int parallel_classes = 0;
  bool passed = false;  // rank equals the number of parallel classes
};

/// Detects parallel coherent states through the Cauchy-Schwarz defect
/// |K(z,z')|^2 = K(z,z) K(z',z') and compares the Gram rank with the
/// number of parallel classes.
SlendernessReport slenderness_probe(const SampleSet& sample, double eps = 1e-10,
                                    double eps_rank = 1e-10);

/// Conjugation law for normal kernels: with AX(z,z') = X(A*z, A^{-1}z'),
/// checks N(AX) = Gamma(A) N(X) Gamma(A)^{-1} on the span. The kernel is
/// given as an evaluator since it is sampled at transformed points.
CheckReport conjugate_normal_kernel(const OrbitSample& orbit, const MapSpec& map,
                                    const std::function<Complex(const Point&, const Point&)>& X,
                                    double tol = 1e-8);

}  // namespace cohq
