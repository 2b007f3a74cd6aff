#include "cohq/maps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cohq {

namespace {

Complex kernel_of(const SampleSet& sample, const Point& a, const Point& b) {
  return sample.space.kernel(a, b);
}

std::size_t find_point(const std::vector<Point>& pts, const Point& z) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i] == z) return i;
  return static_cast<std::size_t>(-1);
}

double relative(double diff, double scale) { return diff / (1.0 + scale); }

/// Parallel classes by the Cauchy-Schwarz defect; returns representative
/// labels (union-find over sample indices).
std::vector<int> parallel_classes(const Eigen::MatrixXcd& g, double eps,
                                  std::vector<std::pair<int, int>>* pairs) {
  const int n = static_cast<int>(g.rows());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double gii = g(i, i).real();
      const double gjj = g(j, j).real();
      if (gii <= 0.0 || gjj <= 0.0) continue;
      const double defect = std::abs(gii * gjj - std::norm(g(i, j))) / (gii * gjj);
      if (defect <= eps) {
        if (pairs) pairs->emplace_back(i, j);
        const int ri = find(i), rj = find(j);
        if (ri != rj) parent[static_cast<std::size_t>(std::max(ri, rj))] = std::min(ri, rj);
      }
    }
  }
  return parent;
}

}  // namespace

MapSpec identity_map() {
  MapSpec spec;
  spec.forward = [](const Point& z) { return z; };
  spec.adjoint = spec.forward;
  spec.inverse = spec.forward;
  spec.label = "id";
  return spec;
}

MapSpec compose(const MapSpec& a, const MapSpec& b) {
  MapSpec spec;
  spec.forward = [fa = a.forward, fb = b.forward](const Point& z) { return fa(fb(z)); };
  if (a.has_adjoint() && b.has_adjoint())
    spec.adjoint = [ga = a.adjoint, gb = b.adjoint](const Point& z) { return gb(ga(z)); };
  if (a.has_inverse() && b.has_inverse())
    spec.inverse = [ia = a.inverse, ib = b.inverse](const Point& z) { return ib(ia(z)); };
  spec.label = a.label + "*" + b.label;
  return spec;
}

MapSpec adjoint_map(const MapSpec& a) {
  if (!a.has_adjoint()) throw MissingAdjointError("map '" + a.label + "' has no adjoint");
  MapSpec spec;
  spec.forward = a.adjoint;
  spec.adjoint = a.forward;
  spec.label = a.label + "^*";
  return spec;
}

MapSpec scalar_map(const CoherentSpace& space, Complex lambda) {
  if (!space.scalar_multiply)
    throw NotProjectiveError("space '" + space.name + "' has no scalar multiplication");
  if (lambda == Complex(0.0, 0.0)) throw DomainError("scalar map factor must be nonzero");
  MapSpec spec;
  const auto mul = space.scalar_multiply;
  spec.forward = [mul, lambda](const Point& z) { return mul(lambda, z); };
  spec.adjoint = [mul, c = std::conj(lambda)](const Point& z) { return mul(c, z); };
  spec.inverse = [mul, inv = Complex(1.0, 0.0) / lambda](const Point& z) { return mul(inv, z); };
  spec.label = "scalar";
  return spec;
}

bool moebius_map_contains(const Eigen::Matrix2cd& A) {
  const double alpha = std::norm(A(0, 0)) - std::norm(A(1, 0));
  const double beta = std::abs(std::conj(A(0, 0)) * A(0, 1) - std::conj(A(1, 0)) * A(1, 1));
  const double gamma = std::norm(A(1, 1)) - std::norm(A(0, 1));
  // rounding slack so that matrices satisfying the inequalities exactly
  // (unitary phases, equality cases) are not rejected by one ulp
  const double slack = 1e-12 * std::max(1.0, std::abs(alpha));
  return alpha > 0.0 && beta <= alpha + slack && gamma <= alpha - 2.0 * beta + slack;
}

namespace {

MapSpec moebius_forward_only(const Eigen::Matrix2cd& A, const std::string& label) {
  if (!moebius_map_contains(A))
    throw DomainError("matrix violates the Moebius containment inequalities");
  MapSpec spec;
  spec.forward = [A](const Point& z) {
    const auto& p = z.as<MoebiusPoint>();
    return Point::moebius(A(0, 0) * p.z1 + A(0, 1) * p.z2, A(1, 0) * p.z1 + A(1, 1) * p.z2);
  };
  spec.label = label;
  return spec;
}

}  // namespace

MapSpec moebius_matrix_map(const Eigen::Matrix2cd& A) {
  MapSpec spec = moebius_forward_only(A, "moebius");
  Eigen::Matrix2cd sigma;
  sigma << std::conj(A(0, 0)), -std::conj(A(1, 0)), -std::conj(A(0, 1)), std::conj(A(1, 1));
  spec.adjoint = [sigma](const Point& z) {
    const auto& p = z.as<MoebiusPoint>();
    return Point::moebius(sigma(0, 0) * p.z1 + sigma(0, 1) * p.z2,
                          sigma(1, 0) * p.z1 + sigma(1, 1) * p.z2);
  };
  if (std::abs(A.determinant()) > 1e-14) {
    const Eigen::Matrix2cd inv = A.inverse();
    spec.inverse = [inv](const Point& z) {
      const auto& p = z.as<MoebiusPoint>();
      return Point::moebius(inv(0, 0) * p.z1 + inv(0, 1) * p.z2,
                            inv(1, 0) * p.z1 + inv(1, 1) * p.z2);
    };
  }
  return spec;
}

MapSpec moebius_matrix_map_with_adjoint(const Eigen::Matrix2cd& A, const Eigen::Matrix2cd& adj) {
  MapSpec spec = moebius_forward_only(A, "moebius-custom-adjoint");
  spec.adjoint = [adj](const Point& z) {
    const auto& p = z.as<MoebiusPoint>();
    return Point::moebius(adj(0, 0) * p.z1 + adj(0, 1) * p.z2,
                          adj(1, 0) * p.z1 + adj(1, 1) * p.z2);
  };
  return spec;
}

MapSpec osc_map(const OscElement& x) {
  MapSpec spec;
  spec.forward = [x](const Point& z) { return act_on_point(x, z); };
  spec.adjoint = [xa = adjoint(x)](const Point& z) { return act_on_point(xa, z); };
  try {
    spec.inverse = [xi = inverse(x)](const Point& z) { return act_on_point(xi, z); };
  } catch (const SingularError&) {
    // not invertible; leave the inverse empty
  }
  spec.label = "osc";
  return spec;
}

namespace {

/// True when the candidate's coherent state is parallel to one already in
/// the list (Cauchy-Schwarz defect at rounding level). Such points add
/// nothing to the span and would only degrade the Gram conditioning.
bool parallel_to_sample(const CoherentSpace& space, const std::vector<Point>& pts,
                        const Point& candidate) {
  const double kcc = std::abs(space.kernel(candidate, candidate));
  if (kcc == 0.0) return false;
  for (const Point& p : pts) {
    const double kpp = std::abs(space.kernel(p, p));
    if (kpp == 0.0) continue;
    const double cross = std::norm(space.kernel(p, candidate));
    if (std::abs(kcc * kpp - cross) <= 1e-12 * kcc * kpp) return true;
  }
  return false;
}

}  // namespace

OrbitSample build_orbit(const SampleSet& base, std::vector<MapSpec> maps, int depth,
                        double eps_rank) {
  if (depth < 0) throw DomainError("orbit depth must be nonnegative");
  std::vector<Point> closed = base.points;
  std::vector<Point> frontier = base.points;
  for (int level = 0; level < depth; ++level) {
    std::vector<Point> next;
    for (const MapSpec& map : maps) {
      for (const Point& z : frontier) {
        Point image = map.forward(z);
        if (!base.space.domain_contains(image))
          throw DomainError("map '" + map.label + "' leaves the domain on the orbit");
        if (find_point(closed, image) != static_cast<std::size_t>(-1)) continue;
        // parallel images are already in the span; keep the point set lean
        if (parallel_to_sample(base.space, closed, image)) continue;
        closed.push_back(image);
        next.push_back(std::move(image));
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  OrbitSample orbit{base, std::move(maps), depth, SampleSet(base.space, std::move(closed)), {}};
  orbit.fact = std::make_shared<const GramFactorization>(factor_gram(orbit.closed_points, eps_rank));
  return orbit;
}

CheckReport check_coherence(const SampleSet& sample, const MapSpec& map, double tol) {
  if (!map.has_adjoint()) throw MissingAdjointError("map '" + map.label + "' has no adjoint");
  CheckReport report;
  report.tolerance = tol;
  for (const Point& z : sample.points) {
    const Point az = map.adjoint(z);
    for (const Point& zp : sample.points) {
      const Complex lhs = kernel_of(sample, z, map.forward(zp));
      const Complex rhs = kernel_of(sample, az, zp);
      report.max_residual =
          std::max(report.max_residual, relative(std::abs(lhs - rhs), std::abs(lhs)));
    }
  }
  report.passed = report.max_residual <= tol;
  return report;
}

namespace {

/// Shadow matrix S_ij = m(z_j) K(z_i, A z_j) over the closed sample.
Eigen::MatrixXcd multiplier_shadow(const OrbitSample& orbit, const MapSpec& map,
                                   const std::function<Complex(const Point&)>& m) {
  const auto& pts = orbit.closed_points.points;
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXcd s(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Point image = map.forward(pts[static_cast<std::size_t>(j)]);
    if (!orbit.closed_points.space.domain_contains(image))
      throw DomainError("map image leaves the domain");
    const Complex mj = m ? m(pts[static_cast<std::size_t>(j)]) : Complex(1.0, 0.0);
    if (!std::isfinite(mj.real()) || !std::isfinite(mj.imag()))
      throw DomainError("multiplier value is not finite on the sample");
    for (Eigen::Index i = 0; i < n; ++i)
      s(i, j) = mj * kernel_of(orbit.closed_points, pts[static_cast<std::size_t>(i)], image);
  }
  return s;
}

void require_base_closed(const OrbitSample& orbit, const MapSpec& map) {
  for (const Point& z : orbit.base.points) {
    const Point image = map.forward(z);
    if (find_point(orbit.closed_points.points, image) != static_cast<std::size_t>(-1)) continue;
    // parallel to a sampled state counts: the image lies in the span
    if (parallel_to_sample(orbit.closed_points.space, orbit.closed_points.points, image)) continue;
    throw OrbitNotClosedError("image of a base point under '" + map.label +
                              "' is missing from the closed sample");
  }
}

}  // namespace

QuantizeReport quantize_report(const OrbitSample& orbit, const MapSpec& map, double tol) {
  require_base_closed(orbit, map);
  const Eigen::MatrixXcd s = multiplier_shadow(orbit, map, nullptr);
  double residual = 0.0;
  OperatorOnSpan op = operator_from_kernel(orbit.fact, s, tol, &residual);
  return {std::move(op), residual};
}

OperatorOnSpan quantize(const OrbitSample& orbit, const MapSpec& map, double tol) {
  return quantize_report(orbit, map, tol).op;
}

HomomorphismReport verify_homomorphism(const OrbitSample& orbit, const MapSpec& a,
                                       const MapSpec& b, double tol) {
  if (orbit.depth < 2)
    throw OrbitNotClosedError("homomorphism checks need an orbit of depth >= 2");
  const OperatorOnSpan ga = quantize(orbit, a, tol);
  const OperatorOnSpan gb = quantize(orbit, b, tol);
  const OperatorOnSpan gab = quantize(orbit, compose(a, b), tol);
  HomomorphismReport report;
  report.tolerance = tol;
  // Frobenius distance relative to the coherent frame R: factor-basis
  // directions near the rank cut carry Gram mass below eps_rank, so the
  // unweighted norm would amplify O(eps) kernel noise by 1/lambda_min;
  // the sample certifies operators only against its own span vectors.
  const Eigen::MatrixXcd& r = orbit.fact->R;
  report.residual = ((gab.M - ga.M * gb.M) * r).norm() / (1.0 + (gab.M * r).norm());
  report.passed = report.residual <= tol;
  return report;
}

UnitaryReport verify_unitary(const OrbitSample& orbit, const MapSpec& map, double tol) {
  UnitaryReport report;
  report.tolerance = tol;
  const auto& pts = orbit.closed_points.points;
  for (const Point& z : pts) {
    const Point az = map.forward(z);
    for (const Point& zp : pts) {
      const Complex lhs = kernel_of(orbit.closed_points, az, map.forward(zp));
      const Complex rhs = kernel_of(orbit.closed_points, z, zp);
      report.kernel_residual =
          std::max(report.kernel_residual, relative(std::abs(lhs - rhs), std::abs(rhs)));
    }
  }
  const OperatorOnSpan g = quantize(orbit, map, std::max(tol, 1e-6));
  const auto r = g.M.rows();
  // M*M - I measured against the coherent frame (see verify_homomorphism)
  const Eigen::MatrixXcd defect =
      (g.M.adjoint() * g.M - Eigen::MatrixXcd::Identity(r, r)) * orbit.fact->R;
  report.unitarity_residual = defect.norm() / orbit.fact->R.norm();
  report.passed = report.kernel_residual <= tol && report.unitarity_residual <= tol;
  return report;
}

CheckReport check_multiplier(const SampleSet& sample, const MultiplierSpec& mult, double tol,
                             double parallel_eps) {
  const Eigen::MatrixXcd g = gram_matrix(sample);
  std::vector<std::pair<int, int>> pairs;
  parallel_classes(g, parallel_eps, &pairs);
  CheckReport report;
  report.tolerance = tol;
  for (const auto& [i, j] : pairs) {
    // |z_j> = lambda |z_i> with lambda = <z_i|z_j> / <z_i|z_i>
    const Complex lambda = g(i, j) / g(i, i);
    const Point& zi = sample.points[static_cast<std::size_t>(i)];
    const Point& zj = sample.points[static_cast<std::size_t>(j)];
    const Point ai = mult.map.forward(zi);
    const Point aj = mult.map.forward(zj);
    const Complex mi = mult.m(zi);
    const Complex mj = mult.m(zj);
    for (const Point& w : sample.points) {
      const Complex lhs = mj * kernel_of(sample, w, aj);
      const Complex rhs = lambda * mi * kernel_of(sample, w, ai);
      report.max_residual =
          std::max(report.max_residual, relative(std::abs(lhs - rhs), std::abs(rhs)));
    }
  }
  report.passed = report.max_residual <= tol;
  return report;
}

CheckReport check_separable(const SampleSet& sample, const SeparableSpec& sep, double tol) {
  CheckReport report;
  report.tolerance = tol;
  for (const Point& z : sample.points) {
    for (const Point& zp : sample.points) {
      const Complex lhs = kernel_of(sample, z, sep.alpha(zp));
      const Complex rhs = sep.chi * kernel_of(sample, z, zp);
      report.max_residual =
          std::max(report.max_residual, relative(std::abs(lhs - rhs), std::abs(rhs)));
    }
  }
  report.passed = report.max_residual <= tol;
  return report;
}

QuantizeReport quantize_with_multiplier(const OrbitSample& orbit, const MultiplierSpec& mult,
                                        double tol, double parallel_eps) {
  const SlendernessReport probe =
      slenderness_probe(orbit.closed_points, parallel_eps, orbit.fact->eps_rank);
  if (!probe.passed)
    throw IllConditionedError(
        "closed sample Gram is rank-deficient beyond its parallel pairs (rank " +
        std::to_string(probe.rank) + " of " + std::to_string(probe.parallel_classes) +
        " classes)");
  require_base_closed(orbit, mult.map);
  const Eigen::MatrixXcd s = multiplier_shadow(orbit, mult.map, mult.m);
  double residual = 0.0;
  OperatorOnSpan op = operator_from_kernel(orbit.fact, s, tol, &residual);
  return {std::move(op), residual};
}

QuantizeReport diag_operator(const OrbitSample& orbit,
                             const std::function<Complex(const Point&)>& m, double tol) {
  return quantize_with_multiplier(orbit, MultiplierSpec{m, identity_map()}, tol);
}

QuantizeReport normal_kernel_operator(const OrbitSample& orbit, const Eigen::MatrixXcd& X,
                                      double tol, double parallel_eps) {
  const Eigen::MatrixXcd& g = orbit.fact->G;
  if (X.rows() != g.rows() || X.cols() != g.cols())
    throw DimensionError("kernel matrix does not match the closed sample");
  // homogeneity on the sample: parallel points must carry equal kernel values
  std::vector<std::pair<int, int>> pairs;
  parallel_classes(g, parallel_eps, &pairs);
  for (const auto& [i, j] : pairs) {
    for (Eigen::Index w = 0; w < g.rows(); ++w) {
      const double scale = 1.0 + std::abs(X(w, i)) + std::abs(X(i, w));
      if (std::abs(X(w, i) - X(w, j)) > tol * scale ||
          std::abs(X(i, w) - X(j, w)) > tol * scale)
        throw NotShadowError("kernel is not homogeneous on sampled parallel pairs");
    }
  }
  const Eigen::MatrixXcd s = X.cwiseProduct(g);
  double residual = 0.0;
  OperatorOnSpan op = operator_from_kernel(orbit.fact, s, tol, &residual);
  return {std::move(op), residual};
}

Eigen::MatrixXcd normal_kernel_of_operator(const OperatorOnSpan& op) {
  const Eigen::MatrixXcd shadow = shadow_of_operator(op);
  const Eigen::MatrixXcd& g = op.fact->G;
  Eigen::MatrixXcd x(shadow.rows(), shadow.cols());
  for (Eigen::Index i = 0; i < shadow.rows(); ++i) {
    for (Eigen::Index j = 0; j < shadow.cols(); ++j) {
      if (std::abs(g(i, j)) < 1e-150)
        throw SingularityError("coherent product vanishes on the sample");
      x(i, j) = shadow(i, j) / g(i, j);
    }
  }
  return x;
}

SlendernessReport slenderness_probe(const SampleSet& sample, double eps, double eps_rank) {
  SlendernessReport report;
  report.n = static_cast<int>(sample.size());
  const GramFactorization fact = factor_gram(sample, eps_rank);
  report.rank = fact.rank;
  std::vector<int> parent = parallel_classes(fact.G, eps, &report.parallel_pairs);
  int classes = 0;
  for (int i = 0; i < report.n; ++i)
    if (parent[static_cast<std::size_t>(i)] == i) ++classes;
  report.parallel_classes = classes;
  report.passed = report.rank == classes;
  return report;
}

CheckReport conjugate_normal_kernel(const OrbitSample& orbit, const MapSpec& map,
                                    const std::function<Complex(const Point&, const Point&)>& X,
                                    double tol) {
  if (!map.has_adjoint()) throw MissingAdjointError("map '" + map.label + "' has no adjoint");
  if (!map.has_inverse()) throw DomainError("map '" + map.label + "' has no inverse");
  const auto& pts = orbit.closed_points.points;
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXcd x0(n, n), x1(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Point ai = map.adjoint(pts[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < n; ++j) {
      const Point ij = map.inverse(pts[static_cast<std::size_t>(j)]);
      x0(i, j) = X(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
      x1(i, j) = X(ai, ij);  // (AX)(z, z') = X(A* z, A^{-1} z')
    }
  }
  const QuantizeReport nx = normal_kernel_operator(orbit, x0, tol);
  const QuantizeReport nax = normal_kernel_operator(orbit, x1, tol);
  MapSpec inv;
  inv.forward = map.inverse;
  inv.label = map.label + "^-1";
  const OperatorOnSpan ga = quantize(orbit, map, tol);
  const OperatorOnSpan gai = quantize(orbit, inv, tol);
  CheckReport report;
  report.tolerance = tol;
  const Eigen::MatrixXcd lhs = nax.op.M;
  const Eigen::MatrixXcd rhs = ga.M * nx.op.M * gai.M;
  report.max_residual = (lhs - rhs).norm() / (1.0 + lhs.norm());
  report.passed = report.max_residual <= tol;
  return report;
}

}  // namespace cohq
