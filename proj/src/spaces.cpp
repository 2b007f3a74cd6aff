#include "cohq/spaces.hpp"

#include <cmath>
#include <memory>
#include <utility>

namespace cohq {

namespace {

constexpr double kDomainMargin = 1e-12;

void check_domain(const CoherentSpace& space, const Point& z) {
  if (!space.domain_contains(z))
    throw DomainError("point outside the domain of space '" + space.name + "'");
}

Complex invert_or_throw(Complex den) {
  if (std::abs(den) < 1e-150) throw SingularityError("kernel denominator vanished");
  return Complex(1.0, 0.0) / den;
}

}  // namespace

Complex int_pow(Complex base, int e) {
  if (e < 0) return Complex(1.0, 0.0) / int_pow(base, -e);
  Complex result(1.0, 0.0);
  Complex acc = base;
  for (unsigned n = static_cast<unsigned>(e); n > 0; n >>= 1) {
    if (n & 1u) result *= acc;
    acc *= acc;
  }
  return result;
}

CoherentSpace finite_matrix_space(const Eigen::MatrixXcd& K) {
  if (K.rows() != K.cols()) throw DimensionError("finite kernel matrix must be square");
  auto mat = std::make_shared<Eigen::MatrixXcd>(K);
  CoherentSpace space;
  space.kind = SpaceKind::FiniteMatrix;
  space.name = "finite";
  space.dim = static_cast<int>(K.rows());
  space.kernel = [mat](const Point& z, const Point& zp) -> Complex {
    return (*mat)(static_cast<Eigen::Index>(z.as<FinitePoint>().index),
                  static_cast<Eigen::Index>(zp.as<FinitePoint>().index));
  };
  space.domain_contains = [n = K.rows()](const Point& z) {
    const auto* p = z.get_if<FinitePoint>();
    return p && p->index < static_cast<std::size_t>(n);
  };
  return space;
}

CoherentSpace embedded_space(int dim) {
  CoherentSpace space;
  space.kind = SpaceKind::Embedded;
  space.name = "embedded";
  space.dim = dim;
  space.kernel = [](const Point& z, const Point& zp) -> Complex {
    return z.as<EmbeddedPoint>().v.dot(zp.as<EmbeddedPoint>().v);
  };
  space.domain_contains = [dim](const Point& z) {
    const auto* p = z.get_if<EmbeddedPoint>();
    return p && p->v.size() == dim;
  };
  return space;
}

CoherentSpace szego_space() {
  CoherentSpace space;
  space.kind = SpaceKind::Szego;
  space.name = "szego";
  space.kernel = [](const Point& z, const Point& zp) -> Complex {
    const Complex a = z.as<DiskPoint>().z;
    const Complex b = zp.as<DiskPoint>().z;
    return invert_or_throw(Complex(1.0, 0.0) - std::conj(a) * b);
  };
  space.domain_contains = [](const Point& z) {
    const auto* p = z.get_if<DiskPoint>();
    return p && std::abs(p->z) < 1.0 - kDomainMargin;
  };
  return space;
}

CoherentSpace moebius_space() {
  CoherentSpace space;
  space.kind = SpaceKind::Moebius;
  space.name = "moebius";
  space.kernel = [](const Point& z, const Point& zp) -> Complex {
    const auto& a = z.as<MoebiusPoint>();
    const auto& b = zp.as<MoebiusPoint>();
    return invert_or_throw(std::conj(a.z1) * b.z1 - std::conj(a.z2) * b.z2);
  };
  space.domain_contains = [](const Point& z) {
    const auto* p = z.get_if<MoebiusPoint>();
    if (!p) return false;
    const double a1 = std::abs(p->z1);
    return a1 - std::abs(p->z2) > kDomainMargin * std::max(1.0, a1);
  };
  space.projective_degree = -1;
  space.scalar_multiply = [](Complex lambda, const Point& z) {
    if (lambda == Complex(0.0, 0.0)) throw DomainError("scalar multiplication by zero");
    const auto& p = z.as<MoebiusPoint>();
    return Point::moebius(lambda * p.z1, lambda * p.z2);
  };
  return space;
}

CoherentSpace klauder_space(int dim) {
  CoherentSpace space;
  space.kind = SpaceKind::Klauder;
  space.name = "klauder";
  space.dim = dim;
  space.kernel = [](const Point& z, const Point& zp) -> Complex {
    const auto& a = z.as<KlauderPoint>();
    const auto& b = zp.as<KlauderPoint>();
    return std::exp(std::conj(a.z0) + b.z0 + a.zeta.dot(b.zeta));
  };
  space.domain_contains = [dim](const Point& z) {
    const auto* p = z.get_if<KlauderPoint>();
    return p && p->zeta.size() == dim;
  };
  space.projective_degree = 1;
  // Principal branch of log; any fixed branch gives the same rays up to
  // unit phases (see README).
  space.scalar_multiply = [](Complex alpha, const Point& z) {
    if (alpha == Complex(0.0, 0.0)) throw DomainError("scalar multiplication by zero");
    const auto& p = z.as<KlauderPoint>();
    return Point::klauder(p.z0 + std::log(alpha), p.zeta);
  };
  return space;
}

CoherentSpace projective_extension(const CoherentSpace& base, int degree) {
  if (degree == 0) throw DomainError("projective extension degree must be nonzero");
  auto inner = std::make_shared<CoherentSpace>(base);
  CoherentSpace space;
  space.kind = SpaceKind::ProjectiveExtension;
  space.name = "pe[" + base.name + "]";
  space.dim = base.dim;
  space.kernel = [inner, degree](const Point& z, const Point& zp) -> Complex {
    const auto& a = z.as<ScaledPoint>();
    const auto& b = zp.as<ScaledPoint>();
    return int_pow(std::conj(a.scale), degree) * inner->kernel(*a.base, *b.base) *
           int_pow(b.scale, degree);
  };
  space.domain_contains = [inner](const Point& z) {
    const auto* p = z.get_if<ScaledPoint>();
    return p && p->scale != Complex(0.0, 0.0) && inner->domain_contains(*p->base);
  };
  space.projective_degree = degree;
  space.scalar_multiply = [](Complex mu, const Point& z) {
    if (mu == Complex(0.0, 0.0)) throw DomainError("scalar multiplication by zero");
    const auto& p = z.as<ScaledPoint>();
    return Point::scaled(mu * p.scale, *p.base);
  };
  space.base = inner;
  return space;
}

CoherentSpace times_space(const CoherentSpace& base) {
  if (!base.scalar_multiply)
    throw NotProjectiveError("times construction needs the base space's scalar maps");
  auto inner = std::make_shared<CoherentSpace>(base);
  CoherentSpace space;
  space.kind = SpaceKind::Times;
  space.name = "times[" + base.name + "]";
  space.dim = base.dim;
  // K_x((a,z); (a',z')) = K(a' z, a z'), with a, a' the scalar maps
  // labelled by the stored factors.
  space.kernel = [inner](const Point& z, const Point& zp) -> Complex {
    const auto& a = z.as<ScaledPoint>();
    const auto& b = zp.as<ScaledPoint>();
    return inner->kernel(inner->scalar_multiply(b.scale, *a.base),
                         inner->scalar_multiply(a.scale, *b.base));
  };
  space.domain_contains = [inner](const Point& z) {
    const auto* p = z.get_if<ScaledPoint>();
    return p && p->scale != Complex(0.0, 0.0) && inner->domain_contains(*p->base);
  };
  space.base = inner;
  return space;
}

SampleSet::SampleSet(CoherentSpace s, std::vector<Point> pts)
    : space(std::move(s)), points(std::move(pts)) {
  for (const Point& z : points) check_domain(space, z);
}

Complex eval_kernel(const CoherentSpace& space, const Point& z, const Point& zp) {
  check_domain(space, z);
  check_domain(space, zp);
  return space.kernel(z, zp);
}

Eigen::MatrixXcd gram_matrix(const SampleSet& sample) {
  const auto n = static_cast<Eigen::Index>(sample.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      g(j, k) = sample.space.kernel(sample.points[static_cast<std::size_t>(j)],
                                    sample.points[static_cast<std::size_t>(k)]);
  Eigen::MatrixXcd herm = 0.5 * (g + g.adjoint().eval());
  const double correction = (herm - g).norm();
  if (correction > 1e-12 * (1.0 + g.norm()))
    throw Error("kernel is not Hermitian on this sample (relative defect " +
                std::to_string(correction / (1.0 + g.norm())) + ")");
  return herm;
}

PositiveTypeReport check_positive_type(const SampleSet& sample, double eps) {
  if (eps <= 0.0) throw DomainError("positive-type tolerance must be positive");
  const Eigen::MatrixXcd g = gram_matrix(sample);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  PositiveTypeReport report;
  report.min_eigenvalue = es.eigenvalues().minCoeff();
  report.max_eigenvalue = es.eigenvalues().maxCoeff();
  report.passed = report.min_eigenvalue >= -eps * std::max(report.max_eigenvalue, 1.0);
  return report;
}

ProjectivityReport check_projectivity(const SampleSet& sample, int trials, Rng& rng, double tol) {
  const CoherentSpace& space = sample.space;
  if (!space.scalar_multiply || !space.projective_degree)
    throw NotProjectiveError("space '" + space.name + "' has no projective structure");
  const int degree = *space.projective_degree;
  ProjectivityReport report;
  report.tolerance = tol;
  for (int t = 0; t < trials; ++t) {
    const Complex lambda = rng.in_annulus(0.5, 2.0);
    const Complex factor = int_pow(lambda, degree);
    for (const Point& zp : sample.points) {
      for (const Point& z : sample.points) {
        const Complex lhs = space.kernel(zp, space.scalar_multiply(lambda, z));
        const Complex rhs = factor * space.kernel(zp, z);
        const double res = std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
        report.max_residual = std::max(report.max_residual, res);
      }
    }
  }
  report.passed = report.max_residual <= tol;
  return report;
}

Point random_point(const CoherentSpace& space, Rng& rng) {
  switch (space.kind) {
    case SpaceKind::Szego:
      // uniform by area, capped away from the singular boundary
      return Point::disk(rng.in_disk(0.99));
    case SpaceKind::Moebius: {
      // rejection: z1, z2 from the unit disk until |z1| clears |z2| and a
      // lower scale guard
      for (;;) {
        const Complex z1 = rng.in_disk(1.0);
        const Complex z2 = rng.in_disk(1.0);
        if (std::abs(z1) >= 0.2 && std::abs(z1) > std::abs(z2) + 1e-6)
          return Point::moebius(z1, z2);
      }
    }
    case SpaceKind::Klauder: {
      const Complex z0 = rng.in_disk(0.3);
      return Point::klauder(z0, rng.vector_in_disk(space.dim, 1.0));
    }
    case SpaceKind::Embedded:
      return Point::embedded(rng.vector_in_disk(space.dim, 1.0));
    case SpaceKind::FiniteMatrix:
      return Point::finite(static_cast<std::size_t>(rng.bits() % static_cast<std::uint64_t>(
                                                        std::max(space.dim, 1))));
    case SpaceKind::ProjectiveExtension:
    case SpaceKind::Times: {
      // scale in [0.5, 2], base point drawn from the underlying space
      if (!space.base) throw DomainError("composite space lost its base");
      const Complex scale = rng.in_annulus(0.5, 2.0);
      return Point::scaled(scale, random_point(*space.base, rng));
    }
  }
  throw DomainError("no random generator for this space kind");
}

SampleSet random_sample(const CoherentSpace& space, std::size_t n, Rng& rng) {
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) pts.push_back(random_point(space, rng));
  return SampleSet(space, std::move(pts));
}

SampleSet icosahedron_sample() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Point> pts;
  for (double s1 : {1.0, -1.0}) {
    for (double s2 : {1.0, -1.0}) {
      Eigen::VectorXcd a(3), b(3), c(3);
      a << 0.0, s1, s2 * phi;
      b << s1, s2 * phi, 0.0;
      c << s2 * phi, 0.0, s1;
      pts.push_back(Point::embedded(a));
      pts.push_back(Point::embedded(b));
      pts.push_back(Point::embedded(c));
    }
  }
  return SampleSet(embedded_space(3), std::move(pts));
}

}  // namespace cohq
