#include "cohq/generators.hpp"

namespace cohq {

SampleSet moebius_annulus_sample(std::size_t n, double rmin, double rmax, Rng& rng) {
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex z1 = rng.in_annulus(0.9, 1.1);
    const Complex mu = rng.in_annulus(rmin, rmax);
    pts.push_back(Point::moebius(z1, mu * z1));
  }
  return SampleSet(moebius_space(), std::move(pts));
}

SampleSet klauder_ball_sample(int dim, std::size_t n, double radius, double z0_radius, Rng& rng) {
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex z0 = z0_radius > 0.0 ? rng.in_disk(z0_radius) : Complex(0.0, 0.0);
    pts.push_back(Point::klauder(z0, rng.vector_in_disk(dim, radius)));
  }
  return SampleSet(klauder_space(dim), std::move(pts));
}

SampleSet klauder_separated_sample(int dim, std::size_t n, double radius, double z0_radius,
                                   double min_dist, Rng& rng) {
  std::vector<Eigen::VectorXcd> zetas;
  int attempts = 0;
  while (zetas.size() < n) {
    if (++attempts > 100000) throw DomainError("separation constraint cannot be met");
    Eigen::VectorXcd zeta = rng.vector_in_disk(dim, radius);
    bool ok = true;
    for (const auto& other : zetas)
      if ((zeta - other).norm() < min_dist) ok = false;
    if (ok) zetas.push_back(std::move(zeta));
  }
  std::vector<Point> pts;
  pts.reserve(n);
  for (auto& zeta : zetas) {
    const Complex z0 = z0_radius > 0.0 ? rng.in_disk(z0_radius) : Complex(0.0, 0.0);
    pts.push_back(Point::klauder(z0, std::move(zeta)));
  }
  return SampleSet(klauder_space(dim), std::move(pts));
}

Eigen::Matrix2cd random_moebius_contraction(Rng& rng, double off, double diag) {
  for (;;) {
    Eigen::Matrix2cd a;
    a << Complex(1.0, 0.0), rng.in_disk(off), rng.in_disk(off), rng.in_disk(diag);
    a *= rng.unit_phase();
    if (moebius_map_contains(a)) return a;
  }
}

UnitaryOscElement random_unitary_osc(int dim, double q_radius, Rng& rng) {
  const double alpha_im = rng.uniform(-1.0, 1.0);
  Eigen::VectorXcd q = rng.vector_in_disk(dim, q_radius / std::sqrt(static_cast<double>(dim)));
  return make_unitary_osc(alpha_im, std::move(q), rng.unitary(dim));
}

OscElement random_osc_element(int dim, double radius, Rng& rng) {
  OscElement x;
  x.rho = rng.in_disk(radius);
  const double comp = radius / std::sqrt(static_cast<double>(dim));
  x.p = rng.vector_in_disk(dim, comp);
  x.q = rng.vector_in_disk(dim, comp);
  x.A = rng.matrix_in_disk(dim, dim, 1.0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(x.A);
  const double smax = svd.singularValues().maxCoeff();
  if (smax > 1.0) x.A /= smax;
  return x;
}

HeisenbergElement random_heisenberg(int dim, double radius, Rng& rng) {
  return {rng.uniform(-2.0, 2.0), rng.vector_in_disk(dim, radius)};
}

Eigen::Matrix2cd random_moebius_elliptic(Rng& rng, int order) {
  const double step = 6.283185307179586476925286766559 / static_cast<double>(order);
  const auto a = static_cast<double>(rng.bits() % static_cast<std::uint64_t>(order));
  const auto b = static_cast<double>(rng.bits() % static_cast<std::uint64_t>(order));
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::polar(1.0, step * a);
  m(1, 1) = std::polar(1.0, step * b);
  return m;
}

UnitaryOscElement random_finite_order_uos(int order, double q_radius, Rng& rng) {
  const auto m = 1 + rng.bits() % static_cast<std::uint64_t>(order - 1);
  const double theta =
      6.283185307179586476925286766559 * static_cast<double>(m) / static_cast<double>(order);
  Eigen::MatrixXcd a(1, 1);
  a(0, 0) = std::polar(1.0, theta);
  return make_unitary_osc(rng.uniform(-1.0, 1.0), rng.vector_in_disk(1, q_radius), a);
}

Eigen::Matrix2cd random_moebius_unitary(Rng& rng, double t_max) {
  const double t = rng.uniform(0.0, t_max);
  const double c = std::cosh(t), s = std::sinh(t);
  Eigen::Matrix2cd h;
  h << c, s, s, c;
  Eigen::Matrix2cd d1 = Eigen::Matrix2cd::Zero(), d2 = Eigen::Matrix2cd::Zero();
  d1(0, 0) = rng.unit_phase();
  d1(1, 1) = rng.unit_phase();
  d2(0, 0) = rng.unit_phase();
  d2(1, 1) = rng.unit_phase();
  return d1 * h * d2;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed ^ (index * 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace cohq
