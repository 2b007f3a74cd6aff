#include "cohq/suite.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "cohq/fock.hpp"
#include "cohq/generators.hpp"

namespace cohq {

namespace {

double param(const Json& p, const char* key, double fallback) {
  return p.contains(key) ? p[key].get<double>() : fallback;
}

int param_int(const Json& p, const char* key, int fallback) {
  return p.contains(key) ? p[key].get<int>() : fallback;
}

std::string param_str(const Json& p, const char* key, const std::string& fallback) {
  return p.contains(key) ? p[key].get<std::string>() : fallback;
}

/// "space" may be a shorthand string ("szego") or a full space document.
CoherentSpace space_param(const Json& p, const std::string& fallback = "klauder") {
  Json sj;
  if (p.contains("space") && p["space"].is_object()) return space_from_json(p["space"]);
  sj["space"] = param_str(p, "space", fallback);
  sj["dim"] = param_int(p, "dim", 2);
  return space_from_json(sj);
}

struct Outcome {
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

Outcome outcome(double residual, double tol) { return {residual, tol, residual <= tol}; }

double tol_or(const CheckSpec& spec, double fallback) {
  return spec.tol > 0.0 ? spec.tol : fallback;
}

// ---------------------------------------------------------------- checks

Outcome check_positive_type_suite(const CheckSpec& spec, Rng& rng) {
  const CoherentSpace space = space_param(spec.params);
  const int samples = param_int(spec.params, "samples", 20);
  const auto points = static_cast<std::size_t>(param_int(spec.params, "points", 20));
  const double eps = tol_or(spec, 1e-10);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const PositiveTypeReport rep = check_positive_type(random_sample(space, points, rng), eps);
    worst = std::max(worst, std::max(0.0, -rep.min_eigenvalue) /
                                std::max(rep.max_eigenvalue, 1.0));
  }
  return outcome(worst, eps);
}

Outcome check_hermitian_suite(const CheckSpec& spec, Rng& rng) {
  const CoherentSpace space = space_param(spec.params);
  const SampleSet sample =
      random_sample(space, static_cast<std::size_t>(param_int(spec.params, "points", 15)), rng);
  double worst = 0.0;
  for (const Point& z : sample.points) {
    for (const Point& zp : sample.points) {
      const Complex a = space.kernel(z, zp);
      const Complex b = std::conj(space.kernel(zp, z));
      worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a)));
    }
  }
  return outcome(worst, tol_or(spec, 1e-12));
}

Outcome check_projectivity_suite(const CheckSpec& spec, Rng& rng) {
  const CoherentSpace space = space_param(spec.params);
  const SampleSet sample =
      random_sample(space, static_cast<std::size_t>(param_int(spec.params, "points", 8)), rng);
  const ProjectivityReport rep =
      check_projectivity(sample, param_int(spec.params, "trials", 5), rng, tol_or(spec, 1e-10));
  return {rep.max_residual, rep.tolerance, rep.passed};
}

Outcome check_klauder_degeneracy(const CheckSpec& spec, Rng& rng) {
  const int dim = param_int(spec.params, "dim", 1);
  const CoherentSpace space = klauder_space(dim);
  const SampleSet sample =
      random_sample(space, static_cast<std::size_t>(param_int(spec.params, "points", 8)), rng);
  const Complex two_pi_i(0.0, 6.283185307179586476925286766559);
  double worst = 0.0;
  for (const Point& z : sample.points) {
    const auto& kp = z.as<KlauderPoint>();
    for (int k : {-2, -1, 1, 2}) {
      const Point shifted = Point::klauder(kp.z0 + static_cast<double>(k) * two_pi_i, kp.zeta);
      for (const Point& zp : sample.points) {
        const Complex a = space.kernel(shifted, zp);
        const Complex b = space.kernel(z, zp);
        worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(b)));
      }
    }
  }
  return outcome(worst, tol_or(spec, 1e-12));
}

Outcome check_shadow_identity(const CheckSpec& spec, Rng& rng) {
  const CoherentSpace space = space_param(spec.params);
  const SampleSet sample =
      random_sample(space, static_cast<std::size_t>(param_int(spec.params, "points", 15)), rng);
  // eps_rank well above the eigensolver noise floor: directions kept near
  // the cut would amplify O(eps) errors by 1/lambda in the factor basis
  const double eps_rank = param(spec.params, "eps_rank", 1e-6);
  auto fact = std::make_shared<const GramFactorization>(factor_gram(sample, eps_rank));
  const OperatorOnSpan op = operator_from_kernel(fact, fact->G, 1e-6);
  const double res =
      (op.M - Eigen::MatrixXcd::Identity(fact->rank, fact->rank)).norm();
  return outcome(res, tol_or(spec, 1e-8));
}

Outcome check_admissibility(const CheckSpec& spec, Rng& rng) {
  const int dim = param_int(spec.params, "dim", 1);
  const int trials = param_int(spec.params, "trials", 100);
  const auto n = static_cast<std::size_t>(param_int(spec.params, "points", 8));
  int failures = 0;

  // duplicated point: f must be accepted iff its two values agree
  SampleSet dup = klauder_separated_sample(dim, n, 0.8, 0.2, 0.25, rng);
  dup.points.push_back(dup.points.front());
  const GramFactorization dup_fact = factor_gram(dup);
  Eigen::VectorXcd f = rng.vector_in_disk(static_cast<Eigen::Index>(dup.size()), 1.0);
  f[f.size() - 1] = f[0];
  if (!is_admissible(dup_fact, f)) ++failures;
  f[f.size() - 1] = f[0] + Complex(1.0, 0.0);
  if (is_admissible(dup_fact, f)) ++failures;

  // full-rank sample accepts everything
  const SampleSet full = klauder_separated_sample(dim, n, 0.8, 0.2, 0.25, rng);
  const GramFactorization full_fact = factor_gram(full);
  if (full_fact.rank != static_cast<int>(full.size())) ++failures;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXcd g = rng.vector_in_disk(static_cast<Eigen::Index>(full.size()), 1.0);
    if (!is_admissible(full_fact, g)) ++failures;
    Eigen::VectorXcd psi = vector_from_admissible(full_fact, g);
    if ((full_fact.R.adjoint() * psi - g).norm() > 1e-9 * (1.0 + g.norm())) ++failures;
  }
  return outcome(static_cast<double>(failures), 0.5);
}

MapSpec map_param(const CheckSpec& spec, const CoherentSpace& space, Rng& rng) {
  if (spec.params.contains("map")) return map_from_json(space, spec.params["map"]);
  const std::string random = param_str(spec.params, "random_map", "moebius-contraction");
  if (random == "moebius-contraction") return moebius_matrix_map(random_moebius_contraction(rng));
  if (random == "moebius-unitary") return moebius_matrix_map(random_moebius_unitary(rng));
  if (random == "uos")
    return osc_map(embed_unitary(random_unitary_osc(space.dim, 0.25, rng)));
  throw ConfigError("unknown random_map '" + random + "'");
}

Outcome check_coherence_suite(const CheckSpec& spec, Rng& rng) {
  const CoherentSpace space = space_param(spec.params, "moebius");
  const MapSpec map = map_param(spec, space, rng);
  const SampleSet sample =
      space.kind == SpaceKind::Moebius
          ? moebius_annulus_sample(static_cast<std::size_t>(param_int(spec.params, "points", 10)),
                                   0.1, 0.6, rng)
          : random_sample(space, static_cast<std::size_t>(param_int(spec.params, "points", 10)),
                          rng);
  const CheckReport rep = check_coherence(sample, map, tol_or(spec, 1e-10));
  return {rep.max_residual, rep.tolerance, rep.passed};
}

Outcome check_wrong_adjoint(const CheckSpec& spec, Rng& rng) {
  const Eigen::Matrix2cd a = random_moebius_contraction(rng, 0.2, 0.6);
  const MapSpec map = moebius_matrix_map_with_adjoint(a, a.adjoint());
  const SampleSet sample =
      moebius_annulus_sample(static_cast<std::size_t>(param_int(spec.params, "points", 10)), 0.1,
                             0.6, rng);
  const CheckReport rep = check_coherence(sample, map, tol_or(spec, 1e-10));
  return {rep.max_residual, rep.tolerance, rep.passed};
}

Outcome check_homomorphism_suite(const CheckSpec& spec, Rng& rng) {
  const std::string kind = param_str(spec.params, "space", "moebius");
  const int pairs = param_int(spec.params, "pairs", 2);
  const int depth = param_int(spec.params, "depth", 2);
  const double tol = tol_or(spec, 1e-8);
  const double eps_rank = param(spec.params, "eps_rank", 1e-12);
  double worst = 0.0;
  for (int t = 0; t < pairs; ++t) {
    MapSpec a, b;
    SampleSet base = [&] {
      if (kind == "moebius") {
        // base points spread for rank; the maps funnel the orbit into the
        // resolved core, so the sampled span is numerically A,B-invariant
        a = moebius_matrix_map(random_moebius_contraction(rng));
        b = moebius_matrix_map(random_moebius_contraction(rng));
        return moebius_annulus_sample(
            static_cast<std::size_t>(param_int(spec.params, "points", 12)), 0.3, 0.6, rng);
      }
      // commuting powers of one finite-order element: all length <= 2
      // words are sampled powers or central shifts of them, so the span
      // is exactly invariant
      const int order = param_int(spec.params, "order", 5);
      const OscElement c = embed_unitary(random_finite_order_uos(order, 0.25, rng));
      a = osc_map(c);
      b = osc_map(multiply(c, c));
      return klauder_ball_sample(1, static_cast<std::size_t>(param_int(spec.params, "points", 6)),
                                 0.4, 0.2, rng);
    }();
    const OrbitSample orbit = build_orbit(base, {a, b}, depth, eps_rank);
    const HomomorphismReport rep = verify_homomorphism(orbit, a, b, tol);
    worst = std::max(worst, rep.residual);
  }
  return outcome(worst, tol);
}

Outcome check_unitary_suite(const CheckSpec& spec, Rng& rng) {
  const std::string kind = param_str(spec.params, "space", "klauder");
  const int elements = param_int(spec.params, "elements", 10);
  const double tol = tol_or(spec, 1e-8);
  const double eps_rank = param(spec.params, "eps_rank", 1e-10);
  double worst = 0.0;
  for (int t = 0; t < elements; ++t) {
    // finite-order rotation blocks close the orbit span exactly: the
    // order-th power is central, so wrap-around images are parallel to
    // sampled states
    const int order = 3 + static_cast<int>(rng.bits() % 4ull);  // 3..6
    MapSpec map;
    SampleSet base = [&] {
      if (kind == "moebius") {
        map = moebius_matrix_map(random_moebius_elliptic(rng, order));
        return moebius_annulus_sample(
            static_cast<std::size_t>(param_int(spec.params, "points", 8)), 0.2, 0.6, rng);
      }
      map = osc_map(embed_unitary(random_finite_order_uos(order, 0.25, rng)));
      return klauder_ball_sample(1, static_cast<std::size_t>(param_int(spec.params, "points", 6)),
                                 0.4, 0.2, rng);
    }();
    const OrbitSample orbit = build_orbit(base, {map, adjoint_map(map)}, order, eps_rank);
    const UnitaryReport rep = verify_unitary(orbit, map, tol);
    worst = std::max(worst, std::max(rep.kernel_residual, rep.unitarity_residual));
  }
  return outcome(worst, tol);
}

Outcome check_unitary_rejects(const CheckSpec& spec, Rng& rng) {
  const int dim = param_int(spec.params, "dim", 1);
  // q != -A* p breaks unitarity: a bare translation-in-zeta element
  OscElement x = OscElement::identity(dim);
  x.q[0] = param(spec.params, "shift", 0.3);
  const MapSpec map = osc_map(x);
  const SampleSet base = klauder_ball_sample(
      dim, static_cast<std::size_t>(param_int(spec.params, "points", 8)), 0.3, 0.2, rng);
  const OrbitSample orbit = build_orbit(base, {map, adjoint_map(map)}, 2);
  const UnitaryReport rep = verify_unitary(orbit, map, tol_or(spec, 1e-8));
  // the deliberately broken element must fail the unitarity check
  return {rep.kernel_residual, rep.tolerance, !rep.passed};
}

Outcome check_separable_suite(const CheckSpec& spec, Rng& rng) {
  const int dim = param_int(spec.params, "dim", 1);
  const CoherentSpace space = klauder_space(dim);
  const SampleSet sample = klauder_ball_sample(
      dim, static_cast<std::size_t>(param_int(spec.params, "points", 8)), 0.8, 0.2, rng);
  const std::string variant = param_str(spec.params, "variant", "scalar");
  if (variant == "scalar") {
    const Complex lambda = rng.in_annulus(0.5, 2.0);
    SeparableSpec sep{[mul = space.scalar_multiply, lambda](const Point& z) {
                        return mul(lambda, z);
                      },
                      lambda, "scalar"};
    const CheckReport rep = check_separable(sample, sep, tol_or(spec, 1e-10));
    return {rep.max_residual, rep.tolerance, rep.passed};
  }
  if (variant == "translation-rejects") {
    OscElement x = OscElement::identity(dim);
    x.q[0] = 0.4;
    // estimate chi from the first pair, then demand the identity globally
    const Point img = act_on_point(x, sample.points[0]);
    const Complex chi = space.kernel(sample.points[1], img) /
                        space.kernel(sample.points[1], sample.points[0]);
    SeparableSpec sep{[x](const Point& z) { return act_on_point(x, z); }, chi, "translation"};
    const CheckReport rep = check_separable(sample, sep, tol_or(spec, 1e-10));
    return {rep.max_residual, rep.tolerance, !rep.passed};
  }
  throw ConfigError("unknown separable variant '" + variant + "'");
}

Outcome check_multiplier_suite(const CheckSpec& spec, Rng& rng) {
  const int dim = param_int(spec.params, "dim", 1);
  const CoherentSpace space = klauder_space(dim);
  SampleSet sample = klauder_ball_sample(
      dim, static_cast<std::size_t>(param_int(spec.params, "points", 6)), 0.8, 0.2, rng);
  // insert the scalar multiple 2 z of the first point: a parallel pair
  sample.points.push_back(space.scalar_multiply(Complex(2.0, 0.0), sample.points.front()));
  const std::string variant = param_str(spec.params, "variant", "coherent");
  if (variant == "coherent") {
    OscElement x = OscElement::identity(dim);
    x.q[0] = 0.3;
    MultiplierSpec mult{[](const Point&) { return Complex(1.0, 0.0); }, osc_map(x)};
    const CheckReport rep = check_multiplier(sample, mult, tol_or(spec, 1e-8));
    return {rep.max_residual, rep.tolerance, rep.passed};
  }
  if (variant == "nonhomogeneous-rejects") {
    MultiplierSpec mult{[](const Point& z) { return z.as<KlauderPoint>().z0; }, identity_map()};
    const CheckReport rep = check_multiplier(sample, mult, tol_or(spec, 1e-8));
    return {rep.max_residual, rep.tolerance, !rep.passed};
  }
  throw ConfigError("unknown multiplier variant '" + variant + "'");
}

Outcome check_slenderness_suite(const CheckSpec& spec, Rng& rng) {
  const std::string kind = param_str(spec.params, "space", "moebius");
  const auto n = static_cast<std::size_t>(param_int(spec.params, "points", 15));
  const bool insert_parallel = spec.params.contains("insert_parallel") &&
                               spec.params["insert_parallel"].get<bool>();
  SampleSet sample = kind == "moebius"
                         ? moebius_annulus_sample(n, 0.4, 0.9, rng)
                         : klauder_ball_sample(param_int(spec.params, "dim", 2), n, 1.0, 0.2, rng);
  if (insert_parallel)
    sample.points.push_back(
        sample.space.scalar_multiply(Complex(2.0, 0.0), sample.points.front()));
  const SlendernessReport rep = slenderness_probe(sample, 1e-10, param(spec.params, "eps_rank", 1e-10));
  const int expected_rank = static_cast<int>(n);
  bool ok = rep.passed && rep.rank == expected_rank;
  if (insert_parallel) ok = ok && rep.parallel_pairs.size() == 1;
  return {static_cast<double>(std::abs(rep.rank - expected_rank)), 0.5, ok};
}

Outcome check_osc_oracle(const CheckSpec& spec, Rng& rng) {
  const int pairs = param_int(spec.params, "pairs", 1000);
  const int dim_max = param_int(spec.params, "dim_max", 4);
  double worst = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const int d = 1 + static_cast<int>(rng.bits() % static_cast<std::uint64_t>(dim_max));
    const OscElement x = random_osc_element(d, 2.0, rng);
    const OscElement y = random_osc_element(d, 2.0, rng);
    const Eigen::MatrixXcd block =
        as_block_matrix(multiply(x, y)) - as_block_matrix(x) * as_block_matrix(y);
    worst = std::max(worst, block.cwiseAbs().maxCoeff());
    const OscElement xaa = adjoint(adjoint(x));
    double round_trip = std::abs(xaa.rho - x.rho);
    round_trip = std::max(round_trip, (xaa.p - x.p).cwiseAbs().maxCoeff());
    round_trip = std::max(round_trip, (xaa.q - x.q).cwiseAbs().maxCoeff());
    round_trip = std::max(round_trip, (xaa.A - x.A).cwiseAbs().maxCoeff());
    worst = std::max(worst, round_trip);
    // (xy)* = y* x* through the block oracle
    const Eigen::MatrixXcd lhs = as_block_matrix(adjoint(multiply(x, y)));
    const Eigen::MatrixXcd rhs = as_block_matrix(multiply(adjoint(y), adjoint(x)));
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return outcome(worst, tol_or(spec, 1e-12));
}

Outcome check_osc_inverse_oracle(const CheckSpec& spec, Rng& rng) {
  const int count = param_int(spec.params, "count", 200);
  const int dim_max = param_int(spec.params, "dim_max", 4);
  double worst = 0.0;
  for (int t = 0; t < count; ++t) {
    const int d = 1 + static_cast<int>(rng.bits() % static_cast<std::uint64_t>(dim_max));
    OscElement x = random_osc_element(d, 2.0, rng);
    x.A += Eigen::MatrixXcd::Identity(d, d);  // keep it comfortably invertible
    const OscElement xi = inverse(x);
    const Eigen::MatrixXcd block_inv = as_block_matrix(x).inverse();
    worst = std::max(worst, (as_block_matrix(xi) - block_inv).cwiseAbs().maxCoeff());
    const Eigen::MatrixXcd round =
        as_block_matrix(multiply(x, xi)) - Eigen::MatrixXcd::Identity(d + 2, d + 2);
    worst = std::max(worst, round.cwiseAbs().maxCoeff());
  }
  return outcome(worst, tol_or(spec, 1e-10));
}

Outcome check_heisenberg_suite(const CheckSpec& spec, Rng& rng) {
  double worst = 0.0;
  // printed example: W_0(1) W_0(i) = W_2(1+i) since sigma(1, i) = 2
  {
    Eigen::VectorXcd q1(1), q2(1);
    q1 << Complex(1.0, 0.0);
    q2 << Complex(0.0, 1.0);
    const HeisenbergElement w = heisenberg_multiply({0.0, q1}, {0.0, q2});
    worst = std::max(worst, std::abs(w.lambda - 2.0));
    worst = std::max(worst, (w.q - (q1 + q2)).cwiseAbs().maxCoeff());
  }
  const int triples = param_int(spec.params, "triples", 100);
  const int dim = param_int(spec.params, "dim", 2);
  for (int t = 0; t < triples; ++t) {
    const HeisenbergElement a = random_heisenberg(dim, 1.0, rng);
    const HeisenbergElement b = random_heisenberg(dim, 1.0, rng);
    const HeisenbergElement c = random_heisenberg(dim, 1.0, rng);
    const HeisenbergElement left = heisenberg_multiply(heisenberg_multiply(a, b), c);
    const HeisenbergElement right = heisenberg_multiply(a, heisenberg_multiply(b, c));
    worst = std::max(worst, std::abs(left.lambda - right.lambda));
    worst = std::max(worst, (left.q - right.q).cwiseAbs().maxCoeff());
    // inverse law W_lambda(q)^{-1} = W_{-lambda}(-q)
    const HeisenbergElement unit = heisenberg_multiply(a, heisenberg_inverse(a));
    worst = std::max(worst, std::abs(unit.lambda) + unit.q.cwiseAbs().maxCoeff());
    // the embedding reverses the order of the printed law
    const Eigen::MatrixXcd emb =
        as_block_matrix(embed_heisenberg(heisenberg_multiply(a, b))) -
        as_block_matrix(embed_heisenberg(b)) * as_block_matrix(embed_heisenberg(a));
    worst = std::max(worst, emb.cwiseAbs().maxCoeff());
  }
  return outcome(worst, tol_or(spec, 1e-12));
}

Outcome check_ccr(const CheckSpec& spec, Rng&) {
  const int dim = param_int(spec.params, "dim", 1);
  const int cutoff = param_int(spec.params, "cutoff", 40);
  const FockBasisPtr basis = make_fock_basis(dim, cutoff);
  double worst = 0.0;
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      const Eigen::MatrixXcd comm = annihilator(basis, j).matrix * creator(basis, k).matrix -
                                    creator(basis, k).matrix * annihilator(basis, j).matrix;
      const double delta = j == k ? 1.0 : 0.0;
      for (std::size_t col = 0; col < basis->size(); ++col) {
        if (basis->degree(col) >= cutoff) continue;  // truncation boundary excluded
        Eigen::VectorXcd diff = comm.col(static_cast<Eigen::Index>(col));
        diff[static_cast<Eigen::Index>(col)] -= delta;
        worst = std::max(worst, diff.cwiseAbs().maxCoeff());
      }
    }
  }
  return outcome(worst, tol_or(spec, 1e-13));
}

Outcome check_ccr_smeared(const CheckSpec& spec, Rng& rng) {
  const int dim = param_int(spec.params, "dim", 1);
  const int cutoff = param_int(spec.params, "cutoff", 40);
  const int degree = param_int(spec.params, "degree", 20);
  const int trials = param_int(spec.params, "trials", 5);
  const FockBasisPtr basis = make_fock_basis(dim, cutoff);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXcd p = rng.vector_in_disk(dim, 1.0);
    const Eigen::VectorXcd q = rng.vector_in_disk(dim, 1.0);
    const Eigen::MatrixXcd pa = smeared(basis, p).matrix;
    const Eigen::MatrixXcd aq = smeared_adjoint(basis, q).matrix;
    const Eigen::MatrixXcd comm = pa * aq - aq * pa;
    const Complex scalar = p.dot(q);  // p*q, not sigma(p,q); see README
    for (std::size_t col = 0; col < basis->size(); ++col) {
      if (basis->degree(col) > degree) continue;
      Eigen::VectorXcd diff = comm.col(static_cast<Eigen::Index>(col));
      diff[static_cast<Eigen::Index>(col)] -= scalar;
      worst = std::max(worst, diff.norm());
    }
    // (p*a)(q*a) = (q*a)(p*a) exactly
    const Eigen::MatrixXcd qa = smeared(basis, q).matrix;
    worst = std::max(worst, (pa * qa - qa * pa).cwiseAbs().maxCoeff());
  }
  return outcome(worst, tol_or(spec, 1e-10));
}

Outcome check_weyl(const CheckSpec& spec, Rng&) {
  const int dim = param_int(spec.params, "dim", 1);
  const int cutoff = param_int(spec.params, "cutoff", 40);
  const int probe = param_int(spec.params, "probe", 10);
  const FockBasisPtr basis = make_fock_basis(dim, cutoff);
  Eigen::VectorXcd p(dim), q(dim);
  p.setConstant(Complex(param(spec.params, "p", 0.5), 0.0));
  q.setConstant(Complex(param(spec.params, "q", 0.5), 0.0));
  const WeylReport rep = weyl_check(basis, p, q, probe);
  return outcome(rep.max_difference, tol_or(spec, 1e-8));
}

Outcome check_glauber_overlap(const CheckSpec& spec, Rng& rng) {
  const int dim = param_int(spec.params, "dim", 1);
  const int cutoff = param_int(spec.params, "cutoff", 30);
  const int pairs = param_int(spec.params, "pairs", 50);
  const double radius = param(spec.params, "radius", 1.0);
  const double tol = tol_or(spec, 1e-10);
  const FockBasisPtr basis = make_fock_basis(dim, cutoff);
  double worst = 0.0;
  bool tails_ok = true;
  for (int t = 0; t < pairs; ++t) {
    const Eigen::VectorXcd za = rng.vector_in_disk(dim, radius);
    const Eigen::VectorXcd zb = rng.vector_in_disk(dim, radius);
    const FockVector va = coherent_vector(Point::klauder(Complex(0, 0), za), basis);
    const FockVector vb = coherent_vector(Point::klauder(Complex(0, 0), zb), basis);
    const Complex truncated = va.coeffs.dot(vb.coeffs);
    const Complex exact = std::exp(za.dot(zb));
    worst = std::max(worst, std::abs(truncated - exact));
    if (exp_tail(za.norm() * zb.norm(), cutoff) > tol) tails_ok = false;
  }
  return {worst, tol, worst <= tol && tails_ok};
}

Outcome check_gamma_action(const CheckSpec& spec, Rng& rng) {
  const int dim = param_int(spec.params, "dim", 1);
  const int cutoff = param_int(spec.params, "cutoff", 30);
  const int elements = param_int(spec.params, "elements", 20);
  const double radius = param(spec.params, "radius", 0.5);
  const double tol = tol_or(spec, 1e-8);
  const FockBasisPtr basis = make_fock_basis(dim, cutoff);
  double worst = 0.0;
  bool ok = true;
  for (int t = 0; t < elements; ++t) {
    const OscElement x = random_osc_element(dim, radius, rng);
    const FockOperator gx = gamma_osc(x, basis);
    const Point z = Point::klauder(rng.in_disk(0.3), rng.vector_in_disk(dim, radius));
    const FockVector lhs = apply(gx, coherent_vector(z, basis));
    const Point xz = act_on_point(x, z);
    const FockVector rhs = coherent_vector(xz, basis);
    const double diff = (lhs.coeffs - rhs.coeffs).norm();
    const double bound =
        gx.matrix.norm() * coherent_tail_norm(z, cutoff) + coherent_tail_norm(xz, cutoff);
    worst = std::max(worst, diff);
    if (diff > std::max(tol, bound)) ok = false;
  }
  return {worst, tol, ok};
}

Outcome check_gamma_shadow(const CheckSpec& spec, Rng& rng) {
  const int dim = param_int(spec.params, "dim", 1);
  const int cutoff = param_int(spec.params, "cutoff", 30);
  const int pairs = param_int(spec.params, "pairs", 10);
  const double radius = param(spec.params, "radius", 0.5);
  const FockBasisPtr basis = make_fock_basis(dim, cutoff);
  const CoherentSpace space = klauder_space(dim);
  double worst = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const OscElement x = random_osc_element(dim, radius, rng);
    const FockOperator gx = gamma_osc(x, basis);
    const Point z = Point::klauder(rng.in_disk(0.3), rng.vector_in_disk(dim, radius));
    const Point zp = Point::klauder(rng.in_disk(0.3), rng.vector_in_disk(dim, radius));
    const FockVector vz = coherent_vector(z, basis);
    const FockVector vzp = coherent_vector(zp, basis);
    const Complex lhs = vz.coeffs.dot(gx.matrix * vzp.coeffs);
    const Complex rhs = space.kernel(z, act_on_point(x, zp));
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
  }
  return outcome(worst, tol_or(spec, 1e-8));
}

Outcome check_gamma_fock_homomorphism(const CheckSpec& spec, Rng& rng) {
  const int dim = param_int(spec.params, "dim", 1);
  const int cutoff = param_int(spec.params, "cutoff", 40);
  const int probe = param_int(spec.params, "probe", 10);
  const int pairs = param_int(spec.params, "pairs", 5);
  const double radius = param(spec.params, "radius", 0.4);
  const FockBasisPtr basis = make_fock_basis(dim, cutoff);
  double worst = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const OscElement x = random_osc_element(dim, radius, rng);
    const OscElement y = random_osc_element(dim, radius, rng);
    const Eigen::MatrixXcd gxy = gamma_osc(multiply(x, y), basis).matrix;
    const Eigen::MatrixXcd gxgy = gamma_osc(x, basis).matrix * gamma_osc(y, basis).matrix;
    for (std::size_t col = 0; col < basis->size(); ++col) {
      if (basis->degree(col) > probe) continue;
      const auto c = static_cast<Eigen::Index>(col);
      worst = std::max(worst, (gxy.col(c) - gxgy.col(c)).norm() / (1.0 + gxy.col(c).norm()));
    }
  }
  return outcome(worst, tol_or(spec, 1e-8));
}

Outcome check_normal_ordered(const CheckSpec& spec, Rng& rng) {
  const int dim = param_int(spec.params, "dim", 1);
  const int cutoff = param_int(spec.params, "cutoff", 30);
  const int max_degree = param_int(spec.params, "max_degree", 4);
  const int pairs = param_int(spec.params, "pairs", 10);
  const double radius = param(spec.params, "radius", 1.0);
  const FockBasisPtr basis = make_fock_basis(dim, cutoff);
  double worst = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const Eigen::VectorXcd za = rng.vector_in_disk(dim, radius);
    const Eigen::VectorXcd zb = rng.vector_in_disk(dim, radius);
    const FockVector va = coherent_vector(Point::klauder(Complex(0, 0), za), basis);
    const FockVector vb = coherent_vector(Point::klauder(Complex(0, 0), zb), basis);
    for (int db = 0; db <= max_degree; ++db) {
      for (int da = 0; da + db <= max_degree; ++da) {
        std::vector<int> beta(static_cast<std::size_t>(dim), 0);
        std::vector<int> alpha(static_cast<std::size_t>(dim), 0);
        beta[0] = db;
        alpha[0] = da;
        const FockOperator mono = normal_ordered_monomial(basis, beta, alpha);
        const Complex lhs = va.coeffs.dot(mono.matrix * vb.coeffs);
        const Complex rhs = std::pow(std::conj(za[0]), db) * std::pow(zb[0], da) *
                            std::exp(za.dot(zb));
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
      }
    }
  }
  return outcome(worst, tol_or(spec, 1e-8));
}

Outcome check_normal_order_uniqueness(const CheckSpec& spec, Rng&) {
  const int dim = param_int(spec.params, "dim", 1);
  const int cutoff = param_int(spec.params, "cutoff", 12);
  const int degree = param_int(spec.params, "degree", 6);
  const FockBasisPtr basis = make_fock_basis(dim, cutoff);
  const FockBasisPtr pair_basis = make_fock_basis(2 * dim, degree);  // enumerates (beta, alpha)
  std::vector<std::pair<std::vector<int>, std::vector<int>>> monomials;
  for (std::size_t i = 0; i < pair_basis->size(); ++i) {
    const std::vector<int>& s = pair_basis->state(i);
    monomials.emplace_back(std::vector<int>(s.begin(), s.begin() + dim),
                           std::vector<int>(s.begin() + dim, s.end()));
  }
  const auto dim_sq = static_cast<Eigen::Index>(basis->size() * basis->size());
  Eigen::MatrixXcd stacked(dim_sq, static_cast<Eigen::Index>(monomials.size()));
  for (std::size_t m = 0; m < monomials.size(); ++m) {
    const FockOperator op = normal_ordered_monomial(basis, monomials[m].first, monomials[m].second);
    stacked.col(static_cast<Eigen::Index>(m)) =
        Eigen::Map<const Eigen::VectorXcd>(op.matrix.data(), dim_sq);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(stacked);
  qr.setThreshold(1e-9);
  const double deficiency = static_cast<double>(monomials.size()) - qr.rank();
  return outcome(deficiency, 0.5);
}

Outcome check_quadrature(const CheckSpec& spec, Rng& rng) {
  const int nodes = param_int(spec.params, "nodes", 64);
  const int pairs = param_int(spec.params, "pairs", 20);
  const double radius = param(spec.params, "radius", 1.0);
  const CoherentSpace space = klauder_space(1);
  double worst = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const Point z = Point::klauder(rng.in_disk(0.3), rng.vector_in_disk(1, radius));
    const Point zp = Point::klauder(rng.in_disk(0.3), rng.vector_in_disk(1, radius));
    const Complex quad = gauss_hermite_overlap(z, zp, nodes);
    const Complex exact = eval_kernel(space, z, zp);
    worst = std::max(worst, std::abs(quad - exact) / (1.0 + std::abs(exact)));
  }
  return outcome(worst, tol_or(spec, 1e-8));
}

Outcome check_icosahedron(const CheckSpec& spec, Rng&) {
  const SampleSet sample = icosahedron_sample();
  const GramFactorization fact = factor_gram(sample, param(spec.params, "eps_rank", 1e-10));
  return outcome(std::abs(fact.rank - 3.0), 0.5);
}

using CheckFn = std::function<Outcome(const CheckSpec&, Rng&)>;

const std::map<std::string, CheckFn>& registry() {
  static const std::map<std::string, CheckFn> table = {
      {"positive-type", check_positive_type_suite},
      {"hermitian", check_hermitian_suite},
      {"projectivity", check_projectivity_suite},
      {"klauder-degeneracy", check_klauder_degeneracy},
      {"shadow-identity", check_shadow_identity},
      {"admissibility", check_admissibility},
      {"coherence", check_coherence_suite},
      {"coherence-wrong-adjoint", check_wrong_adjoint},
      {"homomorphism", check_homomorphism_suite},
      {"unitary", check_unitary_suite},
      {"unitary-rejects", check_unitary_rejects},
      {"separable", check_separable_suite},
      {"multiplier", check_multiplier_suite},
      {"slenderness", check_slenderness_suite},
      {"osc-oracle", check_osc_oracle},
      {"osc-inverse-oracle", check_osc_inverse_oracle},
      {"heisenberg", check_heisenberg_suite},
      {"ccr", check_ccr},
      {"ccr-smeared", check_ccr_smeared},
      {"weyl", check_weyl},
      {"glauber-overlap", check_glauber_overlap},
      {"gamma-action", check_gamma_action},
      {"gamma-shadow", check_gamma_shadow},
      {"gamma-fock-homomorphism", check_gamma_fock_homomorphism},
      {"normal-ordered", check_normal_ordered},
      {"normal-order-uniqueness", check_normal_order_uniqueness},
      {"quadrature", check_quadrature},
      {"icosahedron", check_icosahedron},
  };
  return table;
}

}  // namespace

std::vector<std::string> known_checks() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

Json builtin_suite(const std::string& name) {
  if (name == "moebius-gamma") {
    return Json{
        {"suite", "moebius-gamma"},
        {"seed", 0},
        {"checks",
         Json::array({
             Json{{"check", "homomorphism"}, {"space", "moebius"}, {"points", 12}, {"pairs", 2}},
             Json{{"check", "unitary"}, {"space", "moebius"}, {"points", 12}, {"elements", 2}},
         })},
    };
  }
  if (name == "failing-adjoint") {
    return Json{
        {"suite", "failing-adjoint"},
        {"seed", 0},
        {"checks", Json::array({Json{{"check", "coherence-wrong-adjoint"}, {"points", 10}}})},
    };
  }
  if (name == "regression") {
    Json checks = Json::array();
    for (const char* space : {"szego", "moebius", "klauder", "embedded"})
      checks.push_back(Json{{"check", "positive-type"}, {"space", space}, {"samples", 5},
                            {"points", 15}, {"name", std::string("positive-type-") + space}});
    checks.push_back(Json{{"check", "hermitian"}, {"space", "moebius"}});
    checks.push_back(Json{{"check", "projectivity"}, {"space", "moebius"}});
    checks.push_back(Json{{"check", "projectivity"}, {"space", "klauder"}, {"dim", 1},
                          {"name", "projectivity-klauder"}});
    checks.push_back(Json{{"check", "klauder-degeneracy"}});
    checks.push_back(Json{{"check", "shadow-identity"}, {"space", "klauder"}, {"dim", 1}});
    checks.push_back(Json{{"check", "admissibility"}});
    checks.push_back(Json{{"check", "coherence"}, {"space", "moebius"}});
    checks.push_back(Json{{"check", "homomorphism"}, {"space", "moebius"}, {"pairs", 2}});
    checks.push_back(Json{{"check", "unitary"}, {"space", "klauder"}, {"elements", 3}});
    checks.push_back(Json{{"check", "unitary-rejects"}});
    checks.push_back(Json{{"check", "separable"}});
    checks.push_back(Json{{"check", "separable"}, {"variant", "translation-rejects"},
                          {"name", "separable-rejects"}});
    checks.push_back(Json{{"check", "multiplier"}});
    checks.push_back(Json{{"check", "multiplier"}, {"variant", "nonhomogeneous-rejects"},
                          {"name", "multiplier-rejects"}});
    checks.push_back(Json{{"check", "slenderness"}, {"space", "moebius"}});
    checks.push_back(Json{{"check", "slenderness"}, {"space", "klauder"}, {"dim", 2},
                          {"insert_parallel", true}, {"name", "slenderness-parallel"}});
    checks.push_back(Json{{"check", "osc-oracle"}, {"pairs", 200}});
    checks.push_back(Json{{"check", "osc-inverse-oracle"}, {"count", 50}});
    checks.push_back(Json{{"check", "heisenberg"}});
    checks.push_back(Json{{"check", "ccr"}, {"cutoff", 30}});
    checks.push_back(Json{{"check", "ccr-smeared"}, {"cutoff", 30}, {"degree", 15}});
    checks.push_back(Json{{"check", "weyl"}, {"cutoff", 30}});
    checks.push_back(Json{{"check", "glauber-overlap"}, {"pairs", 20}});
    checks.push_back(Json{{"check", "gamma-action"}, {"elements", 10}});
    checks.push_back(Json{{"check", "gamma-shadow"}});
    checks.push_back(Json{{"check", "gamma-fock-homomorphism"}, {"pairs", 2}});
    checks.push_back(Json{{"check", "normal-ordered"}});
    checks.push_back(Json{{"check", "normal-order-uniqueness"}});
    checks.push_back(Json{{"check", "quadrature"}});
    checks.push_back(Json{{"check", "icosahedron"}});
    return Json{{"suite", "regression"}, {"seed", 0}, {"checks", std::move(checks)}};
  }
  throw ConfigError("unknown builtin suite '" + name + "'");
}

SuiteConfig parse_suite_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("suite config must be a JSON object");
  SuiteConfig config;
  config.suite = j.contains("suite") ? j["suite"].get<std::string>() : "suite";
  config.seed = j.contains("seed") ? j["seed"].get<std::uint64_t>() : 0;
  if (!j.contains("checks") || !j["checks"].is_array())
    throw ConfigError("suite config needs a 'checks' array");
  std::size_t index = 0;
  for (const Json& cj : j["checks"]) {
    if (!cj.is_object() || !cj.contains("check"))
      throw ConfigError("checks[" + std::to_string(index) + "] needs a 'check' field");
    CheckSpec spec;
    spec.check = cj["check"].get<std::string>();
    if (registry().find(spec.check) == registry().end())
      throw ConfigError("checks[" + std::to_string(index) + "]: unknown check '" + spec.check +
                        "'");
    spec.name = cj.contains("name") ? cj["name"].get<std::string>()
                                    : spec.check + "#" + std::to_string(index);
    spec.tol = cj.contains("tol") ? cj["tol"].get<double>() : 0.0;
    spec.params = cj;
    config.checks.push_back(std::move(spec));
    ++index;
  }
  return config;
}

Report run_suite(const SuiteConfig& config) {
  Report report;
  report.suite = config.suite;
  report.seed = config.seed;
  std::size_t index = 0;
  for (const CheckSpec& spec : config.checks) {
    Rng rng(mix_seed(config.seed, index));
    const auto start = std::chrono::steady_clock::now();
    const Outcome out = registry().at(spec.check)(spec, rng);
    const auto stop = std::chrono::steady_clock::now();
    CheckRecord rec;
    rec.name = spec.name;
    rec.check = spec.check;
    rec.passed = out.passed;
    rec.residual = out.residual;
    rec.tolerance = out.tolerance;
    rec.wall_time = std::chrono::duration<double>(stop - start).count();
    (rec.passed ? report.n_passed : report.n_failed) += 1;
    report.checks.push_back(std::move(rec));
    ++index;
  }
  return report;
}

Json report_to_json(const Report& report, bool include_timing) {
  Json j;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["version"] = report.version;
  Json checks = Json::array();
  for (const CheckRecord& rec : report.checks) {
    Json cj;
    cj["name"] = rec.name;
    cj["check"] = rec.check;
    cj["passed"] = rec.passed;
    cj["residual"] = rec.residual;
    cj["tolerance"] = rec.tolerance;
    if (include_timing) cj["wall_time"] = rec.wall_time;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["summary"] = Json{{"passed", report.n_passed}, {"failed", report.n_failed}};
  return j;
}

}  // namespace cohq
