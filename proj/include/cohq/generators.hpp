#pragma once

#include "cohq/maps.hpp"
#include "cohq/oscillator.hpp"
#include "cohq/rng.hpp"
#include "cohq/spaces.hpp"

namespace cohq {

// Seeded generators shared by the suite runner, the tests and the
// acceptance harness. Parameter choices matter: quantization checks need
// orbit samples whose span is numerically invariant (clustered points,
// near-diagonal contractions), while rank probes need spread-out points.
// See README for the sampling rules.

/// Moebius points with |z2/z1| in [rmin, rmax] and |z1| in [0.9, 1.1].
SampleSet moebius_annulus_sample(std::size_t n, double rmin, double rmax, Rng& rng);

/// Klauder points with ||zeta|| <= radius (componentwise disk draw) and
/// z0 in the disk of radius z0_radius.
SampleSet klauder_ball_sample(int dim, std::size_t n, double radius, double z0_radius, Rng& rng);

/// Same, but rejection-sampled so the zeta vectors keep pairwise distance
/// at least min_dist; used where tests assume a numerically full-rank Gram.
SampleSet klauder_separated_sample(int dim, std::size_t n, double radius, double z0_radius,
                                   double min_dist, Rng& rng);

/// Random 2x2 matrix near diag(1, d) satisfying the Moebius containment
/// inequalities: off-diagonal entries in the disk of radius `off`, lower
/// right in the disk of radius `diag`, upper left 1, all times a random
/// phase. Draws are rejected until the inequalities hold. The defaults
/// contract the induced disk parameter toward a core the sampled span
/// resolves, which keeps orbit quantization residuals at rounding level.
Eigen::Matrix2cd random_moebius_contraction(Rng& rng, double off = 0.1, double diag = 0.4);

/// Element of UOs(C^d) with ||q|| <= q_radius and Haar-ish unitary A block.
UnitaryOscElement random_unitary_osc(int dim, double q_radius, Rng& rng);

/// Oscillator element with ||p||, ||q|| <= radius and ||A||_2 <= 1
/// (random matrix rescaled by its largest singular value when needed).
OscElement random_osc_element(int dim, double radius, Rng& rng);

/// Heisenberg element with lambda in [-2, 2] and componentwise |q_k| <= radius.
HeisenbergElement random_heisenberg(int dim, double radius, Rng& rng);

/// Element of U(1,1) acting unitarily on the Moebius space:
/// diag(phases) * [[cosh t, sinh t], [sinh t, cosh t]] * diag(phases)
/// with t uniform in [0, t_max]. Its sigma-conjugate adjoint is its inverse.
Eigen::Matrix2cd random_moebius_unitary(Rng& rng, double t_max = 0.15);

/// Elliptic U(1,1) element diag(e^{2 pi i a/order}, e^{2 pi i b/order}).
/// Its order divides `order`, so orbits of depth `order` span exactly
/// invariant subspaces (the wrap-around images are the original points).
Eigen::Matrix2cd random_moebius_elliptic(Rng& rng, int order);

/// UOs(C^1) element whose rotation block is the root of unity
/// e^{2 pi i m/order} (m random, nonzero mod order). Its order-th power is
/// central, so every orbit image beyond depth `order` is parallel to a
/// sampled state and the sampled span is exactly invariant.
UnitaryOscElement random_finite_order_uos(int order, double q_radius, Rng& rng);

/// Per-check seed mixing (splitmix64 step on seed xor index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace cohq
