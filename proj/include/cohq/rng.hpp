#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace cohq {

/// Seeded random source with fixed bit-to-double mappings.
///
/// std::mt19937_64 output is specified exactly by the standard, but the
/// standard distributions are not. All mappings below are spelled out here
/// so that seeded runs produce identical samples on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t bits() { return engine_(); }

  /// Uniform on the unit circle.
  std::complex<double> unit_phase() {
    const double theta = uniform(0.0, 6.283185307179586476925286766559);
    return {std::cos(theta), std::sin(theta)};
  }

  /// Uniform by area over the disk of the given radius.
  std::complex<double> in_disk(double radius) {
    return std::sqrt(uniform()) * radius * unit_phase();
  }

  /// Uniform by area over the annulus r0 <= |z| <= r1.
  std::complex<double> in_annulus(double r0, double r1) {
    const double u = uniform(r0 * r0, r1 * r1);
    return std::sqrt(u) * unit_phase();
  }

  /// Vector with each component drawn from the disk of the given radius.
  Eigen::VectorXcd vector_in_disk(Eigen::Index d, double radius) {
    Eigen::VectorXcd v(d);
    for (Eigen::Index k = 0; k < d; ++k) v[k] = in_disk(radius);
    return v;
  }

  /// Matrix with entries drawn from the disk of the given radius.
  Eigen::MatrixXcd matrix_in_disk(Eigen::Index rows, Eigen::Index cols, double radius) {
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = in_disk(radius);
    return m;
  }

  /// Haar-ish random unitary: QR of a random complex matrix with the
  /// phase convention fixed by making R's diagonal positive.
  Eigen::MatrixXcd unitary(Eigen::Index d) {
    Eigen::MatrixXcd m = matrix_in_disk(d, d, 1.0);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d; ++k) {
      const std::complex<double> rkk = r(k, k);
      if (std::abs(rkk) > 0.0) q.col(k) *= rkk / std::abs(rkk);
    }
    return q;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cohq
