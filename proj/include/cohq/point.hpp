#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <variant>

#include <Eigen/Dense>

#include "cohq/errors.hpp"

namespace cohq {

using Complex = std::complex<double>;

class Point;

/// Label of one of finitely many abstract points; the kernel is a stored matrix.
struct FinitePoint {
  std::size_t index = 0;
};

/// Point of the open unit disk (Szego space).
struct DiskPoint {
  Complex z;
};

/// Point of the Moebius space {z in C^2 : |z1| > |z2|}.
struct MoebiusPoint {
  Complex z1, z2;
};

/// Klauder pair [z0, zeta] with zeta in C^d.
struct KlauderPoint {
  Complex z0;
  Eigen::VectorXcd zeta;
};

/// Vector of a Euclidean space, kernel v* v'.
struct EmbeddedPoint {
  Eigen::VectorXcd v;
};

/// Pair (scale, base) in C* x Z. Used both for projective extensions,
/// where scale is the line-bundle coordinate, and for the times
/// construction, where scale labels a scalar separable map.
struct ScaledPoint {
  Complex scale;
  std::shared_ptr<const Point> base;
};

/// Tagged union over all point shapes. Values are immutable once built;
/// construction rejects non-finite entries. Equality is structural and
/// exact (bitwise on fields); approximate coincidence of distinct points
/// is a rank question handled downstream.
class Point {
 public:
  using Variant =
      std::variant<FinitePoint, DiskPoint, MoebiusPoint, KlauderPoint, EmbeddedPoint, ScaledPoint>;

  static Point finite(std::size_t index);
  static Point disk(Complex z);
  static Point moebius(Complex z1, Complex z2);
  static Point klauder(Complex z0, Eigen::VectorXcd zeta);
  static Point embedded(Eigen::VectorXcd v);
  static Point scaled(Complex scale, Point base);

  const Variant& data() const { return data_; }

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&data_);
  }

  /// Requires the point to hold the given alternative.
  template <class T>
  const T& as() const {
    const T* p = std::get_if<T>(&data_);
    if (!p) throw DomainError("point has unexpected shape for this space");
    return *p;
  }

  bool operator==(const Point& other) const;
  bool operator!=(const Point& other) const { return !(*this == other); }

 private:
  explicit Point(Variant v) : data_(std::move(v)) {}
  Variant data_;
};

}  // namespace cohq
