#include "cohq/point.hpp"

#include <cmath>

namespace cohq {
namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

bool finite(const Eigen::VectorXcd& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (!finite(v[k])) return false;
  return true;
}

void require_finite(bool ok) {
  if (!ok) throw DomainError("point has non-finite entries");
}

}  // namespace

Point Point::finite(std::size_t index) { return Point(Variant(FinitePoint{index})); }

Point Point::disk(Complex z) {
  require_finite(cohq::finite(z));
  return Point(Variant(DiskPoint{z}));
}

Point Point::moebius(Complex z1, Complex z2) {
  require_finite(cohq::finite(z1) && cohq::finite(z2));
  return Point(Variant(MoebiusPoint{z1, z2}));
}

Point Point::klauder(Complex z0, Eigen::VectorXcd zeta) {
  require_finite(cohq::finite(z0) && cohq::finite(zeta));
  return Point(Variant(KlauderPoint{z0, std::move(zeta)}));
}

Point Point::embedded(Eigen::VectorXcd v) {
  require_finite(cohq::finite(v));
  return Point(Variant(EmbeddedPoint{std::move(v)}));
}

Point Point::scaled(Complex scale, Point base) {
  require_finite(cohq::finite(scale));
  if (scale == Complex(0.0, 0.0)) throw DomainError("scale factor must be nonzero");
  return Point(Variant(ScaledPoint{scale, std::make_shared<const Point>(std::move(base))}));
}

namespace {

struct EqVisitor {
  bool operator()(const FinitePoint& a, const FinitePoint& b) const { return a.index == b.index; }
  bool operator()(const DiskPoint& a, const DiskPoint& b) const { return a.z == b.z; }
  bool operator()(const MoebiusPoint& a, const MoebiusPoint& b) const {
    return a.z1 == b.z1 && a.z2 == b.z2;
  }
  bool operator()(const KlauderPoint& a, const KlauderPoint& b) const {
    return a.z0 == b.z0 && a.zeta.size() == b.zeta.size() &&
           (a.zeta.array() == b.zeta.array()).all();
  }
  bool operator()(const EmbeddedPoint& a, const EmbeddedPoint& b) const {
    return a.v.size() == b.v.size() && (a.v.array() == b.v.array()).all();
  }
  bool operator()(const ScaledPoint& a, const ScaledPoint& b) const {
    return a.scale == b.scale && *a.base == *b.base;
  }
  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool Point::operator==(const Point& other) const {
  return std::visit(EqVisitor{}, data_, other.data_);
}

}  // namespace cohq
