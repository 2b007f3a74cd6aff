#include "cohq/json_io.hpp"

#include <fstream>

namespace cohq {

namespace {

const Json& expect(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex number must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const Eigen::VectorXcd& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_json(v[k]));
  return out;
}

Eigen::VectorXcd vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("vector must be an array of [re, im] pairs");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k)
    v[static_cast<Eigen::Index>(k)] = complex_from_json(j[k]);
  return v;
}

Json to_json(const Eigen::MatrixXcd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError("matrix rows have inconsistent lengths");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

CoherentSpace space_from_json(const Json& j) {
  const std::string kind = expect(j, "space").get<std::string>();
  if (kind == "szego") return szego_space();
  if (kind == "moebius") return moebius_space();
  if (kind == "klauder") return klauder_space(expect(j, "dim").get<int>());
  if (kind == "embedded") return embedded_space(expect(j, "dim").get<int>());
  if (kind == "finite") return finite_matrix_space(matrix_from_json(expect(j, "matrix")));
  if (kind == "pe") return projective_extension(space_from_json(expect(j, "base")),
                                                expect(j, "degree").get<int>());
  if (kind == "times") return times_space(space_from_json(expect(j, "base")));
  throw ConfigError("unknown space kind '" + kind + "'");
}

Json space_to_json(const CoherentSpace& space) {
  Json j;
  switch (space.kind) {
    case SpaceKind::Szego: j["space"] = "szego"; break;
    case SpaceKind::Moebius: j["space"] = "moebius"; break;
    case SpaceKind::Klauder: j["space"] = "klauder"; j["dim"] = space.dim; break;
    case SpaceKind::Embedded: j["space"] = "embedded"; j["dim"] = space.dim; break;
    case SpaceKind::FiniteMatrix: throw IoError("finite spaces serialize with their matrix");
    case SpaceKind::ProjectiveExtension:
      j["space"] = "pe";
      j["degree"] = *space.projective_degree;
      j["base"] = space_to_json(*space.base);
      break;
    case SpaceKind::Times:
      j["space"] = "times";
      j["base"] = space_to_json(*space.base);
      break;
  }
  return j;
}

Json point_to_json(const Point& z) {
  if (const auto* p = z.get_if<FinitePoint>()) return Json(p->index);
  if (const auto* p = z.get_if<DiskPoint>()) return to_json(p->z);
  if (const auto* p = z.get_if<MoebiusPoint>()) return Json::array({to_json(p->z1), to_json(p->z2)});
  if (const auto* p = z.get_if<KlauderPoint>()) {
    Json j;
    j["z0"] = to_json(p->z0);
    j["zeta"] = to_json(p->zeta);
    return j;
  }
  if (const auto* p = z.get_if<EmbeddedPoint>()) return to_json(p->v);
  const auto& sp = z.as<ScaledPoint>();
  Json j;
  j["scale"] = to_json(sp.scale);
  j["base"] = point_to_json(*sp.base);
  return j;
}

Point point_from_json(const CoherentSpace& space, const Json& j) {
  switch (space.kind) {
    case SpaceKind::FiniteMatrix:
      if (!j.is_number_unsigned()) throw ParseError("finite point must be an index");
      return Point::finite(j.get<std::size_t>());
    case SpaceKind::Szego:
      return Point::disk(complex_from_json(j));
    case SpaceKind::Moebius:
      if (!j.is_array() || j.size() != 2) throw ParseError("Moebius point must be [z1, z2]");
      return Point::moebius(complex_from_json(j[0]), complex_from_json(j[1]));
    case SpaceKind::Klauder:
      return Point::klauder(complex_from_json(expect(j, "z0")),
                            vector_from_json(expect(j, "zeta")));
    case SpaceKind::Embedded:
      return Point::embedded(vector_from_json(j));
    case SpaceKind::ProjectiveExtension:
    case SpaceKind::Times:
      return Point::scaled(complex_from_json(expect(j, "scale")),
                           point_from_json(*space.base, expect(j, "base")));
  }
  throw ParseError("unknown point shape");
}

SampleSet sample_from_json(const Json& j) {
  CoherentSpace space = space_from_json(j);
  std::vector<Point> pts;
  for (const Json& pj : expect(j, "points")) pts.push_back(point_from_json(space, pj));
  return SampleSet(std::move(space), std::move(pts));
}

Json sample_to_json(const SampleSet& sample) {
  Json j = space_to_json(sample.space);
  Json pts = Json::array();
  for (const Point& z : sample.points) pts.push_back(point_to_json(z));
  j["points"] = std::move(pts);
  return j;
}

Json osc_to_json(const OscElement& x) {
  Json j;
  j["rho"] = to_json(x.rho);
  j["p"] = to_json(x.p);
  j["q"] = to_json(x.q);
  j["A"] = to_json(x.A);
  return j;
}

OscElement osc_from_json(const Json& j) {
  OscElement x;
  x.rho = complex_from_json(expect(j, "rho"));
  x.p = vector_from_json(expect(j, "p"));
  x.q = vector_from_json(expect(j, "q"));
  x.A = matrix_from_json(expect(j, "A"));
  if (x.p.size() != x.q.size() || x.A.rows() != x.q.size() || x.A.cols() != x.q.size())
    throw ParseError("oscillator element blocks have mismatched dimensions");
  return x;
}

MapSpec map_from_json(const CoherentSpace& space, const Json& j) {
  const std::string type = expect(j, "type").get<std::string>();
  if (type == "identity") return identity_map();
  if (type == "scalar") return scalar_map(space, complex_from_json(expect(j, "lambda")));
  if (type == "moebius") {
    const Eigen::MatrixXcd m = matrix_from_json(expect(j, "matrix"));
    if (m.rows() != 2 || m.cols() != 2) throw ParseError("Moebius map needs a 2x2 matrix");
    Eigen::Matrix2cd a = m;
    if (j.contains("adjoint")) {
      const Eigen::MatrixXcd adj = matrix_from_json(j["adjoint"]);
      if (adj.rows() != 2 || adj.cols() != 2) throw ParseError("adjoint needs a 2x2 matrix");
      return moebius_matrix_map_with_adjoint(a, Eigen::Matrix2cd(adj));
    }
    return moebius_matrix_map(a);
  }
  if (type == "osc") return osc_map(osc_from_json(j));
  throw ConfigError("unknown map type '" + type + "'");
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string(e.what()) + " in '" + path + "'");
  }
}

void dump_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

void dump_matrix(const std::string& path, const Eigen::MatrixXcd& m) {
  dump_json(path, to_json(m));
}

Eigen::MatrixXcd load_matrix(const std::string& path) { return matrix_from_json(load_json(path)); }

SampleSet load_points(const std::string& path) { return sample_from_json(load_json(path)); }

}  // namespace cohq
