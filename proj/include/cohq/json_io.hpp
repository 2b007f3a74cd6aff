#pragma once

#include <string>

#include <json.hpp>

#include "cohq/maps.hpp"
#include "cohq/oscillator.hpp"
#include "cohq/spaces.hpp"

namespace cohq {

using Json = nlohmann::json;

// Complex numbers travel as two-element arrays [re, im]; matrices and
// vectors as nested arrays of such pairs. Round trips are exact for
// doubles (shortest-round-trip serialization).

Json to_json(Complex c);
Complex complex_from_json(const Json& j);

Json to_json(const Eigen::VectorXcd& v);
Eigen::VectorXcd vector_from_json(const Json& j);

Json to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j);

/// {"space": "szego" | "moebius" | "klauder" | "embedded" | "finite",
///  "dim": d, "matrix": ...}; "pe" and "times" wrap a "base" space.
CoherentSpace space_from_json(const Json& j);
Json space_to_json(const CoherentSpace& space);

Json point_to_json(const Point& z);
Point point_from_json(const CoherentSpace& space, const Json& j);

/// Whole sample document {"space": ..., "points": [...]}.
SampleSet sample_from_json(const Json& j);
Json sample_to_json(const SampleSet& sample);

Json osc_to_json(const OscElement& x);
OscElement osc_from_json(const Json& j);

/// {"type": "identity" | "scalar" | "moebius" | "osc", ...}.
MapSpec map_from_json(const CoherentSpace& space, const Json& j);

Json load_json(const std::string& path);          // IoError / ParseError
void dump_json(const std::string& path, const Json& j);

void dump_matrix(const std::string& path, const Eigen::MatrixXcd& m);
Eigen::MatrixXcd load_matrix(const std::string& path);

SampleSet load_points(const std::string& path);

}  // namespace cohq
