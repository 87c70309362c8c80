#ifndef UNIT_FIBERS_SERIALIZE_H_
#define UNIT_FIBERS_SERIALIZE_H_

#include <string>

#include <json.hpp>

#include "unit_fibers/fibration.h"
#include "unit_fibers/geometry.h"

namespace unit_fibers {

inline constexpr int kSchemaVersion = 1;

// Shortest decimal string that parses back to exactly x.
std::string FormatDouble(double x);

nlohmann::json VectorToJson(const Vector& v);
Vector VectorFromJson(const nlohmann::json& j);

// Frames serialize as a list of direction vectors (the matrix columns).
nlohmann::json FrameToJson(const Matrix& frame);
Matrix FrameFromJson(const nlohmann::json& j, int ambient_dim);

// {"schema": 1, "n": .., "center": [..], "containing_frame": [[..]..],
//  "normal_frame": [[..]..]}
nlohmann::json FiberToJson(const Fiber& f);
Fiber FiberFromJson(const nlohmann::json& j);

std::string_view FibrationKindName(FibrationKind kind);
nlohmann::json SpecToJson(const FibrationSpec& spec);
FibrationSpec SpecFromJson(const nlohmann::json& j);

nlohmann::json GeometryToJson(const IntersectionGeometry& g);
nlohmann::json CertificateToJson(const DisjointnessCertificate& c);

}  // namespace unit_fibers

#endif  // UNIT_FIBERS_SERIALIZE_H_
