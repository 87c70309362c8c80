#include "unit_fibers/serialize.h"

#include <array>
#include <charconv>

#include "unit_fibers/error.h"

namespace unit_fibers {

using nlohmann::json;

std::string FormatDouble(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

json VectorToJson(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector VectorFromJson(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kInvalidArgument, "expected a number array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorCode::kInvalidArgument, "expected a number");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

json FrameToJson(const Matrix& frame) {
  json out = json::array();
  for (Eigen::Index c = 0; c < frame.cols(); ++c) out.push_back(VectorToJson(frame.col(c)));
  return out;
}

Matrix FrameFromJson(const json& j, int ambient_dim) {
  if (!j.is_array()) throw Error(ErrorCode::kInvalidArgument, "expected a frame array");
  Matrix m(ambient_dim, static_cast<Eigen::Index>(j.size()));
  for (std::size_t c = 0; c < j.size(); ++c) {
    const Vector v = VectorFromJson(j[c]);
    if (v.size() != ambient_dim) {
      throw Error(ErrorCode::kInvalidArgument, "frame vector has the wrong length");
    }
    m.col(static_cast<Eigen::Index>(c)) = v;
  }
  return m;
}

json FiberToJson(const Fiber& f) {
  return json{{"schema", kSchemaVersion},
              {"n", f.n},
              {"center", VectorToJson(f.center)},
              {"containing_frame", FrameToJson(f.containing_frame)},
              {"normal_frame", FrameToJson(f.normal_frame)}};
}

Fiber FiberFromJson(const json& j) {
  try {
    if (j.contains("schema") && j.at("schema").get<int>() != kSchemaVersion) {
      throw Error(ErrorCode::kInvalidArgument, "unsupported fiber schema version");
    }
    Fiber f;
    f.n = j.at("n").get<int>();
    f.center = VectorFromJson(j.at("center"));
    const int d = static_cast<int>(f.center.size());
    f.containing_frame = FrameFromJson(j.at("containing_frame"), d);
    f.normal_frame = FrameFromJson(j.at("normal_frame"), d);
    if (f.containing_frame.cols() != f.n + 1 ||
        f.containing_frame.cols() + f.normal_frame.cols() != d) {
      throw Error(ErrorCode::kInvalidArgument, "fiber frames do not fit the dimension");
    }
    return f;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("malformed fiber record: ") + e.what());
  }
}

std::string_view FibrationKindName(FibrationKind kind) {
  switch (kind) {
    case FibrationKind::kStandard: return "standard";
    case FibrationKind::kBialy: return "bialy";
    case FibrationKind::kStacked: return "stacked";
  }
  return "unknown";
}

json SpecToJson(const FibrationSpec& spec) {
  json j{{"schema", kSchemaVersion}, {"kind", FibrationKindName(spec.kind)}, {"n", spec.n}};
  if (spec.kind == FibrationKind::kStacked) {
    j["stack_height"] = json::array({spec.stack_lower, spec.stack_upper});
    j["base"] = SpecToJson(*spec.base);
  }
  return j;
}

FibrationSpec SpecFromJson(const json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "standard") return FibrationSpec::Standard(j.at("n").get<int>());
    if (kind == "bialy") return FibrationSpec::Bialy();
    if (kind == "stacked") {
      const auto& h = j.at("stack_height");
      return Stack(SpecFromJson(j.at("base")), h.at(0).get<double>(), h.at(1).get<double>());
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown fibration kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("malformed spec: ") + e.what());
  }
}

json GeometryToJson(const IntersectionGeometry& g) {
  return json{{"n", g.n},
              {"y", VectorToJson(g.y)},
              {"z", VectorToJson(g.z)},
              {"v", VectorToJson(g.v)},
              {"v_norm_sq", g.v_norm_sq},
              {"v_norm_sq_parseval", g.v_norm_sq_parseval},
              {"c_y", VectorToJson(g.c_y)},
              {"c_z", VectorToJson(g.c_z)},
              {"d_y_sq", g.d_y_sq},
              {"d_z_sq", g.d_z_sq},
              {"r_y", g.r_y},
              {"r_z", g.r_z},
              {"d", g.d},
              {"ineq_a", g.ineq_a},
              {"ineq_b", g.ineq_b},
              {"ineq_c", g.ineq_c}};
}

json CertificateToJson(const DisjointnessCertificate& c) {
  return json{{"verdict", c.verdict == CertificateVerdict::kCertifiedDisjoint
                              ? "certified_disjoint"
                              : "inconclusive"},
              {"margins", json::array({c.margins[0], c.margins[1], c.margins[2]})}};
}

}  // namespace unit_fibers
