#include "unit_fibers/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "unit_fibers/geometry.h"
#include "unit_fibers/serialize.h"
#include "unit_fibers/skew.h"

namespace unit_fibers {

using nlohmann::json;

double CampaignRng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double CampaignRng::Gaussian() {
  // Box-Muller; 1 - u keeps the logarithm finite.
  const double u1 = 1.0 - Uniform();
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector CampaignRng::InBall(int dim, double radius) {
  Vector g(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) g(i) = Gaussian();
    norm = g.norm();
  } while (norm == 0.0);
  const double scale = radius * std::pow(Uniform(), 1.0 / dim);
  return g * (scale / norm);
}

int DefaultThreadCount() {
  if (const char* env = std::getenv("UNIT_FIBERS_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct PairOutcome {
  bool certified = false;
  bool linked = false;
  bool skew = false;
  bool has_margins = false;
  std::array<double, 3> margins{};
  std::vector<std::string> reasons;
};

PairOutcome EvaluatePair(int n, const Vector& y, const Vector& z) {
  PairOutcome out;
  try {
    const auto g = PairGeometry(n, y, z);
    const auto cert = CertifyDisjoint(g);
    out.has_margins = true;
    out.margins = cert.margins;
    out.certified = cert.verdict == CertificateVerdict::kCertifiedDisjoint;
    if (!out.certified) out.reasons.push_back("certificate: inconclusive");
  } catch (const Error& e) {
    out.reasons.push_back("certificate: " + std::string(ErrorCodeName(e.code())));
  }

  std::optional<Fiber> fy, fz;
  try {
    fy = StandardFiber(n, y);
    fz = StandardFiber(n, z);
  } catch (const Error& e) {
    out.reasons.push_back("linked: " + std::string(ErrorCodeName(e.code())));
    out.reasons.push_back("skew: " + std::string(ErrorCodeName(e.code())));
    return out;
  }
  try {
    out.linked = Linked(*fy, *fz);
    if (!out.linked) out.reasons.push_back("linked: unlinked");
  } catch (const Error& e) {
    out.reasons.push_back("linked: " + std::string(ErrorCodeName(e.code())));
  }
  out.skew = Skew(FiberToSkewPlane(*fy), FiberToSkewPlane(*fz));
  if (!out.skew) out.reasons.push_back("skew: not skew");
  return out;
}

template <typename Fn>
void ParallelFor(std::size_t count, int threads, Fn&& fn) {
  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
}

}  // namespace

VerificationReport VerifyConstruction(int n, std::size_t n_pairs, std::uint64_t seed,
                                      double radius_bound, const CampaignOptions& options) {
  if (!IsStandardFiberDim(n)) {
    throw Error(ErrorCode::kInvalidArgument, "fiber dimension must be 1, 3 or 7");
  }
  if (n_pairs < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one pair");
  if (!(radius_bound > 0.0 && radius_bound < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "radius bound must lie in (0, 1)");
  }
  const auto start = std::chrono::steady_clock::now();

  CampaignRng rng(seed);
  std::vector<std::pair<Vector, Vector>> pairs;
  pairs.reserve(n_pairs);
  for (std::size_t i = 0; i < n_pairs; ++i) {
    Vector y = rng.InBall(n + 1, radius_bound);
    Vector z = rng.InBall(n + 1, radius_bound);
    pairs.emplace_back(std::move(y), std::move(z));
  }

  std::vector<PairOutcome> outcomes(n_pairs);
  const int threads = options.threads > 0 ? options.threads : DefaultThreadCount();
  ParallelFor(n_pairs, threads, [&](std::size_t i) {
    outcomes[i] = EvaluatePair(n, pairs[i].first, pairs[i].second);
  });

  VerificationReport report;
  report.spec = FibrationSpec::Standard(n);
  report.n_pairs = n_pairs;
  report.seed = seed;
  report.radius_bound = radius_bound;
  report.worst_margins.fill(std::numeric_limits<double>::infinity());
  std::size_t certified = 0, linked = 0, skew = 0;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const auto& o = outcomes[i];
    certified += o.certified;
    linked += o.linked;
    skew += o.skew;
    if (o.has_margins) {
      for (int k = 0; k < 3; ++k) {
        report.worst_margins[k] = std::min(report.worst_margins[k], o.margins[k]);
      }
    }
    for (const auto& reason : o.reasons) {
      report.failures.push_back({i, pairs[i].first, pairs[i].second, reason});
    }
  }
  const auto total = static_cast<double>(n_pairs);
  report.certified_fraction = static_cast<double>(certified) / total;
  report.linked_fraction = static_cast<double>(linked) / total;
  report.skew_fraction = static_cast<double>(skew) / total;
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

json ReportToJson(const VerificationReport& report) {
  json failures = json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"index", f.index},
                        {"y", VectorToJson(f.y)},
                        {"z", VectorToJson(f.z)},
                        {"reason", f.reason}});
  }
  return json{{"schema", kSchemaVersion},
              {"spec", SpecToJson(report.spec)},
              {"n_pairs", report.n_pairs},
              {"seed", report.seed},
              {"radius_bound", report.radius_bound},
              {"certified_fraction", report.certified_fraction},
              {"linked_fraction", report.linked_fraction},
              {"skew_fraction", report.skew_fraction},
              {"worst_margins",
               {{"a", report.worst_margins[0]},
                {"b", report.worst_margins[1]},
                {"c", report.worst_margins[2]}}},
              {"failures", failures}};
}

void PrintReportTable(const VerificationReport& report, std::ostream& out) {
  out << "construction        n = " << report.spec.n << "\n"
      << "pairs               " << report.n_pairs << "\n"
      << "seed                " << report.seed << "\n"
      << "radius bound        " << FormatDouble(report.radius_bound) << "\n"
      << "certified fraction  " << FormatDouble(report.certified_fraction) << "\n"
      << "linked fraction     " << FormatDouble(report.linked_fraction) << "\n"
      << "skew fraction       " << FormatDouble(report.skew_fraction) << "\n"
      << "worst margins       a = " << FormatDouble(report.worst_margins[0])
      << "  b = " << FormatDouble(report.worst_margins[1])
      << "  c = " << FormatDouble(report.worst_margins[2]) << "\n"
      << "failures            " << report.failures.size() << "\n"
      << "wall time           " << report.wall_time << " s\n";
  for (const auto& f : report.failures) {
    out << "  pair " << f.index << ": " << f.reason << "\n";
  }
}

std::string LinkCellName(const LinkCell& cell) {
  switch (cell.verdict) {
    case LinkVerdict::kSelf: return "self";
    case LinkVerdict::kLinked: return "linked";
    case LinkVerdict::kUnlinked: return "unlinked";
    case LinkVerdict::kUnlinkedByDimension: return "unlinked-by-dimension";
    case LinkVerdict::kError:
      return "error:" + std::string(cell.error ? ErrorCodeName(*cell.error) : "unknown");
  }
  return "unknown";
}

LinkingMatrix ComputeLinkingMatrix(const std::vector<Fiber>& fibers) {
  if (fibers.empty()) throw Error(ErrorCode::kInvalidArgument, "no fibers");
  const std::size_t k = fibers.size();
  LinkingMatrix m(k, std::vector<LinkCell>(k));
  for (std::size_t i = 0; i < k; ++i) {
    m[i][i].verdict = LinkVerdict::kSelf;
    for (std::size_t j = i + 1; j < k; ++j) {
      LinkCell cell;
      const Fiber& a = fibers[i];
      const Fiber& b = fibers[j];
      if (a.n == b.n && a.ambient_dim() == b.ambient_dim() && a.ambient_dim() != 2 * a.n + 1) {
        cell.verdict = LinkVerdict::kUnlinkedByDimension;
      } else {
        try {
          cell.verdict = Linked(a, b) ? LinkVerdict::kLinked : LinkVerdict::kUnlinked;
        } catch (const Error& e) {
          cell.verdict = LinkVerdict::kError;
          cell.error = e.code();
        }
      }
      m[i][j] = cell;
      m[j][i] = cell;
    }
  }
  return m;
}

std::vector<Fiber> GridFibers(const FibrationSpec& spec, const SampleGrid& grid) {
  spec.Validate();
  if (grid.rings < 1 || grid.per_ring < 1) {
    throw Error(ErrorCode::kInvalidArgument, "sample grid needs rings >= 1 and per_ring >= 1");
  }
  std::vector<Fiber> fibers;
  switch (spec.kind) {
    case FibrationKind::kBialy:
      for (int k = 1; k <= grid.rings; ++k) {
        const double r = static_cast<double>(k) / (grid.rings + 1);
        for (int j = 0; j < grid.per_ring; ++j) {
          fibers.push_back(VillarceauFiber(r, 2.0 * std::numbers::pi * j / grid.per_ring));
        }
      }
      break;
    case FibrationKind::kStandard: {
      if (!(grid.radius_bound > 0.0 && grid.radius_bound < 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "radius bound must lie in (0, 1)");
      }
      const Matrix dirs = grid.per_ring >= 2 ? SphereSamples(spec.n, grid.per_ring, grid.seed)
                                             : Matrix(Vector::Unit(spec.n + 1, 0));
      for (int k = 1; k <= grid.rings; ++k) {
        const double radius = grid.radius_bound * k / grid.rings;
        for (int j = 0; j < grid.per_ring; ++j) {
          fibers.push_back(StandardFiber(spec.n, radius * dirs.col(j)));
        }
      }
      break;
    }
    case FibrationKind::kStacked: {
      if (grid.layers < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one layer");
      const auto base = GridFibers(*spec.base, grid);
      for (int l = 1; l <= grid.layers; ++l) {
        const double t = spec.stack_lower +
                         (spec.stack_upper - spec.stack_lower) * l / (grid.layers + 1);
        for (const auto& f : base) fibers.push_back(LiftFiber(f, t));
      }
      break;
    }
  }
  return fibers;
}

Matrix SampleFiber(const Fiber& fiber, int density, std::uint64_t seed) {
  return (fiber.containing_frame * SphereSamples(fiber.n, density, seed)).colwise() +
         fiber.center;
}

ExportFormat ParseExportFormat(const std::string& name) {
  if (name == "obj") return ExportFormat::kObj;
  if (name == "csv") return ExportFormat::kCsv;
  if (name == "json") return ExportFormat::kJson;
  throw Error(ErrorCode::kUnsupportedFormat, "unknown export format '" + name + "'");
}

void ExportFibers(const FibrationSpec& spec, const SampleGrid& grid, int density,
                  ExportFormat format, const std::filesystem::path& path) {
  if (density < 8) {
    throw Error(ErrorCode::kInvalidArgument, "density must be at least 8 points per fiber");
  }
  spec.Validate();
  if (format == ExportFormat::kObj && (spec.n != 1 || spec.ambient_dim() != 3)) {
    throw Error(ErrorCode::kUnsupportedFormat, "OBJ export needs circles in R^3");
  }
  const auto fibers = GridFibers(spec, grid);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");

  switch (format) {
    case ExportFormat::kObj: {
      out << "# unit fiber export: " << fibers.size() << " circles, " << density
          << " points each\n";
      std::size_t next = 1;
      for (std::size_t id = 0; id < fibers.size(); ++id) {
        const Matrix pts = SampleFiber(fibers[id], density, grid.seed);
        out << "o fiber_" << id << "\n";
        for (Eigen::Index c = 0; c < pts.cols(); ++c) {
          out << "v " << FormatDouble(pts(0, c)) << ' ' << FormatDouble(pts(1, c)) << ' '
              << FormatDouble(pts(2, c)) << "\n";
        }
        out << "l";
        for (Eigen::Index c = 0; c < pts.cols(); ++c) out << ' ' << next + c;
        out << ' ' << next << "\n";
        next += static_cast<std::size_t>(pts.cols());
      }
      break;
    }
    case ExportFormat::kCsv: {
      const int d = spec.ambient_dim();
      out << "fiber_id";
      for (int i = 0; i < d; ++i) out << ",x" << i;
      out << "\n";
      for (std::size_t id = 0; id < fibers.size(); ++id) {
        const Matrix pts = SampleFiber(fibers[id], density, grid.seed);
        for (Eigen::Index c = 0; c < pts.cols(); ++c) {
          out << id;
          for (int i = 0; i < d; ++i) out << ',' << FormatDouble(pts(i, c));
          out << "\n";
        }
      }
      break;
    }
    case ExportFormat::kJson: {
      json records = json::array();
      for (std::size_t id = 0; id < fibers.size(); ++id) {
        json rec = FiberToJson(fibers[id]);
        rec["id"] = id;
        rec["samples"] = FrameToJson(SampleFiber(fibers[id], density, grid.seed));
        records.push_back(std::move(rec));
      }
      out << json{{"schema", kSchemaVersion},
                  {"spec", SpecToJson(spec)},
                  {"density", density},
                  {"fibers", std::move(records)}}
                 .dump()
          << "\n";
      break;
    }
  }
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path.string() + "'");
}

std::vector<Fiber> ImportFibers(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_array() && !(doc.is_object() && doc.contains("fibers"))) {
    throw Error(ErrorCode::kInvalidArgument, "expected fiber records or an export document");
  }
  const json& records = doc.is_array() ? doc : doc["fibers"];
  std::vector<Fiber> fibers;
  for (const auto& rec : records) fibers.push_back(FiberFromJson(rec));
  return fibers;
}

}  // namespace unit_fibers
