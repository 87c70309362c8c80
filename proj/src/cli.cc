#include "unit_fibers/cli.h"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "unit_fibers/error.h"
#include "unit_fibers/fibration.h"
#include "unit_fibers/geometry.h"
#include "unit_fibers/harness.h"
#include "unit_fibers/hypercomplex.h"
#include "unit_fibers/serialize.h"
#include "unit_fibers/skew.h"

namespace unit_fibers {
namespace {

using nlohmann::json;

Vector ToVector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

FibrationSpec MakeSpec(const std::string& kind, int n, const std::vector<double>& stack) {
  FibrationSpec base = kind == "bialy" ? FibrationSpec::Bialy() : FibrationSpec::Standard(n);
  if (stack.empty()) return base;
  if (stack.size() != 2) throw Error(ErrorCode::kInvalidArgument, "--stack takes a,b");
  return Stack(base, stack[0], stack[1]);
}

struct Options {
  int n = 1;
  std::uint64_t seed = 42;
  std::size_t pairs = 1000;
  double bound = 0.95;
  int density = 128;
  std::string format = "json";
  std::string out;
  std::string kind = "standard";
  std::vector<double> y, z, p, stack;
  double r = 0.0, phi = 0.0;
  bool left = false;
  bool force = false;
  std::string fibers_file;
  int threads = 0;
  std::int64_t from = 1, to = 64;
  int dim = 8;
  SampleGrid grid;
};

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unit sphere fibrations: construction and numerical certification",
               "unit_fibers"};
  app.require_subcommand(1);
  Options o;

  auto* fiber = app.add_subcommand("fiber", "Construct one fiber and print it as JSON");
  fiber->add_option("--kind", o.kind, "standard or bialy")
      ->check(CLI::IsMember({"standard", "bialy"}));
  fiber->add_option("--n", o.n, "Fiber dimension (1, 3 or 7)");
  fiber->add_option("--y", o.y, "Center parameter y")->delimiter(',');
  fiber->add_option("--r", o.r, "Villarceau torus minor radius");
  fiber->add_option("--phi", o.phi, "Villarceau rotation angle");
  fiber->add_flag("--left", o.left, "Left-handed Villarceau family");
  fiber->add_flag("--force", o.force, "Allow |y| >= 1");

  auto* pair = app.add_subcommand("pair", "Closed-form pair geometry and certificate");
  pair->add_option("--n", o.n)->required();
  pair->add_option("--y", o.y)->delimiter(',')->required();
  pair->add_option("--z", o.z)->delimiter(',')->required();

  auto* link = app.add_subcommand("link", "Linking verdict for two fibers or a fiber file");
  link->add_option("--n", o.n);
  link->add_option("--y", o.y)->delimiter(',');
  link->add_option("--z", o.z)->delimiter(',');
  link->add_option("--fibers", o.fibers_file, "JSON file of fiber records");

  auto* locate = app.add_subcommand("locate", "Find the fiber through a point");
  locate->add_option("--kind", o.kind)->check(CLI::IsMember({"standard", "bialy"}));
  locate->add_option("--n", o.n);
  locate->add_option("--p", o.p)->delimiter(',')->required();
  locate->add_option("--stack", o.stack, "Stacking interval a,b")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "Randomized verification campaign");
  verify->add_option("--n", o.n);
  verify->add_option("--seed", o.seed);
  verify->add_option("--pairs", o.pairs);
  verify->add_option("--bound", o.bound);
  verify->add_option("--threads", o.threads);
  verify->add_option("--out", o.out, "Write the report JSON here");

  auto* rho = app.add_subcommand("rho", "Hurwitz-Radon table as CSV");
  rho->add_option("--from", o.from);
  rho->add_option("--to", o.to);

  auto* exp = app.add_subcommand("export", "Write sampled fibers to a file");
  exp->add_option("--kind", o.kind)->check(CLI::IsMember({"standard", "bialy"}));
  exp->add_option("--n", o.n);
  exp->add_option("--stack", o.stack)->delimiter(',');
  exp->add_option("--density", o.density);
  exp->add_option("--format", o.format)->check(CLI::IsMember({"obj", "csv", "json"}));
  exp->add_option("--out", o.out)->required();
  exp->add_option("--rings", o.grid.rings);
  exp->add_option("--per-ring", o.grid.per_ring);
  exp->add_option("--bound", o.grid.radius_bound);
  exp->add_option("--layers", o.grid.layers);
  exp->add_option("--seed", o.grid.seed);

  auto* table = app.add_subcommand("algebra-table", "Multiplication table as CSV");
  table->add_option("--dim", o.dim)->check(CLI::IsMember({2, 4, 8}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*fiber) {
      Fiber f = o.kind == "bialy"
                    ? VillarceauFiber(o.r, o.phi, o.left ? Handedness::kLeft : Handedness::kRight)
                    : StandardFiber(o.n, ToVector(o.y), o.force);
      out << FiberToJson(f).dump(2) << "\n";
      return kExitOk;
    }
    if (*pair) {
      const auto g = PairGeometry(o.n, ToVector(o.y), ToVector(o.z));
      const auto cert = CertifyDisjoint(g);
      json j = GeometryToJson(g);
      j["certificate"] = CertificateToJson(cert);
      out << j.dump(2) << "\n";
      return cert.verdict == CertificateVerdict::kCertifiedDisjoint ? kExitOk
                                                                    : kExitVerificationFailed;
    }
    if (*link) {
      std::vector<Fiber> fibers;
      if (!o.fibers_file.empty()) {
        fibers = ImportFibers(o.fibers_file);
      } else {
        if (o.y.empty() || o.z.empty()) {
          throw Error(ErrorCode::kInvalidArgument, "link needs --y and --z or --fibers");
        }
        fibers = {StandardFiber(o.n, ToVector(o.y)), StandardFiber(o.n, ToVector(o.z))};
      }
      const auto m = ComputeLinkingMatrix(fibers);
      bool all_linked = true;
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
          out << (j ? "," : "") << LinkCellName(m[i][j]);
          if (i != j && m[i][j].verdict != LinkVerdict::kLinked) all_linked = false;
        }
        out << "\n";
      }
      return all_linked ? kExitOk : kExitVerificationFailed;
    }
    if (*locate) {
      const auto spec = MakeSpec(o.kind, o.n, o.stack);
      const Vector p = ToVector(o.p);
      json j{{"spec", SpecToJson(spec)}};
      if (spec.kind == FibrationKind::kBialy) {
        const auto loc = BialyLocate(p);
        j["r"] = loc.r;
        j["phi"] = loc.phi;
        j["fiber"] = FiberToJson(loc.fiber);
      } else if (spec.kind == FibrationKind::kStandard) {
        const Vector y = LocateFiber(o.n, p);
        j["y"] = VectorToJson(y);
        j["fiber"] = FiberToJson(StandardFiber(o.n, y));
      } else {
        j["fiber"] = FiberToJson(FiberThrough(spec, p));
      }
      out << j.dump(2) << "\n";
      return kExitOk;
    }
    if (*verify) {
      const auto report = VerifyConstruction(o.n, o.pairs, o.seed, o.bound, {o.threads});
      PrintReportTable(report, out);
      if (!o.out.empty()) {
        std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorCode::kIo, "cannot open '" + o.out + "' for writing");
        f << ReportToJson(report).dump(2) << "\n";
        if (!f) throw Error(ErrorCode::kIo, "failed writing '" + o.out + "'");
      }
      return report.AllPassed() ? kExitOk : kExitVerificationFailed;
    }
    if (*rho) {
      if (o.from < 1 || o.to < o.from) {
        throw Error(ErrorCode::kInvalidArgument, "need 1 <= --from <= --to");
      }
      out << "q,rho,unit_fibration_admissible\n";
      for (std::int64_t q = o.from; q <= o.to; ++q) {
        out << q << ',' << HurwitzRadon(q) << ','
            << (UnitFibrationDimensionAdmissible(q - 1) ? "true" : "false") << "\n";
      }
      return kExitOk;
    }
    if (*exp) {
      ExportFibers(MakeSpec(o.kind, o.n, o.stack), o.grid, o.density,
                   ParseExportFormat(o.format), o.out);
      return kExitOk;
    }
    if (*table) {
      out << "row,col,index,sign\n";
      for (int i = 0; i < o.dim; ++i) {
        for (int j = 0; j < o.dim; ++j) {
          const auto e = BasisProduct(o.dim, i, j);
          out << i << ',' << j << ',' << e.index << ',' << e.sign << "\n";
        }
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error (" << ErrorCodeName(e.code()) << "): " << e.what() << "\n";
    return e.code() == ErrorCode::kInvalidArgument ? kExitUsage : kExitVerificationFailed;
  }
  return kExitUsage;
}

}  // namespace unit_fibers
