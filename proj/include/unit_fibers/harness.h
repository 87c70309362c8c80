#ifndef UNIT_FIBERS_HARNESS_H_
#define UNIT_FIBERS_HARNESS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "unit_fibers/error.h"
#include "unit_fibers/fibration.h"

namespace unit_fibers {

// Portable sampling on top of std::mt19937_64. Only the raw 64-bit engine
// output is used; the conversions below are fixed so campaigns reproduce
// across standard libraries.
class CampaignRng {
 public:
  explicit CampaignRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  double Gaussian();
  // Uniform in the open ball of the given radius in R^dim.
  Vector InBall(int dim, double radius);

 private:
  std::mt19937_64 engine_;
};

// Worker count from UNIT_FIBERS_THREADS, else the hardware concurrency.
int DefaultThreadCount();

struct PairFailure {
  std::size_t index = 0;
  Vector y;
  Vector z;
  std::string reason;
};

// Aggregate of a randomized campaign over pairs of standard fibers. Each
// pair runs three checks (certificate, linked, skew); every failed check
// adds one entry to `failures`, so the failures with a given check prefix
// number (1 - fraction) * n_pairs.
struct VerificationReport {
  FibrationSpec spec;
  std::size_t n_pairs = 0;
  std::uint64_t seed = 0;
  double radius_bound = 0.0;
  double certified_fraction = 0.0;
  double linked_fraction = 0.0;
  double skew_fraction = 0.0;
  // Minimum of each certificate margin over pairs with a computed geometry.
  std::array<double, 3> worst_margins{};
  std::vector<PairFailure> failures;
  double wall_time = 0.0;

  bool AllPassed() const { return failures.empty(); }
};

struct CampaignOptions {
  // 0 selects DefaultThreadCount().
  int threads = 0;
};

// Throws Error(kInvalidArgument) for n outside {1,3,7}, n_pairs < 1 or a
// bound outside (0, 1).
VerificationReport VerifyConstruction(int n, std::size_t n_pairs, std::uint64_t seed,
                                      double radius_bound,
                                      const CampaignOptions& options = {});

// Excludes wall_time, so equal inputs give byte-identical output.
nlohmann::json ReportToJson(const VerificationReport& report);
void PrintReportTable(const VerificationReport& report, std::ostream& out);

enum class LinkVerdict { kSelf, kLinked, kUnlinked, kUnlinkedByDimension, kError };

struct LinkCell {
  LinkVerdict verdict = LinkVerdict::kError;
  std::optional<ErrorCode> error;
};

std::string LinkCellName(const LinkCell& cell);

using LinkingMatrix = std::vector<std::vector<LinkCell>>;

// Symmetric matrix of pairwise verdicts with kSelf on the diagonal. Pairs
// whose ambient dimension is not 2n+1 are kUnlinkedByDimension; predicate
// errors are recorded per entry. Throws Error(kInvalidArgument) when empty.
LinkingMatrix ComputeLinkingMatrix(const std::vector<Fiber>& fibers);

// Which fibers of a spec to sample.
struct SampleGrid {
  // Bialy: tori r = k/(rings+1), k = 1..rings, with per_ring circles each.
  // Standard: centers y at radius radius_bound*k/rings along per_ring
  // directions.
  int rings = 9;
  int per_ring = 24;
  double radius_bound = 0.9;
  // Stacked: copies of the base grid at evenly spaced interior heights.
  int layers = 3;
  std::uint64_t seed = 0;
};

std::vector<Fiber> GridFibers(const FibrationSpec& spec, const SampleGrid& grid);

// density points on the fiber, as columns.
Matrix SampleFiber(const Fiber& fiber, int density, std::uint64_t seed = 0);

enum class ExportFormat { kObj, kCsv, kJson };

ExportFormat ParseExportFormat(const std::string& name);

// Writes sampled fibers. Throws Error(kInvalidArgument) for density < 8,
// Error(kUnsupportedFormat) for OBJ outside n = 1 in R^3 and Error(kIo) when
// the file cannot be written.
void ExportFibers(const FibrationSpec& spec, const SampleGrid& grid, int density,
                  ExportFormat format, const std::filesystem::path& path);

// Reads the fiber records of a JSON export (or a bare array of records).
std::vector<Fiber> ImportFibers(const std::filesystem::path& path);

}  // namespace unit_fibers

#endif  // UNIT_FIBERS_HARNESS_H_
