#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lpverify/errors.hpp"
#include "lpverify/manifest.hpp"
#include "lpverify/report.hpp"

namespace lpv::app {

/// Bad command-line input: unknown suite, too few samples and so on.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { Text, Json };

struct GridPoint {
  double alpha = 0.0;
  double beta = 0.0;
};

struct SuiteConfig {
  /// Path to a manifest, or a builtin id (example3, example3-leaf).
  std::string manifest = "example3";
  /// Empty: every suite the manifest supports.
  std::vector<std::string> suites;
  /// Cartesian product of these forms the grid; both empty means the
  /// default grid.
  std::vector<double> alpha_values;
  std::vector<double> beta_values;
  std::uint64_t seed = 1;
  std::size_t sample_count = 64;
  std::map<std::string, double> tolerance_overrides;
  OutputFormat output_format = OutputFormat::Text;
  /// Worker threads. Output does not depend on it.
  std::size_t jobs = 1;
};

struct Summary {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t vacuous = 0;
  std::size_t not_applicable = 0;
  /// Diagnostic entries, whatever their status.
  std::size_t informational = 0;
};

struct GridResult {
  GridPoint point;
  std::vector<IdentityReport> reports;
};

struct Report {
  std::string tool_version;
  SuiteConfig config;
  std::vector<std::string> suites;  // resolved, in run order
  std::vector<GridResult> grid;
  Summary summary;
  std::vector<std::string> flags;  // sorted union over all reports

  bool passed() const { return summary.fail == 0; }
};

const char* version() noexcept;

/// Every suite id, in canonical run order.
const std::vector<std::string>& known_suites();
bool is_submanifold_suite(std::string_view id);

const std::vector<GridPoint>& default_grid();
std::vector<GridPoint> grid_of(const SuiteConfig& config);

/// Builtin id or file path. Throws ParseError / ValidationError for bad
/// manifests and Error for unreadable files.
Manifest resolve_manifest(const std::string& id_or_path);

/// Checks suite ids and sample count against the manifest. Returns the
/// suites to run in canonical order. Throws UsageError.
std::vector<std::string> resolve_suites(const SuiteConfig& config, const Manifest& manifest);

/// Runs every suite at every grid point. Suite failures are reported, not
/// thrown; evaluation errors propagate.
Report run(const SuiteConfig& config, const Manifest& manifest);
Report run(const SuiteConfig& config);

std::string emit_text(const Report& report);
std::string emit_json(const Report& report);
std::string emit(const Report& report, OutputFormat format);

}  // namespace lpv::app
