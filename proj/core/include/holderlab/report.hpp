#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "holderlab/config.hpp"
#include "holderlab/error.hpp"
#include "holderlab/verify.hpp"

namespace holderlab {

inline constexpr int kReportSchemaVersion = 1;

namespace exit_code {
inline constexpr int pass = 0;
inline constexpr int config_error = 2;
inline constexpr int parameter_error = 3;
inline constexpr int unknown_name = 4;
inline constexpr int check_failure = 5;
}  // namespace exit_code

/// Exit status a library error maps to.
int exit_code_for(ErrorCode code) noexcept;

struct RunReport {
  std::string name;
  std::string map_name;
  std::vector<std::pair<std::string, double>> map_params;
  std::string domain;
  std::uint64_t seed = 0;
  bool strict = false;
  /// UTC, ISO 8601. Not part of the deterministic content.
  std::string timestamp;
  std::vector<CheckRecord> checks;
};

/// Stable JSON with two-space indentation and a trailing newline.
std::string report_json(const RunReport& report);
/// Removes the fields that vary between identical runs (timestamp,
/// runtime_ms) so two reports can be compared byte for byte.
std::string strip_volatile_fields(const std::string& report_json_text);
/// Fixed-width table of claimed vs measured values with the estimate
/// direction of each row.
std::string summary_text(const RunReport& report);

/// 0 when every hard check passes; report-only rows count only when strict.
int report_exit_code(const RunReport& report, bool strict);

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<Index> breadth;
  std::optional<std::filesystem::path> out_dir;
  bool strict = false;
  unsigned threads = 0;
  /// Fixed timestamp for reproducible files; the current time otherwise.
  std::optional<std::string> timestamp;
};

/// Runs every check of a parsed config. Library errors propagate.
RunReport run_experiment(const ExperimentConfig& config, const RunOptions& options);

struct RunResult {
  int exit_code = 0;
  std::optional<RunReport> report;
  std::filesystem::path report_path;
  std::filesystem::path summary_path;
};

/// Loads, runs and writes `<name>.report.json` and `<name>.summary.txt`.
/// Diagnostics go to `err`, the summary to `out`.
RunResult run_config_file(const std::filesystem::path& config_path, const RunOptions& options,
                          std::ostream& out, std::ostream& err);

/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Every construction with its parameters, claims and anchor, one block
/// per entry in catalog order.
std::string catalog_listing();
/// Formula, domain, claims, defaults and open questions of one entry.
/// Unknown names throw unknown-name with suggestions.
std::string describe_construction(const std::string& name);

}  // namespace holderlab
