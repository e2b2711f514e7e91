#pragma once

// Command-line front end: section, limit, scan, lambda0, verify.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubesec/quadrature.hpp"
#include "cubesec/sections.hpp"

namespace cubesec::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitNonConvergence = 3,
  kExitIo = 4,
  kExitBracketing = 5,
};

struct ResultEntry {
  std::string label;
  double value;
  double error_estimate;
};

struct OutputRecord {
  std::string command;
  // Insertion order is preserved in the output.
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<ResultEntry> results;
  std::string timestamp;  // ISO-8601 UTC
};

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

/// 17 significant digits, enough to round-trip a double.
std::string format_number(double x);

/// "label = value +- error" lines.
std::string to_text(const OutputRecord& record);

/// Pretty-printed JSON; the timestamp is dropped when include_timestamp is false.
std::string to_json(const OutputRecord& record, bool include_timestamp = true);

/// `n,b,A,err` rows plus a final `inf` row carrying the limit and its error.
std::string scan_csv(const sections::ScanTable& table, double b, double limit, double limit_error);

/// Tolerances and scan range after defaults, CUBESEC_TOL and the config file
/// have been applied (flags are applied by the caller on top).
struct Settings {
  quadrature::QuadratureConfig quadrature{};
  int n_min = 2;
  int n_max = 50;
};

/// Reads `key = value` lines; '#' starts a comment. Known keys: rel_tol,
/// abs_tol, max_subdivisions, n_min, n_max. Throws DomainError on unknown
/// keys or unparsable values, and IoError when the file cannot be read.
Settings load_settings(const std::optional<std::string>& config_path);

/// Limit value L(b) and a rounding-level error estimate, with L(0) taken as
/// sqrt(6/pi).
std::pair<double, double> limit_with_error(double b);

/// Parses argv and runs the subcommand. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cubesec::cli
