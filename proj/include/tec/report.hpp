#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace tec {

inline constexpr const char* kReportSchema = "tec-report/1";
inline constexpr const char* kVersion = "0.1.0";

/// One verified (or skipped) statement. `margin` is rhs - lhs.
struct CheckRecord {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  bool pass = true;
  bool skipped = false;
  std::string reason;

  bool operator==(const CheckRecord&) const = default;
};

struct TailRow {
  double theta = 0;
  double p_hat = 0;
  double std_error = 0;
  double bound = 0;
  bool vacuous = false;
  std::size_t assumption3_violations = 0;

  bool operator==(const TailRow&) const = default;
};

struct Report {
  std::string suite;
  std::map<std::string, std::string> config;
  std::vector<CheckRecord> checks;  // sorted by name
  std::vector<TailRow> tail_table;
  std::string version = kVersion;
  std::uint64_t seed = 0;

  bool all_pass() const;
  bool operator==(const Report&) const = default;
};

/// lhs <= rhs check; margin = rhs - lhs.
CheckRecord make_check(std::string name, double lhs, double rhs);
/// Check that was not evaluated; counts as passing.
CheckRecord make_skip(std::string name, std::string reason);

/// Pretty JSON, keys sorted, trailing newline. Non-finite numbers are
/// written as the strings "inf", "-inf", "nan".
std::string to_json(const Report& r);
Report report_from_json(const std::string& text);

inline constexpr const char* kCsvHeader = "theta,p_hat,stderr,bound,vacuous,assumption3_violations";
std::string tail_to_csv(const std::vector<TailRow>& rows);
std::vector<TailRow> tail_from_csv(const std::string& text);

enum class ReportFormat { json, csv };

/// Writes the report in the chosen format; throws Error on I/O failure.
void emit(const Report& r, ReportFormat format, const std::filesystem::path& path);

}  // namespace tec
