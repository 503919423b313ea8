#pragma once

// Serialisation of verification reports and tables. Output depends only on
// the configuration and the computed values, so equal inputs give equal bytes.

#include "walshlab/experiments.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace walshlab {

enum class OutputFormat { csv, json };

OutputFormat parse_format(std::string_view text);

/// Parsed command line, echoed into every report header.
struct RunConfig {
  std::string command;
  int resolution = 12;
  int depth = 10;
  std::string p = "1/4";
  std::string system = "paley";
  Index n_max = 512;
  int A = 3;
  std::vector<int> i_list{2, 3};
  std::vector<int> n_list{4, 5, 6, 7, 8};
  bool exact = true;
  OutputFormat format = OutputFormat::json;
  std::string out;
  std::uint64_t seed = 1;
  std::string kind = "dirichlet";
  Index n = 1;

  nlohmann::ordered_json to_json() const;
};

/// Shortest round-trip decimal for a double ("%.17g").
std::string format_double(double v);

nlohmann::ordered_json to_json(const VerificationReport& report);

/// {"config": ..., "reports": [...]}, two-space indented, trailing newline.
std::string render_json(const RunConfig& config, const std::vector<VerificationReport>& reports);

/// '#'-prefixed config echo followed by header row and data rows.
std::string render_csv(const RunConfig& config, const Table& table);

/// One CSV document for all reports: each report's table if it has one,
/// otherwise a single summary row.
std::string render_csv(const RunConfig& config, const std::vector<VerificationReport>& reports);

/// Kernel samples: (index, value_numerator, value_denominator) in exact mode,
/// (index, value) in float mode.
Table kernel_table(const ExactFunction& kernel, bool exact);

}  // namespace walshlab
