#pragma once

#include <limits>
#include <string>

namespace sqsp_cli {

// One benchmark/solve outcome, the unit of the CSV logs.  The target string
// echoes the target spec (e.g. "cos(tau=100)" or
// "gaussian(mu=0.5;sigma=0.01;degree=100)") and never contains commas so a
// row splits unambiguously.  Doubles are written with 17 significant digits,
// so parsing a row back reproduces values bit-for-bit.
struct RunRecord {
  std::string target;
  int degree = 0;
  double scale = 1.0;
  std::string method;
  long iterations = 0;
  double residual_l1 = 0.0;
  double wall_ms = 0.0;
  double cond_estimate = std::numeric_limits<double>::quiet_NaN();
};

std::string run_record_csv_header();
std::string to_csv_row(const RunRecord& record);

// Throws std::invalid_argument on a malformed row.
RunRecord parse_csv_row(const std::string& line);

}  // namespace sqsp_cli
