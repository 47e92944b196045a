#include "run_record.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace sqsp_cli {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + s.size() || s.empty()) {
    throw std::invalid_argument("RunRecord: bad number \"" + s + "\"");
  }
  return v;
}

long parse_long(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end != begin + s.size() || s.empty()) {
    throw std::invalid_argument("RunRecord: bad integer \"" + s + "\"");
  }
  return v;
}

}  // namespace

std::string run_record_csv_header() {
  return "target,degree,scale,method,iterations,residual_l1,wall_ms,"
         "cond_estimate";
}

std::string to_csv_row(const RunRecord& record) {
  std::string row = record.target;
  row += ',';
  row += std::to_string(record.degree);
  row += ',';
  row += format_double(record.scale);
  row += ',';
  row += record.method;
  row += ',';
  row += std::to_string(record.iterations);
  row += ',';
  row += format_double(record.residual_l1);
  row += ',';
  row += format_double(record.wall_ms);
  row += ',';
  row += format_double(record.cond_estimate);
  return row;
}

RunRecord parse_csv_row(const std::string& line) {
  const std::vector<std::string> fields = split_fields(line);
  if (fields.size() != 8) {
    throw std::invalid_argument("RunRecord: expected 8 fields, got " +
                                std::to_string(fields.size()));
  }
  RunRecord record;
  record.target = fields[0];
  record.degree = static_cast<int>(parse_long(fields[1]));
  record.scale = parse_double(fields[2]);
  record.method = fields[3];
  record.iterations = parse_long(fields[4]);
  record.residual_l1 = parse_double(fields[5]);
  record.wall_ms = parse_double(fields[6]);
  record.cond_estimate = parse_double(fields[7]);
  return record;
}

}  // namespace sqsp_cli
