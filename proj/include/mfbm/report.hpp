#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace mfbm::report {

using Json = nlohmann::ordered_json;

/// Full-precision decimal rendering of a double (17 significant digits), so
/// CSV exports round-trip to the exact binary value.
std::string format_double(double v);

/// One CSV document: header row + data rows, comma separated, LF endings.
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::initializer_list<double> values);
  std::string to_string() const;
};

/// Write content to path atomically (temp file in the same directory,
/// then rename).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace mfbm::report
