#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace coverart {

// Minimal CSV used for manifests, traces and result tables.  Values never
// contain commas or quotes, so no escaping is needed.  Doubles are printed
// with %.17g so files round-trip exactly.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  static std::string num(double v);
  static std::string num(size_t v);

 private:
  std::ofstream f_;
  size_t cols_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  size_t col(const std::string& name) const;  // throws if missing
};

CsvTable read_csv(const std::string& path);

double parse_double(const std::string& s);

}  // namespace coverart
