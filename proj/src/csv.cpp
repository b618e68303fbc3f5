#include "coverart/csv.h"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace coverart {

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : f_(path), cols_(header.size()) {
  if (!f_) throw std::runtime_error("cannot open for write: " + path);
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != cols_)
    throw std::invalid_argument("csv row has wrong number of cells");
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) f_ << ',';
    f_ << cells[i];
  }
  f_ << '\n';
  if (!f_) throw std::runtime_error("csv write failed");
}

std::string CsvWriter::num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string CsvWriter::num(size_t v) { return std::to_string(v); }

size_t CsvTable::col(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::runtime_error("csv column not found: " + name);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.push_back("");
    if (first) {
      t.header = cells;
      first = false;
    } else {
      if (cells.size() != t.header.size())
        throw std::runtime_error("csv row width mismatch in " + path);
      t.rows.push_back(cells);
    }
  }
  return t;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw std::runtime_error("bad number in csv: " + s);
  return v;
}

}  // namespace coverart
