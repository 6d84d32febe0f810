#include "wgschwarz/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace wgs {

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  if (columns_ == 0) {
    throw DomainError("CSV header must have at least one column");
  }
  row(header);
  rows_ = 0;
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw DomainError("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(columns_));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
  ++rows_;
}

std::string csv_real(Real value) {
  if (std::isnan(value)) {
    return "nan";
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string csv_int(long long value) { return std::to_string(value); }

std::string csv_bool(bool value) { return value ? "1" : "0"; }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot open output file: " + path);
  }
  out << content;
  if (!out) {
    throw Error("failed writing output file: " + path);
  }
}

}  // namespace wgs
