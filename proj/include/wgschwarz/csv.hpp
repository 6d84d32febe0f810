#pragma once

#include <string>
#include <vector>

#include "wgschwarz/types.hpp"

namespace wgs {

// Minimal CSV emitter with a fixed column count per file. Cell text is
// written verbatim; the formatting helpers below keep numeric output
// deterministic and round-trip exact.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return text_; }
  std::size_t rows() const { return rows_; }

 private:
  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string text_;
};

std::string csv_real(Real value);  // %.17g; NaN prints "nan" (skipped rows only)
std::string csv_int(long long value);
std::string csv_bool(bool value);  // 0 / 1

void write_text_file(const std::string& path, const std::string& content);

}  // namespace wgs
