#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace semdrift::util {

// Fixed-precision decimal so report files are byte-stable.
std::string fmt_real(double v, int precision = 6);

// RFC 4180 quoting when the cell contains a comma, quote or newline.
std::string csv_escape(std::string_view cell);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace semdrift::util
