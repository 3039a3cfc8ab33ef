#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace latticegrow {

/// Shortest decimal text that parses back to the same double.
std::string shortest(double x);

/// 17 significant digits, the fixed CSV float format.
std::string fixed17(double x);

/// Minimal CSV writer: header once, then rows of already-formatted cells.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  CsvWriter& cell(const std::string& text);
  CsvWriter& cell(double x) { return cell(fixed17(x)); }
  CsvWriter& cell(long long x) { return cell(std::to_string(x)); }
  CsvWriter& cell(int x) { return cell(std::to_string(x)); }
  CsvWriter& cell(std::size_t x) { return cell(std::to_string(x)); }
  void end_row();

 private:
  std::ostream& out_;
  bool row_started_ = false;
};

}  // namespace latticegrow
