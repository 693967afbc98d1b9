#pragma once

#include <string>
#include <variant>
#include <vector>

namespace magsq {

// CSV cell: doubles printed with 17 significant digits for lossless
// round-trips and diff-able goldens.
using CsvCell = std::variant<double, long long, std::string>;

std::string format_double_g17(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<CsvCell> cells);
  std::string serialize() const;
  size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<CsvCell>> rows_;
};

// Writes via temp file + rename so no partially written file is observable.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace magsq
