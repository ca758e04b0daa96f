#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace biphoton {

// CSV with one header row, ',' separators, '.' decimal points, LF row
// endings, and numbers rendered with 9 significant digits.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
};

std::string format_number(double v);

// Writes content to path via a temporary file in the same directory plus an
// atomic rename, so readers never observe a partial file.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace biphoton
