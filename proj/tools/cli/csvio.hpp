#pragma once

#include <string>
#include <vector>

namespace hsim::cli {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by header name; throws FormatError when absent.
  std::size_t column(const std::string& name) const;
};

// Comma separated, first line is the header, no quoting (the formats in
// this project never emit commas inside fields). Throws FormatError on
// ragged rows or an empty file.
CsvTable read_csv_file(const std::string& path);
CsvTable parse_csv(const std::string& text);

}  // namespace hsim::cli
