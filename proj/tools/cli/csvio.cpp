#include "csvio.hpp"

#include "headingsim/errors.hpp"
#include "headingsim/textio.hpp"

namespace hsim::cli {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) comma = line.size();
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw FormatError("csv: no column named '" + name + "'");
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    const std::string line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_commas(line);
    if (line_no == 1) {
      t.header = std::move(fields);
    } else {
      if (fields.size() != t.header.size()) {
        throw FormatError("csv line " + std::to_string(line_no) + ": got " +
                          std::to_string(fields.size()) + " fields, expected " +
                          std::to_string(t.header.size()));
      }
      t.rows.push_back(std::move(fields));
    }
  }
  if (t.header.empty()) throw FormatError("csv: empty input");
  return t;
}

CsvTable read_csv_file(const std::string& path) {
  return parse_csv(read_text_file(path));
}

}  // namespace hsim::cli
