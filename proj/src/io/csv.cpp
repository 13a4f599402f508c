#include <cmath>
#include <cstdio>

#include "nlssh/errors.hpp"
#include "nlssh/io.hpp"

namespace nlssh::io {

std::string format_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::Serialization, "non-finite value in output");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != columns_.size())
    throw Error(ErrorCode::Serialization, "row width does not match the header");
  rows_.push_back(std::move(row));
}

std::string emit_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns_.size(); ++c) {
    if (c) out += ',';
    out += table.columns_[c];
  }
  out += '\n';
  for (const auto& row : table.rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace nlssh::io
