#pragma once

// Deterministic text serialisation: doubles always as %.17g, fixed field
// order, '\n' line endings, NaN/inf rejected.

#include <cstddef>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nlssh::io {

std::string format_double(double x);  // throws Error(Serialization) on NaN/inf

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(std::vector<double> row);
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  std::size_t rows() const noexcept { return rows_.size(); }

  friend std::string emit_csv(const CsvTable& table);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

/// Header line then one line per row.
std::string emit_csv(const CsvTable& table);

class Json {
 public:
  using Array = std::vector<Json>;
  using Object = std::vector<std::pair<std::string, Json>>;

  Json() : value_(nullptr) {}
  Json(bool b) : value_(b) {}
  Json(int i) : value_(static_cast<long long>(i)) {}
  Json(long long i) : value_(i) {}
  Json(std::size_t i) : value_(static_cast<long long>(i)) {}
  Json(double d) : value_(d) {}
  Json(const char* s) : value_(std::string(s)) {}
  Json(std::string s) : value_(std::move(s)) {}
  Json(Array a) : value_(std::move(a)) {}
  Json(Object o) : value_(std::move(o)) {}

  friend std::string emit_json(const Json& value);

 private:
  friend void write_json(std::string& out, const Json& value, int indent);
  std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object> value_;
};

/// Two-space indented, keys in insertion order, trailing newline.
std::string emit_json(const Json& value);

/// Flat `key = value` (or `key: value`) lines; '#' starts a comment.
std::map<std::string, std::string> parse_config(std::istream& in);
std::map<std::string, std::string> load_config(const std::string& path);

}  // namespace nlssh::io
