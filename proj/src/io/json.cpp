#include <cstdio>
#include <string>
#include <type_traits>

#include "nlssh/errors.hpp"
#include "nlssh/io.hpp"

namespace nlssh::io {

namespace {

void write_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void pad(std::string& out, int indent) { out.append(static_cast<std::size_t>(2 * indent), ' '); }

}  // namespace

void write_json(std::string& out, const Json& value, int indent) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::nullptr_t>) {
          out += "null";
        } else if constexpr (std::is_same_v<T, bool>) {
          out += v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, long long>) {
          out += std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          out += format_double(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          write_string(out, v);
        } else if constexpr (std::is_same_v<T, Json::Array>) {
          out += '[';
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ", ";
            write_json(out, v[i], indent);
          }
          out += ']';
        } else {
          if (v.empty()) {
            out += "{}";
            return;
          }
          out += "{\n";
          for (std::size_t i = 0; i < v.size(); ++i) {
            pad(out, indent + 1);
            write_string(out, v[i].first);
            out += ": ";
            write_json(out, v[i].second, indent + 1);
            out += i + 1 < v.size() ? ",\n" : "\n";
          }
          pad(out, indent);
          out += '}';
        }
      },
      value.value_);
}

std::string emit_json(const Json& value) {
  std::string out;
  write_json(out, value, 0);
  out += '\n';
  return out;
}

}  // namespace nlssh::io
