#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace diracpolar {

using ojson = nlohmann::ordered_json;

namespace detail {

inline void escape_string(const std::string& s, std::ostream& os) {
  os << '"';
  for (const char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      case '\r': os << "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          os << buf;
        } else {
          os << c;
        }
    }
  }
  os << '"';
}

}  // namespace detail

/// Serializes a report with doubles printed at 17 significant digits, so
/// equal inputs produce byte-identical files and values round-trip exactly.
inline void write_json(const ojson& j, std::ostream& os, int indent = 0) {
  const std::string pad(indent, ' ');
  const std::string pad2(indent + 2, ' ');
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad2;
        detail::escape_string(it.key(), os);
        os << ": ";
        write_json(it.value(), os, indent + 2);
      }
      os << "\n" << pad << "}";
      return;
    }
    case ojson::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ",\n";
        first = false;
        os << pad2;
        write_json(v, os, indent + 2);
      }
      os << "\n" << pad << "]";
      return;
    }
    case ojson::value_t::string:
      detail::escape_string(j.get<std::string>(), os);
      return;
    case ojson::value_t::boolean:
      os << (j.get<bool>() ? "true" : "false");
      return;
    case ojson::value_t::number_integer:
      os << j.get<long long>();
      return;
    case ojson::value_t::number_unsigned:
      os << j.get<unsigned long long>();
      return;
    case ojson::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      os << buf;
      return;
    }
    default:
      os << "null";
      return;
  }
}

inline std::string json_to_string(const ojson& j) {
  std::ostringstream os;
  write_json(j, os);
  os << "\n";
  return os.str();
}

}  // namespace diracpolar
