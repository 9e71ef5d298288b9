#include "polsim/io.hpp"

#include <cstdio>

namespace polsim {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void ResultTable::write_csv(std::ostream& out) const {
  for (const auto& [key, value] : provenance)
    out << "# " << key << ": " << value << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

void ResultTable::write_json(std::ostream& out) const {
  out << "{\n  \"provenance\": {";
  for (std::size_t i = 0; i < provenance.size(); ++i) {
    out << (i ? "," : "") << "\n    \"" << json_escape(provenance[i].first)
        << "\": \"" << json_escape(provenance[i].second) << "\"";
  }
  out << "\n  },\n  \"columns\": [";
  for (std::size_t i = 0; i < columns.size(); ++i)
    out << (i ? ", " : "") << "\"" << json_escape(columns[i]) << "\"";
  out << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << (r ? ",\n    [" : "\n    [");
    for (std::size_t i = 0; i < rows[r].size(); ++i)
      out << (i ? ", " : "") << "\"" << json_escape(rows[r][i]) << "\"";
    out << "]";
  }
  out << "\n  ]\n}\n";
}

}  // namespace polsim
