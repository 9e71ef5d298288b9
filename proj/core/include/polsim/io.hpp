#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace polsim {

/// Deterministic "%.12g" rendering shared by every emitter, so identical
/// runs produce byte-identical files.
std::string format_double(double v);

/// Tabular result with provenance metadata. CSV renders the metadata as
/// '#'-prefixed comments before a single header row; JSON mirrors the same
/// records under {"provenance": ..., "columns": ..., "rows": ...}.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> provenance;

  void add_provenance(const std::string& key, const std::string& value) {
    provenance.emplace_back(key, value);
  }
  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }

  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;
};

}  // namespace polsim
