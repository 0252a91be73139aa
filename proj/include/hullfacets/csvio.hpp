#pragma once

// CSV emission and parsing plus the run manifest stamped on every output.
// Cells are carried as strings so that parse -> emit is byte-identical.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hullfacets {

struct CsvTable {
  std::vector<std::string> comments;  // emitted as "# ..." before the header
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// %.{precision}g; precision 17 round-trips doubles exactly.
std::string format_cell(double value, int precision = 17);

void emit_csv(const CsvTable& table, std::ostream& out);

// Accepts what emit_csv produces: comment lines, one header, uniform rows.
// Cells never contain commas or quotes, so no quoting dialect is needed.
CsvTable parse_csv(std::istream& in);

struct RunManifest {
  std::string command_line;
  std::string model_hash;  // "-" when no model is involved
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string version;
  std::string timestamp;  // UTC, RFC 3339

  std::vector<std::string> comment_lines() const;
  std::string json_object() const;  // single line
};

std::string tool_version();
std::string utc_timestamp();

}  // namespace hullfacets
