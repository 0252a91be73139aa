#include "hullfacets/csvio.hpp"

#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>

#include "hullfacets/errors.hpp"

namespace hullfacets {

std::string format_cell(double value, int precision) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

void emit_csv(const CsvTable& table, std::ostream& out) {
  for (const std::string& c : table.comments) out << "# " << c << "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

CsvTable parse_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t start = line.size() > 1 && line[1] == ' ' ? 2 : 1;
      table.comments.push_back(line.substr(start));
      continue;
    }
    std::vector<std::string> cells;
    std::size_t pos = 0;
    for (;;) {
      const std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) {
        cells.push_back(line.substr(pos));
        break;
      }
      cells.push_back(line.substr(pos, comma - pos));
      pos = comma + 1;
    }
    if (!header_seen) {
      table.header = std::move(cells);
      header_seen = true;
    } else {
      if (cells.size() != table.header.size())
        throw InvalidArgs("csv row width differs from the header");
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

std::vector<std::string> RunManifest::comment_lines() const {
  std::vector<std::string> lines;
  lines.push_back("command: " + command_line);
  lines.push_back("model_hash: " + model_hash);
  if (has_seed) lines.push_back("seed: " + std::to_string(seed));
  lines.push_back("version: " + version);
  lines.push_back("timestamp: " + timestamp);
  return lines;
}

std::string RunManifest::json_object() const {
  std::ostringstream os;
  os << "{\"command\":\"" << command_line << "\",\"model_hash\":\""
     << model_hash << "\",";
  if (has_seed) os << "\"seed\":" << seed << ",";
  os << "\"version\":\"" << version << "\",\"timestamp\":\"" << timestamp
     << "\"}";
  return os.str();
}

std::string tool_version() { return "hullfacets 1.0.0"; }

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace hullfacets
