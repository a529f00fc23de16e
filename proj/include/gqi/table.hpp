#pragma once

#include <deque>
#include <map>
#include <string>
#include <vector>

namespace gqi {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest round-trip decimal representation, locale-independent.
std::string format_double(double v);

/// Column-oriented sweep output. Rows follow grid order; every numeric value
/// must be finite. Metadata echoes the inputs that produced the table.
struct SweepTable {
  struct Column {
    std::string name;
    bool is_text = false;
    std::vector<double> num;
    std::vector<std::string> text;

    size_t size() const { return is_text ? text.size() : num.size(); }
  };

  std::deque<Column> columns;  // deque: references stay valid as columns are added
  std::map<std::string, std::string> metadata;  // ordered for stable output

  size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  Column& add_numeric(const std::string& name);
  Column& add_text(const std::string& name);
  const Column* find(const std::string& name) const;

  /// '#'-prefixed metadata lines, a header row, then comma-separated rows with
  /// '.' decimals. Byte-deterministic for identical content.
  std::string to_csv() const;

  /// Columns as arrays plus a metadata object.
  std::string to_json() const;
};

/// Parses the CSV emitted by to_csv (metadata lines are read back too).
SweepTable parse_csv(const std::string& text);

}  // namespace gqi
