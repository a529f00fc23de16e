#include "gqi/table.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gqi {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

SweepTable::Column& SweepTable::add_numeric(const std::string& name) {
  columns.push_back({name, false, {}, {}});
  return columns.back();
}

SweepTable::Column& SweepTable::add_text(const std::string& name) {
  columns.push_back({name, true, {}, {}});
  return columns.back();
}

const SweepTable::Column* SweepTable::find(const std::string& name) const {
  for (const auto& c : columns)
    if (c.name == name) return &c;
  return nullptr;
}

std::string SweepTable::to_csv() const {
  std::ostringstream out;
  for (const auto& [key, value] : metadata) out << "# " << key << ": " << value << "\n";
  for (size_t c = 0; c < columns.size(); ++c)
    out << (c ? "," : "") << columns[c].name;
  out << "\n";
  const size_t n = rows();
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < columns.size(); ++c) {
      if (c) out << ",";
      out << (columns[c].is_text ? columns[c].text[r] : format_double(columns[c].num[r]));
    }
    out << "\n";
  }
  return out.str();
}

std::string SweepTable::to_json() const {
  nlohmann::json j;
  j["metadata"] = nlohmann::json::object();
  for (const auto& [key, value] : metadata) j["metadata"][key] = value;
  j["columns"] = nlohmann::json::array();
  for (const auto& col : columns) {
    nlohmann::json jc;
    jc["name"] = col.name;
    if (col.is_text)
      jc["values"] = col.text;
    else
      jc["values"] = col.num;
    j["columns"].push_back(jc);
  }
  return j.dump(2) + "\n";
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  size_t p = 0;
  while (true) {
    size_t q = line.find(sep, p);
    if (q == std::string::npos) {
      out.push_back(line.substr(p));
      break;
    }
    out.push_back(line.substr(p, q - p));
    p = q + 1;
  }
  return out;
}

bool parse_full_double(const std::string& s, double& v) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto res = std::from_chars(begin, end, v);
  return res.ec == std::errc() && res.ptr == end;
}

}  // namespace

SweepTable parse_csv(const std::string& text) {
  SweepTable t;
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> raw;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      size_t colon = line.find(':');
      if (colon != std::string::npos) {
        std::string key = line.substr(1, colon - 1);
        std::string value = line.substr(colon + 1);
        while (!key.empty() && key.front() == ' ') key.erase(key.begin());
        while (!key.empty() && key.back() == ' ') key.pop_back();
        while (!value.empty() && value.front() == ' ') value.erase(value.begin());
        t.metadata[key] = value;
      }
      continue;
    }
    if (!have_header) {
      for (const auto& name : split(line, ',')) t.columns.push_back({name, false, {}, {}});
      have_header = true;
      continue;
    }
    auto cells = split(line, ',');
    if (cells.size() != t.columns.size())
      throw std::runtime_error("parse_csv: ragged row");
    raw.push_back(std::move(cells));
  }

  for (size_t c = 0; c < t.columns.size(); ++c) {
    bool numeric = true;
    double v;
    for (const auto& row : raw)
      if (!parse_full_double(row[c], v)) {
        numeric = false;
        break;
      }
    t.columns[c].is_text = !numeric;
    for (const auto& row : raw) {
      if (numeric) {
        parse_full_double(row[c], v);
        t.columns[c].num.push_back(v);
      } else {
        t.columns[c].text.push_back(row[c]);
      }
    }
  }
  return t;
}

}  // namespace gqi
