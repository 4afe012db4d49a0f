#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <stdexcept>

namespace tdho::cli {

namespace {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return format_real(*d);
  if (auto i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

nlohmann::ordered_json json_value(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(nullptr);
  if (auto i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width does not match the header");
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& os, const Table& t) {
  os << "# tdho " << TDHO_VERSION << ' ' << t.command;
  for (const auto& [key, value] : t.meta) os << ' ' << key << '=' << csv_field(value);
  os << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json j;
  j["tool"] = "tdho";
  j["version"] = TDHO_VERSION;
  j["command"] = t.command;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : t.meta) j["meta"][key] = json_value(value);
  j["columns"] = t.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& c : row) r.push_back(json_value(c));
    j["rows"].push_back(std::move(r));
  }
  os << j.dump(2) << '\n';
}

}  // namespace tdho::cli
