#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace tdho::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

/// A rectangular result with named columns, plus free-form scalar metadata
/// written as a CSV comment line or a JSON object.
struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> meta;

  void add_row(std::vector<Cell> row);
};

/// "# tdho <version> <command> key=value ...", header row, then rows.
/// Reals use 17 significant digits and '.' as decimal point.
void write_csv(std::ostream& os, const Table& t);

/// {"tool", "version", "command", "meta", "columns", "rows"}.
void write_json(std::ostream& os, const Table& t);

}  // namespace tdho::cli
