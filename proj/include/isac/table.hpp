#pragma once

// Row sets emitted by the CLI, with deterministic CSV and JSON writers.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace isac {

using Cell = std::variant<std::string, double, std::uint64_t>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Header line plus one line per row; numbers in shortest round-trip form.
std::string to_csv(const Table& table);

/// Array of objects keyed by column, in column order.
std::string to_json(const Table& table);

}  // namespace isac
