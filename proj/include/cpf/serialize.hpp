#pragma once

// Tabular output shared by every CLI command: CSV with a single header row,
// or a JSON document {"command", "parameters", "columns", "rows"} described by
// schema/cpf-output.schema.json.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cpf/protocols.hpp"
#include "cpf/scan.hpp"

namespace cpf {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::string command;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// 12 significant digits, scientific notation ("%.11e"); "nan", "inf", "-inf"
/// for non-finite values.
std::string format_number(double v);

void write_csv(std::ostream& os, const Table& table);
void write_json(std::ostream& os, const Table& table);

/// 10 log10(F).
double to_decibels(double fidelity);

nlohmann::ordered_json to_json(const Scenario& s);

Table sweep_table(const SweepSpec& spec, const std::vector<SweepRow>& rows, bool db);
Table region_table(const RegionGrid& grid);

}  // namespace cpf
