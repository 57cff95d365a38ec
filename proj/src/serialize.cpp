#include "cpf/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace cpf {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  return csv_escape(std::get<std::string>(cell));
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  if (const auto* i = std::get_if<long long>(&cell)) return *i;
  return std::get<std::string>(cell);
}

Cell optional_cell(const std::optional<double>& v) {
  return v ? Cell{*v} : Cell{std::numeric_limits<double>::quiet_NaN()};
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

double to_decibels(double fidelity) { return 10.0 * std::log10(fidelity); }

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(table.columns[i]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << csv_cell(row[i]);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table) {
  nlohmann::ordered_json doc;
  doc["command"] = table.command;
  doc["parameters"] = table.parameters;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& cell : row) r.push_back(json_cell(cell));
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

nlohmann::ordered_json to_json(const Scenario& s) {
  nlohmann::ordered_json j;
  j["m"] = s.m;
  j["eta_b"] = s.eta_b;
  j["eta_t"] = s.eta_t;
  j["n_s"] = s.n_s;
  j["M"] = s.m_probes;
  j["kappa"] = s.kappa ? nlohmann::ordered_json(*s.kappa) : nlohmann::ordered_json(nullptr);
  return j;
}

Table sweep_table(const SweepSpec& spec, const std::vector<SweepRow>& rows, bool db) {
  Table t;
  t.command = "sweep";
  t.parameters["base"] = to_json(spec.base);
  t.parameters["variable"] = std::string(to_string(spec.variable));
  t.parameters["db"] = db;
  // a kappa sweep already carries the mixing weight in its grid column
  const bool kappa_column = spec.variable != SweepVariable::Kappa;
  t.columns = {std::string(to_string(spec.variable)), "protocol", db ? "F_dB" : "F"};
  if (kappa_column) t.columns.push_back("kappa");
  t.columns.push_back("error");
  for (const auto& r : rows) {
    const double f = db ? to_decibels(r.fidelity) : r.fidelity;
    std::vector<Cell> row{r.value, std::string(to_string(r.protocol)), f};
    if (kappa_column) row.push_back(optional_cell(r.kappa));
    row.push_back(r.error);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table region_table(const RegionGrid& grid) {
  const RegionSpec& spec = grid.spec;
  Table t;
  t.command = "region";
  t.parameters["axes"] = {grid.x_label, grid.y_label};
  t.parameters["mode"] = std::string(to_string(spec.mode));
  t.parameters["quantum"] = std::string(to_string(spec.quantum));
  t.parameters["constants"] = to_json(spec.constants);
  t.parameters["energy"] = spec.total_photons ? "fixed-total" : "per-use";
  if (spec.total_photons) t.parameters["total_photons"] = *spec.total_photons;
  t.columns = {"x", "y", "F_quantum", "F_classical", "UB_q", "LB_c", "log10_ratio", "certificate"};
  for (const auto& c : grid.cells) {
    t.rows.push_back({c.x, c.y, c.f_quantum, c.f_classical, c.ub_quantum, c.lb_classical,
                      c.log10_ratio, static_cast<long long>(c.certificate ? 1 : 0)});
  }
  return t;
}

}  // namespace cpf
