// Single-threaded reference versions of the OpenMP scan kernels.

#include "cpf/scan.hpp"
#include "scan_internal.hpp"

namespace cpf {

std::vector<SweepRow> sweep_serial(const SweepSpec& spec) {
  validate(spec);
  std::vector<SweepRow> rows;
  rows.reserve(spec.grid.size() * spec.protocols.size());
  for (double value : spec.grid) {
    for (SweepProtocol p : spec.protocols) rows.push_back(detail::sweep_row(spec, value, p));
  }
  return rows;
}

RegionGrid region_scan_serial(const RegionSpec& spec) {
  validate(spec);
  RegionGrid grid{spec, detail::x_label(spec.axes), detail::y_label(spec.axes), {}};
  grid.cells.reserve(spec.x.size() * spec.y.size());
  for (double x : spec.x) {
    for (double y : spec.y) grid.cells.push_back(region_cell(spec, x, y));
  }
  return grid;
}

}  // namespace cpf
