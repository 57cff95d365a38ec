#pragma once

#include "cpf/scan.hpp"

namespace cpf::detail {

/// One sweep cell. Never throws.
SweepRow sweep_row(const SweepSpec& spec, double value, SweepProtocol protocol);

/// Cell coordinates in evaluation order (x-major).
inline std::pair<std::size_t, std::size_t> region_index(const RegionSpec& spec, std::size_t flat) {
  return {flat / spec.y.size(), flat % spec.y.size()};
}

std::string x_label(RegionAxes axes);
std::string y_label(RegionAxes axes);

}  // namespace cpf::detail
