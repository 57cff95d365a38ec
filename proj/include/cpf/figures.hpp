#pragma once

// Data behind each reference figure, with its fixed parameters built in.
//
//   1  F vs m                     eta_b=0.2, eta_t=0.7, n_s=1
//   2  F vs eta_t                 eta_b=0.95, n_s=50, m=3
//   3  F vs eta_t                 eta_b=0.05, n_s=50, m=3
//   4  F vs n_s                   eta_b=0.9, eta_t=0.95, m=2
//   5  F vs eta_t incl. mixed     eta_b=0.55, n_s=50, m=2
//   6  log-ratio region           m=2, n_s=20, M=20, idler-free
//   7  certificate regions        m=2, n_s=20, idler-free / bipartite / mixed
//   8  fixed-energy region        m=3, eta_b=1, m M n_s = 1800, idler-free

#include <cstddef>

#include "cpf/serialize.hpp"

namespace cpf {

struct FigureOptions {
  /// Points per continuous axis (both axes for regions).
  std::size_t resolution = 201;
  int threads = 0;
  /// Report fidelity columns as 10 log10 F.
  bool db = false;
};

inline constexpr int kFigureCount = 8;

/// Throws DomainError for an id outside 1..8.
Table figure_table(int id, const FigureOptions& options = {});

/// Region specs used by figures 6 and 8, exposed for tests.
RegionSpec figure6_spec(std::size_t resolution);
RegionSpec figure8_spec(std::size_t resolution);

}  // namespace cpf
