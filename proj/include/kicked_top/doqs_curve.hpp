#pragma once

#include <string>
#include <vector>

namespace kt {

/// Density of quasienergy states sampled on a grid inside [-omega/2, omega/2).
struct DoqsCurve {
  std::vector<double> grid;
  std::vector<double> rho;
  std::vector<double> n_integrated;  // empty until filled

  double omega = 0.0;
  std::string source;  // "histogram", "traces" or "analytic"
  int bins = 0;
  int n_max = 0;
  double sigma = 0.0;

  std::size_t size() const { return grid.size(); }
};

}  // namespace kt
