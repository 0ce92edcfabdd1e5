#pragma once

#include <vector>

#include "pfiber/radial.hpp"

namespace pfiber {

struct CattoSequenceReport {
  double p = 0.0;
  double r = 0.0;
  std::vector<int> n_values;
  std::vector<double> lp_values;
  std::vector<double> grad_values;
  std::vector<double> hartree_values;
  std::vector<double> rayleigh_values;  // R_p(u_n / sqrt(r)); empty at p = 3
};

// n equal Gaussian bumps of mass r/n, each dilated by n^{1/3}, centers on a line
// spaced separation * n apart. The Hartree term uses the monopole bound for the
// cross terms, which is exact for nonoverlapping radial charges.
CattoSequenceReport catto_sequence(double p, double r, int n_max, double separation = 20.0,
                                   double q = 1.0, double lambda = 1.0,
                                   const RadialGrid& grid = RadialGrid());

}  // namespace pfiber
