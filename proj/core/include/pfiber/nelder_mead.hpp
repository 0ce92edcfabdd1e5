#pragma once

#include <functional>
#include <random>
#include <vector>

namespace pfiber {

struct TracePoint {
  int evaluations;
  double best;
};

struct NelderMeadOptions {
  int max_evaluations = 2000;
  int restarts = 3;
  double initial_step = 0.3;  // fraction of each box side
  double ftol = 1e-12;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool feasible = false;
  std::vector<TracePoint> trace;  // best-so-far, nonincreasing
};

// Box-clamped simplex minimization. Non-finite objective values count as +inf.
// Restarts rebuild the simplex around the incumbent with a random orientation.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const std::vector<double>& lower,
                             const std::vector<double>& upper, const NelderMeadOptions& opt,
                             std::mt19937_64& rng);

}  // namespace pfiber
