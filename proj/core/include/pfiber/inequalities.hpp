#pragma once

#include <random>
#include <string>

#include "pfiber/radial.hpp"

namespace pfiber {

enum class InequalityKind {
  // lambda C <= K A^{(3p-8)/2} M^{2(p-3)} / (qB)^{(3p-10)/2},  p in [10/3, 6)
  upper_above_103,
  // lambda C >= K M^{2(p-3)} (qB)^{(10-3p)/2} A^{(3p-8)/2},    p in (2, 3)
  lower_below_3,
  // C <= K M^{3-p} B^{(p-2)/2} A^{(p-2)/2},                     p in [8/3, 3]
  interpolation_low,
  // C <= K M^{2(p-3)} B^{(10-3p)/2} A^{(3p-8)/2},               p in [3, 10/3]
  interpolation_high,
};

const char* to_string(InequalityKind k);

// lhs / (form without constant); the inequality holds with a finite constant iff
// this ratio is bounded above (upper kinds) or away from zero (lower kind).
double inequality_ratio(InequalityKind kind, const Integrals& I, double q, double lambda);

bool is_upper(InequalityKind kind);
void require_range(InequalityKind kind, double p);

struct InequalityReport {
  InequalityKind kind;
  double p = 0.0;
  int samples = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  // sup of the ratio for upper kinds, inf for the lower kind
  double empirical_constant = 0.0;
  // worst relative change of the ratio under mass scaling and dilation
  double invariance_error = 0.0;
  bool all_finite_positive = false;
  bool holds = false;
};

// Random gaussian mixtures with random amplitude and dilation.
InequalityReport check_inequality(InequalityKind kind, double p, double q, double lambda,
                                  int samples, std::mt19937_64& rng,
                                  const RadialGrid& grid = RadialGrid());

}  // namespace pfiber
