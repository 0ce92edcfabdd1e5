#pragma once

#include <random>
#include <string>
#include <vector>

#include "pfiber/nelder_mead.hpp"
#include "pfiber/radial.hpp"

namespace pfiber {

// R_p on the unit sphere. unit.mass must be 1.
double rayleigh_quotient(const Integrals& unit, double q, double lambda);
// The p = 8/3 form (lambda C)^{3/2} / (q B)^{3/2}.
double rayleigh_quotient_83(const Integrals& unit, double q, double lambda);
// sqrt(A B) / C_3, invariant under dilation and mass scaling (p = 3).
double lions_quotient(const Integrals& I);
// C / (A^{3(p-2)/4} M^{(6-p)/4}), invariant under dilation and mass scaling.
double gn_quotient(const Integrals& I);

struct RayleighValue {
  double value;
  double p;
  Integrals inputs;
};

RayleighValue rayleigh(const Integrals& unit, double q, double lambda);

// Integrals of one family member on the grid (mass not normalized). All NaN when
// the member does not fit in the box.
Integrals member_integrals(const TrialFamily& family, const std::vector<double>& x,
                           const RadialGrid& grid, double p);

enum class BoundDirection { upper, lower, exact };
const char* to_string(BoundDirection d);

struct Budget {
  int evaluations = 3000;
  int starts = 3;
};

struct ThresholdEstimate {
  std::string name;
  double value = 0.0;
  BoundDirection bound = BoundDirection::upper;
  std::string family;
  int evaluations = 0;
  std::vector<TracePoint> trace;
  std::vector<double> argmin;
};

ThresholdEstimate minimize_rayleigh(double q, double lambda, double p, const TrialFamily& family,
                                    const Budget& budget, std::mt19937_64& rng,
                                    const RadialGrid& grid = RadialGrid());

// inf of sqrt(AB)/C over the family at p = 3.
ThresholdEstimate minimize_lions(const TrialFamily& family, const Budget& budget,
                                 std::mt19937_64& rng, const RadialGrid& grid = RadialGrid());

ThresholdEstimate estimate_kgn(double p, const TrialFamily& family, const Budget& budget,
                               std::mt19937_64& rng, const RadialGrid& grid = RadialGrid());

// Bound on lambda r^{2/3} below which no fiber at p = 10/3 has a critical point.
double nonexistence_bound_103(double k_gn);

std::vector<ThresholdEstimate> thresholds(double q, double lambda, double p,
                                          const TrialFamily& family, const Budget& budget,
                                          std::mt19937_64& rng,
                                          const RadialGrid& grid = RadialGrid());

const ThresholdEstimate* find_estimate(const std::vector<ThresholdEstimate>& list,
                                       const std::string& name);

}  // namespace pfiber
