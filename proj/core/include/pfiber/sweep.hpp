#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfiber/minimize.hpp"
#include "pfiber/rayleigh.hpp"

namespace pfiber {

struct SweepRow {
  double r = 0.0;
  double value = 0.0;
  RowStatus status = RowStatus::empty_nehari;
  Verdict nehari_verdict = Verdict::not_member;
  double pohozaev_residual = 0.0;
  double t = 0.0;
  std::optional<SolveReport> witness;
};

struct SweepCheck {
  std::string name;
  bool asserted = true;  // false: observation only
  bool passed = false;
  int tested = 0;
  std::string detail{};
};

struct SweepOptions {
  Component component = Component::plus_union_zero;
  int threads = 1;
};

struct SweepResult {
  double p = 0.0, q = 0.0, lambda = 0.0;
  Component component = Component::plus_union_zero;
  std::vector<ThresholdEstimate> estimates;
  std::vector<SweepRow> rows;
  std::vector<SweepCheck> checks;

  const SweepCheck* check(const std::string& name) const;
};

// Per-row seeds are drawn from `seed` before any row runs, so results do not
// depend on the thread count.
SweepResult sweep_I(double p, double q, double lambda, const std::vector<double>& r_grid,
                    const TrialFamily& family, const Budget& budget, std::uint64_t seed,
                    const RadialGrid& grid = RadialGrid(), const SweepOptions& opt = SweepOptions());

struct AppendixReport {
  std::string item;  // "i" (p < 3) or "ii" (3 < p < 10/3)
  double p = 0.0, q = 0.0, lambda = 0.0;
  double r1 = 0.0, r2 = 0.0;
  double I1 = 0.0, I2 = 0.0;
  // ii
  double k_gn = 0.0, c = 0.0, c_p = 0.0, c_prime = 0.0;
  double bound = 0.0;  // right-hand side
  double slack = 0.0;  // bound - I2
  // i
  double f_empirical = 0.0;
  bool holds = false;
};

// c_p and c'_p of the a-priori Nehari bounds, from a value of K_GN.
struct NehariConstants {
  double c, c_p, c_prime;
};
NehariConstants nehari_constants(double p, double k_gn);

AppendixReport appendix_estimates(double p, double q, double lambda, double r1, double r2,
                                  const TrialFamily& family, const Budget& budget,
                                  std::uint64_t seed, const RadialGrid& grid = RadialGrid());

}  // namespace pfiber
