#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pfiber/fiber.hpp"
#include "pfiber/radial.hpp"
#include "pfiber/rayleigh.hpp"

namespace pfiber {

// E(u) = A/2 + qB/4 - lambda C/p
double energy(const RadialFunction& u, double p, double q, double lambda);

struct SolveReport {
  RadialFunction u;
  double energy = 0.0;
  double multiplier = 0.0;
  // P(u) / (A + M + B + C) with (a, b, c, d) = (1, -l, q, -lambda)
  double pohozaev_residual = 0.0;
  NehariMembership nehari{};
  Params params{};
  Integrals integrals{};
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
  std::vector<double> energy_trace;
  std::string method;
};

struct SolveOptions {
  double step = 1.0;
  int max_iter = 50000;
  double tol = 1e-8;
  int max_halvings = 40;
  // every k-th iteration moves along the dilation fiber instead (0 disables)
  int fiber_every = 25;
};

RadialFunction gaussian_init(const RadialGrid& grid, double r, double width = 1.0);

// Fills energy, multiplier, Pohozaev residual and Nehari verdict of u on S_r.
SolveReport assess(const RadialFunction& u, const Params& prm);

// Preconditioned projected gradient descent on S_r, p in (2, 10/3).
SolveReport minimize_on_sphere(const Params& prm, const RadialFunction& init,
                               const SolveOptions& opt = SolveOptions());

enum class Component { plus_union_zero, minus };
enum class RowStatus { finite, unbounded_below, empty_nehari };
const char* to_string(Component c);
const char* to_string(RowStatus s);

struct NehariSearch {
  RowStatus status = RowStatus::empty_nehari;
  double value = 0.0;  // NaN unless finite
  double t = 0.0;      // fiber parameter of the witness
  std::vector<double> argmin;
  int evaluations = 0;
  std::vector<TracePoint> trace;
  std::optional<SolveReport> witness;
};

// Outer simplex over family members on S_1, inner exact fiber projection.
// Extra start points (e.g. the R_p minimizer) may be supplied.
NehariSearch minimize_nehari(const Params& prm, const TrialFamily& family, const Budget& budget,
                             Component component, std::mt19937_64& rng,
                             const RadialGrid& grid = RadialGrid(),
                             const std::vector<std::vector<double>>& starts = {});

// phi_{r,u} decreasing through t = T*10..T*1e4 and below -1e6 at the end, where
// T = max(1, t of the fiber maximum); the floor shrinks with phi(T) below 1. p >= 10/3.
bool detect_unbounded(const Params& prm, const Integrals& unit);
bool detect_unbounded(const Params& prm, const RadialFunction& u);

}  // namespace pfiber
