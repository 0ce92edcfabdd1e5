#pragma once

#include <string>
#include <vector>

#include "pfiber/radial.hpp"

namespace pfiber {

struct Params {
  double p = 3.0;
  double q = 1.0;
  double lambda = 1.0;
  double r = 1.0;
};

// phi_{r,u}(t) = E(sqrt(r) u^t) for u on the unit sphere.
struct FiberCoefficients {
  double A = 1.0;
  double B = 1.0;
  double C = 1.0;
  double r = 1.0;
  double q = 1.0;
  double lambda = 1.0;
  double p = 3.0;

  static FiberCoefficients from(const Integrals& unit, const Params& prm);
  void validate() const;
};

struct FiberValue {
  double value;
  double first;
  double second;
};

FiberValue fiber_eval(const FiberCoefficients& fc, double t);

// Zero of phi'' (p != 8/3).
double fiber_inflection(const FiberCoefficients& fc);

enum class PointType { plus, zero, minus };
enum class FiberCase { I, II_1, II_2, III_1, III_2, III_3, IV_1, IV_2, V };

const char* to_string(PointType t);
const char* to_string(FiberCase c);

struct CriticalPoint {
  double t;
  PointType type;
};

struct FiberClassification {
  FiberCase case_tag;
  std::vector<CriticalPoint> critical_points;

  const CriticalPoint* find(PointType type) const;
};

FiberClassification classify_fiber(const FiberCoefficients& fc);

enum class Verdict { plus, zero, minus, not_member };
const char* to_string(Verdict v);

struct NehariMembership {
  double Q_value;
  double W_value;
  Verdict verdict;
};

inline constexpr double kNehariTol = 1e-6;

// Integrals of u itself, u on S_r.
NehariMembership nehari_membership(const Integrals& I, const Params& prm,
                                   double eps_q = kNehariTol, double eps_w = kNehariTol,
                                   double mass_tol = 1e-8);
NehariMembership nehari_membership(const RadialFunction& u, const Params& prm,
                                   double eps_q = kNehariTol, double eps_w = kNehariTol,
                                   double mass_tol = 1e-8);

// -a Lap u + b u + c phi_u u + d |u|^{p-2} u = 0
struct PohozaevInput {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

double pohozaev_residual(const Integrals& I, const PohozaevInput& in);
double pohozaev_residual(const RadialFunction& u, const PohozaevInput& in, double p);

// E = A/2 + qB/4 - lambda C/p
double energy_value(const Integrals& I, double q, double lambda);

struct ClosedSolution {
  double r;
  double t;
  double residual1;
  double residual2;
};

// a tA + b rB + c r^{p/2-1} t^{3p/2-4} C = 0
// d tA + e rB + f r^{p/2-1} t^{3p/2-4} C = 0
ClosedSolution solve_closed_system(double a, double b, double c, double d, double e, double f,
                                   double A, double B, double C, double p);

enum class Variant { tilde, zero, star, bar, lambda_zero, lambda_star };
const char* to_string(Variant v);

struct ExtremalPair {
  // For the lambda variants r_value holds the lambda threshold and t_value the
  // critical dilation at unit mass (it scales linearly with r).
  double r_value;
  double t_value;
  Variant variant;
};

ExtremalPair extremal_pair(const Integrals& unit, double q, double lambda, double p,
                           Variant variant);

// Mass thresholds are prefactor(variant, p) * R_p(u).
double extremal_prefactor(Variant variant, double p);

}  // namespace pfiber
