#pragma once

#include <string>

namespace pfiber {

// Tolerance used to decide that p sits exactly on 8/3, 3 or 10/3.
inline constexpr double kExponentTol = 1e-12;

inline constexpr double kP83 = 8.0 / 3.0;
inline constexpr double kP103 = 10.0 / 3.0;

enum class Regime {
  below_83,     // (2, 8/3)
  at_83,        // 8/3
  between_83_3, // (8/3, 3)
  at_3,         // 3
  between_3_103,// (3, 10/3)
  at_103,       // 10/3
  above_103,    // (10/3, 6)
};

// Throws domain-error unless 2 < p < 6.
void require_exponent(double p);

Regime regime_of(double p);
bool near(double p, double value, double tol = kExponentTol);

// Human readable p-range tag, emitted in every output file.
std::string regime_tag(double p);

// Larger root of -27x^2 + 146x - 192 = 0.
double p0_exact();

// Position of lambda relative to the p = 3 thresholds.
enum class LambdaRegime {
  below_lambda_star,
  boundary_unclassified,
  between,
  indeterminate,
  above_lambda0_star,
};

LambdaRegime lambda_regime(double lambda, double lambda_star, double lambda0_star,
                           double rel_tol = 1e-9);
const char* to_string(LambdaRegime r);

// Note attached to every report: the analysis works on radial profiles only.
inline constexpr const char* kRadialNote =
    "radial restriction: all profiles are radial functions on a uniform grid";

}  // namespace pfiber
