#include "pfiber/regime.hpp"

#include <cmath>
#include <sstream>

#include "pfiber/error.hpp"

namespace pfiber {

void require_exponent(double p) {
  if (!std::isfinite(p) || p <= 2.0 || p >= 6.0) {
    std::ostringstream os;
    os << "exponent p=" << p << " outside (2,6)";
    fail(ErrorKind::domain_error, os.str());
  }
}

bool near(double p, double value, double tol) {
  return std::abs(p - value) <= tol;
}

Regime regime_of(double p) {
  require_exponent(p);
  if (near(p, kP83)) return Regime::at_83;
  if (near(p, 3.0)) return Regime::at_3;
  if (near(p, kP103)) return Regime::at_103;
  if (p < kP83) return Regime::below_83;
  if (p < 3.0) return Regime::between_83_3;
  if (p < kP103) return Regime::between_3_103;
  return Regime::above_103;
}

std::string regime_tag(double p) {
  switch (regime_of(p)) {
    case Regime::below_83: return "p in (2,8/3)";
    case Regime::at_83: return "p = 8/3";
    case Regime::between_83_3: return "p in (8/3,3)";
    case Regime::at_3: return "p = 3";
    case Regime::between_3_103:
      return p > p0_exact() ? "p in (p0,10/3)" : "p in (3,p0]";
    case Regime::at_103: return "p = 10/3";
    case Regime::above_103: return "p in (10/3,6)";
  }
  return "unknown";
}

double p0_exact() {
  // -27x^2 + 146x - 192 = 0  <=>  27x^2 - 146x + 192 = 0
  const double a = 27.0, b = -146.0, c = 192.0;
  const double disc = b * b - 4.0 * a * c;
  return (-b + std::sqrt(disc)) / (2.0 * a);
}

LambdaRegime lambda_regime(double lambda, double lambda_star, double lambda0_star,
                           double rel_tol) {
  if (std::abs(lambda - lambda_star) <= rel_tol * lambda_star)
    return LambdaRegime::boundary_unclassified;
  if (std::abs(lambda - lambda0_star) <= rel_tol * lambda0_star)
    return LambdaRegime::indeterminate;
  if (lambda < lambda_star) return LambdaRegime::below_lambda_star;
  if (lambda < lambda0_star) return LambdaRegime::between;
  return LambdaRegime::above_lambda0_star;
}

const char* to_string(LambdaRegime r) {
  switch (r) {
    case LambdaRegime::below_lambda_star: return "below lambda*_q";
    case LambdaRegime::boundary_unclassified: return "boundary - unclassified";
    case LambdaRegime::between: return "between lambda*_q and lambda*_0q";
    case LambdaRegime::indeterminate: return "indeterminate";
    case LambdaRegime::above_lambda0_star: return "above lambda*_0q";
  }
  return "unknown";
}

}  // namespace pfiber
