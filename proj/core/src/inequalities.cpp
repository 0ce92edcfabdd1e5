#include "pfiber/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pfiber/error.hpp"
#include "pfiber/hartree.hpp"
#include "pfiber/regime.hpp"

namespace pfiber {

const char* to_string(InequalityKind k) {
  switch (k) {
    case InequalityKind::upper_above_103: return "upper_above_10/3";
    case InequalityKind::lower_below_3: return "lower_below_3";
    case InequalityKind::interpolation_low: return "interpolation_8/3_to_3";
    case InequalityKind::interpolation_high: return "interpolation_3_to_10/3";
  }
  return "unknown";
}

bool is_upper(InequalityKind kind) { return kind != InequalityKind::lower_below_3; }

void require_range(InequalityKind kind, double p) {
  require_exponent(p);
  const double e = kExponentTol;
  bool ok = false;
  switch (kind) {
    case InequalityKind::upper_above_103: ok = p >= kP103 - e; break;
    case InequalityKind::lower_below_3: ok = p < 3.0 - e; break;
    case InequalityKind::interpolation_low: ok = p >= kP83 - e && p <= 3.0 + e; break;
    case InequalityKind::interpolation_high: ok = p >= 3.0 - e && p <= kP103 + e; break;
  }
  if (!ok) fail(ErrorKind::domain_error, std::string("p outside the range of ") + to_string(kind));
}

double inequality_ratio(InequalityKind kind, const Integrals& I, double q, double lambda) {
  const double p = I.p;
  const double A = I.grad_sq, B = I.hartree, C = I.lp, M = I.mass;
  switch (kind) {
    case InequalityKind::upper_above_103:
      return lambda * C * std::pow(q * B, (3.0 * p - 10.0) / 2.0) /
             (std::pow(A, (3.0 * p - 8.0) / 2.0) * std::pow(M, 2.0 * (p - 3.0)));
    case InequalityKind::lower_below_3:
      return lambda * C /
             (std::pow(M, 2.0 * (p - 3.0)) * std::pow(q * B, (10.0 - 3.0 * p) / 2.0) *
              std::pow(A, (3.0 * p - 8.0) / 2.0));
    case InequalityKind::interpolation_low:
      return C / (std::pow(M, 3.0 - p) * std::pow(B, (p - 2.0) / 2.0) *
                  std::pow(A, (p - 2.0) / 2.0));
    case InequalityKind::interpolation_high:
      return C / (std::pow(M, 2.0 * (p - 3.0)) * std::pow(B, (10.0 - 3.0 * p) / 2.0) *
                  std::pow(A, (3.0 * p - 8.0) / 2.0));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

InequalityReport check_inequality(InequalityKind kind, double p, double q, double lambda,
                                  int samples, std::mt19937_64& rng, const RadialGrid& grid) {
  require_range(kind, p);
  if (samples < 1) fail(ErrorKind::invalid_input, "need at least one sample");
  auto family = TrialFamily::gaussian_mixture(3);
  family.set_width_bounds(0.5, 2.5);
  std::uniform_real_distribution<double> amp(0.2, 5.0);
  std::uniform_real_distribution<double> dil(0.6, 1.6);

  InequalityReport rep;
  rep.kind = kind;
  rep.p = p;
  rep.samples = samples;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.max_ratio = 0.0;
  rep.all_finite_positive = true;
  for (int s = 0; s < samples; ++s) {
    const Profile pr = family.profile(family.random_point(rng));
    const double k = amp(rng), t = dil(rng);
    const Integrals I = integrals_of(pr.sample(grid), p);
    const Integrals J = integrals_of(pr.dilated(t).scaled(k).sample(grid), p);
    const double a = inequality_ratio(kind, I, q, lambda);
    const double b = inequality_ratio(kind, J, q, lambda);
    if (!(std::isfinite(a) && a > 0.0 && std::isfinite(b) && b > 0.0)) {
      rep.all_finite_positive = false;
      continue;
    }
    rep.invariance_error = std::max(rep.invariance_error, std::abs(b / a - 1.0));
    rep.min_ratio = std::min({rep.min_ratio, a, b});
    rep.max_ratio = std::max({rep.max_ratio, a, b});
  }
  rep.empirical_constant = is_upper(kind) ? rep.max_ratio : rep.min_ratio;
  rep.holds = rep.all_finite_positive && rep.invariance_error < 1e-6 &&
              rep.empirical_constant > 0.0 && std::isfinite(rep.empirical_constant);
  return rep;
}

}  // namespace pfiber
