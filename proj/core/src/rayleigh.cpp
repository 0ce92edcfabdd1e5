#include "pfiber/rayleigh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pfiber/error.hpp"
#include "pfiber/fiber.hpp"
#include "pfiber/hartree.hpp"
#include "pfiber/regime.hpp"

namespace pfiber {

double rayleigh_quotient(const Integrals& unit, double q, double lambda) {
  const double p = unit.p;
  const double d = p - 3.0;
  return std::pow(unit.grad_sq, (3.0 * p - 8.0) / (4.0 * d)) *
         std::pow(q * unit.hartree, (10.0 - 3.0 * p) / (4.0 * d)) /
         std::pow(lambda * unit.lp, 1.0 / (2.0 * d));
}

double rayleigh_quotient_83(const Integrals& unit, double q, double lambda) {
  return std::pow(lambda * unit.lp, 1.5) / std::pow(q * unit.hartree, 1.5);
}

double lions_quotient(const Integrals& I) { return std::sqrt(I.grad_sq * I.hartree) / I.lp; }

double gn_quotient(const Integrals& I) {
  const double p = I.p;
  return I.lp / (std::pow(I.grad_sq, 0.75 * (p - 2.0)) * std::pow(I.mass, (6.0 - p) / 4.0));
}

RayleighValue rayleigh(const Integrals& unit, double q, double lambda) {
  require_exponent(unit.p);
  if (std::abs(unit.p - 3.0) <= 1e-9) fail(ErrorKind::domain_error, "R_p is undefined at p = 3");
  if (std::abs(unit.mass - 1.0) > 1e-8) fail(ErrorKind::invalid_input, "R_p needs mass 1");
  return {rayleigh_quotient(unit, q, lambda), unit.p, unit};
}

Integrals member_integrals(const TrialFamily& family, const std::vector<double>& x,
                           const RadialGrid& grid, double p) {
  const RadialFunction u = family.sample(x, grid);
  Integrals I = integrals_of(u, p);
  // a member cut off by the box has meaningless integrals
  if (u.leak() > kLeakTolerance * std::max(1.0, I.mass)) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    I.mass = I.grad_sq = I.hartree = I.lp = nan;
  }
  return I;
}

const char* to_string(BoundDirection d) {
  switch (d) {
    case BoundDirection::upper: return "upper";
    case BoundDirection::lower: return "lower";
    case BoundDirection::exact: return "exact";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Multi-start simplex over the family box. Returns the incumbent and merged trace.
ThresholdEstimate family_search(const TrialFamily& family, const Budget& budget,
                                std::mt19937_64& rng,
                                const std::function<double(const std::vector<double>&)>& f,
                                const std::string& name) {
  ThresholdEstimate est;
  est.name = name;
  est.family = family.descriptor();
  est.value = kInf;
  const int starts = std::max(1, budget.starts);
  NelderMeadOptions opt;
  opt.max_evaluations = std::max(10, budget.evaluations / starts);
  opt.restarts = 3;
  for (int s = 0; s < starts; ++s) {
    auto x0 = s == 0 ? family.default_point() : family.random_point(rng);
    auto res = nelder_mead(f, x0, family.lower(), family.upper(), opt, rng);
    for (const auto& tp : res.trace) {
      const double best = std::min(tp.best, est.value);
      est.trace.push_back({est.evaluations + tp.evaluations, best});
    }
    est.evaluations += res.evaluations;
    if (res.feasible && res.value < est.value) {
      est.value = res.value;
      est.argmin = res.x;
    }
    if (!est.trace.empty()) est.trace.back().best = est.value;
  }
  if (!std::isfinite(est.value))
    fail(ErrorKind::numerical_failure, "budget exhausted before any valid evaluation (" + name + ")");
  return est;
}

bool usable(const Integrals& I) {
  return I.mass > 0.0 && I.grad_sq > 0.0 && I.hartree > 0.0 && I.lp > 0.0;
}

}  // namespace

ThresholdEstimate minimize_rayleigh(double q, double lambda, double p, const TrialFamily& family,
                                    const Budget& budget, std::mt19937_64& rng,
                                    const RadialGrid& grid) {
  require_exponent(p);
  if (std::abs(p - 3.0) <= 1e-9) fail(ErrorKind::domain_error, "R_p is undefined at p = 3");
  auto f = [&](const std::vector<double>& x) {
    const Integrals I = member_integrals(family, x, grid, p);
    if (!usable(I)) return kInf;
    // mass 1, then A = 1 by dilation
    Integrals unit = I.normalized(1.0);
    unit = unit.dilated(1.0 / std::sqrt(unit.grad_sq));
    return rayleigh_quotient(unit, q, lambda);
  };
  return family_search(family, budget, rng, f, "inf_R_p");
}

ThresholdEstimate minimize_lions(const TrialFamily& family, const Budget& budget,
                                 std::mt19937_64& rng, const RadialGrid& grid) {
  auto f = [&](const std::vector<double>& x) {
    const Integrals I = member_integrals(family, x, grid, 3.0);
    if (!usable(I)) return kInf;
    return lions_quotient(I);
  };
  return family_search(family, budget, rng, f, "inf_lions");
}

ThresholdEstimate estimate_kgn(double p, const TrialFamily& family, const Budget& budget,
                               std::mt19937_64& rng, const RadialGrid& grid) {
  require_exponent(p);
  auto f = [&](const std::vector<double>& x) {
    const Integrals I = member_integrals(family, x, grid, p);
    if (!usable(I)) return kInf;
    return -gn_quotient(I);
  };
  auto est = family_search(family, budget, rng, f, "K_GN");
  est.value = -est.value;
  for (auto& tp : est.trace) tp.best = -tp.best;
  est.bound = BoundDirection::lower;
  return est;
}

double nonexistence_bound_103(double k_gn) { return 5.0 / (3.0 * k_gn); }

std::vector<ThresholdEstimate> thresholds(double q, double lambda, double p,
                                          const TrialFamily& family, const Budget& budget,
                                          std::mt19937_64& rng, const RadialGrid& grid) {
  require_exponent(p);
  if (!(q > 0.0) || !(lambda > 0.0)) fail(ErrorKind::invalid_input, "q and lambda must be positive");
  std::vector<ThresholdEstimate> out;
  const Regime reg = regime_of(p);
  auto derived = [&](const ThresholdEstimate& base, const std::string& name, double value) {
    ThresholdEstimate e = base;
    e.name = name;
    e.value = value;
    for (auto& tp : e.trace) tp.best *= value / base.value;
    return e;
  };
  if (reg == Regime::at_3) {
    const auto lions = minimize_lions(family, budget, rng, grid);
    out.push_back(derived(lions, "lambda_star", 2.0 * std::sqrt(q) * lions.value));
    out.push_back(derived(lions, "lambda0_star", std::sqrt(4.5) * std::sqrt(q) * lions.value));
  } else {
    const auto inf_r = minimize_rayleigh(q, lambda, p, family, budget, rng, grid);
    if (p < kP103 - kExponentTol)
      out.push_back(derived(inf_r, "inf_tilde_r", extremal_prefactor(Variant::tilde, p) * inf_r.value));
    if (reg == Regime::between_83_3 || reg == Regime::between_3_103) {
      out.push_back(derived(inf_r, "r_star", extremal_prefactor(Variant::star, p) * inf_r.value));
      out.push_back(derived(inf_r, "r0_star", extremal_prefactor(Variant::zero, p) * inf_r.value));
    }
    if (p >= kP103 - kExponentTol)
      out.push_back(derived(inf_r, "inf_bar_r", extremal_prefactor(Variant::bar, p) * inf_r.value));
  }
  auto kgn = estimate_kgn(p, family, budget, rng, grid);
  out.push_back(kgn);
  if (reg == Regime::at_103) {
    ThresholdEstimate b = kgn;
    b.name = "nonexistence_lambda_r23";
    b.value = nonexistence_bound_103(kgn.value);
    b.bound = BoundDirection::upper;
    for (auto& tp : b.trace) tp.best = nonexistence_bound_103(tp.best);
    out.push_back(b);
  }
  ThresholdEstimate p0;
  p0.name = "p0";
  p0.value = p0_exact();
  p0.bound = BoundDirection::exact;
  p0.family = "closed form";
  out.push_back(p0);
  return out;
}

const ThresholdEstimate* find_estimate(const std::vector<ThresholdEstimate>& list,
                                       const std::string& name) {
  for (const auto& e : list)
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace pfiber
