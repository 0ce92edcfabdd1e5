#include "pfiber/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pfiber/error.hpp"
#include "pfiber/hartree.hpp"
#include "pfiber/rayleigh.hpp"
#include "pfiber/regime.hpp"

namespace pfiber {

FiberCoefficients FiberCoefficients::from(const Integrals& unit, const Params& prm) {
  FiberCoefficients fc;
  fc.A = unit.grad_sq;
  fc.B = unit.hartree;
  fc.C = unit.lp;
  fc.r = prm.r;
  fc.q = prm.q;
  fc.lambda = prm.lambda;
  fc.p = prm.p;
  return fc;
}

void FiberCoefficients::validate() const {
  require_exponent(p);
  auto pos = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!pos(A) || !pos(B) || !pos(C))
    fail(ErrorKind::invalid_input, "fiber coefficients A, B, C must be positive");
  if (!pos(r) || !pos(q) || !pos(lambda))
    fail(ErrorKind::invalid_input, "r, q and lambda must be positive");
}

namespace {

struct Terms {
  double a1;  // rA
  double a0;  // r^2 qB / 4
  double a2;  // r^{p/2} lambda C
  double k1;  // 3(p-2)/(2p)
  double k2;  // 3(p-2)(3p-8)/(4p)
  double m;   // 3p/2 - 4
};

Terms terms_of(const FiberCoefficients& fc) {
  Terms T;
  const double p = fc.p;
  T.a1 = fc.r * fc.A;
  T.a0 = fc.r * fc.r * fc.q * fc.B / 4.0;
  T.a2 = std::pow(fc.r, p / 2.0) * fc.lambda * fc.C;
  T.k1 = 3.0 * (p - 2.0) / (2.0 * p);
  T.k2 = 3.0 * (p - 2.0) * (3.0 * p - 8.0) / (4.0 * p);
  T.m = 1.5 * p - 4.0;
  return T;
}

double dphi(const Terms& T, double t) {
  return t * T.a1 + T.a0 - T.k1 * std::pow(t, T.m) * T.a2;
}

// scale of the terms of phi' at t, for relative tolerances
double dphi_scale(const Terms& T, double t) {
  return std::abs(t * T.a1) + T.a0 + std::abs(T.k1 * std::pow(t, T.m) * T.a2);
}

double bisect(const Terms& T, double lo, double hi) {
  double flo = dphi(T, lo);
  for (int it = 0; it < 2000; ++it) {
    // geometric midpoint while the bracket spans decades
    const double mid = hi > 4.0 * lo ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = dphi(T, mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return std::abs(dphi(T, lo)) <= std::abs(dphi(T, hi)) ? lo : hi;
}

// Sign changes of phi' on a log-spaced scan of [lo, hi] with extra breakpoints.
std::vector<double> scan_roots(const Terms& T, double lo, double hi,
                               const std::vector<double>& breaks) {
  constexpr int kScan = 512;
  std::vector<double> ts;
  ts.reserve(kScan + breaks.size());
  const double l0 = std::log(lo), l1 = std::log(hi);
  for (int i = 0; i < kScan; ++i) ts.push_back(std::exp(l0 + (l1 - l0) * i / (kScan - 1)));
  for (double b : breaks)
    if (b > lo && b < hi) ts.push_back(b);
  std::sort(ts.begin(), ts.end());
  std::vector<double> roots;
  double prev = dphi(T, ts[0]);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double cur = dphi(T, ts[i]);
    if (cur == 0.0) {
      roots.push_back(ts[i]);
    } else if (prev != 0.0 && std::signbit(cur) != std::signbit(prev)) {
      roots.push_back(bisect(T, ts[i - 1], ts[i]));
    }
    prev = cur;
  }
  return roots;
}

std::vector<double> find_roots(const Terms& T, std::size_t want,
                               const std::vector<double>& breaks, const FiberCoefficients& fc) {
  double lo = 1e-6, hi = 1e6;
  for (;;) {
    auto roots = scan_roots(T, lo, hi, breaks);
    if (roots.size() >= want) return roots;
    if (lo <= 1e-150 && hi >= 1e150) break;
    lo = std::max(lo * 1e-6, 1e-150);
    hi = std::min(hi * 1e6, 1e150);
  }
  std::ostringstream os;
  os << "no bracket for a required fiber critical point: p=" << fc.p << " A=" << fc.A
     << " B=" << fc.B << " C=" << fc.C << " r=" << fc.r << " q=" << fc.q
     << " lambda=" << fc.lambda << " wanted " << want << " roots";
  fail(ErrorKind::numerical_failure, os.str());
}

}  // namespace

FiberValue fiber_eval(const FiberCoefficients& fc, double t) {
  if (!(t > 0.0)) fail(ErrorKind::domain_error, "fiber parameter t must be positive");
  const Terms T = terms_of(fc);
  const double tm = std::pow(t, T.m);
  FiberValue v;
  v.value = 0.5 * t * t * T.a1 + t * T.a0 - t * tm * T.a2 / fc.p;
  v.first = t * T.a1 + T.a0 - T.k1 * tm * T.a2;
  v.second = T.a1 - T.k2 * (tm / t) * T.a2;
  return v;
}

double fiber_inflection(const FiberCoefficients& fc) {
  const Terms T = terms_of(fc);
  if (near(fc.p, kP83)) fail(ErrorKind::domain_error, "phi'' has no zero at p = 8/3");
  // a1 = k2 t^{m-1} a2
  const double ratio = T.a1 / (T.k2 * T.a2);
  if (!(ratio > 0.0)) fail(ErrorKind::domain_error, "phi'' does not vanish for this p");
  return std::pow(ratio, 1.0 / (T.m - 1.0));
}

const CriticalPoint* FiberClassification::find(PointType type) const {
  for (const auto& c : critical_points)
    if (c.type == type) return &c;
  return nullptr;
}

FiberClassification classify_fiber(const FiberCoefficients& fc) {
  fc.validate();
  const Terms T = terms_of(fc);
  FiberClassification out{};
  switch (regime_of(fc.p)) {
    case Regime::below_83: {
      out.case_tag = FiberCase::I;
      const auto roots = find_roots(T, 1, {}, fc);
      out.critical_points.push_back({roots.front(), PointType::plus});
      break;
    }
    case Regime::at_83: {
      if (T.a0 - T.a2 / fc.p < 0.0) {
        out.case_tag = FiberCase::II_1;
        const auto roots = find_roots(T, 1, {}, fc);
        out.critical_points.push_back({roots.front(), PointType::plus});
      } else {
        out.case_tag = FiberCase::II_2;
      }
      break;
    }
    case Regime::between_83_3:
    case Regime::at_3:
    case Regime::between_3_103: {
      const double s = fiber_inflection(fc);
      const double ds = dphi(T, s);
      const double tol = 1e-14 * dphi_scale(T, s);
      if (ds > tol) {
        out.case_tag = FiberCase::III_3;
      } else if (ds >= -tol) {
        out.case_tag = FiberCase::III_2;
        out.critical_points.push_back({s, PointType::zero});
      } else {
        const auto roots = find_roots(T, 2, {s}, fc);
        const double tm = roots.front(), tp = roots.back();
        if (tp - tm <= 1e-6 * s) {
          out.case_tag = FiberCase::III_2;
          out.critical_points.push_back({s, PointType::zero});
        } else {
          out.case_tag = FiberCase::III_1;
          out.critical_points.push_back({tm, PointType::minus});
          out.critical_points.push_back({tp, PointType::plus});
        }
      }
      break;
    }
    case Regime::at_103: {
      if (0.5 * T.a1 - 0.3 * T.a2 < 0.0) {
        out.case_tag = FiberCase::IV_1;
        const auto roots = find_roots(T, 1, {}, fc);
        out.critical_points.push_back({roots.front(), PointType::minus});
      } else {
        out.case_tag = FiberCase::IV_2;
      }
      break;
    }
    case Regime::above_103: {
      out.case_tag = FiberCase::V;
      const auto roots = find_roots(T, 1, {}, fc);
      out.critical_points.push_back({roots.front(), PointType::minus});
      break;
    }
  }
  return out;
}

const char* to_string(PointType t) {
  switch (t) {
    case PointType::plus: return "plus";
    case PointType::zero: return "zero";
    case PointType::minus: return "minus";
  }
  return "unknown";
}

const char* to_string(FiberCase c) {
  switch (c) {
    case FiberCase::I: return "I";
    case FiberCase::II_1: return "II-1";
    case FiberCase::II_2: return "II-2";
    case FiberCase::III_1: return "III-1";
    case FiberCase::III_2: return "III-2";
    case FiberCase::III_3: return "III-3";
    case FiberCase::IV_1: return "IV-1";
    case FiberCase::IV_2: return "IV-2";
    case FiberCase::V: return "V";
  }
  return "unknown";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::plus: return "plus";
    case Verdict::zero: return "zero";
    case Verdict::minus: return "minus";
    case Verdict::not_member: return "not_member";
  }
  return "unknown";
}

NehariMembership nehari_membership(const Integrals& I, const Params& prm, double eps_q,
                                   double eps_w, double mass_tol) {
  require_exponent(prm.p);
  if (std::abs(I.mass - prm.r) > mass_tol * prm.r) {
    std::ostringstream os;
    os << "mass " << I.mass << " does not match r=" << prm.r;
    fail(ErrorKind::invalid_input, os.str());
  }
  const double p = prm.p;
  NehariMembership m{};
  m.Q_value = I.grad_sq + 0.25 * prm.q * I.hartree -
              3.0 * (p - 2.0) / (2.0 * p) * prm.lambda * I.lp;
  m.W_value = I.grad_sq - 3.0 * (p - 2.0) * (3.0 * p - 8.0) / (4.0 * p) * prm.lambda * I.lp;
  const double sq = eps_q * I.grad_sq;
  const double sw = eps_w * I.grad_sq;
  if (std::abs(m.Q_value) > sq) {
    m.verdict = Verdict::not_member;
  } else if (m.W_value > sw) {
    m.verdict = Verdict::plus;
  } else if (m.W_value < -sw) {
    m.verdict = Verdict::minus;
  } else {
    m.verdict = Verdict::zero;
  }
  return m;
}

NehariMembership nehari_membership(const RadialFunction& u, const Params& prm, double eps_q,
                                   double eps_w, double mass_tol) {
  return nehari_membership(integrals_of(u, prm.p), prm, eps_q, eps_w, mass_tol);
}

double pohozaev_residual(const Integrals& I, const PohozaevInput& in) {
  double P = 0.0;
  if (in.a != 0.0) P += 0.5 * in.a * I.grad_sq;
  if (in.b != 0.0) P += 1.5 * in.b * I.mass;
  if (in.c != 0.0) P += 1.25 * in.c * I.hartree;
  if (in.d != 0.0) P += 3.0 * in.d / I.p * I.lp;
  return P;
}

double pohozaev_residual(const RadialFunction& u, const PohozaevInput& in, double p) {
  return pohozaev_residual(integrals_of(u, p), in);
}

double energy_value(const Integrals& I, double q, double lambda) {
  return 0.5 * I.grad_sq + 0.25 * q * I.hartree - lambda * I.lp / I.p;
}

ClosedSolution solve_closed_system(double a, double b, double c, double d, double e, double f,
                                   double A, double B, double C, double p) {
  require_exponent(p);
  if (near(p, 3.0, 1e-9)) fail(ErrorKind::domain_error, "closed system needs p != 3");
  if (!(A > 0.0) || !(B > 0.0) || !(C > 0.0))
    fail(ErrorKind::invalid_input, "A, B, C must be positive");
  if (b == 0.0) fail(ErrorKind::precondition, "closed system requires b != 0");
  const double den = c * e - b * f;
  if (den == 0.0) fail(ErrorKind::precondition, "closed system requires ce - bf != 0");
  const double P1 = (b * d - a * e) / den;
  const double P2 = (a * f - c * d) / den;
  if (!(P1 > 0.0) || !(P2 > 0.0)) {
    std::ostringstream os;
    os << "closed system sign conditions fail: (bd-ae)/(ce-bf)=" << P1
       << ", (af-cd)/(ce-bf)=" << P2;
    fail(ErrorKind::precondition, os.str());
  }
  const double e2 = 1.0 / (2.0 * (p - 3.0));
  const double e1 = (3.0 * p - 10.0) / (4.0 * (p - 3.0));
  const double eA = (3.0 * p - 8.0) / (4.0 * (p - 3.0));
  const double eB = (10.0 - 3.0 * p) / (4.0 * (p - 3.0));
  ClosedSolution s{};
  s.r = std::pow(P1, e2) * std::pow(P2, e1) * std::pow(A, eA) * std::pow(B, eB) *
        std::pow(C, -e2);
  s.t = s.r * B / (P2 * A);
  const double X = s.t * A;
  const double Y = s.r * B;
  const double Z = std::pow(s.r, p / 2.0 - 1.0) * std::pow(s.t, 1.5 * p - 4.0) * C;
  s.residual1 = std::abs(a * X + b * Y + c * Z) / (std::abs(a * X) + std::abs(b * Y) + std::abs(c * Z));
  s.residual2 = std::abs(d * X + e * Y + f * Z) / (std::abs(d * X) + std::abs(e * Y) + std::abs(f * Z));
  if (!(s.residual1 < 1e-9) || !(s.residual2 < 1e-9)) {
    std::ostringstream os;
    os << "closed system back-substitution residuals " << s.residual1 << ", " << s.residual2;
    fail(ErrorKind::numerical_failure, os.str());
  }
  return s;
}

const char* to_string(Variant v) {
  switch (v) {
    case Variant::tilde: return "tilde";
    case Variant::zero: return "zero";
    case Variant::star: return "star";
    case Variant::bar: return "bar";
    case Variant::lambda_zero: return "lambda_zero";
    case Variant::lambda_star: return "lambda_star";
  }
  return "unknown";
}

namespace {

struct Coeffs6 {
  double a, b, c, d, e, f;
};

Coeffs6 system_for(Variant v, double p) {
  const double k1 = 3.0 * (p - 2.0) / (2.0 * p);
  const double k2 = 3.0 * (p - 2.0) * (3.0 * p - 8.0) / (4.0 * p);
  switch (v) {
    case Variant::tilde: return {1.0, 0.25, -k1, 0.0, 0.5, -(p - 2.0) / p};
    case Variant::zero: return {0.5, 0.25, -1.0 / p, 1.0, 0.25, -k1};
    case Variant::star: return {1.0, 0.25, -k1, 1.0, 0.0, -k2};
    case Variant::bar: return {1.0, 0.25, -k1, 1.0, 1.0, -1.0};
    default: break;
  }
  fail(ErrorKind::domain_error, "variant has no closed mass system");
}

void check_variant_range(Variant v, double p) {
  require_exponent(p);
  const bool p3 = near(p, 3.0, 1e-9);
  switch (v) {
    case Variant::tilde:
      if (p3) fail(ErrorKind::domain_error, "tilde pair needs p != 3");
      return;
    case Variant::zero:
    case Variant::star:
      if (p3 || !(p > kP83 + kExponentTol && p < kP103 - kExponentTol))
        fail(ErrorKind::domain_error, "zero/star pairs need p in (8/3,10/3) and p != 3");
      return;
    case Variant::bar:
      if (p < kP103 - kExponentTol) fail(ErrorKind::domain_error, "bar pair needs p in [10/3,6)");
      return;
    case Variant::lambda_zero:
    case Variant::lambda_star:
      if (!p3) fail(ErrorKind::domain_error, "lambda thresholds need p = 3");
      return;
  }
}

}  // namespace

double extremal_prefactor(Variant variant, double p) {
  check_variant_range(variant, p);
  if (variant == Variant::lambda_zero) return std::sqrt(4.5);
  if (variant == Variant::lambda_star) return 2.0;
  const Coeffs6 s = system_for(variant, p);
  const double den = s.c * s.e - s.b * s.f;
  const double P1 = (s.b * s.d - s.a * s.e) / den;
  const double P2 = (s.a * s.f - s.c * s.d) / den;
  const double e2 = 1.0 / (2.0 * (p - 3.0));
  const double e1 = (3.0 * p - 10.0) / (4.0 * (p - 3.0));
  return std::pow(P1, e2) * std::pow(P2, e1);
}

ExtremalPair extremal_pair(const Integrals& unit, double q, double lambda, double p,
                           Variant variant) {
  check_variant_range(variant, p);
  if (std::abs(unit.mass - 1.0) > 1e-8) fail(ErrorKind::invalid_input, "extremal pairs need mass 1");
  if (!(q > 0.0) || !(lambda > 0.0)) fail(ErrorKind::invalid_input, "q and lambda must be positive");
  const double A = unit.grad_sq, B = unit.hartree, C = unit.lp;
  if (variant == Variant::lambda_zero || variant == Variant::lambda_star) {
    const double root = std::sqrt(q) * std::sqrt(A * B) / C;
    if (variant == Variant::lambda_zero) return {std::sqrt(4.5) * root, q * B / (2.0 * A), variant};
    return {2.0 * root, q * B / (4.0 * A), variant};
  }
  const Coeffs6 s = system_for(variant, p);
  const ClosedSolution sol =
      solve_closed_system(s.a, s.b, s.c, s.d, s.e, s.f, A, q * B, lambda * C, p);
  ExtremalPair out{sol.r, sol.t, variant};
  if (variant == Variant::zero || variant == Variant::star) {
    FiberCoefficients fc{A, B, C, sol.r, q, lambda, p};
    const FiberValue v = fiber_eval(fc, sol.t);
    const double t = sol.t;
    const double a1 = sol.r * A, a0 = sol.r * sol.r * q * B / 4.0;
    const double a2 = std::pow(sol.r, p / 2.0) * lambda * C * std::pow(t, 1.5 * p - 3.0);
    const double k1 = 3.0 * (p - 2.0) / (2.0 * p);
    const double k2 = 3.0 * (p - 2.0) * (3.0 * p - 8.0) / (4.0 * p);
    double r1, r2;
    if (variant == Variant::zero) {
      r1 = std::abs(v.value) / (0.5 * t * t * a1 + t * a0 + a2 / p);
      r2 = std::abs(v.first) / (t * a1 + a0 + k1 * a2 / t);
    } else {
      r1 = std::abs(v.first) / (t * a1 + a0 + k1 * a2 / t);
      r2 = std::abs(v.second) / (a1 + std::abs(k2) * a2 / (t * t));
    }
    if (!(r1 < 1e-8) || !(r2 < 1e-8)) {
      std::ostringstream os;
      os << "extremal pair back-substitution failed: " << r1 << ", " << r2;
      fail(ErrorKind::numerical_failure, os.str());
    }
  }
  return out;
}

}  // namespace pfiber
