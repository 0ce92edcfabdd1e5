#include "pfiber/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pfiber/error.hpp"
#include "pfiber/hartree.hpp"
#include "pfiber/regime.hpp"

namespace pfiber {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tridiagonal kappa - Lap (second order, Dirichlet at r_max), solved by Thomas.
class Preconditioner {
 public:
  Preconditioner(const RadialGrid& grid, double kappa) : n_(grid.size()) {
    const double h2 = grid.spacing() * grid.spacing();
    const auto& r = grid.nodes();
    lo_.assign(n_, 0.0);
    di_.assign(n_, 0.0);
    up_.assign(n_, 0.0);
    di_[0] = kappa + 6.0 / h2;
    up_[0] = -6.0 / h2;
    for (std::size_t i = 1; i + 1 < n_; ++i) {
      lo_[i] = -r[i - 1] / (r[i] * h2);
      di_[i] = kappa + 2.0 / h2;
      up_[i] = -r[i + 1] / (r[i] * h2);
    }
    di_[n_ - 1] = 1.0;
  }

  std::vector<double> solve(const std::vector<double>& rhs) const {
    std::vector<double> c(n_), d(n_), x(n_);
    c[0] = up_[0] / di_[0];
    d[0] = rhs[0] / di_[0];
    for (std::size_t i = 1; i < n_; ++i) {
      const double m = di_[i] - lo_[i] * c[i - 1];
      c[i] = up_[i] / m;
      d[i] = (rhs[i] - lo_[i] * d[i - 1]) / m;
    }
    x[n_ - 1] = d[n_ - 1];
    for (std::size_t i = n_ - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
  }

 private:
  std::size_t n_;
  std::vector<double> lo_, di_, up_;
};

double dot(const std::vector<double>& w, const std::vector<double>& a,
           const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * a[i] * b[i];
  return s;
}

struct State {
  std::vector<double> u;
  std::vector<double> G;
  double E;
};

State evaluate(const RadialGrid& grid, std::vector<double> u, const Params& prm) {
  RadialFunction f(grid, u);
  const auto lap = laplacian(f);
  const auto pot = hartree_potential(f);
  const auto& w = grid.weights();
  const auto du = radial_derivative(f);
  double A = 0.0, B = 0.0, C = 0.0;
  std::vector<double> G(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = std::abs(u[i]);
    const double ap = a > 0.0 ? std::pow(a, prm.p - 2.0) : 0.0;
    G[i] = -lap[i] + prm.q * pot.phi_values[i] * u[i] - prm.lambda * ap * u[i];
    A += w[i] * du[i] * du[i];
    B += w[i] * pot.phi_values[i] * u[i] * u[i];
    C += w[i] * ap * a * a;
  }
  const double E = 0.5 * A + 0.25 * prm.q * B - prm.lambda * C / prm.p;
  return {std::move(u), std::move(G), E};
}

void rescale_to(const RadialGrid& grid, std::vector<double>& u, double r) {
  const double m = dot(grid.weights(), u, u);
  const double k = std::sqrt(r / m);
  for (double& x : u) x *= k;
}

// Moves u to the minimum of its own fiber map, if that lowers the discrete energy.
std::optional<State> fiber_step(const RadialGrid& grid, const State& s, const Params& prm) {
  const RadialFunction u(grid, s.u);
  const auto fc = FiberCoefficients::from(integrals_of(u, prm.p).normalized(1.0), prm);
  FiberClassification cls;
  try {
    cls = classify_fiber(fc);
  } catch (const Error&) {
    return std::nullopt;
  }
  const auto* c = cls.find(PointType::plus);
  if (!c || std::abs(c->t - 1.0) < 1e-12) return std::nullopt;
  std::vector<double> v;
  try {
    v = dilate(u, c->t).values();
  } catch (const Error&) {
    return std::nullopt;
  }
  v.back() = 0.0;
  rescale_to(grid, v, prm.r);
  State trial = evaluate(grid, std::move(v), prm);
  if (trial.E < s.E) return trial;
  return std::nullopt;
}

}  // namespace

double energy(const RadialFunction& u, double p, double q, double lambda) {
  return energy_value(integrals_of(u, p), q, lambda);
}

RadialFunction gaussian_init(const RadialGrid& grid, double r, double width) {
  const double c = std::pow(std::numbers::pi * width * width, -0.75) * std::sqrt(r);
  return RadialFunction::sample(grid, [&](double x) {
    const double s = x / width;
    return c * std::exp(-0.5 * s * s);
  });
}

SolveReport assess(const RadialFunction& u, const Params& prm) {
  SolveReport rep{u};
  rep.params = prm;
  rep.integrals = integrals_of(u, prm.p);
  const Integrals& I = rep.integrals;
  rep.energy = energy_value(I, prm.q, prm.lambda);
  rep.multiplier = (I.grad_sq + prm.q * I.hartree - prm.lambda * I.lp) / I.mass;
  const double P = pohozaev_residual(I, {1.0, -rep.multiplier, prm.q, -prm.lambda});
  rep.pohozaev_residual = P / (I.grad_sq + I.mass + I.hartree + I.lp);
  rep.nehari = nehari_membership(I, prm, kNehariTol, kNehariTol, 1e-6);
  return rep;
}

SolveReport minimize_on_sphere(const Params& prm, const RadialFunction& init,
                               const SolveOptions& opt) {
  require_exponent(prm.p);
  if (prm.p >= kP103 - kExponentTol)
    fail(ErrorKind::domain_error, "energy is unbounded below on S_r for p >= 10/3; use minimize_nehari");
  if (!(prm.r > 0.0) || !(prm.q > 0.0) || !(prm.lambda > 0.0))
    fail(ErrorKind::invalid_input, "r, q and lambda must be positive");
  const RadialGrid& grid = init.grid();
  const auto& w = grid.weights();

  std::vector<double> u0 = project_to_sphere(init, prm.r).values();
  State s = evaluate(grid, std::move(u0), prm);
  std::vector<double> trace{s.E};
  double tau = opt.step;
  int it = 0;
  int polish = 0;
  bool converged = false;
  double gnorm = kInf;

  for (; it < opt.max_iter; ++it) {
    s.G.back() = 0.0;  // Dirichlet node is not a degree of freedom
    const double ell = dot(w, s.G, s.u) / prm.r;
    std::vector<double> res(s.u.size());
    for (std::size_t i = 0; i < res.size(); ++i) res[i] = s.G[i] - ell * s.u[i];
    gnorm = std::sqrt(dot(w, res, res));
    if (gnorm < opt.tol * (1.0 + std::abs(s.E))) {
      // polish along the fiber so the virial balance holds to interpolation accuracy
      if (polish < 5) {
        ++polish;
        if (auto moved = fiber_step(grid, s, prm)) {
          s = std::move(*moved);
          trace.push_back(s.E);
          continue;
        }
      }
      converged = true;
      break;
    }
    if (opt.fiber_every > 0 && it % opt.fiber_every == 0) {
      // the dilation direction is the slowest mode; minimize along it exactly
      if (auto moved = fiber_step(grid, s, prm)) {
        s = std::move(*moved);
        trace.push_back(s.E);
        continue;
      }
    }
    const Preconditioner K(grid, std::clamp(std::abs(ell), 1e-4, 1.0));
    const auto y = K.solve(s.G);
    const auto z = K.solve(s.u);
    const double alpha = dot(w, s.u, y) / dot(w, s.u, z);
    std::vector<double> d(s.u.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = -(y[i] - alpha * z[i]);

    bool accepted = false;
    for (int k = 0; k <= opt.max_halvings; ++k) {
      std::vector<double> v(s.u.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = s.u[i] + tau * d[i];
      v.back() = 0.0;
      rescale_to(grid, v, prm.r);
      State trial = evaluate(grid, std::move(v), prm);
      if (trial.E <= s.E + 1e-14 * (1.0 + std::abs(s.E))) {
        s = std::move(trial);
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) break;
    trace.push_back(s.E);
    tau = std::min(tau * 1.5, 4.0 * opt.step);
  }

  SolveReport rep = assess(RadialFunction(grid, s.u), prm);
  rep.iterations = it;
  rep.gradient_norm = gnorm;
  rep.energy_trace = std::move(trace);
  rep.method = "preconditioned projected gradient";
  rep.converged = converged && std::abs(rep.pohozaev_residual) < 1e-5 &&
                  rep.nehari.verdict != Verdict::not_member;
  return rep;
}

const char* to_string(Component c) {
  return c == Component::plus_union_zero ? "plus_union_zero" : "minus";
}

const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::finite: return "finite";
    case RowStatus::unbounded_below: return "unbounded_below";
    case RowStatus::empty_nehari: return "empty_nehari";
  }
  return "unknown";
}

namespace {

// Fiber point of the requested component, or nullopt.
std::optional<double> component_point(const FiberCoefficients& fc, Component component) {
  const auto cls = classify_fiber(fc);
  if (component == Component::minus) {
    if (auto* c = cls.find(PointType::minus)) return c->t;
    return std::nullopt;
  }
  if (auto* c = cls.find(PointType::plus)) return c->t;
  if (auto* c = cls.find(PointType::zero)) return c->t;
  return std::nullopt;
}

}  // namespace

NehariSearch minimize_nehari(const Params& prm, const TrialFamily& family, const Budget& budget,
                             Component component, std::mt19937_64& rng, const RadialGrid& grid,
                             const std::vector<std::vector<double>>& starts) {
  require_exponent(prm.p);
  if (!(prm.r > 0.0) || !(prm.q > 0.0) || !(prm.lambda > 0.0))
    fail(ErrorKind::invalid_input, "r, q and lambda must be positive");

  auto objective = [&](const std::vector<double>& x) -> double {
    const Integrals I = member_integrals(family, x, grid, prm.p);
    if (!(I.mass > 0.0 && I.grad_sq > 0.0 && I.hartree > 0.0 && I.lp > 0.0)) return kInf;
    const auto fc = FiberCoefficients::from(I.normalized(1.0), prm);
    try {
      const auto t = component_point(fc, component);
      if (!t) return kInf;
      return fiber_eval(fc, *t).value;
    } catch (const Error&) {
      return kInf;
    }
  };

  std::vector<std::vector<double>> x0s = starts;
  x0s.push_back(family.default_point());
  const int extra = std::max(0, budget.starts - 1);
  for (int k = 0; k < extra; ++k) x0s.push_back(family.random_point(rng));

  NelderMeadOptions opt;
  opt.max_evaluations = std::max(10, budget.evaluations / static_cast<int>(x0s.size()));
  opt.restarts = 2;

  NehariSearch out;
  double best = kInf;
  for (const auto& x0 : x0s) {
    auto res = nelder_mead(objective, x0, family.lower(), family.upper(), opt, rng);
    for (const auto& tp : res.trace)
      out.trace.push_back({out.evaluations + tp.evaluations, std::min(best, tp.best)});
    out.evaluations += res.evaluations;
    if (res.feasible && res.value < best) {
      best = res.value;
      out.argmin = res.x;
    }
  }
  if (!std::isfinite(best)) {
    out.status = RowStatus::empty_nehari;
    out.value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.status = RowStatus::finite;
  out.value = best;

  // witness r^{1/2} u^t, sampled on a grid shrunk by 1/t so it stays resolved
  const Integrals I = member_integrals(family, out.argmin, grid, prm.p);
  const auto fc = FiberCoefficients::from(I.normalized(1.0), prm);
  out.t = *component_point(fc, component);
  const Profile pr =
      family.profile(out.argmin).scaled(std::sqrt(prm.r / I.mass)).dilated(out.t);
  const RadialGrid wgrid(grid.r_max() / out.t, grid.size());
  SolveReport w = assess(pr.sample(wgrid), prm);
  w.converged = w.nehari.verdict != Verdict::not_member;
  w.iterations = out.evaluations;
  w.method = std::string("nehari fiber projection (") + to_string(component) + ")";
  out.witness = std::move(w);
  return out;
}

bool detect_unbounded(const Params& prm, const Integrals& unit) {
  require_exponent(prm.p);
  if (prm.p < kP103 - kExponentTol)
    fail(ErrorKind::precondition, "unboundedness test needs p >= 10/3");
  const auto fc = FiberCoefficients::from(unit, prm);
  // probe past the fiber maximum, which can sit well beyond t = 10
  double anchor = 1.0, bottom = -1e6;
  const auto cls = classify_fiber(fc);
  if (const auto* top = cls.find(PointType::minus); top && top->t > 1.0) {
    anchor = top->t;
    bottom *= std::min(1.0, fiber_eval(fc, anchor).value);
  }
  double prev = kInf;
  double last = 0.0;
  for (double k : {10.0, 1e2, 1e3, 1e4}) {
    last = fiber_eval(fc, anchor * k).value;
    if (!(last < prev)) return false;
    prev = last;
  }
  return last < bottom;
}

bool detect_unbounded(const Params& prm, const RadialFunction& u) {
  require_exponent(prm.p);
  if (prm.p < kP103 - kExponentTol)
    fail(ErrorKind::precondition, "unboundedness test needs p >= 10/3");
  return detect_unbounded(prm, integrals_of(u, prm.p).normalized(1.0));
}

}  // namespace pfiber
