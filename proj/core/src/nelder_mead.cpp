#include "pfiber/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pfiber/error.hpp"

namespace pfiber {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const std::vector<double>& lower,
                             const std::vector<double>& upper, const NelderMeadOptions& opt,
                             std::mt19937_64& rng) {
  const std::size_t n = x0.size();
  if (n == 0 || lower.size() != n || upper.size() != n)
    fail(ErrorKind::invalid_input, "simplex dimensions do not match");

  NelderMeadResult res;
  res.value = kInf;

  auto clamp = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
  };
  auto eval = [&](const std::vector<double>& x) {
    double v = f(x);
    if (!std::isfinite(v)) v = kInf;
    ++res.evaluations;
    if (v < res.value) {
      res.value = v;
      res.x = x;
      res.feasible = true;
    }
    if (!res.trace.empty() && res.trace.back().best == res.value)
      res.trace.back().evaluations = res.evaluations;
    else
      res.trace.push_back({res.evaluations, res.value});
    return v;
  };

  clamp(x0);
  res.x = x0;
  std::uniform_real_distribution<double> sign(-1.0, 1.0);

  for (int round = 0; round <= opt.restarts; ++round) {
    if (res.evaluations >= opt.max_evaluations) break;
    std::vector<double> base = round == 0 ? x0 : res.x;
    std::vector<std::vector<double>> simplex(n + 1, base);
    for (std::size_t i = 0; i < n; ++i) {
      const double side = upper[i] - lower[i];
      double step = opt.initial_step * side * (round == 0 ? 1.0 : 0.5);
      if (round > 0) step *= (sign(rng) < 0.0 ? -1.0 : 1.0);
      auto& v = simplex[i + 1];
      v[i] += step;
      if (v[i] > upper[i] || v[i] < lower[i]) v[i] = base[i] - step;
      clamp(v);
    }
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n && res.evaluations < opt.max_evaluations; ++i)
      fv[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    while (res.evaluations < opt.max_evaluations) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
      const std::size_t best = order[0], worst = order[n], second = order[n - 1];

      double spread = 0.0;
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          spread = std::max(spread, std::abs(simplex[i][k] - simplex[best][k]));
      if (std::isfinite(fv[worst]) &&
          std::abs(fv[worst] - fv[best]) <= opt.ftol * (std::abs(fv[best]) + 1e-300) &&
          spread < 1e-9)
        break;
      if (spread < 1e-12) break;

      std::vector<double> centroid(n, 0.0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == worst) continue;
        for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / n;
      }
      auto along = [&](double coef) {
        std::vector<double> x(n);
        for (std::size_t k = 0; k < n; ++k)
          x[k] = centroid[k] + coef * (simplex[worst][k] - centroid[k]);
        clamp(x);
        return x;
      };

      auto xr = along(-1.0);
      const double fr = eval(xr);
      if (fr < fv[best]) {
        auto xe = along(-2.0);
        const double fe = eval(xe);
        if (fe < fr) {
          simplex[worst] = xe;
          fv[worst] = fe;
        } else {
          simplex[worst] = xr;
          fv[worst] = fr;
        }
      } else if (fr < fv[second]) {
        simplex[worst] = xr;
        fv[worst] = fr;
      } else {
        const bool outside = fr < fv[worst];
        auto xc = along(outside ? -0.5 : 0.5);
        const double fc = eval(xc);
        if (fc < std::min(fr, fv[worst])) {
          simplex[worst] = xc;
          fv[worst] = fc;
        } else {
          for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < n; ++k)
              simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
            if (res.evaluations >= opt.max_evaluations) break;
            fv[i] = eval(simplex[i]);
          }
        }
      }
    }
  }
  return res;
}

}  // namespace pfiber
