#include "pfiber/hartree.hpp"

#include <cmath>
#include <numbers>

#include "pfiber/error.hpp"

namespace pfiber {

namespace {

// Integral over [x_j, x_{j+1}] of the quintic through x_{j-2}..x_{j+3}, units of h.
constexpr double kPanel[6] = {11.0 / 1440, -93.0 / 1440, 802.0 / 1440,
                              802.0 / 1440, -93.0 / 1440, 11.0 / 1440};

// Cumulative integral F_i = int_0^{r_i} f with ghost values f(-r) = parity * f(r)
// and zero beyond the last node.
std::vector<double> cumulative(const std::vector<double>& f, double h, double parity) {
  const long n = static_cast<long>(f.size());
  auto at = [&](long k) -> double {
    if (k < 0) return parity * f[static_cast<std::size_t>(-k)];
    if (k >= n) return 0.0;
    return f[static_cast<std::size_t>(k)];
  };
  std::vector<double> F(f.size(), 0.0);
  double acc = 0.0;
  for (long j = 0; j + 1 < n; ++j) {
    double panel = 0.0;
    for (int a = 0; a < 6; ++a) panel += kPanel[a] * at(j - 2 + a);
    acc += h * panel;
    F[static_cast<std::size_t>(j + 1)] = acc;
  }
  return F;
}

}  // namespace

HartreePotential hartree_potential(const RadialFunction& u) {
  const auto& grid = u.grid();
  const auto& r = grid.nodes();
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  std::vector<double> f(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = u[i] * u[i];
    f[i] = r[i] * r[i] * rho;  // even in r
    g[i] = r[i] * rho;         // odd in r
  }
  const auto M = cumulative(f, h, 1.0);
  const auto G = cumulative(g, h, -1.0);
  const double total = G.back();
  constexpr double four_pi = 4.0 * std::numbers::pi;
  std::vector<double> phi(n);
  phi[0] = four_pi * total;
  for (std::size_t i = 1; i < n; ++i) phi[i] = four_pi * (M[i] / r[i] + (total - G[i]));
  return HartreePotential{grid, std::move(phi)};
}

double hartree_energy(const RadialFunction& u) {
  const auto pot = hartree_potential(u);
  const auto& w = u.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += w[i] * pot.phi_values[i] * u[i] * u[i];
  return s;
}

Integrals integrals_of(const RadialFunction& u, double p) {
  Integrals I;
  I.p = p;
  I.mass = integrate_mass(u);
  I.grad_sq = integrate_grad_sq(u);
  I.hartree = hartree_energy(u);
  I.lp = integrate_lp(u, p);
  return I;
}

}  // namespace pfiber
