#include "pfiber/radial.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pfiber/error.hpp"
#include "pfiber/regime.hpp"
#include "stencil.hpp"

namespace pfiber {

namespace {
constexpr double kPi = std::numbers::pi;
}

RadialGrid::RadialGrid(double r_max, std::size_t n_points) {
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    fail(ErrorKind::invalid_input, "grid r_max must be positive");
  if (n_points < 8) fail(ErrorKind::invalid_input, "grid needs at least 8 nodes");
  auto d = std::make_shared<Data>();
  d->r_max = r_max;
  d->h = r_max / static_cast<double>(n_points - 1);
  d->nodes.resize(n_points);
  d->weights.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i) d->nodes[i] = d->h * static_cast<double>(i);
  d->nodes.back() = r_max;
  // trapezoid with a Gregory end correction at r_max; the origin end needs
  // none because r^2 g(r) is even
  std::vector<double> c(n_points, d->h);
  c[0] = 0.5 * d->h;
  c[n_points - 1] = 0.5 * d->h - d->h / 12.0;
  c[n_points - 2] = d->h + d->h / 12.0;
  for (std::size_t i = 0; i < n_points; ++i)
    d->weights[i] = 4.0 * kPi * d->nodes[i] * d->nodes[i] * c[i];
  d->stencil = std::make_shared<detail::RadialStencil>(n_points, d->h);
  data_ = std::move(d);
}

bool RadialGrid::same_as(const RadialGrid& other) const {
  return data_ == other.data_ ||
         (size() == other.size() && r_max() == other.r_max());
}

RadialFunction::RadialFunction(RadialGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    fail(ErrorKind::invalid_input, "sample count does not match grid");
  for (double v : values_)
    if (!std::isfinite(v)) fail(ErrorKind::invalid_input, "non-finite sample");
}

RadialFunction RadialFunction::zero(const RadialGrid& grid) {
  return RadialFunction(grid, std::vector<double>(grid.size(), 0.0));
}

double RadialFunction::leak() const {
  const double R = grid_.r_max();
  return values_.back() * values_.back() * R * R * R;
}

RadialFunction RadialFunction::scaled(double k) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= k;
  return RadialFunction(grid_, std::move(v));
}

double integrate_mass(const RadialFunction& u) {
  const auto& w = u.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += w[i] * u[i] * u[i];
  return s;
}

std::vector<double> radial_derivative(const RadialFunction& u) {
  std::vector<double> du(u.size());
  u.grid().stencil().first(u.values().data(), du.data());
  return du;
}

std::vector<double> laplacian(const RadialFunction& u) {
  std::vector<double> lap(u.size());
  u.grid().stencil().laplacian(u.values().data(), lap.data());
  return lap;
}

double integrate_grad_sq(const RadialFunction& u) {
  if (u.size() < 3) fail(ErrorKind::invalid_input, "grid with fewer than 3 nodes");
  const auto du = radial_derivative(u);
  const auto& w = u.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < du.size(); ++i) s += w[i] * du[i] * du[i];
  return s;
}

double integrate_lp(const RadialFunction& u, double p) {
  require_exponent(p);
  const auto& w = u.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = std::abs(u[i]);
    if (a > 0.0) s += w[i] * std::pow(a, p);
  }
  return s;
}

double inner(const RadialFunction& f, const RadialFunction& g) {
  const auto& w = f.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i] * g[i];
  return s;
}

RadialFunction dilate(const RadialFunction& u, double t, double leak_tol) {
  if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorKind::domain_error, "dilation t must be positive");
  if (t == 1.0) return u;
  const auto& grid = u.grid();
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const double R = grid.r_max();
  const double amp = std::pow(t, 1.5);
  const auto& v = u.values();
  auto at = [&](long k) -> double {
    if (k < 0) k = -k;
    if (k >= static_cast<long>(n)) return 0.0;
    return v[static_cast<std::size_t>(k)];
  };
  std::vector<double> out(n, 0.0);
  constexpr int kPts = 8;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = t * grid.nodes()[i];
    if (x > R) break;
    const double s = x / h;
    const long j = static_cast<long>(std::floor(s));
    const double f = s - static_cast<double>(j);
    if (f == 0.0) {
      out[i] = amp * at(j);
      continue;
    }
    // Lagrange weights on offsets -3..4 relative to j
    double val = 0.0;
    for (int a = 0; a < kPts; ++a) {
      const double xa = static_cast<double>(a - 3);
      double wa = 1.0;
      for (int b = 0; b < kPts; ++b) {
        if (b == a) continue;
        const double xb = static_cast<double>(b - 3);
        wa *= (f - xb) / (xa - xb);
      }
      val += wa * at(j + a - 3);
    }
    out[i] = amp * val;
  }
  RadialFunction res(grid, std::move(out));
  if (res.leak() > leak_tol) {
    std::ostringstream os;
    os << "dilation by t=" << t << " leaks out of the box (u(r_max)^2 r_max^3 = "
       << res.leak() << ")";
    fail(ErrorKind::numerical_failure, os.str());
  }
  return res;
}

RadialFunction project_to_sphere(const RadialFunction& u, double r) {
  if (!(r > 0.0)) fail(ErrorKind::domain_error, "sphere radius r must be positive");
  const double m = integrate_mass(u);
  if (!(m > 0.0)) fail(ErrorKind::degenerate_input, "cannot project the zero function");
  return u.scaled(std::sqrt(r / m));
}

Integrals Integrals::scaled(double k) const {
  Integrals o = *this;
  const double k2 = k * k;
  o.mass *= k2;
  o.grad_sq *= k2;
  o.hartree *= k2 * k2;
  o.lp *= std::pow(std::abs(k), p);
  return o;
}

Integrals Integrals::normalized(double r) const {
  if (!(mass > 0.0)) fail(ErrorKind::degenerate_input, "zero mass");
  return scaled(std::sqrt(r / mass));
}

Integrals Integrals::dilated(double t) const {
  Integrals o = *this;
  o.grad_sq *= t * t;
  o.hartree *= t;
  o.lp *= std::pow(t, 1.5 * (p - 2.0));
  return o;
}

}  // namespace pfiber
