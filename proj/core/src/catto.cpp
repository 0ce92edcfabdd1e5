#include "pfiber/catto.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pfiber/error.hpp"
#include "pfiber/hartree.hpp"
#include "pfiber/rayleigh.hpp"
#include "pfiber/regime.hpp"

namespace pfiber {

CattoSequenceReport catto_sequence(double p, double r, int n_max, double separation, double q,
                                   double lambda, const RadialGrid& grid) {
  require_exponent(p);
  if (n_max < 2) fail(ErrorKind::invalid_input, "catto sequence needs n_max >= 2");
  if (!(r > 0.0)) fail(ErrorKind::invalid_input, "mass r must be positive");
  if (!(separation > 0.0)) fail(ErrorKind::invalid_input, "separation must be positive");

  Profile bump;
  bump.shape = Profile::Shape::gaussian;
  bump.widths = {1.0};
  bump.coeffs = {std::pow(std::numbers::pi, -0.75)};  // unit mass

  CattoSequenceReport rep;
  rep.p = p;
  rep.r = r;
  for (int n = 1; n <= n_max; ++n) {
    const double tn = std::cbrt(static_cast<double>(n));
    const double m = r / n;
    const double spacing = separation * n;
    const double reach = 6.0 * bump.widths[0] / tn;
    if (spacing < 2.0 * reach) {
      std::ostringstream os;
      os << "bumps overlap at n=" << n << ": spacing " << spacing << " < " << 2.0 * reach;
      fail(ErrorKind::configuration, os.str());
    }
    const auto u = dilate(bump.sample(grid), tn).scaled(std::sqrt(m));
    const Integrals one = integrals_of(u, p);
    double cross = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) cross += m * m / (spacing * (j - i));
    Integrals total;
    total.p = p;
    total.mass = n * one.mass;
    total.grad_sq = n * one.grad_sq;
    total.lp = n * one.lp;
    total.hartree = n * one.hartree + 2.0 * cross;
    rep.n_values.push_back(n);
    rep.lp_values.push_back(total.lp);
    rep.grad_values.push_back(total.grad_sq);
    rep.hartree_values.push_back(total.hartree);
    if (!near(p, 3.0, 1e-9))
      rep.rayleigh_values.push_back(rayleigh_quotient(total.normalized(1.0), q, lambda));
  }
  return rep;
}

}  // namespace pfiber
