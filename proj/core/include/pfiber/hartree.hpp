#pragma once

#include <vector>

#include "pfiber/radial.hpp"

namespace pfiber {

struct HartreePotential {
  RadialGrid grid;
  std::vector<double> phi_values;
};

// phi_u = |x|^{-1} * u^2 via the radial Newton formula, O(N).
HartreePotential hartree_potential(const RadialFunction& u);

// B = int phi_u u^2 (without q).
double hartree_energy(const RadialFunction& u);

// mass, A, B and C_p of one profile.
Integrals integrals_of(const RadialFunction& u, double p);

}  // namespace pfiber
