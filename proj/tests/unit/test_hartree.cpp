#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pfiber/hartree.hpp"

using namespace pfiber;

TEST(Hartree, UnitGaussianPotentialIsErfOverR) {
  RadialGrid g;
  const double c = std::pow(oracle::pi, -0.75);
  const auto u = RadialFunction::sample(g, [&](double r) { return c * std::exp(-0.5 * r * r); });
  const auto pot = hartree_potential(u);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max(worst, std::abs(pot.phi_values[i] - oracle::gaussian_potential(g.nodes()[i])));
  EXPECT_LT(worst, 1e-10);
}

TEST(Hartree, GaussianEnergyClosedForm) {
  RadialGrid g;
  const auto u = RadialFunction::sample(g, [](double r) { return std::exp(-0.5 * r * r); });
  EXPECT_NEAR(hartree_energy(u) / oracle::gaussian_hartree(), 1.0, 1e-10);
}

TEST(Hartree, MixturesMatchDoubleQuadrature) {
  RadialGrid g;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> w(0.4, 3.0), c(0.1, 1.0);
  for (int k = 0; k < 5; ++k) {
    oracle::Mixture m{{w(rng), w(rng)}, {c(rng), c(rng)}};
    const auto u = RadialFunction::sample(g, m);
    const double ref = oracle::hartree_double_quadrature(m, g.r_max());
    EXPECT_NEAR(hartree_energy(u) / ref, 1.0, 1e-8);
  }
}

TEST(Hartree, PotentialDecaysLikeMassOverR) {
  RadialGrid g;
  const auto u = RadialFunction::sample(g, [](double r) { return std::exp(-r); });
  const auto pot = hartree_potential(u);
  const double M = integrate_mass(u);
  EXPECT_NEAR(pot.phi_values.back() * g.r_max() / M, 1.0, 1e-10);
}

TEST(Hartree, QuadraticInAmplitude) {
  RadialGrid g;
  const auto u = RadialFunction::sample(g, [](double r) { return std::exp(-0.3 * r * r); });
  EXPECT_NEAR(hartree_energy(u.scaled(2.0)) / hartree_energy(u), 16.0, 1e-10);
}
