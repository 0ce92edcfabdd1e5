#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pfiber/error.hpp"
#include "pfiber/fiber.hpp"
#include "pfiber/hartree.hpp"
#include "pfiber/minimize.hpp"
#include "pfiber/regime.hpp"

using namespace pfiber;

TEST(Energy, MatchesIntegralFormula) {
  RadialGrid g;
  const auto u = RadialFunction::sample(g, [](double r) { return 0.5 * std::exp(-0.4 * r * r); });
  const Integrals I = integrals_of(u, 2.7);
  EXPECT_NEAR(energy(u, 2.7, 1.3, 0.6),
              0.5 * I.grad_sq + 1.3 * I.hartree / 4 - 0.6 * I.lp / 2.7, 1e-14);
}

TEST(GaussianInit, HasRequestedMass) {
  RadialGrid g;
  EXPECT_NEAR(integrate_mass(gaussian_init(g, 3.0, 1.5)), 3.0, 1e-12);
}

TEST(Solver, GroundStateLowExponent) {
  RadialGrid g(400.0, 4096);
  const Params prm{2.5, 1.0, 1.0, 1.0};
  const auto rep = minimize_on_sphere(prm, gaussian_init(g, 1.0));
  ASSERT_TRUE(rep.converged) << rep.gradient_norm;
  EXPECT_LT(rep.energy, 0.0);
  EXPECT_EQ(rep.nehari.verdict, Verdict::plus);
  EXPECT_LT(std::abs(rep.pohozaev_residual), 1e-5);
  EXPECT_NEAR(integrate_mass(rep.u), 1.0, 1e-10);
  // descent: the trace never increases
  for (std::size_t k = 1; k < rep.energy_trace.size(); ++k)
    EXPECT_LE(rep.energy_trace[k], rep.energy_trace[k - 1] + 1e-13);
  // the minimizer sits at t = 1 on its own fiber
  const auto fc = FiberCoefficients::from(rep.integrals.normalized(), prm);
  const auto cls = classify_fiber(fc);
  const auto* plus = cls.find(PointType::plus);
  ASSERT_NE(plus, nullptr);
  EXPECT_NEAR(plus->t, 1.0, 1e-5);
}

TEST(Solver, IterationCapReportsNotConverged) {
  RadialGrid g(60.0, 1024);
  SolveOptions opt;
  opt.max_iter = 3;
  const auto rep = minimize_on_sphere({2.5, 1, 1, 1}, gaussian_init(g, 1.0), opt);
  EXPECT_FALSE(rep.converged);
  EXPECT_FALSE(rep.energy_trace.empty());
}

TEST(Solver, RejectsSupercriticalExponent) {
  RadialGrid g(20.0, 256);
  try {
    minimize_on_sphere({3.5, 1, 1, 1}, gaussian_init(g, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain_error);
  }
}

TEST(Unbounded, QuarticFibersDiverge) {
  const Integrals unit{1.0, 1.0, 1.0, 1.0, 4.0};
  EXPECT_TRUE(detect_unbounded({4.0, 1, 1, 1}, unit));
  EXPECT_THROW(detect_unbounded({3.2, 1, 1, 1}, unit), Error);
  // at 10/3 the fiber is bounded below when its quadratic coefficient is positive
  const Integrals mild{1.0, 1.0, 1.0, 0.1, kP103};
  EXPECT_FALSE(detect_unbounded({kP103, 1, 1, 1}, mild));
}

TEST(Unbounded, WideProfileWithLateMaximum) {
  // the fiber maximum sits near t = 95, so phi still rises between t = 10 and 100
  const Integrals wide{1.0, 0.238252, 0.276946, 0.00334611, 4.0};
  const auto fc = FiberCoefficients::from(wide, {4.0, 1, 1, 1});
  ASSERT_LT(fiber_eval(fc, 10.0).value, fiber_eval(fc, 100.0).value);
  EXPECT_TRUE(detect_unbounded({4.0, 1, 1, 1}, wide));
}

TEST(NehariSearch, MinusComponentAboveTenThirds) {
  std::mt19937_64 rng(3);
  RadialGrid g(40.0, 2048);
  auto fam = TrialFamily::single_gaussian();
  const auto res = minimize_nehari({4.0, 1, 1, 1}, fam, {120, 1}, Component::minus, rng, g);
  ASSERT_EQ(res.status, RowStatus::finite);
  EXPECT_GT(res.value, 0.0);
  ASSERT_TRUE(res.witness.has_value());
  EXPECT_EQ(res.witness->nehari.verdict, Verdict::minus);
}
