#pragma once

#include <string>
#include <vector>

#include "pfiber/catto.hpp"
#include "pfiber/fiber.hpp"
#include "pfiber/hartree.hpp"
#include "pfiber/inequalities.hpp"
#include "pfiber/minimize.hpp"
#include "pfiber/rayleigh.hpp"
#include "pfiber/sweep.hpp"

namespace pfiber::io {

// "%.17g"
std::string num(double x);

// CSV "r,u" with a "# r_max=..., n=..." grid line.
std::string function_csv(const RadialFunction& u, const std::string& regime);
RadialFunction parse_function_csv(const std::string& text);
RadialFunction read_function_csv(const std::string& path);

std::string potential_csv(const HartreePotential& pot, const std::string& regime);
std::string fiber_scan_csv(const FiberCoefficients& fc, const std::vector<double>& ts);
std::string classification_json(const FiberCoefficients& fc, const FiberClassification& cls);
std::string thresholds_json(double p, double q, double lambda,
                            const std::vector<ThresholdEstimate>& estimates);
std::string catto_csv(const CattoSequenceReport& rep);
std::string sweep_csv(const SweepResult& res);
std::string sweep_checks_json(const SweepResult& res);
std::string solve_json(const SolveReport& rep, const std::string& profile_path);
std::string inequalities_json(const std::vector<InequalityReport>& reps, double q, double lambda);
std::string appendix_json(const AppendixReport& rep);
std::string error_json(const std::string& kind, const std::string& message);

void write_file(const std::string& path, const std::string& content);

}  // namespace pfiber::io
