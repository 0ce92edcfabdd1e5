#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pfiber::cli {

enum class Command { solve, fiber_scan, classify, thresholds, sweep, check_inequalities, catto, appendix };

struct RunConfig {
  Command command = Command::solve;
  double p = 3.0;
  double q = 1.0;
  double lambda = 1.0;
  double r = 1.0;
  // sweep masses: explicit list, or r_from..r_to in r_steps points
  std::vector<double> r_list;
  double r_from = 0.0, r_to = 0.0;
  int r_steps = 0;
  double r1 = 0.0, r2 = 0.0;
  // fiber coefficients for classify / fiber-scan
  double A = 1.0, B = 1.0, C = 1.0;
  double t_min = 1e-3, t_max = 1e3;
  int t_points = 401;
  std::optional<double> grid_r_max;
  std::size_t grid_n = 4096;
  std::string family = "gaussian-mixture";
  int family_terms = 3;
  std::optional<double> sigma_min, sigma_max;
  int budget = 3000;
  int starts = 3;
  int threads = 1;
  std::optional<std::uint64_t> seed;
  int samples = 1000;
  int n_max = 8;
  double separation = 20.0;
  double init_width = 1.0;
  int max_iter = 50000;
  std::string component = "plus";
  std::string init_file;
  std::string out_dir = ".";
};

enum ExitCode { kOk = 0, kUsage = 2, kNumerical = 3, kDomain = 4 };

// Parses argv into a config; on failure writes the message to err and returns nullopt
// with exit_code set (0 for --help).
std::optional<RunConfig> parse(int argc, const char* const* argv, std::ostream& out,
                               std::ostream& err, int& exit_code);

// Reads key=value lines (family, terms, sigma_min, sigma_max) into the config.
void apply_family_file(const std::string& path, RunConfig& cfg);

// Dispatches, writes files under cfg.out_dir and prints one summary line.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

const char* command_name(Command c);

}  // namespace pfiber::cli
