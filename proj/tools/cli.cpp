#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "pfiber/catto.hpp"
#include "pfiber/error.hpp"
#include "pfiber/fiber.hpp"
#include "pfiber/hartree.hpp"
#include "pfiber/inequalities.hpp"
#include "pfiber/io.hpp"
#include "pfiber/minimize.hpp"
#include "pfiber/rayleigh.hpp"
#include "pfiber/regime.hpp"
#include "pfiber/sweep.hpp"

namespace pfiber::cli {

namespace fs = std::filesystem;

const char* command_name(Command c) {
  switch (c) {
    case Command::solve: return "solve";
    case Command::fiber_scan: return "fiber-scan";
    case Command::classify: return "classify";
    case Command::thresholds: return "thresholds";
    case Command::sweep: return "sweep";
    case Command::check_inequalities: return "check-inequalities";
    case Command::catto: return "catto";
    case Command::appendix: return "appendix";
  }
  return "unknown";
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_physics(CLI::App* s, RunConfig& c) {
  s->add_option("--p", c.p, "exponent p in (2,6)")->required();
  s->add_option("--q", c.q, "Poisson constant q > 0");
  s->add_option("--lambda", c.lambda, "Slater constant lambda > 0");
}

void add_grid(CLI::App* s, RunConfig& c) {
  s->add_option("--grid-r-max", c.grid_r_max, "radial box size");
  s->add_option("--grid-n", c.grid_n, "number of grid nodes");
}

void add_family(CLI::App* s, RunConfig& c) {
  s->add_option("--family", c.family, "single-gaussian | gaussian-mixture | exponential");
  s->add_option("--family-terms", c.family_terms, "terms of the gaussian mixture");
  s->add_option("--family-file", c.init_file, "key=value file with family settings")
      ->check(CLI::ExistingFile);
  s->add_option("--budget", c.budget, "objective evaluations per search");
  s->add_option("--starts", c.starts, "simplex starts per search");
}

void add_seed(CLI::App* s, RunConfig& c) {
  s->add_option("--seed", c.seed, "random seed");
}

void add_out(CLI::App* s, RunConfig& c) {
  s->add_option("--out", c.out_dir, "output directory");
}

void validate(RunConfig& c) {
  auto bad = [](const std::string& field, const std::string& why) {
    throw UsageError("invalid " + field + ": " + why);
  };
  if (!(c.p > 2.0 && c.p < 6.0)) bad("--p", "must lie in (2,6)");
  if (!(c.q > 0.0)) bad("--q", "must be positive");
  if (!(c.lambda > 0.0)) bad("--lambda", "must be positive");
  if (!(c.r > 0.0)) bad("--r", "must be positive");
  if (c.grid_r_max && !(*c.grid_r_max > 0.0)) bad("--grid-r-max", "must be positive");
  if (c.grid_n < 16) bad("--grid-n", "must be at least 16");
  if (c.budget < 10) bad("--budget", "must be at least 10");
  if (c.starts < 1) bad("--starts", "must be at least 1");
  if (c.threads < 1) bad("--threads", "must be at least 1");
  const bool stochastic = c.command == Command::thresholds || c.command == Command::sweep ||
                          c.command == Command::check_inequalities ||
                          c.command == Command::appendix;
  if (stochastic && !c.seed) bad("--seed", "required for " + std::string(command_name(c.command)));
  if (c.command == Command::classify || c.command == Command::fiber_scan) {
    if (!(c.A > 0.0)) bad("--A", "must be positive");
    if (!(c.B > 0.0)) bad("--B", "must be positive");
    if (!(c.C > 0.0)) bad("--C", "must be positive");
  }
  if (c.command == Command::fiber_scan) {
    if (!(c.t_min > 0.0) || !(c.t_max > c.t_min)) bad("--t-min/--t-max", "need 0 < t-min < t-max");
    if (c.t_points < 2) bad("--t-points", "need at least 2 points");
  }
  if (c.command == Command::sweep) {
    if (c.r_list.empty()) {
      if (!(c.r_from > 0.0) || !(c.r_to > c.r_from) || c.r_steps < 2)
        bad("--r-list or --r-from/--r-to/--r-steps", "need an ascending mass grid");
    }
    if (c.component != "plus" && c.component != "minus") bad("--component", "plus or minus");
  }
  if (c.command == Command::appendix && !(c.r1 > 0.0 && c.r2 >= c.r1))
    bad("--r1/--r2", "need 0 < r1 <= r2");
  if (c.command == Command::catto && c.n_max < 2) bad("--n-max", "must be at least 2");
  if (c.command == Command::check_inequalities && c.samples < 1) bad("--samples", "must be positive");
}

}  // namespace

void apply_family_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open family file " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "family") cfg.family = val;
      else if (key == "terms") cfg.family_terms = std::stoi(val);
      else if (key == "sigma_min") cfg.sigma_min = std::stod(val);
      else if (key == "sigma_max") cfg.sigma_max = std::stod(val);
      else throw UsageError("unknown family key '" + key + "' in " + path);
    } catch (const std::logic_error&) {
      throw UsageError("bad value for '" + key + "' in " + path);
    }
  }
}

std::optional<RunConfig> parse(int argc, const char* const* argv, std::ostream& out,
                               std::ostream& err, int& exit_code) {
  RunConfig c;
  CLI::App app{"Fibering analysis of the mass-constrained Schrodinger-Poisson energy"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "ground state on the mass sphere");
  add_physics(solve, c);
  solve->add_option("--r", c.r, "mass r > 0");
  solve->add_option("--init-width", c.init_width, "width of the Gaussian start");
  solve->add_option("--init", c.init_file, "start profile CSV (r,u)")->check(CLI::ExistingFile);
  solve->add_option("--max-iter", c.max_iter, "iteration cap");
  add_grid(solve, c);
  add_seed(solve, c);
  add_out(solve, c);

  auto* scan = app.add_subcommand("fiber-scan", "tabulate a fiber map");
  add_physics(scan, c);
  scan->add_option("--r", c.r, "mass r > 0");
  scan->add_option("--A", c.A, "gradient integral")->required();
  scan->add_option("--B", c.B, "Hartree integral")->required();
  scan->add_option("--C", c.C, "Lp integral")->required();
  scan->add_option("--t-min", c.t_min);
  scan->add_option("--t-max", c.t_max);
  scan->add_option("--t-points", c.t_points);
  add_out(scan, c);

  auto* cls = app.add_subcommand("classify", "critical points of a fiber map");
  add_physics(cls, c);
  cls->add_option("--r", c.r, "mass r > 0");
  cls->add_option("--A", c.A, "gradient integral")->required();
  cls->add_option("--B", c.B, "Hartree integral")->required();
  cls->add_option("--C", c.C, "Lp integral")->required();
  add_out(cls, c);

  auto* thr = app.add_subcommand("thresholds", "threshold estimates over a trial family");
  add_physics(thr, c);
  add_grid(thr, c);
  add_family(thr, c);
  add_seed(thr, c);
  add_out(thr, c);

  auto* sw = app.add_subcommand("sweep", "I_r (or J_r) over a mass grid");
  add_physics(sw, c);
  sw->add_option("--r-list", c.r_list, "explicit ascending masses")->delimiter(',');
  sw->add_option("--r-from", c.r_from);
  sw->add_option("--r-to", c.r_to);
  sw->add_option("--r-steps", c.r_steps);
  sw->add_option("--component", c.component, "plus (I_r) or minus (J_r)");
  sw->add_option("--threads", c.threads, "worker threads for rows");
  add_grid(sw, c);
  add_family(sw, c);
  add_seed(sw, c);
  add_out(sw, c);

  auto* ineq = app.add_subcommand("check-inequalities", "functional inequalities on random profiles");
  add_physics(ineq, c);
  ineq->add_option("--samples", c.samples);
  add_grid(ineq, c);
  add_seed(ineq, c);
  add_out(ineq, c);

  auto* cat = app.add_subcommand("catto", "multi-bump sequence integrals");
  add_physics(cat, c);
  cat->add_option("--r", c.r, "mass r > 0");
  cat->add_option("--n-max", c.n_max);
  cat->add_option("--separation", c.separation, "bump spacing is separation * n");
  add_grid(cat, c);
  add_out(cat, c);

  auto* app_est = app.add_subcommand("appendix", "mass-scaling estimates of I_r");
  add_physics(app_est, c);
  app_est->add_option("--r1", c.r1)->required();
  app_est->add_option("--r2", c.r2)->required();
  add_grid(app_est, c);
  add_family(app_est, c);
  add_seed(app_est, c);
  add_out(app_est, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    exit_code = app.exit(e, out, err);
    if (exit_code != 0) exit_code = kUsage;
    return std::nullopt;
  }

  const std::pair<CLI::App*, Command> subs[] = {
      {solve, Command::solve},         {scan, Command::fiber_scan},
      {cls, Command::classify},        {thr, Command::thresholds},
      {sw, Command::sweep},            {ineq, Command::check_inequalities},
      {cat, Command::catto},           {app_est, Command::appendix}};
  for (const auto& [s, cmd] : subs)
    if (s->parsed()) c.command = cmd;

  try {
    if (c.command != Command::solve && !c.init_file.empty()) {
      apply_family_file(c.init_file, c);
      c.init_file.clear();
    }
    validate(c);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    exit_code = kUsage;
    return std::nullopt;
  }
  exit_code = kOk;
  return c;
}

namespace {

TrialFamily make_family(const RunConfig& c) {
  TrialFamily f = c.family == "gaussian-mixture" || c.family == "mixture"
                      ? TrialFamily::gaussian_mixture(c.family_terms)
                      : TrialFamily::from_name(c.family);
  if (c.sigma_min || c.sigma_max) {
    const double lo = c.sigma_min.value_or(std::exp(f.lower()[0]));
    const double hi = c.sigma_max.value_or(std::exp(f.upper()[0]));
    f.set_width_bounds(lo, hi);
  }
  return f;
}

RadialGrid make_grid(const RunConfig& c, double default_r_max) {
  return RadialGrid(c.grid_r_max.value_or(default_r_max), c.grid_n);
}

Budget make_budget(const RunConfig& c) { return Budget{c.budget, c.starts}; }

std::string path_in(const RunConfig& c, const std::string& name) {
  return (fs::path(c.out_dir) / name).string();
}

std::vector<double> mass_grid(const RunConfig& c) {
  if (!c.r_list.empty()) return c.r_list;
  std::vector<double> g(c.r_steps);
  for (int k = 0; k < c.r_steps; ++k)
    g[k] = c.r_from + (c.r_to - c.r_from) * k / (c.r_steps - 1);
  return g;
}

int dispatch(const RunConfig& c, std::ostream& out) {
  fs::create_directories(c.out_dir);
  const std::string tag = regime_tag(c.p);
  switch (c.command) {
    case Command::solve: {
      // ground states at small mass are wide; the default box is sized for them
      const RadialGrid grid = make_grid(c, 400.0);
      const Params prm{c.p, c.q, c.lambda, c.r};
      RadialFunction init = c.init_file.empty() ? gaussian_init(grid, c.r, c.init_width)
                                                : io::read_function_csv(c.init_file);
      SolveOptions opt;
      opt.max_iter = c.max_iter;
      const auto rep = minimize_on_sphere(prm, init, opt);
      const std::string csv = path_in(c, "solve_profile.csv");
      io::write_file(csv, io::function_csv(rep.u, tag));
      io::write_file(path_in(c, "solve.json"), io::solve_json(rep, csv));
      out << "solve " << tag << ": E=" << io::num(rep.energy) << " l=" << io::num(rep.multiplier)
          << " nehari=" << to_string(rep.nehari.verdict) << " converged=" << (rep.converged ? "true" : "false")
          << "\n";
      return rep.converged ? kOk : kNumerical;
    }
    case Command::fiber_scan: {
      const FiberCoefficients fc{c.A, c.B, c.C, c.r, c.q, c.lambda, c.p};
      fc.validate();
      std::vector<double> ts(c.t_points);
      for (int k = 0; k < c.t_points; ++k)
        ts[k] = c.t_min * std::pow(c.t_max / c.t_min, static_cast<double>(k) / (c.t_points - 1));
      io::write_file(path_in(c, "fiber_scan.csv"), io::fiber_scan_csv(fc, ts));
      out << "fiber-scan " << tag << ": " << c.t_points << " points written\n";
      return kOk;
    }
    case Command::classify: {
      const FiberCoefficients fc{c.A, c.B, c.C, c.r, c.q, c.lambda, c.p};
      const auto cls = classify_fiber(fc);
      io::write_file(path_in(c, "classification.json"), io::classification_json(fc, cls));
      out << "classify " << tag << ": case " << to_string(cls.case_tag);
      for (const auto& cp : cls.critical_points)
        out << " t=" << io::num(cp.t) << " (" << to_string(cp.type) << ")";
      out << "\n";
      return kOk;
    }
    case Command::thresholds: {
      std::mt19937_64 rng(*c.seed);
      const auto est = thresholds(c.q, c.lambda, c.p, make_family(c), make_budget(c), rng,
                                  make_grid(c, RadialGrid::kDefaultRMax));
      io::write_file(path_in(c, "thresholds.json"), io::thresholds_json(c.p, c.q, c.lambda, est));
      out << "thresholds " << tag << ":";
      for (const auto& e : est) out << ' ' << e.name << '=' << io::num(e.value);
      out << "\n";
      return kOk;
    }
    case Command::sweep: {
      SweepOptions opt;
      opt.component = c.component == "minus" ? Component::minus : Component::plus_union_zero;
      opt.threads = c.threads;
      const auto res = sweep_I(c.p, c.q, c.lambda, mass_grid(c), make_family(c), make_budget(c),
                               *c.seed, make_grid(c, RadialGrid::kDefaultRMax), opt);
      io::write_file(path_in(c, "sweep.csv"), io::sweep_csv(res));
      io::write_file(path_in(c, "sweep_checks.json"), io::sweep_checks_json(res));
      int failed = 0;
      for (const auto& chk : res.checks)
        if (chk.asserted && !chk.passed) ++failed;
      out << "sweep " << tag << ": " << res.rows.size() << " rows, " << res.checks.size()
          << " checks, " << failed << " failed\n";
      return kOk;
    }
    case Command::check_inequalities: {
      std::mt19937_64 rng(*c.seed);
      const RadialGrid grid = make_grid(c, RadialGrid::kDefaultRMax);
      std::vector<InequalityReport> reps;
      for (auto kind : {InequalityKind::upper_above_103, InequalityKind::lower_below_3,
                        InequalityKind::interpolation_low, InequalityKind::interpolation_high}) {
        try {
          require_range(kind, c.p);
        } catch (const Error&) {
          continue;
        }
        reps.push_back(check_inequality(kind, c.p, c.q, c.lambda, c.samples, rng, grid));
      }
      if (reps.empty()) fail(ErrorKind::domain_error, "no inequality applies at p=" + io::num(c.p));
      io::write_file(path_in(c, "inequalities.json"), io::inequalities_json(reps, c.q, c.lambda));
      out << "check-inequalities " << tag << ":";
      for (const auto& r : reps)
        out << ' ' << to_string(r.kind) << " K=" << io::num(r.empirical_constant)
            << (r.holds ? " holds" : " FAILS");
      out << "\n";
      return kOk;
    }
    case Command::catto: {
      const auto rep = catto_sequence(c.p, c.r, c.n_max, c.separation, c.q, c.lambda,
                                      make_grid(c, RadialGrid::kDefaultRMax));
      io::write_file(path_in(c, "catto.csv"), io::catto_csv(rep));
      out << "catto " << tag << ": n=1.." << c.n_max << " lp=" << io::num(rep.lp_values.back())
          << " grad=" << io::num(rep.grad_values.back()) << "\n";
      return kOk;
    }
    case Command::appendix: {
      const auto rep = appendix_estimates(c.p, c.q, c.lambda, c.r1, c.r2, make_family(c),
                                          make_budget(c), *c.seed,
                                          make_grid(c, RadialGrid::kDefaultRMax));
      io::write_file(path_in(c, "appendix.json"), io::appendix_json(rep));
      out << "appendix " << tag << ": item " << rep.item << " slack=" << io::num(rep.slack)
          << (rep.holds ? " holds" : " fails") << "\n";
      return kOk;
    }
  }
  return kUsage;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(cfg, out);
  } catch (const Error& e) {
    const int code = e.kind() == ErrorKind::numerical_failure ? kNumerical
                     : e.kind() == ErrorKind::invalid_input || e.kind() == ErrorKind::configuration
                         ? kUsage
                         : kDomain;
    const std::string diag = io::error_json(to_string(e.kind()), e.what());
    err << diag;
    if (code == kNumerical) {
      try {
        io::write_file(path_in(cfg, "error.json"), diag);
      } catch (const Error&) {
      }
    }
    return code;
  } catch (const std::exception& e) {
    err << io::error_json("internal", e.what());
    return kNumerical;
  }
}

}  // namespace pfiber::cli
