#include "pfiber/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pfiber/error.hpp"
#include "pfiber/regime.hpp"

namespace pfiber::io {

using nlohmann::json;

namespace {

// JSON has no inf/nan; keep them readable as strings.
json jnum(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

std::string header(const std::string& regime) {
  return "# regime: " + regime + "\n# " + kRadialNote + "\n";
}

json meta(double p) {
  return {{"regime", regime_tag(p)}, {"note", kRadialNote}};
}

json trace_json(const std::vector<TracePoint>& trace) {
  json a = json::array();
  for (const auto& t : trace) a.push_back({t.evaluations, jnum(t.best)});
  return a;
}

}  // namespace

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string function_csv(const RadialFunction& u, const std::string& regime) {
  std::ostringstream os;
  os << header(regime);
  os << "# r_max=" << num(u.grid().r_max()) << ", n=" << u.size() << "\n";
  os << "r,u\n";
  for (std::size_t i = 0; i < u.size(); ++i)
    os << num(u.grid().nodes()[i]) << ',' << num(u[i]) << '\n';
  return os.str();
}

RadialFunction parse_function_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  double r_max = -1.0;
  long n = -1;
  std::vector<double> values;
  bool seen_header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto a = line.find("r_max=");
      const auto b = line.find("n=", a == std::string::npos ? 0 : a + 6);
      if (a != std::string::npos && b != std::string::npos) {
        try {
          r_max = std::stod(line.substr(a + 6));
          n = std::stol(line.substr(b + 2));
        } catch (const std::logic_error&) {
          fail(ErrorKind::invalid_input, "malformed grid line: " + line);
        }
      }
      continue;
    }
    if (!seen_header) {
      if (line.rfind("r,u", 0) != 0) fail(ErrorKind::invalid_input, "expected header 'r,u'");
      seen_header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail(ErrorKind::invalid_input, "malformed row: " + line);
    try {
      values.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::logic_error&) {
      fail(ErrorKind::invalid_input, "malformed row: " + line);
    }
  }
  if (r_max <= 0.0 || n <= 0) fail(ErrorKind::invalid_input, "missing '# r_max=..., n=...' line");
  if (static_cast<long>(values.size()) != n)
    fail(ErrorKind::invalid_input, "row count does not match n");
  return RadialFunction(RadialGrid(r_max, static_cast<std::size_t>(n)), std::move(values));
}

RadialFunction read_function_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::invalid_input, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_function_csv(ss.str());
}

std::string potential_csv(const HartreePotential& pot, const std::string& regime) {
  std::ostringstream os;
  os << header(regime) << "r,phi\n";
  for (std::size_t i = 0; i < pot.phi_values.size(); ++i)
    os << num(pot.grid.nodes()[i]) << ',' << num(pot.phi_values[i]) << '\n';
  return os.str();
}

std::string fiber_scan_csv(const FiberCoefficients& fc, const std::vector<double>& ts) {
  std::ostringstream os;
  os << header(regime_tag(fc.p));
  os << "# A=" << num(fc.A) << ", B=" << num(fc.B) << ", C=" << num(fc.C) << ", r=" << num(fc.r)
     << ", q=" << num(fc.q) << ", lambda=" << num(fc.lambda) << ", p=" << num(fc.p) << "\n";
  os << "t,phi,dphi,ddphi\n";
  for (double t : ts) {
    const auto v = fiber_eval(fc, t);
    os << num(t) << ',' << num(v.value) << ',' << num(v.first) << ',' << num(v.second) << '\n';
  }
  return os.str();
}

std::string classification_json(const FiberCoefficients& fc, const FiberClassification& cls) {
  json j = meta(fc.p);
  j["case"] = to_string(cls.case_tag);
  json pts = json::array();
  for (const auto& c : cls.critical_points) pts.push_back({{"t", c.t}, {"type", to_string(c.type)}});
  j["critical_points"] = pts;
  j["coefficients"] = {{"A", fc.A}, {"B", fc.B}, {"C", fc.C}, {"r", fc.r},
                       {"q", fc.q}, {"lambda", fc.lambda}, {"p", fc.p}};
  return j.dump(2) + "\n";
}

std::string thresholds_json(double p, double q, double lambda,
                            const std::vector<ThresholdEstimate>& estimates) {
  json j = meta(p);
  j["p"] = p;
  j["q"] = q;
  j["lambda"] = lambda;
  json arr = json::array();
  for (const auto& e : estimates) {
    json a = {{"name", e.name},
              {"value", jnum(e.value)},
              {"bound_direction", to_string(e.bound)},
              {"family", e.family},
              {"evaluations", e.evaluations}};
    if (!e.trace.empty()) a["optimizer_trace"] = trace_json(e.trace);
    arr.push_back(a);
  }
  j["estimates"] = arr;
  if (near(p, 3.0)) {
    const auto* ls = find_estimate(estimates, "lambda_star");
    const auto* l0 = find_estimate(estimates, "lambda0_star");
    if (ls && l0) j["lambda_regime"] = to_string(lambda_regime(lambda, ls->value, l0->value));
  }
  return j.dump(2) + "\n";
}

std::string catto_csv(const CattoSequenceReport& rep) {
  std::ostringstream os;
  os << header(regime_tag(rep.p));
  os << "# r=" << num(rep.r) << "\n";
  os << "n,lp,grad,hartree\n";
  for (std::size_t k = 0; k < rep.n_values.size(); ++k)
    os << rep.n_values[k] << ',' << num(rep.lp_values[k]) << ',' << num(rep.grad_values[k]) << ','
       << num(rep.hartree_values[k]) << '\n';
  return os.str();
}

std::string sweep_csv(const SweepResult& res) {
  std::ostringstream os;
  os << header(regime_tag(res.p));
  os << "# p=" << num(res.p) << ", q=" << num(res.q) << ", lambda=" << num(res.lambda)
     << ", component=" << to_string(res.component) << "\n";
  os << "r,value,status,nehari_verdict,pohozaev_residual\n";
  for (const auto& r : res.rows)
    os << num(r.r) << ',' << num(r.value) << ',' << to_string(r.status) << ','
       << to_string(r.nehari_verdict) << ',' << num(r.pohozaev_residual) << '\n';
  return os.str();
}

std::string sweep_checks_json(const SweepResult& res) {
  json j = meta(res.p);
  j["p"] = res.p;
  j["q"] = res.q;
  j["lambda"] = res.lambda;
  json est = json::array();
  for (const auto& e : res.estimates)
    est.push_back({{"name", e.name}, {"value", jnum(e.value)}, {"bound_direction", to_string(e.bound)}});
  j["estimates"] = est;
  json checks = json::array();
  for (const auto& c : res.checks)
    checks.push_back({{"name", c.name},
                      {"asserted", c.asserted},
                      {"passed", c.passed},
                      {"tested", c.tested},
                      {"detail", c.detail}});
  j["checks"] = checks;
  j["threshold_comparisons"] = "estimate-relative";
  return j.dump(2) + "\n";
}

std::string solve_json(const SolveReport& rep, const std::string& profile_path) {
  json j = meta(rep.params.p);
  j["params"] = {{"p", rep.params.p}, {"q", rep.params.q}, {"lambda", rep.params.lambda}, {"r", rep.params.r}};
  j["energy"] = jnum(rep.energy);
  j["multiplier"] = jnum(rep.multiplier);
  j["pohozaev_residual"] = jnum(rep.pohozaev_residual);
  j["nehari"] = {{"Q", jnum(rep.nehari.Q_value)},
                 {"W", jnum(rep.nehari.W_value)},
                 {"verdict", to_string(rep.nehari.verdict)}};
  j["integrals"] = {{"mass", rep.integrals.mass},
                    {"grad_sq", rep.integrals.grad_sq},
                    {"hartree", rep.integrals.hartree},
                    {"lp", rep.integrals.lp}};
  j["iterations"] = rep.iterations;
  j["converged"] = rep.converged;
  j["gradient_norm"] = jnum(rep.gradient_norm);
  j["method"] = rep.method;
  j["grid"] = {{"r_max", rep.u.grid().r_max()}, {"n", rep.u.size()}};
  j["profile_csv"] = profile_path;
  return j.dump(2) + "\n";
}

std::string inequalities_json(const std::vector<InequalityReport>& reps, double q, double lambda) {
  json j;
  j["note"] = kRadialNote;
  j["q"] = q;
  j["lambda"] = lambda;
  json arr = json::array();
  for (const auto& r : reps)
    arr.push_back({{"inequality", to_string(r.kind)},
                   {"p", r.p},
                   {"regime", regime_tag(r.p)},
                   {"samples", r.samples},
                   {"empirical_constant", jnum(r.empirical_constant)},
                   {"min_ratio", jnum(r.min_ratio)},
                   {"max_ratio", jnum(r.max_ratio)},
                   {"invariance_error", jnum(r.invariance_error)},
                   {"all_finite_positive", r.all_finite_positive},
                   {"holds", r.holds}});
  j["inequalities"] = arr;
  return j.dump(2) + "\n";
}

std::string appendix_json(const AppendixReport& rep) {
  json j = meta(rep.p);
  j["item"] = rep.item;
  j["p"] = rep.p;
  j["q"] = rep.q;
  j["lambda"] = rep.lambda;
  j["r1"] = rep.r1;
  j["r2"] = rep.r2;
  j["I_r1"] = jnum(rep.I1);
  j["I_r2"] = jnum(rep.I2);
  j["bound"] = jnum(rep.bound);
  j["slack"] = jnum(rep.slack);
  if (rep.item == "ii") {
    j["K_GN_lower_bound"] = rep.k_gn;
    j["c"] = rep.c;
    j["c_p"] = rep.c_p;
    j["c_prime_p"] = rep.c_prime;
  } else {
    j["f_p_empirical"] = jnum(rep.f_empirical);
  }
  j["holds"] = rep.holds;
  return j.dump(2) + "\n";
}

std::string error_json(const std::string& kind, const std::string& message) {
  json j = {{"error", kind}, {"message", message}};
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::invalid_input, "cannot write " + path);
  out << content;
  if (!out) fail(ErrorKind::numerical_failure, "write failed for " + path);
}

}  // namespace pfiber::io
