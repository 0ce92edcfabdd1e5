#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using namespace pfiber::cli;

namespace {

struct Result {
  int code;
  std::string out, err;
};

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("pfiber_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "pfiber");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = 0;
  auto cfg = parse(static_cast<int>(argv.size()), argv.data(), out, err, code);
  if (cfg) code = run(*cfg, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, ClassifyQuarticExample) {
  const auto dir = scratch("classify");
  const auto r = invoke({"classify", "--p", "4", "--A", "1", "--B", "1", "--C", "1", "--r", "1",
                         "--out", dir.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir / "classification.json"));
  EXPECT_EQ(j["case"], "V");
  ASSERT_EQ(j["critical_points"].size(), 1u);
  EXPECT_NEAR(j["critical_points"][0]["t"].get<double>(), 1.548584, 1e-6);
  EXPECT_EQ(j["critical_points"][0]["type"], "minus");
  EXPECT_NE(r.out.find("case V"), std::string::npos);
}

TEST(Cli, SolveExampleConverges) {
  const auto dir = scratch("solve");
  const auto r = invoke({"solve", "--p", "2.5", "--q", "1", "--lambda", "1", "--r", "1", "--seed",
                         "7", "--out", dir.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir / "solve.json"));
  EXPECT_TRUE(j["converged"].get<bool>());
  EXPECT_LT(j["energy"].get<double>(), 0.0);
  EXPECT_TRUE(fs::exists(j["profile_csv"].get<std::string>()));
}

TEST(Cli, ThresholdsAreByteIdentical) {
  const auto a = scratch("thr_a"), b = scratch("thr_b");
  ASSERT_EQ(invoke({"thresholds", "--p", "3.2", "--seed", "7", "--out", a.string()}).code, kOk);
  ASSERT_EQ(invoke({"thresholds", "--p", "3.2", "--seed", "7", "--out", b.string()}).code, kOk);
  const std::string ja = slurp(a / "thresholds.json");
  EXPECT_FALSE(ja.empty());
  EXPECT_EQ(ja, slurp(b / "thresholds.json"));
}

TEST(Cli, SweepIndependentOfThreadCount) {
  const auto a = scratch("sw_a"), b = scratch("sw_b");
  const std::vector<std::string> base = {"sweep", "--p", "2.5", "--r-list", "0.05,0.1,0.15",
                                         "--budget", "200", "--seed", "3", "--grid-r-max", "60",
                                         "--grid-n", "1024"};
  auto with = [&](const fs::path& d, const std::string& threads) {
    auto v = base;
    v.insert(v.end(), {"--threads", threads, "--out", d.string()});
    return v;
  };
  ASSERT_EQ(invoke(with(a, "1")).code, kOk);
  ASSERT_EQ(invoke(with(b, "3")).code, kOk);
  const std::string csv = slurp(a / "sweep.csv");
  EXPECT_NE(csv.find("r,value,status,nehari_verdict,pohozaev_residual"), std::string::npos);
  EXPECT_EQ(csv, slurp(b / "sweep.csv"));
}

TEST(Cli, MissingSeedIsUsageError) {
  const auto r = invoke({"thresholds", "--p", "3.2"});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("--seed"), std::string::npos);
}

TEST(Cli, BadParametersNameTheField) {
  auto r = invoke({"classify", "--p", "7", "--A", "1", "--B", "1", "--C", "1"});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("--p"), std::string::npos);
  r = invoke({"classify", "--p", "3", "--lambda", "-1", "--A", "1", "--B", "1", "--C", "1"});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("--lambda"), std::string::npos);
  EXPECT_EQ(invoke({"frobnicate"}).code, kUsage);
  EXPECT_EQ(invoke({"classify", "--p", "abc"}).code, kUsage);
}

TEST(Cli, DomainErrorExitCode) {
  const auto dir = scratch("domain");
  const auto r = invoke({"solve", "--p", "3.5", "--out", dir.string()});
  EXPECT_EQ(r.code, kDomain);
  EXPECT_NE(r.err.find("domain-error"), std::string::npos);
}

TEST(Cli, NumericalFailureWritesDiagnostics) {
  // every family member leaks out of a box this small
  const auto dir = scratch("numerical");
  const auto r = invoke({"thresholds", "--p", "3.2", "--seed", "1", "--grid-r-max", "1.5",
                         "--grid-n", "64", "--budget", "30", "--out", dir.string()});
  EXPECT_EQ(r.code, kNumerical) << r.out << r.err;
  ASSERT_TRUE(fs::exists(dir / "error.json"));
  const auto j = nlohmann::json::parse(slurp(dir / "error.json"));
  EXPECT_EQ(j["error"], "numerical-failure");
}

TEST(Cli, FamilyFileOverridesFamily) {
  const auto dir = scratch("family");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "family.txt");
    f << "# trial family\nfamily = gaussian-mixture\nterms = 2\nsigma_min = 0.5\nsigma_max = 2\n";
  }
  RunConfig cfg;
  apply_family_file((dir / "family.txt").string(), cfg);
  EXPECT_EQ(cfg.family, "gaussian-mixture");
  EXPECT_EQ(cfg.family_terms, 2);
  ASSERT_TRUE(cfg.sigma_min.has_value());
  EXPECT_DOUBLE_EQ(*cfg.sigma_min, 0.5);
  {
    std::ofstream f(dir / "bad.txt");
    f << "colour = blue\n";
  }
  const auto r = invoke({"thresholds", "--p", "2.5", "--seed", "1", "--family-file",
                         (dir / "bad.txt").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, kUsage);
}

TEST(Cli, EveryFileCarriesRegimeTag) {
  const auto dir = scratch("tags");
  ASSERT_EQ(invoke({"fiber-scan", "--p", "3.2", "--A", "1", "--B", "1", "--C", "1", "--out",
                    dir.string()}).code, kOk);
  ASSERT_EQ(invoke({"catto", "--p", "3", "--n-max", "3", "--out", dir.string()}).code, kOk);
  EXPECT_EQ(slurp(dir / "fiber_scan.csv").rfind("# regime: p in (p0,10/3)", 0), 0u);
  EXPECT_EQ(slurp(dir / "catto.csv").rfind("# regime: p = 3", 0), 0u);
}
