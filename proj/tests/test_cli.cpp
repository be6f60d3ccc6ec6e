#include "cli.hpp"
#include "report.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>

using fricke::cli::Json;
using fricke::cli::Report;
using fricke::cli::run_cli;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

CliRun structured(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("structured");
  return run(std::move(args));
}

Json result_of(const CliRun& r) { return Report::parse(r.out).result; }

std::string without_timing(const std::string& text) {
  Json j = Json::parse(text);
  j.erase("elapsed_ms");
  return j.dump();
}

}  // namespace

TEST(Cli, ClassifyExamples) {
  const CliRun a = structured({"classify", "--u2", "1/4", "--twot", "4"});
  ASSERT_EQ(a.code, 0) << a.err;
  const Json ra = result_of(a);
  EXPECT_EQ(ra["conclusion"], "NotPseudomodular");
  EXPECT_NE(a.out.find("SquareObstruction"), std::string::npos);

  const CliRun f = structured({"classify", "--u2", "6/11", "--twot", "6", "--special-budget", "12"});
  ASSERT_EQ(f.code, 0) << f.err;
  const Json rf = result_of(f);
  EXPECT_EQ(rf["conclusion"], "NotPseudomodular");
  EXPECT_EQ(rf["density_all_finite_products"], true);
  EXPECT_NE(f.out.find("\"1/4\""), std::string::npos);

  const CliRun bad = run({"classify", "--u2", "1", "--twot", "4"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("u^2 < t - 1"), std::string::npos);
}

TEST(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(run({"classify", "--u2", "1/x", "--twot", "4"}).code, 2);
  EXPECT_EQ(run({"classify", "--u2", "1/4"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"probe", "adelic", "--u2", "1", "--twot", "6", "--x", "0", "--m", "0"}).code, 2);
  EXPECT_EQ(run({"probe", "padic", "--u2", "1", "--twot", "6", "--targets", "4:1"}).code, 2);
  EXPECT_EQ(run({"probe", "padic", "--u2", "1", "--twot", "6", "--targets", "3"}).code, 2);
  EXPECT_EQ(run({"scan", "congruence", "--u2", "1", "--twot", "6", "--N", "1"}).code, 2);
  EXPECT_EQ(run({"scan", "congruence", "--u2", "1", "--twot", "6", "--N", "2", "--flavor", "delta"}).code, 2);
  EXPECT_EQ(run({"classify", "--u2", "1/4", "--twot", "4", "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ProbeExamples) {
  const CliRun a = structured({"probe", "adelic", "--u2", "1", "--twot", "6", "--x", "1/3", "--m", "9", "--depth", "8"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(result_of(a)["status"], "Found");

  const CliRun p = structured(
      {"probe", "padic", "--u2", "6/11", "--twot", "6", "--y", "1/4", "--targets", "7:3", "--depth", "14"});
  EXPECT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(result_of(p)["status"], "Found");

  const CliRun miss = structured(
      {"probe", "padic", "--u2", "1/4", "--twot", "4", "--y", "1/2", "--targets", "2:4", "--depth", "8"});
  EXPECT_EQ(miss.code, 3) << miss.err;
  EXPECT_EQ(result_of(miss)["status"], "NotFoundAtDepth");
  EXPECT_EQ(Report::parse(miss.out).exit_code, 3);

  const CliRun c = structured({"probe", "cusp", "--u2", "6/11", "--twot", "6", "--x", "1/4", "--depth", "12"});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(result_of(c)["status"], "Special");
}

TEST(Cli, ScanExamples) {
  const CliRun c = structured({"scan", "congruence", "--u2", "1/4", "--twot", "4", "--flavor", "gamma0", "--N", "2",
                            "--j", "2", "--depth", "10"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_FALSE(result_of(c)["unhit"].empty());

  const CliRun s = structured({"scan", "special", "--u2", "6/11", "--twot", "6", "--maxlen", "12"});
  ASSERT_EQ(s.code, 0) << s.err;
  const Json special = result_of(s);
  bool quarter = false;
  for (const Json& p : special["points"]) quarter = quarter || p["point"] == "1/4";
  EXPECT_TRUE(quarter);

  const CliRun m = structured({"scan", "mine", "--u2", "1/15", "--twot", "8", "--primes", "3,5", "--depth", "5"});
  ASSERT_EQ(m.code, 0) << m.err;
  const Json mined = result_of(m);
  bool xor_found = false;
  for (const Json& p : mined["predicates"]) xor_found = xor_found || p["predicate"] == "xor(neg(v3), neg(v5))";
  EXPECT_TRUE(xor_found);
}

TEST(Cli, OrbitScanUsesCacheFromFlagOrEnvironment) {
  const auto dir = std::filesystem::temp_directory_path() / "fricke_cli_cache_test";
  std::filesystem::remove_all(dir);
  const CliRun first = structured({"scan", "orbit", "--u2", "6/11", "--twot", "6", "--depth", "5", "--cache", dir.string()});
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_FALSE(std::filesystem::is_empty(dir));
  const CliRun second = structured({"scan", "orbit", "--u2", "6/11", "--twot", "6", "--depth", "5", "--cache", dir.string()});
  EXPECT_EQ(result_of(second)["cached_depth"], 5);
  EXPECT_EQ(result_of(first)["records"], result_of(second)["records"]);

  ::setenv("FRICKE_CACHE", dir.string().c_str(), 1);
  const CliRun env = structured({"scan", "orbit", "--u2", "6/11", "--twot", "6", "--depth", "5"});
  ::unsetenv("FRICKE_CACHE");
  EXPECT_EQ(result_of(env)["cached_depth"], 5);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ReportsRoundTrip) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"classify", "--u2", "6/11", "--twot", "6"},
           {"probe", "adelic", "--u2", "1", "--twot", "6", "--x", "1/3", "--m", "9", "--depth", "6"},
           {"scan", "congruence", "--u2", "1/4", "--twot", "4", "--flavor", "gamma0", "--N", "2", "--depth", "6"}}) {
    const CliRun r = structured(args);
    const Report rep = Report::parse(r.out);
    EXPECT_EQ(rep.dump(), r.out);
    EXPECT_EQ(Report::parse(rep.dump()), rep);
    EXPECT_EQ(rep.config["seed"], 42);
    EXPECT_EQ(rep.tool, "fricke");
  }
  EXPECT_THROW(Report::parse("{not json"), std::exception);
}

TEST(Cli, StructuredOutputIsReproducible) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"classify", "--u2", "6/11", "--twot", "6", "--special-budget", "8", "--seed", "7"},
           {"probe", "padic", "--u2", "6/11", "--twot", "6", "--y", "1/4", "--targets", "7:3,2:2", "--depth", "10"},
           {"scan", "mine", "--u2", "1/15", "--twot", "4", "--primes", "3,5", "--depth", "4", "--seed", "9"},
           {"scan", "special", "--u2", "6/11", "--twot", "6", "--maxlen", "7"}}) {
    const CliRun a = structured(args);
    const CliRun b = structured(args);
    EXPECT_EQ(without_timing(a.out), without_timing(b.out));
  }
}

TEST(Cli, HumanFormatListsTheVerdict) {
  const CliRun h = run({"classify", "--u2", "1/4", "--twot", "4"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("NotPseudomodular"), std::string::npos);
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = FRICKE_BIN;
  auto status = [&bin](const std::string& args) {
    const int raw = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("classify --u2 1/4 --twot 4"), 0);
  EXPECT_EQ(status("classify --u2 1 --twot 4"), 2);
  EXPECT_EQ(status("probe padic --u2 1/4 --twot 4 --y 1/2 --targets 2:4 --depth 6"), 3);
}
