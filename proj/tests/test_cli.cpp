#include <gtest/gtest.h>

#include "pipediff/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace pipediff;
namespace fs = std::filesystem;

namespace {

const std::string kReference = std::string(PIPEDIFF_SCENARIO_DIR) + "/reference.scn";

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("pipediff_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

int call(const std::vector<std::string>& args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST(Cli, ValidateGood) {
  std::string out;
  EXPECT_EQ(call({"validate", kReference}, &out), kExitOk);
  EXPECT_NE(out.find("ok (4 segments"), std::string::npos);
}

TEST(Cli, ValidateBad) {
  TempDir dir;
  auto text = slurp(kReference);
  text.replace(text.find("sweep = 180 deg"), 15, "sweep = 270 deg");
  write(dir.file("bad.scn"), text);
  std::string err;
  EXPECT_EQ(call({"validate", dir.file("bad.scn")}, nullptr, &err), kExitValidation);
  EXPECT_NE(err.find("invariant-violation"), std::string::npos);
  EXPECT_EQ(call({"validate", dir.file("missing.scn")}), kExitValidation);
}

TEST(Cli, RunWritesTraceAndReport) {
  TempDir dir;
  EXPECT_EQ(call({"run", kReference, "--trace", dir.file("out.csv"), "--report", dir.file("r.json"), "--format",
                  "json"}),
            kExitOk);
  const auto csv = slurp(dir.file("out.csv"));
  EXPECT_EQ(csv.substr(0, std::string(kTraceHeader).size()), kTraceHeader);
  const auto j = nlohmann::json::parse(slurp(dir.file("r.json")));
  EXPECT_TRUE(j["completed"].get<bool>());
  EXPECT_EQ(j["segments"].size(), 4u);
}

TEST(Cli, RunTraceOnlyPrintsTextReport) {
  TempDir dir;
  std::string out;
  EXPECT_EQ(call({"run", kReference, "--trace", dir.file("out.csv")}, &out), kExitOk);
  EXPECT_NE(out.find("segment 3 (bend, u-section)"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir.file("out.csv")));
}

TEST(Cli, ThetaOverride) {
  std::string out;
  EXPECT_EQ(call({"run", kReference, "--theta", "120", "--format", "json"}, &out), kExitOk);
  const auto j = nlohmann::json::parse(out);
  EXPECT_NEAR(j["theta_deg"].get<double>(), 120.0, 1e-9);
}

TEST(Cli, SeedFromFlagAndEnvironment) {
  TempDir dir;
  auto text = slurp(kReference);
  text.replace(text.find("disturbance_amplitude = 0 %"), 27, "disturbance_amplitude = 2.5 %");
  write(dir.file("noisy.scn"), text);

  ASSERT_EQ(call({"run", dir.file("noisy.scn"), "--trace", dir.file("a.csv"), "--seed", "7"}), kExitOk);
  ::setenv("PIPEDIFF_SEED", "7", 1);
  ASSERT_EQ(call({"run", dir.file("noisy.scn"), "--trace", dir.file("b.csv")}), kExitOk);
  ::setenv("PIPEDIFF_SEED", "8", 1);
  ASSERT_EQ(call({"run", dir.file("noisy.scn"), "--trace", dir.file("c.csv")}), kExitOk);
  // The flag wins over the environment.
  ASSERT_EQ(call({"run", dir.file("noisy.scn"), "--trace", dir.file("d.csv"), "--seed", "7"}), kExitOk);
  ::unsetenv("PIPEDIFF_SEED");

  EXPECT_EQ(slurp(dir.file("a.csv")), slurp(dir.file("b.csv")));
  EXPECT_NE(slurp(dir.file("a.csv")), slurp(dir.file("c.csv")));
  EXPECT_EQ(slurp(dir.file("a.csv")), slurp(dir.file("d.csv")));
}

TEST(Cli, RunNoFitExitsTwoWithPartialTrace) {
  TempDir dir;
  auto text = slurp(kReference);
  text.replace(text.find("length = 74 mm"), 14, "length = 250 mm");
  write(dir.file("long.scn"), text);
  std::string err;
  EXPECT_EQ(call({"run", dir.file("long.scn"), "--trace", dir.file("p.csv"), "--report", dir.file("p.txt")}, nullptr,
                 &err),
            kExitRuntime);
  EXPECT_NE(err.find("no-fit"), std::string::npos);
  EXPECT_GT(slurp(dir.file("p.csv")).size(), std::string(kTraceHeader).size() + 1);
  EXPECT_NE(slurp(dir.file("p.txt")).find("ABORTED"), std::string::npos);
}

TEST(Cli, SweepRunsEachOrientation) {
  TempDir dir;
  std::string out;
  EXPECT_EQ(call({"sweep", kReference, "--theta-steps", "3", "--format", "json", "--trace-prefix",
                  dir.file("sweep")},
                 &out),
            kExitOk);
  const auto j = nlohmann::json::parse(out);
  ASSERT_EQ(j["runs"].size(), 3u);
  for (const auto& run : j["runs"]) {
    double mean = 0.0;
    for (const auto& t : run["tracks"]) mean += t["mean_speed"].get<double>() / 3.0;
    EXPECT_NEAR(mean, 50.0, 1e-9);
  }
  for (int k = 0; k < 3; ++k) EXPECT_TRUE(fs::exists(dir.file("sweep_" + std::to_string(k) + ".csv")));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}), kExitValidation);
  EXPECT_EQ(call({"run"}), kExitValidation);
  EXPECT_EQ(call({"run", kReference, "--format", "xml"}), kExitValidation);
  EXPECT_EQ(call({"frobnicate"}), kExitValidation);
}
