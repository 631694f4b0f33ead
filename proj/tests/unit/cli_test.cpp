#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

struct Result {
  int exit_code;
  std::string out;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("swarmauth_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(const std::string& args, const std::string& env = "") {
    const fs::path out = dir_ / "stdout.txt";
    const std::string cmd = env + " " + SWARMAUTH_CLI + " " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
  }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, HonestRunExitsZeroAndWritesTrace) {
  const auto cfg = write("c.json", R"({"scenario":"join","m":3,"seed":7})");
  const auto trace = (dir_ / "t.csv").string();
  const Result r = run("run --config " + cfg + " --trace " + trace);
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find("\"verdict\": \"accepted\""), std::string::npos);
  EXPECT_EQ(slurp(trace).rfind("time_ms,from,to,msg_type,size_bytes,hop_type\n", 0), 0u);
}

TEST_F(CliTest, ReplayAttackExitsTwoWithFailedUnwrap) {
  const auto cfg = write("c.json", R"({"scenario":"join","m":3,"seed":7,"adversary":"replay"})");
  const auto trace = (dir_ / "t.csv").string();
  const Result r = run("run --config " + cfg + " --trace " + trace);
  EXPECT_EQ(r.exit_code, 2) << r.out;
  EXPECT_NE(slurp(trace).find("UnwrapFailed"), std::string::npos);
}

TEST_F(CliTest, SameSeedGivesByteIdenticalCsv) {
  const auto cfg = write("c.json", R"({"scenario":"aerial","m":4,"seed":3,"adversary":"fake_bs"})");
  const auto a = (dir_ / "a.csv").string(), b = (dir_ / "b.csv").string();
  ASSERT_EQ(run("run --config " + cfg + " --trace " + a).exit_code, 2);
  ASSERT_EQ(run("run --config " + cfg + " --trace " + b).exit_code, 2);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST_F(CliTest, SeedFromEnvironment) {
  const auto cfg = write("c.json", R"({"scenario":"terrestrial","m":3})");
  EXPECT_EQ(run("run --config " + cfg, "env -u SWARMAUTH_SEED").exit_code, 1);
  const Result r = run("run --config " + cfg, "SWARMAUTH_SEED=5");
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find("\"seed\": 5"), std::string::npos) << r.out;
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run("").exit_code, 1);
  EXPECT_EQ(run("frobnicate").exit_code, 1);
  EXPECT_EQ(run("run").exit_code, 1);
  EXPECT_EQ(run("run --config " + (dir_ / "missing.json").string()).exit_code, 1);
  EXPECT_EQ(run("run --config " + write("bad.json", "{not json")).exit_code, 1);
  EXPECT_EQ(run("run --config " + write("bad2.json", R"({"scenario":"join","m":1,"seed":1})")).exit_code, 1);
  EXPECT_EQ(run("keygen --threshold 3 --members 2 --seed 1 --out " + dir_.string()).exit_code, 1);
  EXPECT_EQ(run("keygen --threshold 3 --members 5 --group toy --toy-q 4 --seed 1 --out " + dir_.string())
                .exit_code,
            1);
}

TEST_F(CliTest, CompareReportsCrossovers) {
  const auto out = (dir_ / "figs").string();
  const Result r = run("compare --max-threshold 100 --out " + out);
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find("auth=67"), std::string::npos);
  EXPECT_NE(r.out.find("handover=41"), std::string::npos);
  EXPECT_NE(r.out.find("swarm_n(m=5)=125"), std::string::npos);
  for (const char* f : {"auth_curve.csv", "swarm_curve.csv", "handover_curve.csv", "crossovers.csv"})
    EXPECT_TRUE(fs::exists(fs::path(out) / f)) << f;
  EXPECT_NE(slurp(fs::path(out) / "crossovers.csv").find("auth,67"), std::string::npos);
}

TEST_F(CliTest, CompareWithLatencyOverride) {
  const auto lat = write("lat.json", R"({"ec_scalar_mult": 1.4})");
  const Result r = run("compare --latency " + lat + " --out " + (dir_ / "f").string());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("auth=40"), std::string::npos) << r.out;  // 81.6 / 2.0
  EXPECT_EQ(run("compare --latency " + write("bad.json", R"({"x":1})")).exit_code, 1);
}

TEST_F(CliTest, KeygenWritesLoadableFiles) {
  const Result r = run("keygen --threshold 3 --members 6 --group toy --toy-q 31 --seed 4 --out " + dir_.string());
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(slurp(dir_ / "group_params.json").find("\"threshold\": 3"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "credentials.json"));
}

TEST_F(CliTest, OracleSelftestPasses) {
  const Result r = run("oracle --selftest --instances 20");
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

}  // namespace
