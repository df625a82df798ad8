#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(VORTEX_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) { return ::testing::TempDir() + name; }

}  // namespace

TEST(Cli, AnalyzeExitCodes) {
  EXPECT_EQ(run("analyze --scenario triangle-center --gamma 0.5"), 0);
  EXPECT_EQ(run("analyze --scenario square-center --gamma 3"), 0);
  EXPECT_EQ(run("analyze --scenario hexagon --gamma 1"), 2);
  EXPECT_EQ(run("analyze --scenario triangle-center --gamma 0"), 2);
  EXPECT_EQ(run("analyze --scenario triangle-center"), 2);
  EXPECT_EQ(run("analyze --scenario triangle-center --gamma 1 --casimirs x"), 2);
  EXPECT_EQ(run("analyze --bogus"), 2);
  EXPECT_EQ(run(""), 2);
}

TEST(Cli, AnalyzeWritesJsonDeterministically) {
  const std::string a = tmp("cli_a.json"), b = tmp("cli_b.json");
  ASSERT_EQ(run("analyze --scenario triangle-center --gamma 0.5 --out " + a), 0);
  ASSERT_EQ(run("analyze --scenario triangle-center --gamma 0.5 --out " + b), 0);
  const std::string text = slurp(a);
  EXPECT_NE(text.find("CertifiedStable"), std::string::npos);
  EXPECT_EQ(text, slurp(b));
  EXPECT_EQ(run("analyze --scenario triangle-center --gamma 0.5 --out /nonexistent-dir/r.json"), 2);
}

TEST(Cli, ConfigFile) {
  const std::string cfg = tmp("cli_cfg.json");
  std::ofstream(cfg) << R"({"positions": [[1,0],[-0.5,0.8660254037844386],[-0.5,-0.8660254037844386],[0,0]],
                            "circulations": [1,1,1,2]})";
  EXPECT_EQ(run("analyze --config " + cfg), 0);
  std::ofstream(tmp("cli_bad.json")) << R"({"positions": [[0,0],[1,0],[3,0.5]], "circulations": [1,2,3]})";
  EXPECT_EQ(run("analyze --config " + tmp("cli_bad.json")), 2);
}

TEST(Cli, Sweep) {
  const std::string out = tmp("cli_sweep.csv");
  ASSERT_EQ(run("sweep --scenario triangle-center --from -4 --to 1.5 --step 0.5 --out " + out), 0);
  std::istringstream in(slurp(out));
  std::string line;
  int count = 0;
  while (std::getline(in, line)) ++count;
  EXPECT_EQ(count, 11);
  EXPECT_EQ(run("sweep --scenario triangle-center --from 0 --to 1 --step -1"), 2);
}

TEST(Cli, Integrate) {
  const std::string out = tmp("cli_traj.csv");
  ASSERT_EQ(run("integrate --scenario triangle-center --gamma 0.5 --t-end 1 --dt 0.01 --perturb 1e-4 --out " + out),
            0);
  std::istringstream in(slurp(out));
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("t,coord_0,", 0), 0u);
  EXPECT_NE(header.find(",coord_8,H,C1,C2,C3,Rmax"), std::string::npos);
  EXPECT_EQ(run("integrate --scenario triangle-center --gamma 0.5 --t-end 1 --dt 0 --perturb 0"), 2);
}

TEST(Cli, Check) {
  EXPECT_EQ(run("check --suite paper"), 0);
  EXPECT_EQ(run("check --suite other"), 2);
}
