#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "test_support.hpp"

namespace {

int run_cli(const std::string& args, const std::filesystem::path& log) {
  const std::string cmd = std::string(NAR_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TEST(Cli, NoArgumentsIsUsageError) {
  const auto dir = nar::test::temp_dir("cli_usage");
  EXPECT_EQ(run_cli("", dir / "log"), 1);
  EXPECT_EQ(run_cli("run --algo xyz --synthetic --out " + (dir / "o").string(), dir / "log"), 1);
}

TEST(Cli, BadDataFileIsDataError) {
  const auto dir = nar::test::temp_dir("cli_data");
  EXPECT_EQ(run_cli("run --data /nonexistent/hr.csv --out " + (dir / "o").string(), dir / "log"), 2);
  nar::test::write_file(dir / "short.csv", "70\n71\n");
  EXPECT_EQ(run_cli("run --data " + (dir / "short.csv").string() + " --out " + (dir / "o").string(), dir / "log"), 2);
  EXPECT_NE(slurp(dir / "log").find("too few points"), std::string::npos);
}

TEST(Cli, SynthRunPredictReport) {
  const auto dir = nar::test::temp_dir("cli_e2e");
  const auto series = dir / "hr.csv";
  ASSERT_EQ(run_cli("synth --n 500 --seed 3 --out " + series.string(), dir / "log"), 0);

  const auto run_dir = dir / "run";
  ASSERT_EQ(run_cli("run --data " + series.string() + " --column 1 --algo lm --scenario 7 --hidden 4 --max-epochs 30 --out " +
                        run_dir.string(),
                    dir / "log"),
            0)
      << slurp(dir / "log");
  for (const char* f : {"result.json", "train_report.json", "network.json", "histogram.csv", "acf.csv", "response.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(run_dir / f)) << f;
  }
  const auto report = nlohmann::json::parse(slurp(run_dir / "train_report.json"));
  EXPECT_EQ(report.at("kind"), "nar-train-report");

  const auto pred = dir / "pred.csv";
  ASSERT_EQ(run_cli("predict --network " + (run_dir / "network.json").string() + " --data " + series.string() +
                        " --column 1 --out " + pred.string(),
                    dir / "log"),
            0)
      << slurp(dir / "log");
  const auto text = slurp(pred);
  EXPECT_EQ(text.rfind("time,target,prediction,error\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 499);

  const auto bench_dir = dir / "bench";
  ASSERT_EQ(run_cli("bench --data " + series.string() + " --column 1 --algo lm,scg --scenario 1,7 --hidden 3 --max-epochs 10 --out " +
                        bench_dir.string(),
                    dir / "log"),
            0)
      << slurp(dir / "log");
  ASSERT_EQ(run_cli("report --in " + (bench_dir / "results.json").string() + " --format csv --out " +
                        (dir / "table.csv").string(),
                    dir / "log"),
            0);
  const auto csv = slurp(dir / "table.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

}  // namespace
