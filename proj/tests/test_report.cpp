#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "nar/error.hpp"
#include "nar/report.hpp"
#include "test_support.hpp"

namespace nar {
namespace {

class ReportTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    const auto data = generate_synthetic(400, 2);
    ExperimentConfig config;
    config.hidden = 4;
    config.train.max_epochs = 8;
    const std::vector<Algorithm> algos{Algorithm::LM, Algorithm::BR, Algorithm::SCG};
    table_ = run_matrix(data, algos, standard_scenarios(), config, 17);
    manifest_.dataset = {{"synthetic", to_json(SyntheticProfile{})}, {"n", 400}, {"seed", 2}};
    manifest_.master_seed = 17;
    manifest_.config = to_json(config);
    manifest_.timestamp = "2026-01-01T00:00:00Z";
  }
  static std::vector<ScenarioResult> table_;
  static RunManifest manifest_;
};

std::vector<ScenarioResult> ReportTest::table_;
RunManifest ReportTest::manifest_;

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TEST_F(ReportTest, CsvHasHeaderPlusOneLinePerRow) {
  const auto csv = render_csv(table_);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header.rfind("algorithm,scenario,train_count,val_count,test_count,mse,r,mae,mape_percent,accuracy_percent,efficiency", 0), 0u);
  std::size_t count = 0;
  for (std::string line; std::getline(lines, line);) ++count;
  EXPECT_EQ(count, 21u);
}

TEST_F(ReportTest, JsonRoundTrip) {
  const auto dir = test::temp_dir("report_json");
  emit_report(table_, manifest_, ReportFormat::Json, dir / "results.json");
  const auto loaded = load_report(dir / "results.json");
  ASSERT_EQ(loaded.results.size(), table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i) {
    EXPECT_EQ(to_json(loaded.results[i]).dump(), to_json(table_[i]).dump());
  }
  EXPECT_EQ(to_json(loaded.manifest).dump(), to_json(manifest_).dump());
  const auto doc = nlohmann::json::parse(slurp(dir / "results.json"));
  EXPECT_EQ(doc.at("schema_version"), kReportSchemaVersion);
  EXPECT_EQ(doc.at("best").at("criterion"), "composite");
  EXPECT_EQ(doc.at("best").at("rows").size(), 3u);
}

TEST_F(ReportTest, MarkdownColumnOrder) {
  const auto md = render_markdown(table_);
  const auto per_algo = md.find("| Scenario | MSE | R | MAE | MAPE | Accuracy | Efficiency |");
  const auto compare = md.find("| Algorithm | R | MSE | MAE | MAPE | Acc | Eff |");
  EXPECT_NE(per_algo, std::string::npos);
  EXPECT_NE(compare, std::string::npos);
  EXPECT_LT(per_algo, compare);
}

TEST_F(ReportTest, ConsistencyCheckCatchesTampering) {
  auto tampered = table_;
  tampered[4].row.accuracy_percent += 0.5;
  EXPECT_THROW(check_row_consistency(tampered), std::logic_error);
  tampered = table_;
  tampered[9].row.efficiency = 9.0;
  EXPECT_THROW(check_row_consistency(tampered), std::logic_error);
  const auto dir = test::temp_dir("report_tamper");
  EXPECT_THROW(emit_report(tampered, manifest_, ReportFormat::Csv, dir / "r.csv"), std::logic_error);
}

TEST(Report, FormatsAndMalformedInput) {
  EXPECT_EQ(report_format_from_string("markdown"), ReportFormat::Markdown);
  EXPECT_EQ(file_extension(ReportFormat::Csv), ".csv");
  EXPECT_THROW((void)report_format_from_string("xml"), std::invalid_argument);
  const auto dir = test::temp_dir("report_bad");
  test::write_file(dir / "bad.json", R"({"kind": "something-else"})");
  EXPECT_THROW((void)load_report(dir / "bad.json"), DataError);
}

}  // namespace
}  // namespace nar
