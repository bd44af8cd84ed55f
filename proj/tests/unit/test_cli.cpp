#include <gtest/gtest.h>

#include <omp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "edcp/cli.hpp"
#include "edcp/errors.hpp"

namespace edcp {
namespace {

namespace fs = std::filesystem;

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("edcp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream(path) << content;
    return path.string();
  }

  std::string three_segment_csv(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    std::ostringstream os;
    os << "probe,pos,value\n";
    for (int i = 0; i < 150; ++i) {
      const double mean = i >= 50 && i < 100 ? 5.0 : 0.0;
      os << "p" << i << ',' << 1000 + 7 * i << ',' << mean + z(rng) << '\n';
    }
    return write("three.csv", os.str());
  }

  fs::path dir_;
};

nlohmann::json without_timing(nlohmann::json j) {
  j.erase("timing");
  return j;
}

TEST_F(CliFiles, SegmentFindsBothChanges) {
  RunConfig cfg;
  cfg.command = Command::segment;
  cfg.input = three_segment_csv(3);
  cfg.csv.order_column = "pos";
  cfg.csv.value_columns = {"value"};
  cfg.detector.seed = 11;
  const auto out = run(cfg);
  ASSERT_EQ(out.exit_code, kExitOk) << out.report.dump();
  const auto& cps = out.report["results"][0]["change_points"];
  ASSERT_EQ(cps.size(), 2u);
  const auto a = cps[0]["index"].get<std::size_t>(), b = cps[1]["index"].get<std::size_t>();
  EXPECT_NEAR(static_cast<double>(a), 50.0, 3.0);
  EXPECT_NEAR(static_cast<double>(b), 100.0, 3.0);
  EXPECT_EQ(cps[0]["order_key"], std::to_string(1000 + 7 * (a - 1)));
  EXPECT_EQ(cps[0]["next_order_key"], std::to_string(1000 + 7 * a));
}

TEST_F(CliFiles, DetectConstantColumnIsDegenerate) {
  std::string csv = "value\n";
  for (int i = 0; i < 30; ++i) csv += "4.5\n";
  RunConfig cfg;
  cfg.input = write("flat.csv", csv);
  const auto out = run(cfg);
  EXPECT_EQ(out.exit_code, kExitDegenerate);
  EXPECT_EQ(out.report["results"][0]["error"]["kind"], "degenerate_scale");
}

TEST_F(CliFiles, DetectReportsDecisionPerGroup) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  std::ostringstream os;
  os << "chrom,pos,v\n";
  for (int i = 0; i < 80; ++i) os << "chr2," << i << ',' << z(rng) + (i >= 40 ? 8.0 : 0.0) << '\n';
  for (int i = 0; i < 60; ++i) os << "chr10," << i << ',' << z(rng) << '\n';
  RunConfig cfg;
  cfg.input = write("groups.csv", os.str());
  cfg.csv.group_column = "chrom";
  cfg.csv.order_column = "pos";
  const auto out = run(cfg);
  ASSERT_EQ(out.exit_code, kExitOk);
  const auto& res = out.report["results"];
  ASSERT_EQ(res.size(), 2u);
  EXPECT_EQ(res[0]["group"], "chr2");
  EXPECT_TRUE(res[0]["decision"]["reject"].get<bool>());
  EXPECT_EQ(res[0]["decision"]["k_hat"], 40);
  EXPECT_EQ(res[0]["order_key"], "39");
  EXPECT_EQ(res[1]["group"], "chr10");
}

TEST_F(CliFiles, MissingInputIsInputError) {
  RunConfig cfg;
  cfg.input = (dir_ / "absent.csv").string();
  const auto out = run(cfg);
  EXPECT_EQ(out.exit_code, kExitInputError);
  EXPECT_EQ(out.report["error"]["kind"], "input");
}

TEST_F(CliFiles, ReportsReproducibleAcrossRunsAndThreads) {
  RunConfig cfg;
  cfg.command = Command::segment;
  cfg.input = three_segment_csv(4);
  cfg.csv.order_column = "pos";
  cfg.csv.value_columns = {"value"};
  cfg.detector.seed = 5;
  cfg.detector.scheme = PermutationScheme::circular_block();
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto a = without_timing(run(cfg).report).dump();
  omp_set_num_threads(4);
  const auto b = without_timing(run(cfg).report).dump();
  const auto c = without_timing(run(cfg).report).dump();
  omp_set_num_threads(saved);
  EXPECT_EQ(a, b);
  EXPECT_EQ(b, c);
}

TEST_F(CliFiles, CommandLineWritesJsonAndCsv) {
  const auto input = three_segment_csv(6);
  const auto report = (dir_ / "out.json").string();
  std::vector<std::string> args{"edcp", "segment", input, "--order-col", "pos", "--value-cols", "value",
                                "--seed", "3", "-L", "199", "-o", report};
  std::vector<char*> argv;
  for (auto& s : args) argv.push_back(s.data());
  std::ostringstream out, err;
  EXPECT_EQ(run_cli(static_cast<int>(argv.size()), argv.data(), out, err), kExitOk) << err.str();
  std::ifstream in(report);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["config"]["detector"]["permutations"], 199);
  EXPECT_EQ(j["config"]["detector"]["seed"], 3);

  std::vector<std::string> csv_args{"edcp", "detect", input, "--order-col", "pos", "--value-cols", "value",
                                    "--format", "csv", "-L", "99"};
  argv.clear();
  for (auto& s : csv_args) argv.push_back(s.data());
  std::ostringstream csv_out;
  EXPECT_EQ(run_cli(static_cast<int>(argv.size()), argv.data(), csv_out, err), kExitOk);
  EXPECT_EQ(csv_out.str().rfind("group,n,t_n,c_alpha,p_value,reject,k_hat,order_key,error\n", 0), 0u);
}

TEST_F(CliFiles, SeedFromEnvironment) {
  const auto input = three_segment_csv(7);
  std::vector<std::string> args{"edcp", "detect", input, "--order-col", "pos", "--value-cols", "value",
                                "-L", "49"};
  std::vector<char*> argv;
  for (auto& s : args) argv.push_back(s.data());
  ::setenv("EDCP_SEED", "321", 1);
  std::ostringstream out, err;
  EXPECT_EQ(run_cli(static_cast<int>(argv.size()), argv.data(), out, err), kExitOk);
  ::unsetenv("EDCP_SEED");
  EXPECT_EQ(nlohmann::json::parse(out.str())["config"]["detector"]["seed"], 321);
}

TEST(CommandLine, BadArgumentsExitWithInputError) {
  const auto call = [](std::vector<std::string> args) {
    std::vector<char*> argv;
    for (auto& s : args) argv.push_back(s.data());
    std::ostringstream out, err;
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  };
  EXPECT_EQ(call({"edcp"}), kExitInputError);
  EXPECT_EQ(call({"edcp", "detect"}), kExitInputError);
  EXPECT_EQ(call({"edcp", "detect", "x.csv", "--bogus"}), kExitInputError);
  EXPECT_EQ(call({"edcp", "detect", "x.csv", "--scheme", "wild"}), kExitInputError);
  EXPECT_EQ(call({"edcp", "detect", "x.csv", "--block-length", "4"}), kExitInputError);
  EXPECT_EQ(call({"edcp", "simulate", "--preset", "table1", "--cell", "normal,n=x"}), kExitInputError);
  EXPECT_EQ(call({"edcp", "detect", "/nonexistent.csv"}), kExitInputError);
  EXPECT_EQ(call({"edcp", "detect", "x.csv", "--alpha", "2"}), kExitInputError);
}

TEST(Cells, Parsing) {
  const auto a = parse_cell("normal,n=100");
  EXPECT_EQ(a.family, Family::normal);
  EXPECT_EQ(a.n, 100u);
  EXPECT_FALSE(a.has_change());
  const auto b = parse_cell("skew_normal,n=50,shift=1.5,loc=0.3,shape=2");
  EXPECT_EQ(b.family, Family::skew_normal);
  EXPECT_DOUBLE_EQ(b.shift, 1.5);
  EXPECT_DOUBLE_EQ(b.location, 0.3);
  EXPECT_DOUBLE_EQ(*b.shape, 2.0);
  EXPECT_TRUE(b.has_change());
  EXPECT_EQ(parse_cell("Exp,n=20").family, Family::exponential);
  EXPECT_THROW(parse_cell("normal,size=3"), ParameterError);
  EXPECT_THROW(parse_cell("cauchy"), ParameterError);
}

TEST(Cells, Presets) {
  EXPECT_EQ(preset_cells("table1").size(), 15u);
  EXPECT_EQ(preset_cells("power").size(), 100u);
  EXPECT_EQ(preset_cells("localization").size(), 4u);
  EXPECT_THROW(preset_cells("table9"), ParameterError);
}

TEST(Simulate, TableOneNormalCell) {
  RunConfig cfg;
  cfg.command = Command::simulate;
  cfg.preset = "table1";
  cfg.cells = {"normal,n=100"};
  cfg.replications = 1000;
  const auto out = run(cfg);
  ASSERT_EQ(out.exit_code, kExitOk) << out.report.dump();
  const auto& r = out.report["results"][0];
  EXPECT_EQ(r["scenario"], "size:normal:n=100");
  EXPECT_NEAR(r["rejection_rate"].get<double>(), 0.043, 0.02);
  EXPECT_TRUE(out.report["timing"]["cells"].contains("size:normal:n=100"));
  EXPECT_FALSE(r.contains("seconds"));
}

TEST(Simulate, RejectsChangeInSizeCell) {
  RunConfig cfg;
  cfg.command = Command::simulate;
  cfg.preset = "table1";
  cfg.cells = {"normal,n=50,shift=1"};
  cfg.replications = 5;
  EXPECT_EQ(run(cfg).exit_code, kExitInputError);
}

}  // namespace
}  // namespace edcp
