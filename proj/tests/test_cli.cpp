// Drives the installed command-line binary end to end through a shell.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "knapfeat/csv.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = KNAPFEAT_CLI_PATH;

int run(const std::string& args) {
  const std::string command = kCli + " " + args;
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("knapfeat_cli_" + std::to_string(::getpid()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  std::string path(const std::string& name) const { return (root_ / name).string(); }

  fs::path root_;
};

TEST_F(CliTest, GenerateIsDeterministic) {
  ASSERT_EQ(run("generate --count 3 --seed 5 --c-max 200 --out-dir " + path("a")), 0);
  ASSERT_EQ(run("generate --count 3 --seed 5 --c-max 200 --out-dir " + path("b")), 0);
  for (int i = 1; i <= 3; ++i) {
    const std::string name = "control_00000" + std::to_string(i) + ".txt";
    const std::string a = slurp(root_ / "a" / name);
    ASSERT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(root_ / "b" / name));
  }
}

TEST_F(CliTest, ComputeWritesTheFeatureCsv) {
  ASSERT_EQ(run("generate --count 3 --seed 11 --c-max 500 --out-dir " + path("in")), 0);
  ASSERT_EQ(run("compute " + path("in") + "/*.txt --out " + path("f.csv")), 0);
  std::ifstream in(path("f.csv"));
  const knapfeat::CsvTable table = knapfeat::read_csv(in);
  ASSERT_EQ(table.header.size(), 1 + knapfeat::kFeatureCount);
  EXPECT_EQ(table.header[0], "instance");
  EXPECT_EQ(table.rows.size(), 3u);
}

TEST_F(CliTest, ComputeOrderIsIndependentOfThreadCount) {
  ASSERT_EQ(run("generate --count 6 --seed 13 --c-max 400 --out-dir " + path("in")), 0);
  ASSERT_EQ(run("compute " + path("in") + "/*.txt --threads 1 --out " + path("one.csv")), 0);
  ASSERT_EQ(run("compute " + path("in") + "/*.txt --threads 4 --out " + path("four.csv")), 0);
  std::ifstream a(path("one.csv"));
  std::ifstream b(path("four.csv"));
  const knapfeat::CsvTable ta = knapfeat::read_csv(a);
  const knapfeat::CsvTable tb = knapfeat::read_csv(b);
  ASSERT_EQ(ta.rows.size(), tb.rows.size());
  for (std::size_t r = 0; r < ta.rows.size(); ++r) {
    EXPECT_EQ(ta.rows[r][0], tb.rows[r][0]);  // same instance order
    for (std::size_t idx : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 10u, 11u, 13u})
      EXPECT_EQ(ta.rows[r][idx], tb.rows[r][idx]) << r << "," << idx;  // timings excluded
  }
}

TEST_F(CliTest, ComputeKeepsGoodRowsOnPartialFailure) {
  ASSERT_EQ(run("generate --count 2 --seed 12 --c-max 300 --out-dir " + path("in")), 0);
  std::ofstream bad(path("in") + "/broken.txt");
  bad << "not an instance\n";
  bad.close();
  EXPECT_EQ(run("compute " + path("in") + "/*.txt --out " + path("f.csv") +
                " 2>/dev/null"),
            1);
  std::ifstream in(path("f.csv"));
  EXPECT_EQ(knapfeat::read_csv(in).rows.size(), 2u);
}

TEST_F(CliTest, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run("frobnicate 2>/dev/null"), 2);
  EXPECT_EQ(run("compute 2>/dev/null"), 2);
  EXPECT_EQ(run("verify --alpha 7 2>/dev/null"), 2);
}

TEST_F(CliTest, VerifyPassesAndWritesCsv) {
  ASSERT_EQ(run("verify --count 12 --seed 3 --c-max 400 --out " + path("report.csv") +
                " 2>/dev/null"),
            0);
  std::ifstream in(path("report.csv"));
  const knapfeat::CsvTable table = knapfeat::read_csv(in);
  ASSERT_EQ(table.header, (std::vector<std::string>{"instance", "check", "pass"}));
  EXPECT_GT(table.rows.size(), 12u * 5);
  for (const auto& row : table.rows) EXPECT_EQ(row[2], "1");
}

TEST_F(CliTest, HcurveEmitsTheCostCurve) {
  ASSERT_EQ(run("generate --count 1 --seed 21 --c-max 400 --out-dir " + path("in")), 0);
  ASSERT_EQ(run("hcurve " + path("in") + "/control_000001.txt --g-max 5 --out " +
                path("h.csv")),
            0);
  std::ifstream in(path("h.csv"));
  const knapfeat::CsvTable table = knapfeat::read_csv(in);
  ASSERT_EQ(table.header, (std::vector<std::string>{"g", "h"}));
  ASSERT_EQ(table.rows.size(), 5u);
  double previous = std::numeric_limits<double>::infinity();
  for (const auto& row : table.rows) {
    const double h = *knapfeat::parse_csv_value(row[1]);
    EXPECT_LE(h, previous * (1 + 1e-12) + 1e-12);
    previous = h;
  }
}

TEST_F(CliTest, NormalizeThenProject) {
  ASSERT_EQ(run("generate --count 4 --seed 31 --c-max 600 --out-dir " + path("in")), 0);
  ASSERT_EQ(run("compute " + path("in") + "/*.txt --out " + path("f.csv")), 0);
  ASSERT_EQ(run("normalize " + path("f.csv") + " --params-out " + path("p.txt") +
                " --out " + path("norm.csv")),
            0);

  // Re-applying stored parameters reproduces the same normalized table.
  ASSERT_EQ(run("normalize " + path("f.csv") + " --params " + path("p.txt") + " --out " +
                path("norm2.csv")),
            0);
  EXPECT_EQ(slurp(path("norm.csv")), slurp(path("norm2.csv")));

  // The projection needs four externally supplied columns.
  EXPECT_EQ(run("project " + path("norm.csv") + " 2>/dev/null"), 1);

  std::ifstream norm(path("norm.csv"));
  std::ofstream merged(path("proj_in.csv"));
  std::string line;
  bool header = true;
  while (std::getline(norm, line)) {
    merged << line
           << (header ? ",first_weight,smaller_better_pairs,reduced_max_cardinality,"
                        "reduced_polyfit_linear"
                      : ",0.25,0.5,0.75,1")
           << '\n';
    header = false;
  }
  merged.close();
  ASSERT_EQ(run("project " + path("proj_in.csv") + " --out " + path("points.csv")), 0);
  std::ifstream in(path("points.csv"));
  const knapfeat::CsvTable table = knapfeat::read_csv(in);
  ASSERT_EQ(table.header, (std::vector<std::string>{"instance", "z1", "z2"}));
  EXPECT_EQ(table.rows.size(), 4u);
  for (const auto& row : table.rows) {
    EXPECT_TRUE(knapfeat::parse_csv_value(row[1]).has_value());
    EXPECT_TRUE(knapfeat::parse_csv_value(row[2]).has_value());
  }
}

TEST_F(CliTest, ComputeReadsLiteratureFormat) {
  std::ofstream file(path("lit.txt"));
  file << "2\n1 3 3\n2 2 2\n4\n";
  file.close();
  EXPECT_EQ(run("compute " + path("lit.txt") + " --format literature --out " +
                path("f.csv")),
            0);
  EXPECT_EQ(run("compute " + path("lit.txt") + " --out " + path("g.csv") + " 2>/dev/null"),
            1);  // canonical reader must reject it rather than guess
}

}  // namespace
