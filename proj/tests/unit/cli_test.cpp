#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kData = BUDGETGRAPH_TEST_DATA;

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = budgetgraph::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "budgetgraph_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(Cli, RadiusCaseB) {
  const Result r = run({"radius", "--input", data("caseB.json"), "--root", "r"});
  ASSERT_EQ(r.status, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_NEAR(doc["radius"].get<double>(), 3.0 + 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(doc["allocation"]["fractions"]["l1-v"].get<double>(), 0.2928932, 1e-6);
}

TEST(Cli, AllRootsCsv) {
  const Result r = run({"radius", "--all-roots", "--input", data("path3.json"), "--csv"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "vertex,BR\na,4\nb,2\nc,4\n");
}

TEST(Cli, EvalThirds) {
  const Result r = run({"eval", "--input", data("caseB.json"), "--allocation", data("third.json"), "--root", "r"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["radius"].get<double>(), 6.0, 1e-12);
}

TEST(Cli, BudgetScalesReportAndRoundTripsThroughEval) {
  const fs::path out = scratch("radius_b2.json");
  const Result r = run({"radius", "--input", data("caseB.json"), "--root", "r", "--budget", "2", "--output", out.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  const json doc = json::parse(in);
  EXPECT_NEAR(doc["radius"].get<double>(), (3.0 + 2.0 * std::sqrt(2.0)) / 2.0, 1e-12);
  EXPECT_NEAR(doc["edge_budgets"]["r-v"].get<double>(), 2.0 * (std::sqrt(2.0) - 1.0), 1e-12);

  const fs::path alloc = scratch("alloc_b2.json");
  std::ofstream(alloc) << doc["allocation"].dump();
  const Result e = run({"eval", "--input", data("caseB.json"), "--allocation", alloc.string(), "--root", "r"});
  ASSERT_EQ(e.status, 0) << e.err;
  EXPECT_NEAR(json::parse(e.out)["radius"].get<double>(), doc["radius"].get<double>(), 1e-9 * doc["radius"].get<double>());
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::string> args{"median", "--all-roots", "--input", data("caseB.json")};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> oracle{"oracle", "radius", "--input", data("triangle.txt"), "--root", "r",
                                        "--seed", "3", "--max-iters", "300"};
  EXPECT_EQ(run(oracle).out, run(oracle).out);
}

TEST(Cli, MedianModes) {
  const Result csv = run({"median", "--all-roots", "--csv", "--input", data("path3.json")});
  ASSERT_EQ(csv.status, 0) << csv.err;
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "vertex,BM,sum,average");
  EXPECT_NE(csv.out.find("\nb,4,4,1.3333333333333333\n"), std::string::npos);

  const Result un = run({"median", "--unrooted", "--input", data("caseB.json")});
  ASSERT_EQ(un.status, 0) << un.err;
  const json doc = json::parse(un.out);
  EXPECT_EQ(doc["root"], "v");
  EXPECT_TRUE(doc["coincides"].get<bool>());
}

TEST(Cli, Approx) {
  const Result r = run({"approx", "--points", data("line4.csv")});
  ASSERT_EQ(r.status, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_NEAR(doc["radius"].get<double>(), 5.0 / 3.0, 1e-12);
  EXPECT_EQ(doc["bt_edges"].size(), 3u);
  EXPECT_EQ(doc["allocation"]["fractions"].size(), 3u);
}

TEST(Cli, OracleExactEnum) {
  const Result r = run({"oracle", "radius", "--exact-enum", "--input", data("triangle.txt"), "--root", "a"});
  ASSERT_EQ(r.status, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_NEAR(doc["radius"].get<double>(), 2.0, 1e-12);
  EXPECT_EQ(doc["trees_enumerated"], 3);
}

TEST(Cli, ReductionAndWitness) {
  const Result red = run({"reduce-setcover", "--input", data("sc2.json")});
  ASSERT_EQ(red.status, 0) << red.err;
  const json doc = json::parse(red.out);
  EXPECT_EQ(doc["node_count"], 21);
  EXPECT_EQ(doc["edge_count"], 38);

  const Result w = run({"witness", "--input", data("sc2.json"), "--cover", data("cover2.json")});
  ASSERT_EQ(w.status, 0) << w.err;
  EXPECT_NEAR(json::parse(w.out)["budget_cost"].get<double>(), 28.0, 1e-12);
}

TEST(Cli, Errors) {
  const Result missing = run({"radius", "--input", data("nope.json"), "--root", "r"});
  EXPECT_EQ(missing.status, 1);
  EXPECT_EQ(json::parse(missing.err)["error"]["type"], "invalid_input");

  EXPECT_EQ(run({"frobnicate"}).status, 1);
  EXPECT_EQ(run({"radius", "--input", data("caseB.json"), "--root", "zz"}).status, 1);
  EXPECT_EQ(run({"radius", "--input", data("triangle.txt"), "--root", "a"}).status, 1);
  EXPECT_EQ(run({"radius", "--input", data("caseB.json"), "--root", "r", "--budget", "-1"}).status, 1);
  EXPECT_EQ(run({"oracle", "median", "--exact-enum", "--input", data("triangle.txt"), "--root", "a"}).status, 1);

  const fs::path bad = scratch("disconnected.txt");
  std::ofstream(bad) << "a b 1\nc d 1\n";
  const Result dis = run({"radius", "--input", bad.string(), "--root", "a"});
  EXPECT_EQ(dis.status, 1);
  EXPECT_NE(dis.err.find("disconnected"), std::string::npos);
}

TEST(Cli, Help) {
  const Result r = run({"--help"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("radius"), std::string::npos);
}

}  // namespace
