#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "idepca/cli.hpp"

using namespace idepca;
using namespace idepca::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kData = IDEPCA_DATA_DIR;

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "idepca");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> row(const std::string& csv, long n) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(std::to_string(n) + ",", 0) != 0) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    return cells;
  }
  return {};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("idepca_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const json& doc) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << doc.dump();
    return p;
  }
  fs::path write_text(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

json example1_doc() {
  std::ifstream in(kData / "example1.json");
  return json::parse(in);
}

TEST(Format, Numbers) {
  EXPECT_EQ(format_number(0.1), "0.1000000000");
  EXPECT_EQ(format_number(-0.10535342654), "-0.1053534265");
  EXPECT_EQ(format_number(1.0 / 0.0), "inf");
  EXPECT_EQ(format_number(-1.0 / 0.0), "-inf");
  EXPECT_EQ(format_number(NAN), "nan");
  EXPECT_EQ(format_number(12345678901234.0), "1.234567890e+13");
  EXPECT_EQ(round10(92.0336349598842), 92.03363496);
  EXPECT_EQ(round10(-0.0), -0.0);
}

TEST_F(Cli, CoeffsExampleOne) {
  const auto r = invoke({"coeffs", (kData / "example1.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,a_n,b_n,alpha_n,q_n");
  const auto r0 = row(r.out, 0);
  ASSERT_EQ(r0.size(), 5u);
  EXPECT_TRUE(r0[4].empty());
  EXPECT_EQ(r0[1], "0.1839397206");
  EXPECT_EQ(r0[2], "-0.1053534265");
  EXPECT_EQ(r0[3], "1.000000000");
  EXPECT_EQ(row(r.out, 49)[1], "0.1839397206");
  EXPECT_TRUE(row(r.out, 50).empty());
}

TEST_F(Cli, CoeffsExampleTwo) {
  const auto r = invoke({"coeffs", (kData / "example2.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto r5 = row(r.out, 5);
  ASSERT_GE(r5.size(), 3u);
  EXPECT_EQ(r5[1], "0.6000000000");
  EXPECT_EQ(r5[2], "0.1000000000");
  EXPECT_EQ(row(r.out, 1)[1], "1.000000000");
}

TEST_F(Cli, CoeffsToFile) {
  const fs::path out = dir_ / "c.csv";
  const auto r = invoke({"coeffs", (kData / "example1.json").string(), "--out", out.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(out).substr(0, 5), "n,a_n");
}

TEST_F(Cli, SchemaErrors) {
  auto doc = example1_doc();
  doc["colour"] = "red";
  const fs::path out = dir_ / "never.csv";
  auto r = invoke({"coeffs", write("extra.json", doc).string(), "--out", out.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("colour"), std::string::npos);
  EXPECT_FALSE(fs::exists(out));

  doc = example1_doc();
  doc.erase("k");
  EXPECT_EQ(invoke({"coeffs", write("nok.json", doc).string()}).code, 2);

  doc = example1_doc();
  doc["initial_window"] = {1, 1};
  EXPECT_EQ(invoke({"coeffs", write("win.json", doc).string()}).code, 2);

  doc = example1_doc();
  doc["a"] = "2*+3";
  EXPECT_EQ(invoke({"coeffs", write("parse.json", doc).string()}).code, 2);

  EXPECT_EQ(invoke({"coeffs", write_text("broken.json", "{\"a\": ").string()}).code, 2);
  EXPECT_EQ(invoke({"coeffs", (dir_ / "missing.json").string()}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"coeffs", (kData / "example1.json").string(), "--tail", "2"}).code, 2);
}

TEST_F(Cli, ImpulseForms) {
  auto doc = example1_doc();
  for (const json& imp : {json("none"), json::object(), json{{"formula", "1/(n+1)"}},
                          json{{"table", {0.5, 0.5}}, {"default", 1.0}}}) {
    doc["impulse"] = imp;
    EXPECT_EQ(invoke({"coeffs", write("imp.json", doc).string()}).code, 0) << imp.dump();
  }
  doc["impulse"] = json{{"factor", 0.5}, {"table", {1}}};
  EXPECT_EQ(invoke({"coeffs", write("imp.json", doc).string()}).code, 2);
}

TEST_F(Cli, AnalyzeVerdicts) {
  auto r = invoke({"analyze", (kData / "example1.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rep = json::parse(r.out);
  EXPECT_EQ(rep["overall_verdict"], "Oscillatory");
  EXPECT_EQ(rep["criteria"].size(), 3u);
  EXPECT_EQ(rep["criteria"][0]["criterion_id"], "ErbeZhang");
  EXPECT_EQ(rep["criteria"][0]["verdict"], "Fires");
  EXPECT_EQ(rep["criteria"][0]["statistic"], 92.03363496);

  r = invoke({"analyze", (kData / "example2.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  rep = json::parse(r.out);
  EXPECT_EQ(rep["overall_verdict"], "Nonoscillatory");
  EXPECT_EQ(rep["criteria"].size(), 4u);

  auto doc = example1_doc();
  doc["b"] = "0";
  rep = json::parse(invoke({"analyze", write("zero.json", doc).string()}).out);
  EXPECT_EQ(rep["overall_verdict"], "Inconclusive");

  doc = example1_doc();
  doc["direction"] = "advanced";
  doc["k"] = 1;
  doc["initial_window"] = {1, 1};
  rep = json::parse(invoke({"analyze", write("l1.json", doc).string()}).out);
  EXPECT_TRUE(rep["criteria"].empty());
  EXPECT_TRUE(rep.contains("note"));
}

TEST_F(Cli, SimulateWritesFiles) {
  const fs::path prefix = dir_ / "ex1";
  const auto r = invoke({"simulate", (kData / "example1.json").string(), "--out", prefix.string(), "--samples", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto verdict = json::parse(slurp(prefix.string() + ".verdict.json"));
  EXPECT_EQ(verdict, json::parse(r.out));
  EXPECT_EQ(verdict["discrete"]["verdict"], "Oscillatory");
  EXPECT_EQ(verdict["continuous"]["verdict"], "Oscillatory");

  const std::string nodes = slurp(prefix.string() + ".nodes.csv");
  const auto n1 = row(nodes, 1);
  ASSERT_EQ(n1.size(), 4u);
  EXPECT_NEAR(std::stod(n1[2]), 0.5 * std::stod(n1[1]), 1e-9);
  EXPECT_EQ(n1[3], "0.5000000000");
  EXPECT_EQ(slurp(prefix.string() + ".trajectory.csv").substr(0, 4), "t,z\n");

  const fs::path again = dir_ / "ex1b";
  invoke({"simulate", (kData / "example1.json").string(), "--out", again.string(), "--samples", "4"});
  EXPECT_EQ(slurp(prefix.string() + ".trajectory.csv"), slurp(again.string() + ".trajectory.csv"));
  EXPECT_EQ(slurp(prefix.string() + ".nodes.csv"), slurp(again.string() + ".nodes.csv"));
}

TEST_F(Cli, CheckExitCodes) {
  auto r = invoke({"check", (kData / "example1.json").string()});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);

  r = invoke({"check", (kData / "example2.json").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("criteria_vs_simulation"), std::string::npos);

  auto doc = example1_doc();
  doc["impulse"] = json{{"table", {0.5, 0.5, 0.5, 0.5, 0.0}}};
  EXPECT_EQ(invoke({"check", write("zero.json", doc).string()}).code, 2);

  doc = example1_doc();
  doc["a"] = "1/(t-2.5)";
  EXPECT_EQ(invoke({"check", write("singular.json", doc).string()}).code, 3);
}

TEST(Problem, Defaults) {
  const Problem p = load_problem(json{{"a", 1}, {"b", "-1"}, {"direction", "delayed"}, {"k", 1},
                                      {"initial_window", {1, 1}}, {"horizon", 20}});
  EXPECT_EQ(p.spec.n0, 0);
  EXPECT_TRUE(p.spec.impulse.is_none());
  EXPECT_EQ(p.tol, kDefaultTol);
  EXPECT_EQ(p.tail_fraction, kDefaultTailFraction);
}

}  // namespace
