#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ghzclass/io.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(GHZWIT_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const char* name) { return std::string(GHZ_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, ClassifyMaximalSlice) {
  const Result r = run("classify --state " + data("ms_d03.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("H3       -0.4"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("minimal forms:  S2(l3)"), std::string::npos) << r.out;
}

TEST(Cli, ClassifyJsonIsDeterministic) {
  const Result a = run("classify --json --state " + data("ms_d03.json"));
  const Result b = run("classify --json --state " + data("ms_d03.json"));
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = ghzclass::json::parse(a.out);
  EXPECT_EQ(ghzclass::validate_report_json(j), "");
  EXPECT_EQ(j["witnesses"][2]["verdict"], "negative");
}

TEST(Cli, WitnessWithDecomposition) {
  const Result r = run("witness --family H1 --state " + data("h1_example.json") + " --decompose");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("value:       -0.371200"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("XXX  2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("III  -0.5312"), std::string::npos) << r.out;
}

TEST(Cli, TensorAndInvariants) {
  const Result t = run("tensor --state " + data("ghz.json"));
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("trace sum:         4"), std::string::npos) << t.out;
  const Result i = run("invariants --state " + data("h4_example.json"));
  EXPECT_EQ(i.code, 0);
  EXPECT_NE(i.out.find("Sudbery"), std::string::npos);
}

TEST(Cli, Fidelity) {
  const Result r = run("fidelity --state " + data("s1_06_08.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("F_A: 0.986666667"), std::string::npos) << r.out;
  const Result c = run("fidelity --state " + data("ghz.json") + " --compare " + data("s1_06_08.json") + " --qubit B");
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("on qubit B: greater"), std::string::npos) << c.out;
}

TEST(Cli, ScanTable1WithCsv) {
  const auto csv = std::filesystem::temp_directory_path() / "ghzwit_table1_test.csv";
  const Result r = run("scan table1 --a 0.8 --c 0.3 --csv " + csv.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("p range (0.291, 0.309)"), std::string::npos) << r.out;
  std::ifstream in(csv);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1000);
  std::ifstream js(csv.string() + ".summary.json");
  EXPECT_TRUE(js.good());
  std::filesystem::remove(csv);
  std::filesystem::remove(csv.string() + ".summary.json");
}

TEST(Cli, ScanProperties) {
  const Result r = run("scan properties --n 200 --seed 42");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(run("scan properties --n 200 --seed 42").out, r.out);
  const Result e = run("scan properties --n 0 --seed 42");
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("\"suites\": []"), std::string::npos);
}

TEST(Cli, ExamplesTable) {
  const Result r = run("examples");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("H1 at (0.4, 0.911043, 0, 0, 0.1) | -0.3712 | -0.371200171 | -0.371200171 | MATCH"),
            std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("DISCREPANCY-EXPECTED"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("bogus").code, 1);
  EXPECT_EQ(run("classify").code, 1);
  EXPECT_EQ(run("classify --state /nonexistent.json").code, 1);
  EXPECT_EQ(run("witness --family H9 --state " + data("ghz.json")).code, 1);
  EXPECT_EQ(run("fidelity --state " + data("ghz.json") + " --qubit D").code, 1);
  EXPECT_EQ(run("fidelity --state " + data("example2_p0295.json")).code, 1);
  EXPECT_EQ(run("scan table1 --a 1.5 --c 0.3").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}
