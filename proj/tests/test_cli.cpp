#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "test_util.hpp"

namespace homflow {
namespace {

namespace fs = std::filesystem;
using test::data_path;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("homflow_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Cli, Fhom) {
  EXPECT_EQ(first_line(run({"fhom", "--graph", data_path("cubic2-axis.json"), "--j", "1,0"}).out), "1");
  EXPECT_EQ(first_line(run({"fhom", "--graph", data_path("1d.json"), "--j", "-2"}).out), "2");
  EXPECT_EQ(first_line(run({"fhom", "--graph", data_path("cubic2-axis.json"), "--j", "0,0"}).out), "0");
  const auto json = run({"fhom", "--graph", data_path("triangular.json"), "--j", "1,1", "--json"});
  EXPECT_EQ(json.code, 0);
  EXPECT_NE(json.out.find("\"value\": 1.414213562373"), std::string::npos);
}

TEST(Cli, FhomBadInput) {
  EXPECT_EQ(run({"fhom", "--graph", data_path("cubic2-axis.json"), "--j", "1,x"}).code, 3);
  EXPECT_EQ(run({"fhom", "--graph", data_path("cubic2-axis.json"), "--j", "1"}).code, 3);
  EXPECT_EQ(run({"fhom", "--graph", data_path("nope.json"), "--j", "1"}).code, 3);
  EXPECT_EQ(run({"fhom", "--graph", data_path("disconnected.json"), "--j", "1,0"}).code, 5);
  EXPECT_EQ(run({"fhom"}).code, 3);
  EXPECT_EQ(run({}).code, 3);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Ball) {
  const auto dir = scratch("ball");
  const auto r = run({"ball", "--graph", data_path("cubic2-axis.json"), "--n", "128", "--svg",
                      (dir / "b.svg").string(), "--csv", (dir / "b.csv").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "vertices 4");
  EXPECT_NE(r.out.find("facets 4"), std::string::npos);
  EXPECT_EQ(first_line(slurp(dir / "b.csv")), "ux,uy,gauge,bx,by");
  EXPECT_NE(slurp(dir / "b.svg").find("<svg"), std::string::npos);

  EXPECT_EQ(run({"ball", "--graph", data_path("cubic2-axis.json"), "--n", "4"}).code, 3);
  EXPECT_EQ(run({"ball", "--graph", data_path("1d.json")}).code, 3);

  const auto a = run({"ball", "--graph", data_path("triangular.json"), "--n", "128"});
  const auto b = run({"ball", "--graph", data_path("triangular.json"), "--n", "256"});
  EXPECT_EQ(first_line(a.out), first_line(b.out));
}

TEST(Cli, W1) {
  const auto all = run({"w1", "--graph", data_path("cubic2-axis.json"), "--eps", "1/8", "--m0",
                        data_path("dirac-origin.json"), "--m1", data_path("dirac-far.json"), "--mode", "all"});
  EXPECT_EQ(all.code, 0);
  EXPECT_EQ(all.out, "flow 0.625\ncoupling 0.625\ndual 0.625\ndiscrepancy 0\n");

  const auto same = run({"w1", "--graph", data_path("cubic2-axis.json"), "--eps", "0.125", "--m0",
                         data_path("points-mu.json"), "--m1", data_path("points-mu.json"), "--mode", "flow"});
  EXPECT_EQ(same.out, "flow 0\n");

  const auto json = run({"w1", "--graph", data_path("triangular.json"), "--eps", "1/8", "--m0",
                         data_path("points-mu.json"), "--m1", data_path("points-nu.json"), "--json"});
  EXPECT_EQ(json.code, 0);
  EXPECT_NE(json.out.find("\"solver\": \"coupling\""), std::string::npos);

  EXPECT_EQ(run({"w1", "--graph", data_path("cubic2-axis.json"), "--eps", "1/8", "--m0",
                 data_path("dirac-origin.json"), "--m1", data_path("unbalanced.json")})
                .code,
            4);
  EXPECT_EQ(run({"w1", "--graph", data_path("cubic2-axis.json"), "--eps", "1/2", "--m0",
                 data_path("dirac-origin.json"), "--m1", data_path("dirac-far.json")})
                .code,
            3);
  EXPECT_EQ(run({"w1", "--graph", data_path("cubic2-axis.json"), "--eps", "1/8", "--m0",
                 data_path("dirac-origin.json"), "--m1", data_path("dirac-far.json"), "--mode", "bogus"})
                .code,
            3);
}

TEST(Cli, Converge) {
  const auto r = run({"converge", "--graph", data_path("cubic2-axis.json"), "--p", "0,0", "--q", "0.5,0.25",
                      "--eps", "1/4,1/8,1/16,1/32"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "eps,value,limit,error,kr_defect");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);

  const auto same = run({"converge", "--graph", data_path("triangular.json"), "--p", "0.2,0.2", "--q", "0.2,0.2",
                         "--eps", "1/4,1/8"});
  EXPECT_EQ(same.out, "eps,value,limit,error,kr_defect\n0.25,0,0,0,0.141421356237\n0.125,0,0,0,0.141421356237\n");

  const auto line = run({"converge", "--graph", data_path("1d.json"), "--p", "0", "--q", "0.4", "--eps", "1/5,1/10"});
  EXPECT_NE(line.out.find("\n0.1,0.4,0.4,0,0\n"), std::string::npos) << line.out;

  const auto measure = run({"converge", "--graph", data_path("cubic2-axis.json"), "--mu", data_path("points-mu.json"),
                            "--nu", data_path("points-nu.json"), "--eps", "1/4,1/8"});
  EXPECT_EQ(measure.code, 0);

  EXPECT_EQ(run({"converge", "--graph", data_path("cubic2-axis.json"), "--p", "0,0", "--q", "0.5,0.25",
                 "--eps", "1/8,1/4"}).code,
            3);
  EXPECT_EQ(run({"converge", "--graph", data_path("cubic2-axis.json"), "--p", "0,0", "--q", "0.5,0.25",
                 "--eps", "1/2"}).code,
            3);
  EXPECT_EQ(run({"converge", "--graph", data_path("cubic2-axis.json"), "--p", "0,0", "--eps", "1/4"}).code, 3);
}

TEST(Cli, Validate) {
  const auto ok = run({"validate", "--graph", data_path("cubic2-axis.json")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("R0 1"), std::string::npos);
  const auto bad = run({"validate", "--graph", data_path("disconnected.json")});
  EXPECT_EQ(bad.code, 5);
  EXPECT_NE(bad.out.find("invalid"), std::string::npos);
  EXPECT_EQ(run({"validate", "--graph", data_path("points-mu.json")}).code, 3);
}

TEST(Cli, DemoIsDeterministic) {
  const auto a = scratch("demo_a"), b = scratch("demo_b");
  ASSERT_EQ(run({"demo", "--out", a.string()}).code, 0);
  ASSERT_EQ(run({"demo", "--out", b.string()}).code, 0);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path();
  }
  EXPECT_EQ(files, 8);
  for (const char* name : {"cubic2-axis", "cubic2-linf", "triangular", "honeycomb"}) {
    EXPECT_TRUE(fs::exists(a / (std::string(name) + ".csv")));
    EXPECT_TRUE(fs::exists(a / (std::string(name) + ".svg")));
  }
}

}  // namespace
}  // namespace homflow
