#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "spectral_range/cli.hpp"

using namespace spectral_range;
using spectral_range::testing::data_path;

namespace {

struct Outcome {
  int code = -1;
  io::Json report;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "spectral-range");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.err = err.str();
  if (!out.str().empty()) o.report = io::Json::parse(out.str());
  return o;
}

std::string write_temp(const std::string& name, const io::Json& content) {
  const auto path = std::filesystem::temp_directory_path() / ("spectral_range_test_" + name);
  std::ofstream(path) << content.dump();
  return path.string();
}

int binary_exit_code(const std::string& args) {
  const std::string command = std::string(SPECTRAL_RANGE_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, ReportShape) {
  const Outcome o = run({"means", data_path("reducible_b.json")});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.report["command"], "means");
  EXPECT_TRUE(o.report.contains("inputs"));
  EXPECT_TRUE(o.report.contains("result"));
  EXPECT_TRUE(o.report["diagnostics"].contains("elapsed_seconds"));
}

TEST(Cli, AuxAndFnf) {
  const Outcome aux = run({"aux", data_path("dominant2.csv")});
  EXPECT_EQ(aux.code, 0);
  EXPECT_EQ(aux.report["result"]["row_uniform"]["row_value"], io::Json::parse("[3.0, 3.0]"));
  const Outcome fnf = run({"fnf", data_path("reducible_b.json")});
  EXPECT_EQ(fnf.code, 0);
  EXPECT_EQ(fnf.report["result"]["classes"].size(), 3u);
}

TEST(Cli, EtaRealizeThenVerify) {
  const Outcome realized = run({"eta", "realize", data_path("example_b.json"), "--target", "3"});
  ASSERT_EQ(realized.code, 0) << realized.err;
  EXPECT_NEAR(realized.report["result"]["closed_form"]["y"].get<double>(), 1.4, 1e-9);
  const std::string path = write_temp("eta.json", realized.report["result"]["matrix"]);
  const Outcome verified = run({"eta", "verify", data_path("example_b.json"), path, "--target", "3"});
  EXPECT_EQ(verified.code, 0);
  EXPECT_TRUE(verified.report["result"]["valid"].get<bool>());
  const Outcome wrong = run({"eta", "verify", data_path("example_b.json"), path, "--target", "3.5"});
  EXPECT_FALSE(wrong.report["result"]["valid"].get<bool>());
}

TEST(Cli, SigmaDescribeExample) {
  const Outcome o = run({"sigma", "describe", data_path("reducible_b.json")});
  ASSERT_EQ(o.code, 0);
  EXPECT_NEAR(o.report["result"]["disk"]["radius"].get<double>(), 4, 1e-12);
  EXPECT_EQ(o.report["result"]["disk"]["boundary"], "open");
  ASSERT_EQ(o.report["result"]["circles"].size(), 1u);
  EXPECT_NEAR(o.report["result"]["circles"][0].get<double>(), 5, 1e-12);
}

TEST(Cli, SigmaRealizeThenVerify) {
  for (const char* lambda : {"1,0", "0.5,-1.5", "3,0"}) {
    const Outcome realized = run({"sigma", "realize", data_path("example_b.json"), "--lambda", lambda});
    ASSERT_EQ(realized.code, 0) << realized.err;
    const std::string path = write_temp("sigma.json", realized.report["result"]["matrix"]);
    const Outcome verified = run({"sigma", "verify", data_path("example_b.json"), path, "--lambda", lambda});
    EXPECT_TRUE(verified.report["result"]["valid"].get<bool>()) << verified.report.dump();
  }
}

TEST(Cli, CamionHoffmanWitnessRoundTrip) {
  const Outcome o = run({"camion-hoffman", data_path("ones2.csv")});
  ASSERT_EQ(o.code, 0);
  EXPECT_FALSE(o.report["result"]["regular"].get<bool>());
  const io::LoadedMatrix w = io::matrix_from_json(o.report["result"]["witness"]);
  EXPECT_TRUE(w.value.cwiseAbs().isApprox(Matrix::Ones(2, 2), 1e-12));
  EXPECT_LE(std::abs(w.value.determinant()), 1e-12);
  const Outcome dominant = run({"camion-hoffman", data_path("dominant2.csv")});
  EXPECT_TRUE(dominant.report["result"]["regular"].get<bool>());
  EXPECT_TRUE(dominant.report["result"]["m_matrix"].get<bool>());
}

TEST(Cli, InfeasibleRequestsExitTwo) {
  const Outcome eta = run({"eta", "realize", data_path("example_b.json"), "--target", "5"});
  EXPECT_EQ(eta.code, 2);
  EXPECT_EQ(eta.report["error"]["clause"], "above-upper-bound");
  const Outcome sigma = run({"sigma", "realize", data_path("example_b.json"), "--lambda", "0,4"});
  EXPECT_EQ(sigma.code, 2);
  EXPECT_EQ(sigma.report["error"]["clause"], "modulus-outside-disk");
  EXPECT_FALSE(sigma.err.empty());
}

TEST(Cli, InputErrorsExitOne) {
  EXPECT_EQ(run({"means", data_path("missing.csv")}).code, 1);
  EXPECT_EQ(run({"nonsense"}).code, 1);
  EXPECT_EQ(run({"sigma", "realize", data_path("example_b.json"), "--lambda", "abc"}).code, 1);
  EXPECT_EQ(run({"aux", data_path("example_b.json")}).code, 1);
}

TEST(Cli, OracleChecksPass) {
  for (const char* check : {"cycle-means", "diagonal-products", "sunflowers"}) {
    const Outcome o = run({"oracle", check, "--trials", "10", "--max-n", "5"});
    EXPECT_EQ(o.code, 0) << check;
    EXPECT_TRUE(o.report["result"]["passed"].get<bool>()) << check;
  }
  const Outcome sampling = run({"oracle", "eta-sampling", data_path("example_b.json"), "--samples", "50"});
  EXPECT_EQ(sampling.code, 0);
}

TEST(Cli, BinaryExitCodes) {
  EXPECT_EQ(binary_exit_code("eta describe " + data_path("example_b.json")), 0);
  EXPECT_EQ(binary_exit_code("eta realize " + data_path("example_b.json") + " --target 4"), 2);
  EXPECT_EQ(binary_exit_code("camion-hoffman " + data_path("missing.csv")), 1);
}
