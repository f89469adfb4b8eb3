#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "lambdaq/quantile_engine.hpp"

namespace lambdaq::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    static std::atomic<int> counter{0};
    dir_ = fs::temp_directory_path() / ("lambdaq_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

  std::string losses_1_to_100() {
    std::ostringstream s;
    for (int i = 1; i <= 100; ++i) s << i << '\n';
    return write("losses.csv", s.str());
  }

  int run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, QuantileExamples) {
  const std::string losses = losses_1_to_100();
  EXPECT_EQ(run({"quantile", "--losses", losses, "--lambda-json",
                 R"({"type":"two_level","alpha":0.95,"beta":0.99,"xbar":97})", "--kind", "minus"}),
            kOk);
  EXPECT_EQ(out_.str(), "97\n");

  const std::string pm = write("pm.csv", "-1\n1\n");
  const std::string step = write("step.json", R"({"type":"step","breakpoints":[0],"values":[0,1],"continuity":"left"})");
  EXPECT_EQ(run({"quantile", "--losses", pm, "--lambda", step, "--kind", "minus"}), kOk);
  EXPECT_EQ(out_.str(), "-inf\n");

  const std::string single = write("single.csv", "5\n");
  for (const char* kind : {"minus", "plus", "tilde-minus", "tilde-plus"}) {
    EXPECT_EQ(run({"quantile", "--losses", single, "--lambda-json", R"({"type":"constant","level":0.5})", "--kind",
                   kind}),
              kOk);
    EXPECT_EQ(out_.str(), "5\n") << kind;
  }
}

TEST_F(CliTest, QuantileMatchesEngine) {
  const std::string losses = write("l.csv", "loss\n3.5\n-2\n\n7\n3.5\n0.25\n");
  const StepCDF f = StepCDF::empirical(std::vector<double>{3.5, -2.0, 7.0, 3.5, 0.25});
  const LambdaSpec s = LambdaSpec::step({1.0}, {0.7, 0.3}, Continuity::right);
  const std::string spec = R"({"type":"step","breakpoints":[1],"values":[0.7,0.3],"continuity":"right"})";
  for (const char* kind : {"minus", "plus"}) {
    ASSERT_EQ(run({"quantile", "--losses", losses, "--lambda-json", spec, "--kind", kind, "--json"}), kOk);
    const json j = json::parse(out_.str());
    const QuantileKind k = std::string(kind) == "minus" ? QuantileKind::q_minus : QuantileKind::q_plus;
    EXPECT_EQ(j.at("value").get<double>(), lambda_quantile(f, s, k).value());
    EXPECT_EQ(j.at("n_observations"), 5);
  }
}

TEST_F(CliTest, LambdaVar) {
  const std::string losses = losses_1_to_100();
  EXPECT_EQ(run({"lvar", "--losses", losses, "--lambda-json", R"({"type":"constant","level":0.95})"}), kOk);
  EXPECT_EQ(out_.str(), "-96\n");
  const std::string single = write("x.csv", "4.25\n");
  EXPECT_EQ(run({"lvar", "--losses", single, "--lambda-json", R"({"type":"constant","level":0.3})"}), kOk);
  EXPECT_EQ(out_.str(), "-4.25\n");
  EXPECT_EQ(run({"lvar", "--losses", losses, "--lambda-json", R"({"type":"constant","level":1})"}), kSpecError);
  EXPECT_NE(err_.str().find("finite"), std::string::npos);
}

TEST_F(CliTest, InputErrors) {
  EXPECT_EQ(run({"quantile", "--losses", (dir_ / "missing.csv").string(), "--lambda-json",
                 R"({"type":"constant","level":0.5})"}),
            kInputError);
  const std::string bad = write("bad.csv", "1\nx\n");
  EXPECT_EQ(run({"quantile", "--losses", bad, "--lambda-json", R"({"type":"constant","level":0.5})"}), kInputError);
  const std::string good = write("good.csv", "1\n");
  EXPECT_EQ(run({"quantile", "--losses", good, "--lambda-json", "{nope"}), kInputError);
  EXPECT_EQ(run({"quantile", "--losses", good}), kInputError);
  EXPECT_EQ(run({"frobnicate"}), kInputError);
  EXPECT_EQ(run({"quantile", "--losses", good, "--lambda-json",
                 R"({"type":"piecewise_linear","knots":[[0,0.2],[1,0.8]],"monotonicity":"nonincreasing"})"}),
            kSpecError);
}

TEST_F(CliTest, PlotData) {
  const std::string pm = write("pm.csv", "-1\n1\n");
  const std::string step = R"({"type":"step","breakpoints":[0],"values":[0,1],"continuity":"left"})";
  ASSERT_EQ(run({"plotdata", "--losses", pm, "--lambda-json", step}), kOk);
  EXPECT_EQ(out_.str(),
            "x,F,Lambda,marker\n"
            "-2,0,0,0\n"
            "-1,0.5,0,0\n"
            "0,0.5,0,0\n"
            "1,1,1,0\n"
            "2,1,1,0\n");

  const std::string losses = losses_1_to_100();
  ASSERT_EQ(run({"plotdata", "--losses", losses, "--lambda-json",
                 R"({"type":"two_level","alpha":0.95,"beta":0.99,"xbar":97})"}),
            kOk);
  EXPECT_NE(out_.str().find("\n97,0.97,0.99,1\n"), std::string::npos);

  ASSERT_EQ(run({"plotdata", "--losses", pm, "--lambda-json", R"({"type":"constant","level":0.25})"}), kOk);
  std::istringstream rows(out_.str());
  std::string line;
  std::getline(rows, line);
  while (std::getline(rows, line)) EXPECT_EQ(line.substr(line.find(',', line.find(',') + 1) + 1, 4), "0.25");
}

TEST_F(CliTest, VerifyConstantPassesAll) {
  EXPECT_EQ(run({"verify", "--functional", "qminus:constant:0.5", "--suite", "all", "--trials", "1000"}), kOk);
  EXPECT_EQ(out_.str().find("UNEXPECTED"), std::string::npos) << out_.str();
  EXPECT_NE(out_.str().find("ordinal_covariance: pass"), std::string::npos) << out_.str();
}

TEST_F(CliTest, VerifyTwoLevel) {
  const std::string report = (dir_ / "oc.json").string();
  EXPECT_EQ(run({"verify", "--functional", "qminus:two_level:0.95,0.99,97", "--suite", "ordinal_covariance",
                 "--out", report}),
            kOk);
  std::ifstream in(report);
  const json j = json::parse(in);
  EXPECT_EQ(j.at("reports")[0].at("verdict"), "fail");
  EXPECT_TRUE(j.at("reports")[0].contains("witness"));

  EXPECT_EQ(run({"verify", "--functional", "qminus:two_level:0.95,0.99,97", "--suite", "locality,cxls,monotonicity",
                 "--trials", "1000"}),
            kOk);
  EXPECT_EQ(out_.str().find("fail"), std::string::npos) << out_.str();
}

TEST_F(CliTest, VerifyExitCodesFollowExpectations) {
  const std::string grid = write("phi.csv", "-2,0.05\n-1,0.2\n0,0.5\n1,0.8\n2,0.95\n");
  EXPECT_EQ(run({"verify", "--functional", "mean", "--suite", "locality"}), kOk);
  EXPECT_NE(out_.str().find("locality: fail"), std::string::npos) << out_.str();
  EXPECT_EQ(run({"verify", "--functional", "qminus:grid:" + grid, "--suite", "monotonicity,locality"}), kOk);
  // Quantiles are monotone for any Lambda, increasing ones included.
  const std::string bad = write("bad.json", R"({"type":"step","breakpoints":[0],"values":[0.2,0.8],"continuity":"right"})");
  EXPECT_EQ(run({"verify", "--functional", "qminus:json:" + bad, "--suite", "monotonicity"}), kOk);
  EXPECT_EQ(run({"verify", "--functional", "qminus:constant:0.5", "--suite", "nonsense"}), kInputError);
  EXPECT_EQ(run({"verify", "--functional", "qsideways:constant:0.5"}), kInputError);
}

TEST_F(CliTest, VerifyIsReproducibleAndHonoursEnvSeed) {
  const std::vector<std::string> args{"verify", "--functional", "qminus:two_level:0.95,0.99,97", "--suite",
                                      "ordinal_covariance,quasiconcave", "--json", "--trials", "200"};
  run(args);
  const std::string first = out_.str();
  run(args);
  EXPECT_EQ(out_.str(), first);
  ::setenv("LQ_SEED", "7", 1);
  run(args);
  ::unsetenv("LQ_SEED");
  EXPECT_EQ(json::parse(out_.str()).at("seed"), 7);
  EXPECT_NE(out_.str(), first);
}

TEST_F(CliTest, ReconstructExamples) {
  const std::string out = (dir_ / "r.json").string();
  EXPECT_EQ(run({"reconstruct", "--functional", "qminus:two_level:0.3,0.7,2", "--out", out}), kOk);
  std::ifstream in(out);
  const json j = json::parse(in);
  EXPECT_EQ(j.at("lambda").at("breakpoints"), json({2.0}));
  EXPECT_NEAR(j.at("lambda").at("values")[0].get<double>(), 0.7, 1.0 / 513.0);
  EXPECT_NEAR(j.at("lambda").at("values")[1].get<double>(), 0.3, 1.0 / 513.0);

  EXPECT_EQ(run({"reconstruct", "--functional", "qminus:constant:0.5"}), kOk);
  const json c = json::parse(out_.str());
  EXPECT_EQ(c.at("lambda"), json::parse(R"({"type":"constant","level":0.5,"monotonicity":"nonincreasing"})"));

  std::ostringstream phi;
  for (int i = -256; i <= 256; ++i) {
    const double x = i / 64.0;
    phi << x << ',' << 0.5 * std::erfc(-x / std::sqrt(2.0)) << '\n';
  }
  const std::string grid = write("phi.csv", phi.str());
  EXPECT_EQ(run({"reconstruct", "--functional", "qminus:grid:" + grid, "--grid", "128", "--trials", "200"}),
            kHypothesisError);
}

}  // namespace
}  // namespace lambdaq::cli
