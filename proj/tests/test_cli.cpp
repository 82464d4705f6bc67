#include <gtest/gtest.h>

#include <sys/wait.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "circlaw/circular_pseudo.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(CIRCLAW_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct Row {
  double theta;
  double value;
};

double parse(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  EXPECT_EQ(res.ec, std::errc()) << s;
  EXPECT_EQ(res.ptr, s.data() + s.size()) << s;
  return v;
}

std::vector<Row> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "theta,value");
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    EXPECT_EQ(line.find(',', comma + 1), std::string::npos) << line;
    rows.push_back({parse(line.substr(0, comma)), parse(line.substr(comma + 1))});
  }
  return rows;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Cli, EvenKernelAtLogTwo) {
  const auto r = run("density --law kernel-even --t 0.6931471805599453");
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 512u);
  EXPECT_EQ(rows[0].theta, 0.0);
  EXPECT_NEAR(rows[0].value, 0.47746483, 1e-8);
}

TEST(Cli, EvenKernelClosedFormAtZero) {
  const double t = 0.6931;
  const auto rows = parse_csv(run("density --law kernel-even --t 0.6931").out);
  ASSERT_FALSE(rows.empty());
  const double e = std::exp(-t);
  EXPECT_NEAR(rows[0].value, (1.0 + e) / (2.0 * kPi * (1.0 - e)), 1e-14);
}

TEST(Cli, BmCdfEndsAtOne) {
  const auto r = run("cdf --law bm --t 1");
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 512u);
  EXPECT_EQ(rows.front().theta, 0.0);
  EXPECT_EQ(rows.back().theta, 2.0 * kPi);
  EXPECT_NEAR(rows.back().value, 1.0, 1e-9);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i].value, rows[i - 1].value);
}

TEST(Cli, EvenDensityGridMatchesLibrary) {
  const auto r = run("density --law even --n 2 --t 1");
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 512u);
  const auto law = circlaw::pseudo::v_even(2, 1.0);
  for (std::size_t i = 0; i < rows.size(); i += 37) {
    EXPECT_DOUBLE_EQ(rows[i].theta, 2.0 * kPi * i / 512.0);
    EXPECT_DOUBLE_EQ(rows[i].value, law.density(rows[i].theta));
  }
}

TEST(Cli, SeventeenSignificantDigits) {
  const auto rows_text = run("density --law bm --t 0.5 --points 8").out;
  EXPECT_NE(rows_text.find("0.78539816339744828"), std::string::npos);
}

TEST(Cli, PositivityJson) {
  const auto r2 = run("positivity --n 2");
  ASSERT_EQ(r2.code, 0);
  const auto j = nlohmann::json::parse(r2.out);
  EXPECT_NEAR(j["t_bar"].get<double>(), 0.6931166530, 1e-6);
  EXPECT_NEAR(j["min_theta_at_t_bar"].get<double>(), kPi, 1e-3);
  EXPECT_EQ(nlohmann::json::parse(run("positivity --n 1").out)["t_bar"].get<double>(), 0.0);
}

TEST(Cli, InvalidParametersExitTwo) {
  EXPECT_EQ(run("density --law even --points 4").code, 2);
  EXPECT_EQ(run("density --law even --t -1").code, 2);
  EXPECT_EQ(run("density --law nonsense").code, 2);
  EXPECT_EQ(run("density --law spacefrac --beta 1.5").code, 2);
  EXPECT_EQ(run("validate --only nosuchgroup").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, NonConvergenceExitThree) {
  EXPECT_EQ(run("density --law spacetimefrac --nu 0.5 --beta 0.1 --points 8").code, 3);
}

TEST(Cli, ValidateSubsetAndLooserKs) {
  const auto r = run("validate --only kernels --ks-tol 0.1");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  std::vector<int> ids;
  for (const auto& c : j["criteria"]) ids.push_back(c["id"].get<int>());
  EXPECT_EQ(ids, (std::vector<int>{1, 8, 11, 12}));
  const auto loose = nlohmann::json::parse(run("validate --only montecarlo --ks-tol 0.1").out);
  EXPECT_TRUE(loose["passed"].get<bool>());
  for (const auto& k : loose["criteria"][0]["checks"]) EXPECT_EQ(k["threshold"].get<double>(), 0.1);
}

TEST(Cli, ValidateFailureExitOne) {
  const auto r = run("validate --only montecarlo --ks-tol 1e-9");
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(nlohmann::json::parse(r.out)["passed"].get<bool>());
}

TEST(Cli, ValidateIsByteIdentical) {
  const std::string a = ::testing::TempDir() + "circlaw_validate_a.json";
  const std::string b = ::testing::TempDir() + "circlaw_validate_b.json";
  ASSERT_EQ(run("validate --seed 7 --out " + a).code, 0);
  ASSERT_EQ(run("validate --seed 7 --out " + b).code, 0);
  const auto first = slurp(a);
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}
