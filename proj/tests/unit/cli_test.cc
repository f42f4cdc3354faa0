// Copyright 2026 The ofc-pointing Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace ofcpoint {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "ofcpoint");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

using Table = std::vector<std::map<std::string, std::string>>;

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Table read_csv(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);
  const auto header = cells(line);
  Table t;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto row = cells(line);
    std::map<std::string, std::string> m;
    for (std::size_t i = 0; i < header.size() && i < row.size(); ++i) m[header[i]] = row[i];
    t.push_back(std::move(m));
  }
  return t;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("ofcpoint_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string synthesize(const std::string& file, std::vector<std::string> extra) {
    std::vector<std::string> args = {"synthesize", "--out", path(file)};
    args.insert(args.end(), extra.begin(), extra.end());
    const Outcome o = run(args);
    EXPECT_EQ(o.code, 0) << o.err;
    return path(file);
  }

  fs::path dir_;
};

void expect_single_error_line(const Outcome& o, int code, const std::string& fragment) {
  EXPECT_EQ(o.code, code);
  ASSERT_FALSE(o.err.empty());
  EXPECT_EQ(o.err.find('\n'), o.err.size() - 1) << o.err;
  EXPECT_EQ(o.err.rfind("error: ", 0), 0u) << o.err;
  EXPECT_NE(o.err.find(fragment), std::string::npos) << o.err;
}

TEST_F(CliTest, SimulateLagReachesTarget) {
  const Outcome o = run({"simulate", "--model", "2ol-eq", "--k", "40", "--zeta", "1", "--target",
                         "0.212", "--n", "485", "--out-dir", dir_.string(), "--format",
                         "csv,json,svg"});
  ASSERT_EQ(o.code, 0) << o.err;
  for (const char* f : {"2ol-eq_trajectory.csv", "2ol-eq_run.json", "2ol-eq.svg"}) {
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  }
  const Table t = read_csv(dir_ / "2ol-eq_trajectory.csv");
  ASSERT_EQ(t.size(), 486u);
  EXPECT_LT(std::abs(std::stod(t.back().at("pos_m")) - 0.212), 0.0141 / 2);
  EXPECT_EQ(t.back().at("control"), "");
  EXPECT_EQ(t.front().at("time_s"), "0");
  const auto j = nlohmann::json::parse(slurp(dir_ / "2ol-eq_run.json"));
  EXPECT_EQ(j.at("model"), "2ol-eq");
  EXPECT_NEAR(j.at("params").at("d").get<double>(), 2 * std::sqrt(40.0), 1e-12);
  EXPECT_TRUE(slurp(dir_ / "2ol-eq.svg").rfind("<svg", 0) == 0 ||
              slurp(dir_ / "2ol-eq.svg").find("<svg") != std::string::npos);
}

TEST_F(CliTest, SimulateMinJerkZeroSurgeIsConstant) {
  const Outcome o = run({"simulate", "--model", "minjerk", "--nmj", "0", "--out-dir", dir_.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  const Table t = read_csv(dir_ / "minjerk_trajectory.csv");
  ASSERT_FALSE(t.empty());
  for (const auto& row : t) EXPECT_EQ(row.at("pos_m"), t.front().at("pos_m"));
}

TEST_F(CliTest, SimulateIsByteReproducible) {
  std::vector<std::string> args = {"simulate", "--model", "lqg", "--omega-r", "5e-7",
                                   "--omega-v", "2", "--omega-f", "2", "--sigma-u", "0.3",
                                   "--sigma-s", "0.5", "--samples", "3", "--seed", "11"};
  auto a = args, b = args;
  a.insert(a.end(), {"--out-dir", path("a")});
  b.insert(b.end(), {"--out-dir", path("b")});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  for (const char* f : {"lqg_run.json", "lqg_distribution.json", "lqg_trajectory.csv",
                        "lqg_samples.csv"}) {
    const std::string x = slurp(dir_ / "a" / f), y = slurp(dir_ / "b" / f);
    EXPECT_FALSE(x.empty()) << f;
    EXPECT_EQ(x, y) << f;
  }
  const auto d = nlohmann::json::parse(slurp(dir_ / "a" / "lqg_distribution.json"));
  EXPECT_EQ(d.at("mean").size(), 486u);
}

TEST_F(CliTest, ErrorsAreSingleLines) {
  expect_single_error_line(run({"simulate", "--model", "pid", "--out-dir", dir_.string()}), 2,
                           "model");
  expect_single_error_line(run({"simulate", "--model", "2ol-eq", "--k", "40", "--out-dir",
                                dir_.string()}),
                           2, "d");
  expect_single_error_line(run({"simulate", "--model", "2ol-eq", "--k", "-1", "--d", "3",
                                "--out-dir", dir_.string()}),
                           2, "k");
  expect_single_error_line(run({"simulate", "--bogus"}), 2, "usage");
  expect_single_error_line(run({}), 2, "usage");
  expect_single_error_line(run({"fit", "--corpus", path("missing.csv"), "--model", "lqr", "--quiet",
                                "--out-dir", dir_.string()}),
                           1, "input");
  expect_single_error_line(run({"sweep", "--model", "2ol-eq", "--k", "40", "--vary", "zeta",
                                "--grid", "", "--out", path("s.csv")}),
                           2, "grid");
}

TEST_F(CliTest, HelpExitsCleanly) {
  const Outcome o = run({"--help"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("simulate"), std::string::npos);
}

TEST_F(CliTest, FitRecoversLagParameters) {
  const std::string corpus = synthesize("c.csv", {"--model", "2ol-eq", "--k", "40", "--zeta", "1",
                                                  "--trials", "5"});
  const Outcome o = run({"fit", "--corpus", corpus, "--model", "2ol-eq", "--seed", "3", "--quiet",
                         "--out-dir", dir_.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  const Table t = read_csv(dir_ / "fit_summary.csv");
  ASSERT_EQ(t.size(), 1u);
  const double k = std::stod(t[0].at("k")), d = std::stod(t[0].at("d"));
  EXPECT_NEAR(k, 40.0, 2.0);
  EXPECT_NEAR(d / (2 * std::sqrt(k)), 1.0, 0.05);
  const auto j = nlohmann::json::parse(slurp(dir_ / "synthetic_2ol-eq_right_2ol-eq_fit.json"));
  for (const char* key : {"model", "params", "loss", "history", "evals", "seed"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST_F(CliTest, FitWithoutGenerationsIsUnconverged) {
  const std::string corpus = synthesize("c.csv", {"--model", "2ol-eq", "--k", "40", "--d", "10"});
  const Outcome o = run({"fit", "--corpus", corpus, "--model", "2ol-eq", "--max-generations", "0",
                         "--quiet", "--out-dir", dir_.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  const Table t = read_csv(dir_ / "fit_summary.csv");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].at("converged"), "0");
  EXPECT_EQ(t[0].at("generations"), "0");
  EXPECT_EQ(t[0].at("success"), "1");
}

TEST_F(CliTest, FitBatchOverTwoConditions) {
  const std::string a = synthesize("a.csv", {"--model", "2ol-eq", "--k", "40", "--d", "10",
                                             "--condition", "near", "--target", "0.1"});
  const std::string b = synthesize("b.csv", {"--model", "2ol-eq", "--k", "40", "--d", "10",
                                             "--condition", "far"});
  const Outcome o = run({"fit", "--corpus", a, b, "--model", "2ol-eq", "--max-generations", "5",
                         "--jobs", "2", "--quiet", "--out-dir", dir_.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  const Table t = read_csv(dir_ / "fit_summary.csv");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].at("condition"), "near");
  EXPECT_EQ(t[1].at("condition"), "far");

  const Outcome sel = run({"fit", "--corpus", a, b, "--model", "2ol-eq", "--condition", "none",
                           "--quiet", "--out-dir", dir_.string()});
  expect_single_error_line(sel, 1, "selection");
}

TEST_F(CliTest, CompareAgainstItselfIsZero) {
  const std::string result = path("r.json");
  {
    std::ofstream out(result);
    out << R"({"model": "lqg", "params": {"omega_r": 5e-7, "omega_v": 2, "omega_f": 2,
               "sigma_u": 0.3, "sigma_s": 0.5},
               "task": {"origin": 0, "target": 0.212, "width": 0.0141, "n": 485, "h": 0.002}})";
  }
  const Outcome o = run({"compare", "--reference-result", result, "--result", result, "--out",
                         path("cmp.csv")});
  ASSERT_EQ(o.code, 0) << o.err;
  const Table t = read_csv(path("cmp.csv"));
  ASSERT_FALSE(t.empty());
  for (const char* col : {"sse_pos", "sse_vel", "sse_acc", "maxerr_pos", "maxerr_vel",
                          "maxerr_acc"}) {
    EXPECT_EQ(std::stod(t[0].at(col)), 0.0) << col;
  }
  // The closed-form W2 takes a square root of a rounding-level residual.
  EXPECT_NEAR(std::stod(t[0].at("mwd")), 0.0, 1e-9);
  EXPECT_NEAR(std::stod(t[0].at("mkl")), 0.0, 1e-12);
}

TEST_F(CliTest, CompareClipsExternalSet) {
  const std::string ref = synthesize("ref.csv", {"--model", "lqg", "--omega-r", "5e-7",
                                                 "--omega-v", "2", "--omega-f", "2", "--sigma-u",
                                                 "0.3", "--sigma-s", "0.5", "--trials", "30"});
  const std::string ext = synthesize("ext.csv", {"--model", "minjerk", "--nmj", "150", "--n",
                                                 "300", "--jitter", "1e-4", "--trials", "10"});
  const Outcome o = run({"compare", "--corpus", ref, "--external", ext, "--no-strip", "--out",
                         path("cmp.csv")});
  ASSERT_EQ(o.code, 0) << o.err;
  const Table t = read_csv(path("cmp.csv"));
  ASSERT_FALSE(t.empty());
  const auto& row = t[0];
  EXPECT_EQ(row.at("kind"), "external");
  EXPECT_EQ(row.at("reference_frames"), "486");
  EXPECT_EQ(row.at("candidate_frames"), "301");
  EXPECT_EQ(row.at("frames"), "301");
  EXPECT_FALSE(row.at("mwd").empty());
}

TEST_F(CliTest, CompareRanksGeneratorAboveLag) {
  const std::string ref = synthesize("ref.csv", {"--model", "lqg", "--omega-r", "5e-7",
                                                 "--omega-v", "2", "--omega-f", "2", "--sigma-u",
                                                 "0.3", "--sigma-s", "0.5", "--trials", "200"});
  const Outcome fit = run({"fit", "--corpus", ref, "--model", "2ol-eq", "--no-strip", "--quiet",
                           "--seed", "1", "--out-dir", dir_.string()});
  ASSERT_EQ(fit.code, 0) << fit.err;
  const std::string gen = path("gen.json");
  {
    std::ofstream out(gen);
    out << R"({"model": "lqg", "params": {"omega_r": 5e-7, "omega_v": 2, "omega_f": 2,
               "sigma_u": 0.3, "sigma_s": 0.5}})";
  }
  const Outcome o = run({"compare", "--corpus", ref, "--no-strip", "--result", gen, "--result",
                         path("synthetic_lqg_right_2ol-eq_fit.json"), "--out", path("cmp.csv")});
  ASSERT_EQ(o.code, 0) << o.err;
  std::map<std::string, double> mwd;
  for (const auto& row : read_csv(path("cmp.csv"))) {
    if (row.at("kind") == "model") mwd[row.at("label")] = std::stod(row.at("mwd"));
  }
  ASSERT_EQ(mwd.size(), 2u);
  EXPECT_LT(mwd.at("lqg"), mwd.at("2ol-eq"));
}

TEST_F(CliTest, SweepDampingShowsOvershootOnlyWhenUnderdamped) {
  const Outcome o = run({"sweep", "--model", "2ol-eq", "--k", "25", "--vary", "zeta", "--grid",
                         "0.5,1,2", "--n", "1500", "--out", path("s.csv"), "--format", "csv,svg"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Table t = read_csv(path("s.csv"));
  ASSERT_EQ(t.size(), 3u);
  EXPECT_GT(std::stod(t[0].at("overshoot_m")), 0.0);
  EXPECT_EQ(std::stod(t[1].at("overshoot_m")), 0.0);
  EXPECT_EQ(std::stod(t[2].at("overshoot_m")), 0.0);
  EXPECT_TRUE(fs::exists(path("s.svg")));
}

TEST_F(CliTest, SweepControlNoiseHasInteriorMinimum) {
  const Outcome o = run({"sweep", "--model", "lqg", "--omega-r", "5e-7", "--omega-v", "2",
                         "--omega-f", "2", "--sigma-s", "0.5", "--vary", "sigma-u", "--grid",
                         "0:5:10", "--out", path("s.csv")});
  ASSERT_EQ(o.code, 0) << o.err;
  const Table t = read_csv(path("s.csv"));
  ASSERT_EQ(t.size(), 10u);
  std::vector<double> ttt;
  for (const auto& row : t) ttt.push_back(std::stod(row.at("time_to_target_step")));
  const auto best = std::min_element(ttt.begin(), ttt.end()) - ttt.begin();
  EXPECT_GT(best, 0);
  EXPECT_LT(best, 9);
}

TEST_F(CliTest, SweepSinglePointGivesOneRow) {
  const Outcome o = run({"sweep", "--model", "minjerk", "--vary", "nmj", "--grid", "200", "--out",
                         path("s.csv")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(read_csv(path("s.csv")).size(), 1u);
}

TEST_F(CliTest, JsonConfigMirrorsFlags) {
  {
    std::ofstream out(path("cfg.json"));
    out << R"({"model": "2ol-eq", "k": 40, "zeta": 1, "out_dir": ")" << dir_.string()
        << R"(", "format": ["csv"]})";
  }
  const Outcome o = run({"simulate", "--config", path("cfg.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(fs::exists(dir_ / "2ol-eq_trajectory.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "2ol-eq_run.json"));

  {
    std::ofstream out(path("bad.json"));
    out << R"({"model": "2ol-eq", "stiffness": 40})";
  }
  expect_single_error_line(run({"simulate", "--config", path("bad.json")}), 2, "stiffness");
}

TEST_F(CliTest, PreprocessWritesEnsemble) {
  const std::string corpus = synthesize("c.csv", {"--model", "lqg", "--omega-r", "5e-7",
                                                  "--omega-v", "2", "--omega-f", "2", "--sigma-u",
                                                  "0.3", "--sigma-s", "0.5", "--trials", "20",
                                                  "--seed", "4"});
  const Outcome o = run({"preprocess", "--corpus", corpus, "--out-dir", dir_.string(), "--format",
                         "json,csv"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = nlohmann::json::parse(slurp(dir_ / "c_ensemble.json"));
  for (const char* key : {"meta", "N", "h", "mean", "cov"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.at("mean").size(), j.at("N").get<std::size_t>() + 1);
  EXPECT_TRUE(fs::exists(dir_ / "preprocess_report.csv"));
}

}  // namespace
}  // namespace ofcpoint
